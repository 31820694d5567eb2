from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gfinv.moments import (
    MomentError,
    ParseError,
    WeightedPointSet,
    central_moments,
    centroid,
    format_pointset,
    load_image_as_pointset,
    load_shape,
    multi_indices,
    raw_moments,
    read_pgm,
    read_pointset,
)

TRI = WeightedPointSet([[0, 0], [1, 0], [0, 1]])


def test_multi_indices_order():
    assert multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(multi_indices(3, 2)) == 10


def test_triangle_central_moments():
    mv = central_moments(TRI, 3)
    assert mv[(2, 0)] == pytest.approx(2 / 3, rel=1e-15)
    assert mv[(0, 2)] == pytest.approx(2 / 3, rel=1e-15)
    assert mv[(1, 1)] == pytest.approx(-1 / 3, rel=1e-15)
    assert mv[(1, 0)] == 0.0 and mv[(0, 1)] == 0.0
    assert mv.central


def test_raw_and_centroid():
    mv = raw_moments(TRI, 2)
    assert mv.m00 == 3
    assert centroid(mv) == pytest.approx((1 / 3, 1 / 3))


@pytest.mark.parametrize(
    "ps, err",
    [
        (WeightedPointSet(np.zeros((0, 2))), "empty shape"),
        (WeightedPointSet([[0, 0], [1, 1]], [0, 0]), "zero total weight"),
    ],
)
def test_degenerate_shapes(ps, err):
    with pytest.raises(MomentError, match=err):
        central_moments(ps, 2)


def test_insufficient_order():
    mv = central_moments(TRI, 2)
    with pytest.raises(MomentError, match="insufficient moment order"):
        mv[(3, 0)]


def test_weights_validated():
    with pytest.raises(ValueError):
        WeightedPointSet([[0, 0]], [-1])
    with pytest.raises(ValueError):
        WeightedPointSet([[0, 0, 0, 0]])


coords = st.lists(
    st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=1, max_size=12
)


@settings(max_examples=60, deadline=None)
@given(coords, st.floats(-50, 50), st.floats(-50, 50))
def test_central_moments_translation_invariant(pts, tx, ty):
    ps = WeightedPointSet(pts)
    a = central_moments(ps, 3)
    b = central_moments(ps.translated([tx, ty]), 3)
    scale = max(1.0, max(abs(v) for v in a.entries.values()))
    for idx in a:
        assert abs(a[idx] - b[idx]) <= 1e-8 * scale * (1 + abs(tx) + abs(ty)) ** 3


@settings(max_examples=40, deadline=None)
@given(coords, st.floats(0.1, 5))
def test_scaling_law(pts, s):
    ps = WeightedPointSet(pts)
    a = central_moments(ps, 3)
    b = central_moments(ps.scaled(s), 3)
    for (p, q), v in a.items():
        assert b[(p, q)] == pytest.approx(v * s ** (p + q), rel=1e-9, abs=1e-9 * s ** (p + q) * 10 ** (p + q))


def test_image_embedding_pixel_centres():
    ps = load_image_as_pointset(np.array([[0, 2], [3, 0]]))
    # row 0 is the top row, so it sits at y = H - 0 - 0.5
    pts = {tuple(c): w for c, w in zip(map(tuple, ps.coords), ps.weights)}
    assert pts == {(1.5, 1.5): 2.0, (0.5, 0.5): 3.0}


def test_pgm_p5_single_pixel():
    img = read_pgm(b"P5\n1 1\n255\n\x07")
    assert img.tolist() == [[7]]
    assert raw_moments(load_image_as_pointset(img), 0).m00 == 7


def test_pgm_p2_with_comments_and_16bit():
    img = read_pgm(b"P2\n# hi\n2 1\n1000\n5 999\n")
    assert img.tolist() == [[5, 999]]
    img = read_pgm(b"P5 1 1 65535\n" + (300).to_bytes(2, "big"))
    assert img.tolist() == [[300]]


@pytest.mark.parametrize(
    "data, offset",
    [(b"P6\n1 1\n255\n\x00", 0), (b"P5\n1 1\n255\n", 11), (b"P5\n1 x\n255\n\x00", 5)],
)
def test_pgm_errors_carry_offset(data, offset):
    with pytest.raises(ParseError) as exc:
        read_pgm(data)
    assert exc.value.offset == offset


def test_pointset_text_roundtrip():
    text = "# comment\nDIM 3\n0 0 0 1\n1 2 3 0.5\n"
    ps = read_pointset(text)
    assert ps.dim == 3 and len(ps) == 2
    again = read_pointset(format_pointset(ps))
    np.testing.assert_array_equal(again.coords, ps.coords)
    np.testing.assert_array_equal(again.weights, ps.weights)


@pytest.mark.parametrize(
    "text, line",
    [("0 0 1\n", 1), ("DIM 2\n0 0\n", 2), ("DIM 2\n\n0 0 a\n", 3), ("DIM 2\n0 0 -1\n", 2)],
)
def test_pointset_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        read_pointset(text)
    assert exc.value.line == line


def test_load_shape_sniffs(tmp_path):
    (tmp_path / "a.pgm").write_bytes(b"P5\n1 1\n255\n\x07")
    (tmp_path / "a.pts").write_text("DIM 2\n0 0 1\n")
    assert load_shape(tmp_path / "a.pgm").total_weight == 7
    assert load_shape(tmp_path / "a.pts").total_weight == 1
    (tmp_path / "bad.pts").write_text("DIM 2\n0\n")
    with pytest.raises(ParseError, match="bad.pts"):
        load_shape(tmp_path / "bad.pts")
