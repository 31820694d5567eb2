import json

import numpy as np
import pytest

from gfinv.algebra import Group, InvariantCore, canonicalize, translate
from gfinv.discovery import (
    BudgetExceeded,
    EnumerationSpec,
    canonical_relabeling,
    discover,
    enumerate_cores,
)
from gfinv.harness import invariance_check, random_pointset
from gfinv.independence import MomentVariableSpace, functional_rank
from gfinv.report import dumps

from _oracles import brute_force_enumeration


def names(cores):
    return {str(c) for c in cores}


def key(core):
    return tuple(sorted((fc.kind, fc.args) for fc in core.factors))


def test_single_point_similarity():
    spec = EnumerationSpec(2, "similarity", n_pnt=1, n_cnt=2, max_factors=1)
    assert names(enumerate_cores(spec)) == {"f(1,1)"}


def test_two_point_affine():
    spec = EnumerationSpec(2, "affine", n_pnt=2, n_cnt=2, max_factors=2)
    cores = list(enumerate_cores(spec))
    assert names(cores) == {"g(1,2)^2", "g(1,2)"}
    # only the square survives translation
    assert {str(c) for c in cores if not translate(c).is_zero()} == {"g(1,2)^2"}


def test_relabeled_twins_collapse():
    a = InvariantCore.parse("g(1,2)*g(1,3)")
    b = InvariantCore.parse("g(1,3)*g(1,2)")
    c = InvariantCore.parse("g(2,3)*g(1,2)")
    assert canonical_relabeling(a) == canonical_relabeling(b) == canonical_relabeling(c)


@pytest.mark.parametrize(
    "dim, group, n_pnt, n_cnt, max_factors",
    [
        (2, "similarity", 2, 2, None),
        (2, "similarity", 3, 2, None),
        (2, "similarity", 2, 3, 3),
        (2, "affine", 3, 3, None),
        (2, "affine", 4, 2, None),
        (3, "affine", 3, 2, None),
        (3, "rotation3d", 2, 2, None),
    ],
)
def test_enumeration_matches_brute_force(dim, group, n_pnt, n_cnt, max_factors):
    spec = EnumerationSpec(dim, group, n_pnt, n_cnt, max_factors)
    got = [key(c) for c in enumerate_cores(spec)]
    assert len(got) == len(set(got))
    want = brute_force_enumeration(dim, group != "affine", n_pnt, n_cnt, max_factors)
    assert set(got) == want


def test_affine_has_no_f():
    for c in enumerate_cores(EnumerationSpec(2, "affine", 3, 3)):
        assert c.n_f == 0


def test_budget():
    spec = EnumerationSpec(2, "affine", 5, 5, budget=50)
    with pytest.raises(BudgetExceeded, match="budget exceeded") as exc:
        list(enumerate_cores(spec))
    assert exc.value.count == 51


@pytest.mark.parametrize(
    "kwargs", [dict(n_pnt=0), dict(n_cnt=0), dict(max_factors=0), dict(dim=4), dict(group="similarity", dim=3)]
)
def test_spec_validation(kwargs):
    base = dict(dim=2, group="affine", n_pnt=2, n_cnt=2)
    base.update(kwargs)
    with pytest.raises(ValueError):
        EnumerationSpec(**base)


def test_similarity_order_two_discovery():
    res = discover(EnumerationSpec(2, "similarity", 2, 2), seed=0)
    cands = {e["core"] for e in res.eliminated if e["reason"] == "dependent"} | names(s.core for s in res.selected)
    assert {"f(1,1)", "f(1,2)^2", "g(1,2)^2"} <= cands
    # rotation removes one of the three order-2 moments
    assert [str(s.core) for s in res.selected] == ["f(1,1)", "g(1,2)^2"]
    assert res.counts["independent"] == 2


@pytest.fixture(scope="module")
def sim33():
    return discover(EnumerationSpec(2, "similarity", 3, 3), seed=0)


def test_discovery_properties(sim33):
    sel = sim33.selected
    # 7 moment variables, one lost to the rotation orbit
    assert len(sel) == 6 and sim33.max_independent == 7
    polys = [s.polynomial for s in sel]
    assert len({canonicalize(p) for p in polys}) == len(polys)
    assert functional_rank(polys, MomentVariableSpace("similarity", 3)) == len(sel)
    assert all(s.core.n_g % 2 == 0 for s in sel)
    ps = random_pointset(15, seed=5)
    for s in sel:
        assert invariance_check(s, ps, n_transforms=5, seed=1, tol=1e-8).passed, str(s.core)


def test_candidate_order_is_monotone(sim33):
    keys = [(s.order, s.degree) for s in sim33.selected]
    assert keys == sorted(keys)


def test_counts_add_up(sim33):
    c = sim33.counts
    assert c["enumerated"] == c["zero"] + c["duplicate"] + c["skew"] + c["candidates"]
    assert c["candidates"] == c["dependent"] + c["independent"] + c["unexamined"]
    reasons = [e["reason"] for e in sim33.eliminated]
    for r in ("zero", "duplicate", "skew", "dependent"):
        assert reasons.count(r) == c[r]


def test_allow_skew_keeps_odd_g():
    res = discover(EnumerationSpec(2, "similarity", 3, 3, require_true_invariants=False), seed=0)
    assert res.counts["skew"] == 0
    assert any(s.core.n_g % 2 for s in res.selected)


def test_incomplete_flag_and_determinism():
    spec = EnumerationSpec(2, "affine", 4, 4)
    a = discover(spec, target=19, seed=3)
    b = discover(spec, target=19, seed=3)
    assert a.incomplete
    assert dumps(a.to_json()) == dumps(b.to_json())
    json.loads(dumps(a.to_json()))


def test_target_stops_early():
    res = discover(EnumerationSpec(2, "similarity", 3, 3), target=3, seed=0)
    assert len(res.selected) == 3 and not res.incomplete
    assert res.counts["unexamined"] > 0
