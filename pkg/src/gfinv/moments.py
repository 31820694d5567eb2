"""Geometric moments of discrete weighted point sets in 2D and 3D.

A shape is a finite set of points, each carrying a nonnegative weight.
Moment integrals reduce to weighted sums over the points.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

__all__ = [
    "MomentError",
    "ParseError",
    "WeightedPointSet",
    "MomentVector",
    "multi_indices",
    "raw_moments",
    "centroid",
    "central_moments",
    "load_image_as_pointset",
    "read_pgm",
    "read_pointset",
    "format_pointset",
    "load_shape",
]


class MomentError(ValueError):
    """Raised for degenerate shapes (no points, zero total weight)."""


class ParseError(ValueError):
    """Malformed point-set or image input.

    ``offset`` is the byte offset (images) or ``line`` the 1-based line
    number (point-set text) where parsing failed.
    """

    def __init__(self, message, offset=None, line=None, path=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        prefix = ": ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.offset = offset
        self.line = line
        self.path = path


def multi_indices(dim: int, max_order: int) -> list[tuple[int, ...]]:
    """All exponent multi-indices with total order <= ``max_order``.

    Ordered by total order, then by descending exponents, e.g. in 2D
    ``(0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...``.
    """
    if dim not in (2, 3):
        raise ValueError(f"dim must be 2 or 3, got {dim}")
    out = []
    for order in range(max_order + 1):
        out.extend(_indices_of_order(dim, order))
    return out


def _indices_of_order(dim, order):
    if dim == 1:
        return [(order,)]
    out = []
    for first in range(order, -1, -1):
        for rest in _indices_of_order(dim - 1, order - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class WeightedPointSet:
    """Points in 2D or 3D with nonnegative weights.

    Parameters
    ----------
    coords : (n, dim) array_like
        Point coordinates.
    weights : (n,) array_like, optional
        Point weights; unit weights when omitted.
    """

    coords: np.ndarray
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.ndim == 1 and coords.size == 0:
            coords = coords.reshape(0, 2)
        if coords.ndim != 2 or coords.shape[1] not in (2, 3):
            raise ValueError(f"coords must have shape (n, 2) or (n, 3), got {coords.shape}")
        if self.weights is None:
            weights = np.ones(len(coords))
        else:
            weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.shape != (len(coords),):
            raise ValueError("one weight per point is required")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise ValueError("weights must be finite and nonnegative")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self):
        return len(self.coords)

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights)

    def translated(self, t) -> "WeightedPointSet":
        return WeightedPointSet(self.coords + np.asarray(t, dtype=float), self.weights)

    def scaled(self, s: float) -> "WeightedPointSet":
        """Coordinates multiplied by ``s``; weights untouched."""
        return WeightedPointSet(self.coords * s, self.weights)


@dataclass(frozen=True)
class MomentVector:
    """Dense table of moments for every multi-index up to ``max_order``."""

    dim: int
    max_order: int
    entries: dict
    central: bool = False

    def __getitem__(self, idx) -> float:
        idx = tuple(idx)
        if len(idx) != self.dim:
            raise KeyError(f"index {idx} does not match dimension {self.dim}")
        if sum(idx) > self.max_order:
            raise MomentError(
                f"insufficient moment order: {idx} needs order {sum(idx)}, have {self.max_order}"
            )
        return self.entries[idx]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def m00(self) -> float:
        return self.entries[(0,) * self.dim]

    def items(self):
        return self.entries.items()


def raw_moments(ps: WeightedPointSet, max_order: int) -> MomentVector:
    """Raw moments ``sum_i w_i * prod_d x_{i,d}^{p_d}`` up to ``max_order``.

    Sums are correctly rounded (``math.fsum``) so high-order moments of
    large point sets do not accumulate cancellation error.
    """
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if len(ps) == 0:
        raise MomentError("empty shape")
    return MomentVector(ps.dim, max_order, _weighted_power_sums(ps.coords, ps.weights, max_order))


def _weighted_power_sums(coords, weights, max_order):
    dim = coords.shape[1]
    # powers[d][k] = coords[:, d] ** k
    powers = [[np.ones(len(coords))] for _ in range(dim)]
    for d in range(dim):
        for _ in range(max_order):
            powers[d].append(powers[d][-1] * coords[:, d])
    entries = {}
    for idx in multi_indices(dim, max_order):
        term = weights.copy()
        for d, p in enumerate(idx):
            if p:
                term = term * powers[d][p]
        entries[idx] = math.fsum(term)
    return entries


def centroid(mv: MomentVector) -> tuple[float, ...]:
    """Centroid ``(m10/m00, m01/m00[, m001/m000])``."""
    if mv.max_order < 1:
        raise MomentError("centroid needs moments of order >= 1")
    m00 = mv.m00
    if m00 == 0:
        raise MomentError("zero total weight")
    unit = np.eye(mv.dim, dtype=int)
    return tuple(mv[tuple(unit[d])] / m00 for d in range(mv.dim))


def central_moments(ps: WeightedPointSet, max_order: int) -> MomentVector:
    """Moments of ``ps`` after moving its centroid to the origin.

    Order-1 entries are stored as exact zeros.
    """
    if len(ps) == 0:
        raise MomentError("empty shape")
    if ps.total_weight == 0:
        raise MomentError("zero total weight")
    c = np.array(centroid(raw_moments(ps, 1)))
    entries = _weighted_power_sums(ps.coords - c, ps.weights, max_order)
    for idx in entries:
        if sum(idx) == 1:
            entries[idx] = 0.0
    return MomentVector(ps.dim, max_order, entries, central=True)


# --------------------------------------------------------------------------
# input formats

def load_image_as_pointset(image, drop_zero: bool = True) -> WeightedPointSet:
    """Embed a grayscale raster as a point set of pixel centres.

    Pixel ``(row r, column c)`` of an ``H``-row image becomes the point
    ``(c + 0.5, H - r - 0.5)`` with weight equal to its intensity, so the
    y axis points up.
    """
    img = np.asarray(image)
    if img.ndim != 2:
        raise ParseError(f"expected a 2D grayscale raster, got shape {img.shape}")
    if np.any(img < 0):
        raise ParseError("negative intensity")
    h, w = img.shape
    rows, cols = np.mgrid[0:h, 0:w]
    x = cols.reshape(-1) + 0.5
    y = h - rows.reshape(-1) - 0.5
    weights = img.reshape(-1).astype(float)
    if drop_zero:
        keep = weights > 0
        x, y, weights = x[keep], y[keep], weights[keep]
    return WeightedPointSet(np.column_stack([x, y]).reshape(-1, 2), weights)


_PGM_WS = b" \t\r\n"


def read_pgm(data: bytes) -> np.ndarray:
    """Decode a binary (P5) or ASCII (P2) PGM image into an integer array."""
    pos = 0
    n = len(data)

    def skip():
        nonlocal pos
        while pos < n:
            if data[pos] in _PGM_WS:
                pos += 1
            elif data[pos] == ord("#"):
                while pos < n and data[pos] not in b"\r\n":
                    pos += 1
            else:
                break

    def token():
        nonlocal pos
        skip()
        start = pos
        while pos < n and data[pos] not in _PGM_WS and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise ParseError("unexpected end of header", offset=start)
        return start, data[start:pos]

    def integer(what):
        start, tok = token()
        if not tok.isdigit():
            raise ParseError(f"bad {what} {tok!r}", offset=start)
        return int(tok)

    if data[:2] not in (b"P5", b"P2"):
        raise ParseError("not a PGM file (magic must be P5 or P2)", offset=0)
    magic = data[:2]
    pos = 2
    width = integer("width")
    height = integer("height")
    maxval = integer("maxval")
    if width <= 0 or height <= 0:
        raise ParseError("image dimensions must be positive", offset=pos)
    if not 0 < maxval <= 65535:
        raise ParseError(f"maxval {maxval} out of range 1..65535", offset=pos)
    count = width * height
    if magic == b"P2":
        values = []
        for _ in range(count):
            values.append(integer("pixel value"))
        arr = np.array(values, dtype=np.int64)
    else:
        if pos >= n or data[pos] not in _PGM_WS:
            raise ParseError("missing whitespace after maxval", offset=pos)
        pos += 1
        itemsize = 1 if maxval < 256 else 2
        need = count * itemsize
        if n - pos < need:
            raise ParseError(f"truncated raster: need {need} bytes, have {n - pos}", offset=pos)
        dtype = np.uint8 if itemsize == 1 else np.dtype(">u2")
        arr = np.frombuffer(data, dtype=dtype, count=count, offset=pos).astype(np.int64)
    if np.any(arr > maxval):
        raise ParseError("pixel value exceeds maxval")
    return arr.reshape(height, width)


def read_pointset(text: str) -> WeightedPointSet:
    """Parse the ``DIM <2|3>`` point-set text format.

    One point per line as ``x y w`` or ``x y z w``; lines starting with
    ``#`` and blank lines are ignored.
    """
    dim = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            m = re.fullmatch(r"DIM\s+([23])", line)
            if not m:
                raise ParseError("expected header 'DIM 2' or 'DIM 3'", line=lineno)
            dim = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != dim + 1:
            raise ParseError(f"expected {dim + 1} numbers, got {len(parts)}", line=lineno)
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if values[-1] < 0:
            raise ParseError("negative weight", line=lineno)
        rows.append(values)
    if dim is None:
        raise ParseError("missing 'DIM' header")
    arr = np.array(rows, dtype=float).reshape(-1, dim + 1)
    return WeightedPointSet(arr[:, :dim], arr[:, dim])


def format_pointset(ps: WeightedPointSet) -> str:
    lines = [f"DIM {ps.dim}"]
    for xyz, w in zip(ps.coords, ps.weights):
        lines.append(" ".join(repr(float(v)) for v in (*xyz, w)))
    return "\n".join(lines) + "\n"


def load_shape(path) -> WeightedPointSet:
    """Load a point-set text file or a PGM image, sniffing the magic bytes."""
    path = Path(path)
    data = path.read_bytes()
    if data[:2] in (b"P5", b"P2"):
        try:
            return load_image_as_pointset(read_pgm(data))
        except ParseError as exc:
            raise ParseError(str(exc), path=path) from None
    try:
        return read_pointset(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8 text ({exc.reason})", offset=exc.start, path=path) from None
    except ParseError as exc:
        raise ParseError(str(exc), path=path) from None
