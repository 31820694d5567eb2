"""Random group transformations of point sets and invariance checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Group, evaluate
from .moments import WeightedPointSet, central_moments

__all__ = [
    "AffineMap",
    "apply",
    "random_similarity",
    "random_affine",
    "random_rotation3d",
    "random_map",
    "mirror",
    "random_pointset",
    "InvarianceReport",
    "invariance_check",
    "normalized_value",
]


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + translation``."""

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float)
        t = np.array(self.translation, dtype=float).reshape(-1)
        if lin.ndim != 2 or lin.shape[0] != lin.shape[1] or lin.shape[0] not in (2, 3):
            raise ValueError(f"linear part must be 2x2 or 3x3, got {lin.shape}")
        if t.shape != (lin.shape[0],):
            raise ValueError("translation does not match the linear part")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls, dim: int = 2) -> "AffineMap":
        return cls(np.eye(dim), np.zeros(dim))

    @classmethod
    def translation_only(cls, t) -> "AffineMap":
        t = np.asarray(t, dtype=float)
        return cls(np.eye(len(t)), t)

    @property
    def dim(self) -> int:
        return self.linear.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        """Composition: ``(self @ other)(x) == self(other(x))``."""
        return AffineMap(self.linear @ other.linear, self.linear @ other.translation + self.translation)

    def to_json(self) -> dict:
        return {"linear": self.linear.tolist(), "translation": self.translation.tolist()}


def apply(m: AffineMap, ps: WeightedPointSet) -> WeightedPointSet:
    """Map every point and scale every weight by ``|det|``.

    Scaling the weights carries a density along with the map, so moments
    transform exactly as for continuous shapes.
    """
    if m.dim != ps.dim:
        raise ValueError(f"{m.dim}D map applied to {ps.dim}D points")
    det = m.det
    if det == 0 or not np.isfinite(det):
        raise ValueError("singular linear part")
    return WeightedPointSet(ps.coords @ m.linear.T + m.translation, ps.weights * abs(det))


def _rotation2d(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def random_similarity(seed) -> AffineMap:
    """Rotation U[0, 2pi), scale U[0.5, 2], translation U[-5, 5]^2."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0, 2 * np.pi)
    scale = rng.uniform(0.5, 2.0)
    t = rng.uniform(-5, 5, size=2)
    return AffineMap(scale * _rotation2d(theta), t)


def random_affine(seed) -> AffineMap:
    """Entries U[-2, 2], redrawn until ``0.1 <= det <= 10``."""
    rng = np.random.default_rng(seed)
    while True:
        lin = rng.uniform(-2, 2, size=(2, 2))
        if 0.1 <= np.linalg.det(lin) <= 10:
            break
    return AffineMap(lin, rng.uniform(-5, 5, size=2))


def random_rotation3d(seed) -> AffineMap:
    """Haar-uniform rotation of R^3 plus a U[-5, 5]^3 translation."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return AffineMap(q, rng.uniform(-5, 5, size=3))


def random_map(group, seed) -> AffineMap:
    group = Group.parse(group)
    if group is Group.SIMILARITY:
        return random_similarity(seed)
    if group is Group.AFFINE:
        return random_affine(seed)
    return random_rotation3d(seed)


def mirror(dim: int = 2) -> AffineMap:
    """Reflection across the x axis (``y -> -y``)."""
    lin = np.eye(dim)
    lin[1, 1] = -1.0
    return AffineMap(lin, np.zeros(dim))


def random_pointset(n: int, dim: int = 2, seed=0) -> WeightedPointSet:
    """``n`` points in ``[-1, 1]^dim`` with weights U[0.5, 1.5]."""
    rng = np.random.default_rng(seed)
    return WeightedPointSet(rng.uniform(-1, 1, size=(n, dim)), rng.uniform(0.5, 1.5, size=n))


def normalized_value(poly, k: int, ps: WeightedPointSet) -> float:
    mv = central_moments(ps, max(poly.order, 1))
    return evaluate(poly, mv) / mv.m00**k


@dataclass
class InvarianceReport:
    invariant: str
    group: str
    seed: int
    tol: float
    baseline: float
    per_transform: list
    passed: bool

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "group": self.group,
            "seed": self.seed,
            "tol": self.tol,
            "baseline": self.baseline,
            "per_transform": self.per_transform,
            "pass": self.passed,
        }


def invariance_check(
    inv,
    ps: WeightedPointSet,
    n_transforms: int = 10,
    seed: int = 0,
    tol: float = 1e-8,
    group=None,
    maps=None,
    expect_sign: int = 1,
    floor: float = 1e-12,
) -> InvarianceReport:
    """Compare the normalised invariant on ``ps`` and transformed copies.

    ``inv`` is a catalog entry or any object with ``name``, ``reference``
    (or ``polynomial``), ``k`` and ``group``.  Maps are drawn from the
    invariant's group unless ``maps`` is given.  With ``expect_sign=-1``
    the transformed value is expected to flip sign (skew invariants under
    a reflection).
    """
    poly = inv.reference if hasattr(inv, "reference") else inv.polynomial
    group = Group.parse(group or inv.group)
    if maps is None:
        seeds = np.random.SeedSequence(seed).spawn(n_transforms)
        maps = [random_map(group, s) for s in seeds]
    v0 = normalized_value(poly, inv.k, ps)
    scale = max(abs(v0), floor)
    rows = []
    worst = 0.0
    for m in maps:
        v = normalized_value(poly, inv.k, apply(m, ps))
        rel = abs(v - expect_sign * v0) / scale
        worst = max(worst, rel)
        rows.append({"map": m.to_json(), "value": v, "rel_err": rel})
    return InvarianceReport(
        invariant=getattr(inv, "name", str(poly)),
        group=group.value,
        seed=seed,
        tol=tol,
        baseline=v0,
        per_transform=rows,
        passed=worst <= tol,
    )
