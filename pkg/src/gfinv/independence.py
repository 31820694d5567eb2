"""Functional independence of invariant sets via Jacobian rank.

A set of polynomial invariants is functionally independent exactly when
its Jacobian with respect to the moment variables has full row rank at a
generic point.  The rank is estimated at several random points, away from
zero, and the largest rank seen is reported.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Group, MomentPolynomial, differentiate, moment_name
from .moments import multi_indices

__all__ = [
    "MomentVariableSpace",
    "max_independent_count",
    "jacobian",
    "functional_rank",
    "trial_ranks",
    "GreedySelector",
    "select_independent_subset",
    "PIVOT_TOL",
]

PIVOT_TOL = 1e-9
BORDERLINE = 10.0


@dataclass(frozen=True)
class MomentVariableSpace:
    """Moments treated as free variables for a group and maximum order.

    First-order central moments are constant zeros.  ``mu00`` is a variable
    under affine maps and the constant 1 otherwise.
    """

    group: Group
    max_order: int
    dim: int = 2

    def __post_init__(self):
        object.__setattr__(self, "group", Group.parse(self.group))
        if self.group is Group.ROTATION3D and self.dim != 3:
            object.__setattr__(self, "dim", 3)

    @property
    def variables(self) -> tuple:
        out = []
        for idx in multi_indices(self.dim, self.max_order):
            order = sum(idx)
            if order == 1:
                continue
            if order == 0 and self.group is not Group.AFFINE:
                continue
            out.append(idx)
        return tuple(out)

    @property
    def fixed(self) -> dict:
        """Moment symbols held constant: order-1 at 0, ``mu00`` at 1 unless free."""
        out = {idx: Fraction(0) for idx in multi_indices(self.dim, 1) if sum(idx) == 1}
        if self.group is not Group.AFFINE:
            out[(0,) * self.dim] = Fraction(1)
        return out

    def to_json(self) -> dict:
        return {
            "group": self.group.value,
            "max_order": self.max_order,
            "dim": self.dim,
            "variables": [moment_name(v) for v in self.variables],
        }


def max_independent_count(space: MomentVariableSpace) -> int:
    """Number of free moment variables, the cap on independent invariants."""
    if space.max_order < 2:
        raise ValueError("max_order must be at least 2")
    return len(space.variables)


class _CompiledGradient:
    """Formal partial derivatives of one polynomial, packed for evaluation."""

    def __init__(self, poly: MomentPolynomial, variables, fixed):
        pos = {v: i for i, v in enumerate(variables)}
        for sym in sorted(poly.symbols()):
            if sym not in pos and sym not in fixed:
                raise ValueError(f"symbol {moment_name(sym)} is outside the variable space")
        exps, coefs, cols, exact = [], [], [], []
        for j, var in enumerate(variables):
            for key, c in differentiate(poly, var).items():
                e = [0] * len(variables)
                for idx in key:
                    if idx in pos:
                        e[pos[idx]] += 1
                    else:
                        c = c * fixed[idx]
                if c:
                    exps.append(e)
                    coefs.append(c)
                    cols.append(j)
        n = len(variables)
        self.n = n
        self.exps = np.array(exps, dtype=np.int64).reshape(-1, n)
        self.coefs = np.array([float(c) for c in coefs])
        self.exact_coefs = coefs
        self.onehot = np.zeros((len(cols), n))
        self.onehot[np.arange(len(cols)), cols] = 1.0
        self.cols = cols

    def numeric(self, points: np.ndarray) -> np.ndarray:
        """Gradient rows at each of ``points`` (trials x n)."""
        if not len(self.coefs):
            return np.zeros((len(points), self.n))
        mono = np.prod(points[:, None, :] ** self.exps[None, :, :], axis=2)
        return (mono * self.coefs) @ self.onehot

    def exact(self, point) -> list:
        out = [Fraction(0)] * self.n
        for e, c, j in zip(self.exps, self.exact_coefs, self.cols):
            v = Fraction(c)
            for i, p in enumerate(e):
                if p:
                    v *= point[i] ** int(p)
            out[j] += v
        return out


@functools.lru_cache(maxsize=100_000)
def _compiled(poly: MomentPolynomial, space: MomentVariableSpace) -> _CompiledGradient:
    return _CompiledGradient(poly, space.variables, space.fixed)


def jacobian(invs, at, space: MomentVariableSpace | None = None) -> np.ndarray:
    """Jacobian of ``invs`` at the assignment ``at``.

    Rows follow ``invs``; columns follow ``space.variables`` (or the key
    order of ``at`` when no space is given).  Entries come from formal
    derivatives evaluated numerically; with all-rational ``at`` the result
    is an object array of exact Fractions.
    """
    if space is not None:
        variables = space.variables
        fixed = space.fixed
    else:
        variables = tuple(tuple(k) for k in at)
        fixed = {}
    missing = [v for v in variables if v not in at]
    if missing:
        raise ValueError(f"assignment lacks {', '.join(moment_name(v) for v in missing)}")
    vals = [at[v] for v in variables]
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    rows = []
    for p in invs:
        g = _CompiledGradient(p, variables, fixed)
        if exact:
            rows.append(g.exact([Fraction(v) for v in vals]))
        else:
            rows.append(g.numeric(np.array([vals], dtype=float))[0])
    if exact:
        return np.array(rows, dtype=object).reshape(len(invs), len(variables))
    return np.array(rows, dtype=float).reshape(len(invs), len(variables))


# --------------------------------------------------------------------------
# rank

class _Basis:
    """Incremental row elimination with a relative pivot tolerance."""

    def __init__(self, n, tol=PIVOT_TOL):
        self.rows = []
        self.pivots = []
        self.tol = tol
        self.n = n

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, row):
        """Residual of ``row`` (scaled to unit max-norm) and its max entry."""
        row = np.asarray(row, dtype=float)
        scale = np.max(np.abs(row)) if row.size else 0.0
        if scale == 0:
            return row, 0.0
        v = row / scale
        for p, b in zip(self.pivots, self.rows):
            if v[p]:
                v = v - v[p] * b
        return v, float(np.max(np.abs(v)))

    def classify(self, size):
        if size <= self.tol / BORDERLINE:
            return "dependent"
        if size > self.tol * BORDERLINE:
            return "independent"
        return "borderline"

    def add(self, residual):
        p = int(np.argmax(np.abs(residual)))
        self.rows.append(residual / residual[p])
        self.pivots.append(p)


def _exact_rank(rows) -> int:
    m = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


class _Trials:
    """Random generic points, float and rational, derived from one seed."""

    def __init__(self, space: MomentVariableSpace, trials: int, seed):
        if trials < 1:
            raise ValueError("trials must be >= 1")
        self.space = space
        children = np.random.SeedSequence(seed).spawn(trials)
        n = len(space.variables)
        pts = []
        self._rational = []
        for child in children:
            rng = np.random.default_rng(child)
            mag = rng.uniform(0.1, 1.0, size=n)
            sign = rng.choice([-1.0, 1.0], size=n)
            pts.append(mag * sign)
            num = rng.integers(10, 101, size=n)
            sgn = rng.choice([-1, 1], size=n)
            self._rational.append([Fraction(int(s * a), 100) for s, a in zip(sgn, num)])
        self.points = np.array(pts).reshape(trials, n)

    def __len__(self):
        return len(self.points)

    def rational(self, t):
        return self._rational[t]


def trial_ranks(invs, space: MomentVariableSpace, trials: int = 5, seed=0) -> list[dict]:
    """Per-trial rank details: ``rank``, ``exact`` (fallback used) and the
    normalised singular values of the numeric Jacobian."""
    tr = _Trials(space, trials, seed)
    grads = [_compiled(p, space) for p in invs]
    num = [g.numeric(tr.points) for g in grads]
    out = []
    for t in range(len(tr)):
        basis = _Basis(len(space.variables))
        borderline = False
        for rows in num:
            res, size = basis.reduce(rows[t])
            kind = basis.classify(size)
            if kind == "borderline":
                borderline = True
            if kind != "dependent":
                basis.add(res)
        rank = basis.rank
        if borderline:
            point = tr.rational(t)
            rank = _exact_rank([g.exact(point) for g in grads])
        mat = np.array([rows[t] for rows in num]).reshape(len(invs), -1)
        if mat.size:
            mat = mat / np.maximum(np.abs(mat).max(axis=1, keepdims=True), 1e-300)
            sv = np.linalg.svd(mat, compute_uv=False)
            sv = (sv / sv[0]).tolist() if sv[0] else sv.tolist()
        else:
            sv = []
        out.append({"rank": rank, "exact": borderline, "singular_values": sv})
    return out


def functional_rank(invs, space: MomentVariableSpace, trials: int = 5, seed=0) -> int:
    """Largest Jacobian rank of ``invs`` over ``trials`` random generic points."""
    if not invs:
        return 0
    return max(t["rank"] for t in trial_ranks(list(invs), space, trials, seed))


class GreedySelector:
    """Keep candidates that raise the functional rank of the kept set.

    Every trial point keeps its own elimination basis.  A candidate raises
    the max-over-trials rank iff it is independent in some trial whose rank
    currently equals that maximum.
    """

    def __init__(self, space: MomentVariableSpace, trials: int = 5, seed=0):
        self.space = space
        self.trials = _Trials(space, trials, seed)
        self.bases = [_Basis(len(space.variables)) for _ in range(len(self.trials))]
        self.kept = []
        self.exact_checks = 0

    @property
    def rank(self) -> int:
        return max(b.rank for b in self.bases)

    def offer(self, poly: MomentPolynomial) -> bool:
        g = _compiled(poly, self.space)
        rows = g.numeric(self.trials.points)
        best = self.rank
        reduced = []
        accept = False
        for t, basis in enumerate(self.bases):
            res, size = basis.reduce(rows[t])
            kind = basis.classify(size)
            if kind == "borderline":
                kind = self._exact_kind(t, g)
            reduced.append((res, kind))
            if kind == "independent" and basis.rank == best:
                accept = True
        if accept:
            for basis, (res, kind) in zip(self.bases, reduced):
                if kind == "independent":
                    basis.add(res)
            self.kept.append(poly)
        return accept

    def _exact_kind(self, t, g):
        self.exact_checks += 1
        point = self.trials.rational(t)
        rows = [_compiled(p, self.space).exact(point) for p in self.kept]
        before = _exact_rank(rows)
        after = _exact_rank(rows + [g.exact(point)])
        return "independent" if after > before else "dependent"


def select_independent_subset(candidates, space, target=None, seed=0, trials: int = 5):
    """Greedy scan of ``candidates`` (polynomials, or objects with a
    ``polynomial`` attribute) keeping those that raise the rank, stopping
    once ``target`` are kept."""
    sel = GreedySelector(space, trials, seed)
    kept = []
    for c in candidates:
        if target is not None and len(kept) >= target:
            break
        poly = c if isinstance(c, MomentPolynomial) else c.polynomial
        if sel.offer(poly):
            kept.append(c)
    return kept
