"""Search for independent invariants by enumerating generating-function
products within degree and order bounds.

Pipeline: enumerate cores up to point relabeling, translate, drop zero
polynomials and duplicates (equal up to a scalar), optionally drop skew
cores, order the survivors from simplest to most complex and keep those
that raise the functional rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import (
    GFFactor,
    Group,
    InvariantCore,
    MomentPolynomial,
    canonicalize,
    degree_order,
    normalization_exponent,
    translate,
)
from .independence import GreedySelector, MomentVariableSpace

__all__ = [
    "BudgetExceeded",
    "EnumerationSpec",
    "enumerate_cores",
    "canonical_relabeling",
    "DiscoveredInvariant",
    "DiscoveryResult",
    "discover",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1_000_000
MAX_PERMUTED_LABELS = 6


class BudgetExceeded(RuntimeError):
    def __init__(self, count, budget):
        super().__init__(f"budget exceeded: more than {budget} cores (reached {count})")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class EnumerationSpec:
    """Bounds for the search.

    ``n_pnt`` caps the number of distinct point labels (invariant degree),
    ``n_cnt`` the occurrences of any one label (moment order).  A
    ``max_factors`` of None means no cap beyond the two above.
    """

    dim: int = 2
    group: Group = Group.AFFINE
    n_pnt: int = 2
    n_cnt: int = 2
    max_factors: int | None = None
    require_true_invariants: bool = True
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "group", Group.parse(self.group))
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")
        if self.n_pnt < 1 or self.n_cnt < 1:
            raise ValueError("n_pnt and n_cnt must be >= 1")
        if self.max_factors is not None and self.max_factors < 1:
            raise ValueError("max_factors must be >= 1")
        if self.group is Group.ROTATION3D and self.dim != 3:
            raise ValueError("rotation3d enumeration needs dim 3")
        if self.group is Group.SIMILARITY and self.dim != 2:
            raise ValueError("similarity enumeration is 2D")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "group": self.group.value,
            "n_pnt": self.n_pnt,
            "n_cnt": self.n_cnt,
            "max_factors": self.max_factors,
            "require_true_invariants": self.require_true_invariants,
            "budget": self.budget,
        }


def _factor_types(n, dim, with_f):
    """All factors over labels ``1..n`` with their per-label usage."""
    types = []
    if with_f:
        for i, j in itertools.combinations_with_replacement(range(1, n + 1), 2):
            types.append(GFFactor("f", (i, j), dim))
    for args in itertools.combinations(range(1, n + 1), dim):
        types.append(GFFactor("g", args, dim))
    types.sort(key=lambda fc: (fc.args, fc.kind))
    return types


def _degree_sequences(n, n_cnt, total_cap):
    """Nonincreasing label occurrence counts in ``[1, n_cnt]``."""
    for seq in itertools.combinations_with_replacement(range(n_cnt, 0, -1), n):
        if total_cap is None or sum(seq) <= total_cap:
            yield seq


def _labeled_cores(n, degrees, types, max_factors) -> Iterator[tuple]:
    """Factor multisets over ``types`` using label ``i`` exactly ``degrees[i-1]`` times."""
    usage = []
    for fc in types:
        u = [0] * (n + 1)
        for a in fc.args:
            u[a] += 1
        usage.append(u)
    # label L is finished once every type with smallest label <= L is decided
    first_beyond = []
    for idx, fc in enumerate(types):
        first_beyond.append(fc.args[0])
    remaining = [0] + list(degrees)
    chosen = []

    def rec(i, nfac):
        if i == len(types):
            if not any(remaining):
                yield tuple(chosen)
            return
        low = first_beyond[i]
        for lab in range(1, low):
            if remaining[lab]:
                return
        u = usage[i]
        cap = min(remaining[a] // u[a] for a in set(types[i].args))
        if max_factors is not None:
            cap = min(cap, max_factors - nfac)
        for m in range(cap, -1, -1):
            for a in set(types[i].args):
                remaining[a] -= u[a] * m
            chosen.extend([types[i]] * m)
            yield from rec(i + 1, nfac + m)
            del chosen[len(chosen) - m:]
            for a in set(types[i].args):
                remaining[a] += u[a] * m

    yield from rec(0, 0)


def _key_under(factors, perm, dim):
    """Sorted factor key after relabeling ``a -> perm[a - 1]``, ignoring sign."""
    out = []
    for fc in factors:
        out.append((fc.kind, tuple(sorted(perm[a - 1] for a in fc.args))))
    out.sort()
    return tuple(out)


def canonical_relabeling(core: InvariantCore) -> InvariantCore:
    """Lexicographically smallest relabeling of ``core`` with sign +1.

    Exhaustive over all ``n!`` permutations for ``n <= 6`` labels; larger
    cores are returned unchanged (duplicates are still caught after
    translation).
    """
    n = core.labels
    if n > MAX_PERMUTED_LABELS:
        return InvariantCore(core.dim, core.factors, 1)
    best = min(_key_under(core.factors, p, core.dim) for p in itertools.permutations(range(1, n + 1)))
    return InvariantCore(core.dim, tuple(GFFactor(k, a, core.dim) for k, a in best), 1)


def _block_perms(degrees):
    """Permutations of labels that only shuffle labels of equal degree."""
    blocks = [list(g) for _, g in itertools.groupby(range(1, len(degrees) + 1), key=lambda i: degrees[i - 1])]
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        yield tuple(a for part in parts for a in part)


def enumerate_cores(spec: EnumerationSpec, stats: dict | None = None) -> Iterator[InvariantCore]:
    """Every core within ``spec`` bounds, one per relabeling class.

    Labels ``1..n`` (``n <= n_pnt``) each occur between 1 and ``n_cnt``
    times.  Cores come out grouped by label count and degree sequence in a
    fixed order.  ``stats["raw"]`` receives the number of labeled cores
    generated before symmetry reduction.
    """
    with_f = spec.group is not Group.AFFINE
    raw = 0
    total_cap = None
    if spec.max_factors is not None:
        total_cap = spec.max_factors * max(2, spec.dim)
    for n in range(1, spec.n_pnt + 1):
        types = _factor_types(n, spec.dim, with_f)
        for degrees in _degree_sequences(n, spec.n_cnt, total_cap):
            perms = list(_block_perms(degrees))
            seen = set()
            for factors in _labeled_cores(n, degrees, types, spec.max_factors):
                raw += 1
                if raw > spec.budget:
                    raise BudgetExceeded(raw, spec.budget)
                key = min(_key_under(factors, p, spec.dim) for p in perms)
                if key in seen:
                    continue
                seen.add(key)
                yield canonical_relabeling(InvariantCore(spec.dim, factors, 1))
    if stats is not None:
        stats["raw"] = raw


@dataclass(frozen=True)
class DiscoveredInvariant:
    name: str
    core: InvariantCore
    polynomial: MomentPolynomial
    k: int
    group: Group
    candidate_index: int

    @property
    def degree(self) -> int:
        return degree_order(self.core)[0]

    @property
    def order(self) -> int:
        return degree_order(self.core)[1]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "core": str(self.core),
            "degree": self.degree,
            "order": self.order,
            "k": self.k,
            "candidate_index": self.candidate_index,
            "terms": len(self.polynomial),
            "polynomial": self.polynomial.to_json(),
        }


@dataclass
class DiscoveryResult:
    spec: EnumerationSpec
    target: int | None
    seed: int
    trials: int
    max_independent: int
    selected: list
    eliminated: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def incomplete(self) -> bool:
        return self.target is not None and len(self.selected) < self.target

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "target": self.target,
            "seed": self.seed,
            "trials": self.trials,
            "max_independent": self.max_independent,
            "incomplete": self.incomplete,
            "counts": dict(self.counts),
            "selected": [s.to_json() for s in self.selected],
            "eliminated": list(self.eliminated),
        }


def _candidate_key(core, poly):
    degree, order = degree_order(core)
    return (order, degree, len(poly), str(core))


def discover(spec: EnumerationSpec, target: int | None = None, seed=0, trials: int = 5) -> DiscoveryResult:
    """Run the enumeration pipeline and greedily extract an independent set.

    Candidates are ranked by (moment order, degree, number of terms, core
    string).  When ``target`` cannot be reached the partial set is returned
    and ``result.incomplete`` is True.
    """
    stats = {}
    cores = list(enumerate_cores(spec, stats))
    eliminated = []
    counts = {"raw": stats.get("raw", 0), "enumerated": len(cores)}

    survivors = []
    n_zero = 0
    for core in cores:
        occ = core.occurrences()
        if any(c == 1 for c in occ.values()):
            eliminated.append({"core": str(core), "reason": "zero", "detail": "label used once"})
            n_zero += 1
            continue
        poly = translate(core)
        if poly.is_zero():
            eliminated.append({"core": str(core), "reason": "zero", "detail": "terms cancel"})
            n_zero += 1
            continue
        survivors.append((core, poly))
    counts["zero"] = n_zero

    survivors.sort(key=lambda cp: _candidate_key(*cp))
    unique = []
    first_of = {}
    n_dup = 0
    for core, poly in survivors:
        canon = canonicalize(poly)
        if canon in first_of:
            eliminated.append({"core": str(core), "reason": "duplicate", "duplicate_of": str(first_of[canon])})
            n_dup += 1
            continue
        first_of[canon] = core
        unique.append((core, poly))
    counts["duplicate"] = n_dup

    candidates = []
    n_skew = 0
    for core, poly in unique:
        if spec.require_true_invariants and core.n_g % 2 == 1:
            eliminated.append({"core": str(core), "reason": "skew"})
            n_skew += 1
            continue
        candidates.append((core, poly))
    counts["skew"] = n_skew
    counts["candidates"] = len(candidates)

    space = MomentVariableSpace(spec.group, spec.n_cnt, spec.dim)
    selector = GreedySelector(space, trials, seed)
    selected = []
    n_dep = 0
    examined = 0
    for idx, (core, poly) in enumerate(candidates):
        if target is not None and len(selected) >= target:
            break
        examined += 1
        if selector.offer(poly):
            selected.append(
                DiscoveredInvariant(
                    name=f"D{len(selected) + 1}",
                    core=core,
                    polynomial=poly,
                    k=normalization_exponent(core, spec.group),
                    group=spec.group,
                    candidate_index=idx,
                )
            )
        else:
            eliminated.append({"core": str(core), "reason": "dependent"})
            n_dep += 1
    counts["dependent"] = n_dep
    counts["unexamined"] = len(candidates) - examined
    counts["independent"] = len(selected)
    return DiscoveryResult(
        spec=spec,
        target=target,
        seed=seed,
        trials=trials,
        max_independent=len(space.variables),
        selected=selected,
        eliminated=eliminated,
        counts=counts,
    )
