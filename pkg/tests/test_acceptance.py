"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict in ``RESULTS``; the
conftest prints them in the terminal summary, and running this file as a
script prints them directly.
"""

from __future__ import annotations

import time

import numpy as np

from gfinv.algebra import Group, InvariantCore, evaluate, parse_polynomial, translate
from gfinv.catalog import (
    I5_PARTS,
    PRINTED_AFFINE_K,
    get_catalog,
    get_invariant,
    verify_catalog,
    verify_relations,
)
from gfinv.discovery import EnumerationSpec, discover
from gfinv.harness import invariance_check, mirror, random_pointset
from gfinv.independence import MomentVariableSpace, functional_rank
from gfinv.moments import central_moments
from gfinv.report import dumps

from _oracles import brute_force_core, random_core_spec

RESULTS: dict[int, str] = {}


def _record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def _fmt_scalars(rows):
    return ", ".join(f"{r.name}={r.scalar}" if r.match else f"{r.name}=MISMATCH" for r in rows)


def test_criterion_1_translation_ground_truth():
    f11 = translate(InvariantCore.parse("f(1,1)"))
    first = f11 == parse_polynomial("mu20 + mu02")
    hu = [r for r in verify_catalog(Group.SIMILARITY) if r.name in {f"I{i}" for i in range(1, 8)}]
    ok = first and all(r.match for r in hu)
    _record(1, ok, f"f(1,1) -> mu20+mu02 exact: {first}; Hu scalars: {_fmt_scalars(hu)}")
    assert first
    assert all(r.match for r in hu), [r.name for r in hu if not r.match]


def test_criterion_2_primitive_identities():
    results = {r.name: r for r in verify_relations()}
    wanted = ["I51 = 3*I52", "I52 = I53", "I53 = I54", "I1 = IP1", "I2 = IP2 - 2*IP3",
              "I3 = -6*IP5 + IP6", "I4 = 2*IP5 + IP6", "I5 = IP8 - 3*IP9", "I6 = IP4 - IP7"]
    bad = [w for w in wanted if not results[w].holds]
    assert set(I5_PARTS) == {"I51", "I52", "I53", "I54"}
    _record(2, not bad, f"{len(wanted) - len(bad)}/{len(wanted)} identities exact" + (f"; failing: {bad}" if bad else ""))
    assert not bad, {b: str(results[b].residual) for b in bad}


def test_criterion_3_affine_catalog_reproduction():
    rows = verify_catalog(Group.AFFINE)
    ks = {inv.name: inv.k for inv in get_catalog(Group.AFFINE)}
    k_bad = [n for n in ks if ks[n] != PRINTED_AFFINE_K[n]]
    anchors = ks["IA1"] == 4 and ks["IA2"] == 10 and ks["IA10"] == 14
    matched = [r for r in rows if r.match and r.scalar > 0]
    ok = len(rows) == 19 and len(matched) == 19 and not k_bad and anchors
    _record(3, ok, f"{len(matched)}/19 cores match; k mismatches {k_bad}; anchors {anchors}; scalars: {_fmt_scalars(rows)}")
    assert ok


def test_criterion_4_rotation3d_catalog():
    rows = {r.name: r for r in verify_catalog(Group.ROTATION3D)}
    j1_exact = rows["J1"].scalar == 1
    scal_ok = all(r.match for r in rows.values())
    ps = random_pointset(30, dim=3, seed=4)
    worst = 0.0
    passed = True
    for name in ("J1", "J2", "J3"):
        rep = invariance_check(get_invariant(name), ps, n_transforms=20, seed=0, tol=1e-8)
        worst = max(worst, max(r["rel_err"] for r in rep.per_transform))
        passed &= rep.passed
    ok = j1_exact and scal_ok and passed
    _record(4, ok, f"J1 exact {j1_exact}; scalars: {_fmt_scalars(rows.values())}; worst rel err over 20 rotations {worst:.2e}")
    assert ok


def test_criterion_5_independence_ranks():
    aff = [get_invariant(f"IA{i}").reference for i in range(1, 20)]
    hu = [get_invariant(f"I{i}").reference for i in range(1, 8)]
    pis = [get_invariant(f"IP{i}").reference for i in (1, 2, 4, 5, 6, 8)]
    aff_space = MomentVariableSpace(Group.AFFINE, 5)
    sim_space = MomentVariableSpace(Group.SIMILARITY, 3)
    assert len(aff_space.variables) == 19 and len(sim_space.variables) == 7
    r_aff = functional_rank(aff, aff_space, trials=5, seed=0)
    r_hu = functional_rank(hu, sim_space, trials=5, seed=0)
    r_pi = functional_rank(pis, sim_space, trials=5, seed=0)
    ok = r_aff == 19 and r_hu < 7 and r_pi == 6
    _record(5, ok, f"rank(IA1..IA19)={r_aff} (want 19); rank(Hu)={r_hu} (want <7); rank(PI minus 3,7,9)={r_pi} (want 6)")
    assert r_hu < 7
    assert r_pi == 6
    assert r_aff == 19


def test_criterion_6_invariance_campaign():
    ps = random_pointset(20, seed=1)
    fails = []
    worst = {}
    for inv in get_catalog(Group.AFFINE):
        rep = invariance_check(inv, ps, n_transforms=10, seed=0, tol=1e-6)
        worst["affine"] = max(worst.get("affine", 0), max(r["rel_err"] for r in rep.per_transform))
        if not rep.passed:
            fails.append(inv.name)
    sim = [get_invariant(f"I{i}") for i in range(1, 7)] + [get_invariant(f"IP{i}") for i in range(1, 10)]
    for inv in sim:
        rep = invariance_check(inv, ps, n_transforms=10, seed=0, tol=1e-8)
        worst["similarity"] = max(worst.get("similarity", 0), max(r["rel_err"] for r in rep.per_transform))
        if not rep.passed:
            fails.append(inv.name)
    rep = invariance_check(get_invariant("I7"), ps, maps=[mirror()], tol=1e-9, expect_sign=-1)
    worst["I7 mirror"] = rep.per_transform[0]["rel_err"]
    if not rep.passed or rep.baseline == 0:
        fails.append("I7 mirror")
    detail = "; ".join(f"{k} worst {v:.1e}" for k, v in worst.items())
    _record(6, not fails, detail + (f"; failing {fails}" if fails else ""))
    assert not fails


_DISCOVERY_CACHE = {}


def _affine_discovery():
    if "run" not in _DISCOVERY_CACHE:
        bounds = EnumerationSpec(dim=2, group=Group.AFFINE, n_pnt=5, n_cnt=5)
        t0 = time.perf_counter()
        first = discover(bounds, target=19, seed=0)
        elapsed = time.perf_counter() - t0
        second = discover(bounds, target=19, seed=0)
        _DISCOVERY_CACHE["run"] = (first, second, elapsed)
    return _DISCOVERY_CACHE["run"]


def test_criterion_7_discovery_reproduction():
    first, second, elapsed = _affine_discovery()
    a, b = dumps(first.to_json()), dumps(second.to_json())
    identical = a == b
    reasons = {e["reason"] for e in first.eliminated}
    itemized = {"zero", "duplicate"} <= reasons
    size = len(first.selected)
    ok = size == 19 and identical and itemized and elapsed < 120
    _record(7, ok, f"independent set size {size} (want 19, incomplete={first.incomplete}); "
                   f"zero/duplicate itemized {itemized}; byte-identical rerun {identical}; {elapsed:.1f}s")
    assert identical and itemized and elapsed < 120
    assert size == 19


def test_criterion_8_oracle_equivalence():
    rng = np.random.default_rng(8)
    cores = [random_core_spec(rng) for _ in range(50)]
    sets = [random_pointset(int(rng.integers(4, 7)), seed=100 + s) for s in range(5)]
    worst = 0.0
    nonzero = 0
    bad = []
    for factors in cores:
        core = InvariantCore.from_factors(factors)
        poly = translate(core)
        nonzero += not poly.is_zero()
        for ps in sets:
            got = evaluate(poly, central_moments(ps, max(poly.order, 1))) if not poly.is_zero() else 0.0
            want, scale = brute_force_core(core_factors(core), core.sign, ps.coords, ps.weights)
            if poly.is_zero():
                err = abs(want) / scale if scale else 0.0
            else:
                err = abs(got - want) / abs(want)
            worst = max(worst, err)
            if err > 1e-9:
                bad.append((str(core), err))
    _record(8, not bad, f"50 cores ({nonzero} nonzero) x 5 point sets; worst rel err {worst:.1e}")
    assert not bad, bad[:5]


def core_factors(core):
    return [(fc.kind, fc.args) for fc in core.factors]


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
