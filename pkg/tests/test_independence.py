from fractions import Fraction

import numpy as np
import pytest

from gfinv.algebra import Group, parse_polynomial
from gfinv.catalog import get_invariant
from gfinv.independence import (
    GreedySelector,
    MomentVariableSpace,
    functional_rank,
    jacobian,
    max_independent_count,
    select_independent_subset,
    trial_ranks,
)

P = parse_polynomial


def refs(*names):
    return [get_invariant(n).reference for n in names]


@pytest.mark.parametrize(
    "group, order, count",
    [(Group.SIMILARITY, 2, 3), (Group.SIMILARITY, 3, 7), (Group.AFFINE, 5, 19), (Group.AFFINE, 2, 4)],
)
def test_variable_counts(group, order, count):
    assert max_independent_count(MomentVariableSpace(group, order)) == count


def test_order_below_two_rejected():
    with pytest.raises(ValueError):
        max_independent_count(MomentVariableSpace(Group.SIMILARITY, 1))


def test_jacobian_exact_and_float():
    at = {(2, 0): Fraction(1), (0, 2): Fraction(2), (1, 1): Fraction(3)}
    j = jacobian([P("mu20*mu02 - mu11^2")], at)
    assert j.tolist() == [[2, 1, -6]]
    jf = jacobian([P("mu20*mu02 - mu11^2")], {k: float(v) for k, v in at.items()})
    np.testing.assert_allclose(jf, [[2.0, 1.0, -6.0]])


def test_dependent_pair():
    space = MomentVariableSpace(Group.SIMILARITY, 2)
    a = P("mu20 + mu02")
    assert functional_rank([a, a**2], space) == 1
    assert functional_rank([a, P("mu20*mu02 - mu11^2")], space) == 2


def test_order_two_similarity_has_rank_two():
    # trace^2 - (f12)^2 = g12^2 in the order-2 space: only 2 independent
    space = MomentVariableSpace(Group.SIMILARITY, 2)
    polys = [P("mu20 + mu02"), P("mu20^2 + 2*mu11^2 + mu02^2"), P("2*mu20*mu02 - 2*mu11^2")]
    assert functional_rank(polys, space) == 2


def test_hu_rank():
    space = MomentVariableSpace(Group.SIMILARITY, 3)
    assert functional_rank(refs(*[f"I{i}" for i in range(1, 8)]), space) == 6
    assert functional_rank(refs(*[f"I{i}" for i in range(1, 7)]), space) == 6


def test_primitive_subset_rank():
    space = MomentVariableSpace(Group.SIMILARITY, 3)
    assert functional_rank(refs("IP1", "IP2", "IP4", "IP5", "IP6", "IP8"), space) == 6


def test_affine_catalog_rank_is_fifteen():
    # 19 variables minus the 4-dimensional orbits of GL(2)
    space = MomentVariableSpace(Group.AFFINE, 5)
    trials = trial_ranks(refs(*[f"IA{i}" for i in range(1, 20)]), space, trials=5, seed=0)
    assert [t["rank"] for t in trials] == [15] * 5
    assert not any(t["exact"] for t in trials)
    sv = trials[0]["singular_values"]
    assert sv[14] > 1e-8 and sv[15] < 1e-12


def test_symbol_outside_space():
    with pytest.raises(ValueError, match="outside the variable space"):
        functional_rank([P("mu30")], MomentVariableSpace(Group.SIMILARITY, 2))


def test_greedy_selection_is_deterministic():
    space = MomentVariableSpace(Group.SIMILARITY, 3)
    cands = refs("I1", "IP1", "I2", "IP2", "IP3", "I3", "I4", "I5", "I6", "I7")
    a = select_independent_subset(cands, space, seed=0)
    b = select_independent_subset(cands, space, seed=0)
    assert a == b and len(a) == 6
    assert a[0] == cands[0] and cands[1] not in a[1:]


def test_greedy_respects_target():
    space = MomentVariableSpace(Group.SIMILARITY, 3)
    kept = select_independent_subset(refs("I1", "I2", "I3", "I4"), space, target=2)
    assert len(kept) == 2


def test_selector_rank_tracks():
    space = MomentVariableSpace(Group.SIMILARITY, 2)
    sel = GreedySelector(space)
    assert sel.offer(P("mu20 + mu02"))
    assert not sel.offer(P("3*mu20 + 3*mu02"))
    assert sel.rank == 1
