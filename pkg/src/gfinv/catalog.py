"""Named invariants: Hu's seven, the nine primitive invariants, nineteen
affine invariants and three 3D rotation invariants.

Each entry carries a generating-function core and an independently
transcribed reference polynomial.  :func:`verify_catalog` re-derives the
polynomial from the core and reports the rational scalar relating the two.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    CoreSum,
    Group,
    MomentPolynomial,
    parse_core_sum,
    parse_polynomial,
    scalar_ratio,
    translate,
    normalization_exponent,
)

__all__ = [
    "NamedInvariant",
    "VerifyResult",
    "RelationResult",
    "get_catalog",
    "get_invariant",
    "invariant_set",
    "verify_catalog",
    "verify_relations",
    "PRINTED_AFFINE_K",
    "I5_PARTS",
]


@dataclass(frozen=True)
class NamedInvariant:
    name: str
    group: Group
    core: CoreSum
    reference: MomentPolynomial
    k: int
    skew: bool = field(default=False)

    @property
    def dim(self) -> int:
        return self.core.dim

    @property
    def core_text(self) -> str:
        return str(self.core)

    def normalized_value(self, mv) -> float:
        """Reference polynomial evaluated on ``mv`` divided by ``mu00^k``."""
        from .algebra import evaluate

        return evaluate(self.reference, mv) / mv.m00 ** self.k


# Hu's invariants and their generating-function cores.
_HU = [
    ("I1", "f(1,1)", "mu20 + mu02"),
    ("I2", "f(1,2)^2 - 2*g(1,2)^2", "(mu20 - mu02)^2 + 4*mu11^2"),
    ("I3", "f(1,2)^3 - 3*g(1,2)^2*f(1,2)", "(mu30 - 3*mu12)^2 + (3*mu21 - mu03)^2"),
    ("I4", "f(1,2)*f(1,1)*f(2,2)", "(mu30 + mu12)^2 + (mu21 + mu03)^2"),
    (
        "I5",
        "f(2,2)*f(3,3)*f(4,4)*f(2,1)*f(3,1)*f(4,1)"
        " - f(2,2)*f(3,3)*f(4,4)*f(2,1)*g(3,1)*g(4,1)"
        " - f(2,2)*f(3,3)*f(4,4)*g(2,1)*g(3,1)*f(4,1)"
        " - f(2,2)*f(3,3)*f(4,4)*g(2,1)*f(3,1)*g(4,1)",
        "(mu30 - 3*mu12)*(mu30 + mu12)*((mu30 + mu12)^2 - 3*(mu21 + mu03)^2)"
        " + (3*mu21 - mu03)*(mu21 + mu03)*(3*(mu30 + mu12)^2 - (mu21 + mu03)^2)",
    ),
    (
        "I6",
        "f(2,2)*f(3,3)*f(1,2)*f(1,3) - f(2,2)*f(3,3)*g(1,2)*g(1,3)",
        "(mu20 - mu02)*((mu30 + mu12)^2 - (mu21 + mu03)^2)"
        " + 4*mu11*(mu30 + mu12)*(mu21 + mu03)",
    ),
    (
        "I7",
        "f(2,2)*f(3,3)*f(4,4)*g(2,1)*f(3,1)*f(4,1)"
        " - f(2,2)*f(3,3)*f(4,4)*g(2,1)*g(3,1)*g(4,1)"
        " + f(2,2)*f(3,3)*f(4,4)*f(2,1)*g(3,1)*f(4,1)"
        " + f(2,2)*f(3,3)*f(4,4)*f(2,1)*f(3,1)*g(4,1)",
        "(3*mu21 - mu03)*(mu30 + mu12)*((mu30 + mu12)^2 - 3*(mu21 + mu03)^2)"
        " - (mu30 - 3*mu12)*(mu21 + mu03)*(3*(mu30 + mu12)^2 - (mu21 + mu03)^2)",
    ),
]

# Primitive invariants: single products of generating functions.
_PI = [
    ("IP1", "f(1,1)", "mu20 + mu02"),
    ("IP2", "f(1,2)^2", "mu20^2 + mu02^2 + 2*mu11^2"),
    ("IP3", "g(1,2)^2", "mu20*mu02 - mu11^2"),
    (
        "IP4",
        "f(2,2)*f(3,3)*f(1,2)*f(1,3)",
        "mu20*(mu30 + mu12)^2 + 2*mu11*(mu30 + mu12)*(mu21 + mu03) + mu02*(mu21 + mu03)^2",
    ),
    ("IP5", "1/2*g(1,2)^2*f(1,2)", "mu21*(mu03 - mu21) + mu12*(mu30 - mu12)"),
    ("IP6", "f(1,2)^3", "mu30^2 + 3*mu21^2 + 3*mu12^2 + mu03^2"),
    (
        "IP7",
        "f(2,2)*f(3,3)*g(1,2)*g(1,3)",
        "mu20*(mu03 + mu21)^2 - 2*mu11*(mu30 + mu12)*(mu21 + mu03) + mu02*(mu30 + mu12)^2",
    ),
    (
        "IP8",
        "f(2,2)*f(3,3)*f(4,4)*f(2,1)*f(3,1)*f(4,1)",
        "mu30*(mu30 + mu12)^3"
        " + 3*(mu30 + mu12)*(mu21 + mu03)*(mu03*mu12 + 2*mu12*mu21 + mu21*mu30)"
        " + mu03*(mu21 + mu03)^3",
    ),
    (
        "IP9",
        "f(2,2)*f(3,3)*f(4,4)*f(2,1)*g(3,1)*g(4,1)",
        "mu21*(mu21 + mu03)^3"
        " - (mu30 + mu12)*(mu21 + mu03)*(mu03*mu12 - 2*mu03*mu30 + 4*mu12*mu21 + mu21*mu30)"
        " + mu12*(mu30 + mu12)^3",
    ),
]

# The four products whose sum is Hu's fifth invariant.
I5_PARTS = {
    "I51": "f(2,2)*f(3,3)*f(4,4)*f(2,1)*f(3,1)*f(4,1)",
    "I52": "f(2,2)*f(3,3)*f(4,4)*f(2,1)*g(3,1)*g(4,1)",
    "I53": "f(2,2)*f(3,3)*f(4,4)*g(2,1)*g(3,1)*f(4,1)",
    "I54": "f(2,2)*f(3,3)*f(4,4)*g(2,1)*f(3,1)*g(4,1)",
}

_ROT3D = [
    ("J1", "f(1,1)", "mu200 + mu020 + mu002"),
    (
        "J2",
        "g(1,2,3)^2",
        "mu200*mu020*mu002 + 2*mu110*mu101*mu011 - mu011^2*mu200 - mu110^2*mu002"
        " - mu101^2*mu020",
    ),
    (
        "J3",
        "f(1,1)*f(2,2) - f(1,2)^2",
        "mu020*mu002 - mu011^2 + mu200*mu002 - mu101^2 + mu200*mu020 - mu110^2",
    ),
]

# (name, core, numerator, printed power of mu00 in the denominator)
_AFFINE = [
    (
        "IA1",
        "g(1,2)^2",
        (
            "mu20*mu02 - mu11^2"
        ),
        4,
    ),
    (
        "IA2",
        "g(1,2)^2*g(1,3)*g(2,4)*g(3,4)^2",
        (
            "-mu03^2*mu30^2 + 6*mu03*mu12*mu21*mu30 - 4*mu03*mu21^3 - 4*mu12^3*mu30 + "
            "3*mu12^2*mu21^2"
        ),
        10,
    ),
    (
        "IA3",
        "g(1,2)*g(1,3)*g(2,3)^2",
        (
            "mu02*mu12*mu30 - mu02*mu21^2 - mu03*mu11*mu30 + mu03*mu20*mu21 + "
            "mu11*mu12*mu21 - mu12^2*mu20"
        ),
        7,
    ),
    (
        "IA4",
        "g(1,2)*g(1,3)*g(1,5)*g(2,4)*g(3,4)*g(4,5)",
        (
            "mu02^3*mu30^2 - 6*mu02^2*mu11*mu21*mu30 + 3*mu02^2*mu20*mu21^2 + "
            "6*mu02*mu11^2*mu12*mu30 + 6*mu02*mu11^2*mu21^2 - 12*mu02*mu11*mu12*mu20*mu21 + "
            "3*mu02*mu12^2*mu20^2 + mu03^2*mu20^3 - 2*mu03*mu11^3*mu30 + "
            "6*mu03*mu11^2*mu20*mu21 - 6*mu03*mu11*mu12*mu20^2 - 6*mu11^3*mu12*mu21 + "
            "6*mu11^2*mu12^2*mu20"
        ),
        11,
    ),
    (
        "IA5",
        "g(1,2)^4",
        (
            "mu04*mu40 - 4*mu13*mu31 + 3*mu22^2"
        ),
        6,
    ),
    (
        "IA6",
        "g(1,2)^2*g(1,3)^2*g(2,3)^2",
        (
            "mu04*mu22*mu40 - mu04*mu31^2 - mu13^2*mu40 + 2*mu13*mu22*mu31 - mu22^3"
        ),
        9,
    ),
    (
        "IA7",
        "g(1,2)^2*g(1,3)^2",
        (
            "mu02^2*mu40 - 4*mu02*mu11*mu31 + 2*mu02*mu20*mu22 + mu04*mu20^2 + "
            "4*mu11^2*mu22 - 4*mu11*mu13*mu20"
        ),
        7,
    ),
    (
        "IA8",
        "g(1,2)^2*g(2,3)^2*g(3,4)^2",
        (
            "mu02^2*mu22*mu40 - mu02^2*mu31^2 + mu02*mu04*mu20*mu40 - 2*mu02*mu11*mu13*mu40 "
            "+ 2*mu02*mu11*mu22*mu31 - 2*mu02*mu13*mu20*mu31 + mu02*mu20*mu22^2 - "
            "2*mu04*mu11*mu20*mu31 + mu04*mu20^2*mu22 + 4*mu11^2*mu13*mu31 - "
            "4*mu11^2*mu22^2 + 2*mu11*mu13*mu20*mu22 - mu13^2*mu20^2"
        ),
        10,
    ),
    (
        "IA9",
        "g(1,2)^2*g(1,5)*g(2,3)*g(2,5)*g(3,4)^2*g(4,5)",
        (
            "mu03^2*mu21^2*mu40 - 2*mu03^2*mu21*mu30*mu31 + mu03^2*mu22*mu30^2 - "
            "2*mu03*mu12^2*mu21*mu40 + 2*mu03*mu12^2*mu30*mu31 - 2*mu03*mu12*mu13*mu30^2 + "
            "2*mu03*mu12*mu21^2*mu31 + 2*mu03*mu13*mu21^2*mu30 - 2*mu03*mu21^3*mu22 + "
            "mu04*mu12^2*mu30^2 - 2*mu04*mu12*mu21^2*mu30 + mu04*mu21^4 + mu12^4*mu40 - "
            "2*mu12^3*mu21*mu31 - 2*mu12^3*mu22*mu30 + 2*mu12^2*mu13*mu21*mu30 + "
            "3*mu12^2*mu21^2*mu22 - 2*mu12*mu13*mu21^3"
        ),
        13,
    ),
    (
        "IA10",
        "g(1,2)^4*g(1,3)*g(2,4)*g(3,4)^4",
        (
            "-mu05^2*mu50^2 + 10*mu05*mu14*mu41*mu50 - 4*mu05*mu23*mu32*mu50 - "
            "16*mu05*mu23*mu41^2 + 12*mu05*mu32^2*mu41 - 16*mu14^2*mu32*mu50 - "
            "9*mu14^2*mu41^2 + 12*mu14*mu23^2*mu50 + 76*mu14*mu23*mu32*mu41 - "
            "48*mu14*mu32^3 - 48*mu23^3*mu41 + 32*mu23^2*mu32^2"
        ),
        14,
    ),
    (
        "IA11",
        "g(1,2)^3*g(2,4)^2*g(3,4)^3",
        (
            "3*mu30*mu23^2*mu12 + 9*mu41*mu23*mu12^2 + mu23*mu05*mu30^2 + "
            "9*mu32*mu14*mu21^2 + 3*mu21*mu32^2*mu03 + mu50*mu32*mu03^2 - mu41^2*mu03^2 - "
            "9*mu32^2*mu12^2 - 9*mu23^2*mu21^2 - mu14^2*mu30^2 - mu50*mu03*mu05*mu30 + "
            "3*mu50*mu03*mu14*mu21 - 3*mu50*mu03*mu23*mu12 + 3*mu41*mu12*mu05*mu30 + "
            "2*mu41*mu03*mu14*mu30 + 3*mu41*mu12*mu32*mu03 - 6*mu41*mu03*mu23*mu21 - "
            "9*mu41*mu12*mu14*mu21 - 3*mu32*mu21*mu05*mu30 + 9*mu32*mu21*mu23*mu12 - "
            "mu32*mu03*mu23*mu30 - 6*mu32*mu12*mu14*mu30 + 3*mu23*mu30*mu14*mu21"
        ),
        12,
    ),
    (
        "IA12",
        "g(1,2)*g(1,3)^2*g(2,3)^3",
        (
            "mu50*mu13*mu03 - mu50*mu04*mu12 - 3*mu41*mu22*mu03 + mu41*mu13*mu12 + "
            "2*mu41*mu04*mu21 + 3*mu32*mu31*mu03 - 5*mu32*mu13*mu21 + 3*mu32*mu22*mu12 - "
            "mu32*mu04*mu30 - mu23*mu40*mu03 - 5*mu23*mu31*mu12 + 3*mu23*mu22*mu21 + "
            "3*mu23*mu13*mu30 + 2*mu14*mu40*mu12 + mu14*mu31*mu21 - 3*mu14*mu22*mu30 - "
            "mu05*mu40*mu21 + mu05*mu31*mu30"
        ),
        9,
    ),
    (
        "IA13",
        "g(1,2)*g(1,3)^3*g(1,4)*g(2,4)*g(3,4)^2",
        (
            "-mu02*mu05*mu31*mu50 + mu02*mu05*mu40*mu41 + mu02*mu14*mu22*mu50 + "
            "3*mu02*mu14*mu31*mu41 - 4*mu02*mu14*mu32*mu40 - 4*mu02*mu22*mu23*mu41 + "
            "3*mu02*mu22*mu32^2 + 3*mu02*mu23^2*mu40 - 2*mu02*mu23*mu31*mu32 + "
            "mu04*mu14*mu20*mu50 - 4*mu04*mu20*mu23*mu41 + 3*mu04*mu20*mu32^2 + "
            "2*mu05*mu11*mu22*mu50 - 2*mu05*mu11*mu31*mu41 - mu05*mu13*mu20*mu50 + "
            "mu05*mu20*mu22*mu41 - 2*mu11*mu13*mu14*mu50 + 8*mu11*mu13*mu23*mu41 - "
            "6*mu11*mu13*mu32^2 - 6*mu11*mu14*mu22*mu41 + 8*mu11*mu14*mu31*mu32 + "
            "4*mu11*mu22*mu23*mu32 - 6*mu11*mu23^2*mu31 + 3*mu13*mu14*mu20*mu41 - "
            "2*mu13*mu20*mu23*mu32 - 4*mu14*mu20*mu22*mu32 + 3*mu20*mu22*mu23^2"
        ),
        12,
    ),
    (
        "IA14",
        "g(1,3)*g(1,4)*g(2,4)^2*g(3,4)^2",
        (
            "mu02^2*mu12*mu50 - 2*mu02^2*mu21*mu41 + mu02^2*mu30*mu32 - mu02*mu03*mu11*mu50 "
            "+ mu02*mu03*mu20*mu41 - mu02*mu11*mu12*mu41 + 5*mu02*mu11*mu21*mu32 - "
            "3*mu02*mu11*mu23*mu30 - mu02*mu12*mu20*mu32 + mu02*mu14*mu20*mu30 - "
            "mu02*mu20*mu21*mu23 + 2*mu03*mu11^2*mu41 - 3*mu03*mu11*mu20*mu32 + "
            "mu03*mu20^2*mu23 - mu05*mu11*mu20*mu30 + mu05*mu20^2*mu21 - 2*mu11^2*mu12*mu32 "
            "+ 2*mu11^2*mu14*mu30 - 2*mu11^2*mu21*mu23 + 5*mu11*mu12*mu20*mu23 - "
            "mu11*mu14*mu20*mu21 - 2*mu12*mu14*mu20^2"
        ),
        10,
    ),
    (
        "IA15",
        "g(1,2)^3*g(1,3)^2*g(2,4)^2*g(3,4)",
        (
            "-mu03*mu05*mu30*mu50 + 2*mu03*mu14*mu21*mu50 + 3*mu03*mu14*mu30*mu41 - "
            "8*mu03*mu21*mu23*mu41 + 6*mu03*mu21*mu32^2 - 2*mu03*mu23*mu30*mu32 + "
            "mu05*mu12*mu21*mu50 + 2*mu05*mu12*mu30*mu41 - 2*mu05*mu21^2*mu41 - "
            "2*mu12^2*mu14*mu50 + 8*mu12^2*mu23*mu41 - 6*mu12^2*mu32^2 - "
            "3*mu12*mu14*mu21*mu41 - 8*mu12*mu14*mu30*mu32 + 2*mu12*mu21*mu23*mu32 + "
            "6*mu12*mu23^2*mu30 + 8*mu14*mu21^2*mu32 - 6*mu21^2*mu23^2"
        ),
        12,
    ),
    (
        "IA16",
        "g(1,2)*g(1,3)*g(1,4)^2*g(2,4)*g(3,4)",
        (
            "-2*mu40*mu11*mu02*mu13 + mu40*mu11^2*mu04 + mu40*mu02^2*mu22 - "
            "2*mu31*mu20*mu11*mu04 + 2*mu31*mu11*mu02*mu22 - mu02^2*mu31^2 + "
            "2*mu31*mu20*mu02*mu13 + 2*mu22*mu20*mu11*mu13 + mu22*mu20^2*mu04 - "
            "mu11^2*mu22^2 - 2*mu20*mu02*mu22^2 - mu20^2*mu13^2"
        ),
        10,
    ),
    (
        "IA17",
        "g(1,2)*g(1,3)*g(1,4)*g(2,3)^2*g(2,4)",
        (
            "mu20*mu30*mu13*mu03 + mu20*mu04*mu21^2 - mu20*mu21*mu22*mu03 - "
            "mu20*mu21*mu13*mu12 + mu20*mu22*mu12^2 - mu20*mu30*mu04*mu12 + "
            "2*mu11*mu21*mu22*mu12 + 2*mu11*mu21*mu31*mu03 + 2*mu11*mu12*mu13*mu30 - "
            "2*mu11*mu30*mu22*mu03 - 2*mu11*mu31*mu12^2 - 2*mu11*mu13*mu21^2 + "
            "mu02*mu22*mu21^2 - mu02*mu21*mu31*mu12 + mu02*mu40*mu12^2 - "
            "mu02*mu03*mu40*mu21 + mu02*mu03*mu31*mu30 - mu02*mu30*mu22*mu12"
        ),
        10,
    ),
    (
        "IA18",
        "g(1,3)^2*g(2,4)^3*g(3,4)",
        (
            "mu02*mu03*mu40*mu21 - 2*mu40*mu12*mu03*mu11 + mu40*mu03^2*mu20 - "
            "3*mu02*mu21*mu31*mu12 + 2*mu11*mu21*mu31*mu03 - mu02*mu03*mu31*mu30 + "
            "6*mu11*mu31*mu12^2 - 4*mu31*mu12*mu03*mu20 + 3*mu02*mu30*mu22*mu12 - "
            "12*mu11*mu21*mu22*mu12 + 3*mu20*mu22*mu12^2 + 3*mu02*mu22*mu21^2 + "
            "3*mu20*mu21*mu22*mu03 - 4*mu13*mu30*mu21*mu02 + 6*mu11*mu13*mu21^2 - "
            "mu20*mu30*mu13*mu03 + 2*mu11*mu12*mu13*mu30 - 3*mu20*mu21*mu13*mu12 + "
            "mu04*mu30^2*mu02 - 2*mu04*mu21*mu30*mu11 + mu20*mu30*mu04*mu12"
        ),
        10,
    ),
    (
        "IA19",
        "g(1,2)*g(1,3)*g(2,3)^4",
        (
            "mu02*mu14*mu50 - 4*mu02*mu23*mu41 + 3*mu02*mu32^2 - mu05*mu11*mu50 + "
            "mu05*mu20*mu41 + 3*mu11*mu14*mu41 - 2*mu11*mu23*mu32 - 4*mu14*mu20*mu32 + "
            "3*mu20*mu23^2"
        ),
        9,
    ),
]

PRINTED_AFFINE_K = {name: k for name, _, _, k in _AFFINE}


def _entry(name, group, core_text, ref_text, dim=2):
    core = parse_core_sum(core_text, dim)
    return NamedInvariant(
        name=name,
        group=group,
        core=core,
        reference=parse_polynomial(ref_text, dim),
        k=normalization_exponent(core, group),
        skew=core.is_skew,
    )


@functools.lru_cache(maxsize=None)
def _catalog(group: Group) -> tuple:
    if group is Group.SIMILARITY:
        return tuple(_entry(n, group, c, r) for n, c, r in _HU + _PI)
    if group is Group.AFFINE:
        return tuple(_entry(n, group, c, "".join(r), 2) for n, c, r, _ in _AFFINE)
    return tuple(_entry(n, group, c, r, 3) for n, c, r in _ROT3D)


def get_catalog(group) -> list[NamedInvariant]:
    """All named invariants for ``group`` (similarity, affine or rotation3d)."""
    return list(_catalog(Group.parse(group)))


def get_invariant(name: str) -> NamedInvariant:
    for group in Group:
        for inv in _catalog(group):
            if inv.name == name:
                return inv
    raise KeyError(f"no catalog invariant named {name!r}")


_SETS = {
    "hu": (Group.SIMILARITY, [f"I{i}" for i in range(1, 8)]),
    "pi": (Group.SIMILARITY, [f"IP{i}" for i in range(1, 10)]),
    "affine19": (Group.AFFINE, [f"IA{i}" for i in range(1, 20)]),
    "3d": (Group.ROTATION3D, ["J1", "J2", "J3"]),
}


def invariant_set(set_name: str) -> list[NamedInvariant]:
    """Named descriptor sets: ``hu``, ``pi``, ``affine19`` and ``3d``."""
    try:
        _, names = _SETS[set_name]
    except KeyError:
        raise KeyError(f"unknown invariant set {set_name!r}; choose from {sorted(_SETS)}") from None
    return [get_invariant(n) for n in names]


@dataclass
class VerifyResult:
    name: str
    match: bool
    scalar: Fraction | None
    translated: MomentPolynomial
    reference: MomentPolynomial

    @property
    def residual(self) -> MomentPolynomial:
        """``translated - scalar * reference`` (leading-term scalar if none)."""
        r = self.scalar
        if r is None:
            key, c = self.reference.leading()
            r = self.translated.terms.get(key, c) / c
        return self.translated - self.reference * r

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "match": self.match,
            "scalar": None if self.scalar is None else str(self.scalar),
        }
        if not self.match:
            out["translated"] = str(self.translated)
            out["reference"] = str(self.reference)
            out["residual"] = str(self.residual)
        return out


def verify_catalog(group) -> list[VerifyResult]:
    """Translate every core in ``group`` and compare with its reference.

    An entry matches when the two polynomials differ by a positive rational
    scalar.
    """
    out = []
    for inv in get_catalog(group):
        t = translate(inv.core)
        r = scalar_ratio(t, inv.reference)
        out.append(VerifyResult(inv.name, r is not None and r > 0, r, t, inv.reference))
    return out


@dataclass
class RelationResult:
    name: str
    residual: MomentPolynomial

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        return {"relation": self.name, "holds": self.holds, "residual": str(self.residual)}


def verify_relations() -> list[RelationResult]:
    """Exact identities among Hu's invariants and the primitive invariants.

    The ``I5`` part relations are checked on translated cores; the
    decompositions of ``I1..I6`` on the reference polynomials.
    """
    part = {name: translate(parse_core_sum(text)) for name, text in I5_PARTS.items()}
    ref = {inv.name: inv.reference for inv in get_catalog(Group.SIMILARITY)}
    out = [
        RelationResult("I51 = 3*I52", part["I51"] - 3 * part["I52"]),
        RelationResult("I52 = I53", part["I52"] - part["I53"]),
        RelationResult("I53 = I54", part["I53"] - part["I54"]),
        RelationResult("I5 = I51 - 3*I52", ref["I5"] - (part["I51"] - 3 * part["I52"])),
        RelationResult("I1 = IP1", ref["I1"] - ref["IP1"]),
        RelationResult("I2 = IP2 - 2*IP3", ref["I2"] - (ref["IP2"] - 2 * ref["IP3"])),
        RelationResult("I3 = -6*IP5 + IP6", ref["I3"] - (-6 * ref["IP5"] + ref["IP6"])),
        RelationResult("I4 = 2*IP5 + IP6", ref["I4"] - (2 * ref["IP5"] + ref["IP6"])),
        RelationResult("I5 = IP8 - 3*IP9", ref["I5"] - (ref["IP8"] - 3 * ref["IP9"])),
        RelationResult("I6 = IP4 - IP7", ref["I6"] - (ref["IP4"] - ref["IP7"])),
    ]
    i7 = parse_core_sum(get_invariant("I7").core_text)
    parts = [translate(CoreSum(((c, core),))) for c, core in i7.terms]
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            out.append(RelationResult(f"I7 part {a + 1} = I7 part {b + 1}", parts[a] - parts[b]))
    return out
