"""Generating-function cores and their translation into moment polynomials.

Two primitives build every invariant core:

* ``f(i, j)``: dot product of the position vectors of points ``i`` and ``j``
  (``i == j`` allowed);
* ``g(i, j)`` in 2D / ``g(i, j, k)`` in 3D: determinant of the matrix whose
  rows are the position vectors of distinct points.

A core is a product of such factors over abstract point labels ``1..n``.
Integrating the core against the shape measure once per label factorises
per label, so every coordinate monomial ``x_i^a y_i^b`` turns into the
central moment ``mu_ab``.  Coefficients stay exact (``Fraction``) until
numerical evaluation.
"""

from __future__ import annotations

import ast
import functools
import itertools
import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Group",
    "GFFactor",
    "InvariantCore",
    "CoreSum",
    "MomentPolynomial",
    "CoreSyntaxError",
    "parse_core",
    "parse_core_sum",
    "parse_polynomial",
    "translate",
    "degree_order",
    "canonicalize",
    "scalar_ratio",
    "normalization_exponent",
    "evaluate",
    "differentiate",
    "moment_name",
]


class Group(str, Enum):
    SIMILARITY = "similarity"
    AFFINE = "affine"
    ROTATION3D = "rotation3d"

    @classmethod
    def parse(cls, value) -> "Group":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class CoreSyntaxError(ValueError):
    pass


def _perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct items)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# --------------------------------------------------------------------------
# factors and cores

@dataclass(frozen=True, order=True)
class GFFactor:
    """One generating-function factor in canonical argument order.

    Build through :meth:`make`, which sorts the arguments and returns the
    sign picked up by transposing determinant rows.
    """

    kind: str
    args: tuple
    dim: int = 2

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")
        if self.kind not in ("f", "g"):
            raise ValueError(f"unknown generating function {self.kind!r}")
        if any(not isinstance(a, int) or a < 1 for a in self.args):
            raise ValueError(f"labels must be positive integers, got {self.args}")
        if self.kind == "f":
            if len(self.args) != 2:
                raise ValueError("f takes exactly two labels")
        else:
            if len(self.args) != self.dim:
                raise ValueError(f"g takes {self.dim} labels in {self.dim}D")
            if len(set(self.args)) != len(self.args):
                raise ValueError(f"g{self.args} has repeated labels and is identically zero")
        if tuple(sorted(self.args)) != self.args:
            raise ValueError("arguments not in canonical order; use GFFactor.make")

    @classmethod
    def make(cls, kind: str, args, dim: int = 2) -> tuple["GFFactor", int]:
        args = tuple(int(a) for a in args)
        if kind == "g":
            if len(set(args)) != len(args):
                raise ValueError(f"g{args} has repeated labels and is identically zero")
            return cls(kind, tuple(sorted(args)), dim), _perm_sign(args)
        return cls(kind, tuple(sorted(args)), dim), 1

    def __str__(self):
        return f"{self.kind}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class InvariantCore:
    """A signed product of generating-function factors.

    Labels must cover ``1..n`` without gaps.
    """

    dim: int
    factors: tuple
    sign: int = 1

    def __post_init__(self):
        factors = tuple(sorted(self.factors))
        if not factors:
            raise ValueError("a core needs at least one factor")
        if any(fc.dim != self.dim for fc in factors):
            raise ValueError("factor dimension does not match core dimension")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        labels = {a for fc in factors for a in fc.args}
        if labels != set(range(1, len(labels) + 1)):
            raise ValueError(f"point labels {sorted(labels)} are not contiguous from 1")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_factors(cls, specs, dim: int = 2) -> "InvariantCore":
        """Build from ``[("f", (1, 2)), ("g", (2, 1)), ...]``."""
        sign = 1
        factors = []
        for kind, args in specs:
            fc, s = GFFactor.make(kind, args, dim)
            factors.append(fc)
            sign *= s
        return cls(dim, tuple(factors), sign)

    @classmethod
    def parse(cls, text: str, dim: int = 2) -> "InvariantCore":
        cs = parse_core_sum(text, dim)
        if len(cs.terms) != 1 or abs(cs.terms[0][0]) != 1:
            raise CoreSyntaxError(f"{text!r} is not a single signed product")
        coeff, core = cs.terms[0]
        return core if coeff > 0 else core.negated()

    def negated(self) -> "InvariantCore":
        return InvariantCore(self.dim, self.factors, -self.sign)

    @property
    def labels(self) -> int:
        return max(a for fc in self.factors for a in fc.args)

    def occurrences(self) -> Counter:
        return Counter(a for fc in self.factors for a in fc.args)

    @property
    def n_f(self) -> int:
        return sum(1 for fc in self.factors if fc.kind == "f")

    @property
    def n_g(self) -> int:
        return sum(1 for fc in self.factors if fc.kind == "g")

    def relabeled(self, mapping) -> "InvariantCore":
        """Apply ``old label -> mapping[old]``; the sign tracks row swaps."""
        return InvariantCore.from_factors(
            [(fc.kind, tuple(mapping[a] for a in fc.args)) for fc in self.factors], self.dim
        ).with_sign_times(self.sign)

    def with_sign_times(self, s: int) -> "InvariantCore":
        return InvariantCore(self.dim, self.factors, self.sign * s)

    @property
    def body(self) -> str:
        """Factor string without the sign."""
        parts = []
        for fc, grp in itertools.groupby(self.factors):
            power = len(list(grp))
            parts.append(str(fc) if power == 1 else f"{fc}^{power}")
        return "*".join(parts)

    def __str__(self):
        return self.body if self.sign > 0 else "-" + self.body


@dataclass(frozen=True)
class CoreSum:
    """Rational linear combination of cores, e.g. ``f(1,2)^2 - 2*g(1,2)^2``."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((Fraction(c), core) for c, core in self.terms)
        if not terms:
            raise ValueError("empty core sum")
        dims = {core.dim for _, core in terms}
        if len(dims) != 1:
            raise ValueError("mixed dimensions in core sum")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, core: InvariantCore) -> "CoreSum":
        return cls(((Fraction(1), core),))

    @property
    def dim(self) -> int:
        return self.terms[0][1].dim

    @property
    def is_skew(self) -> bool:
        """Every summand carries an odd number of ``g`` factors."""
        return all(core.n_g % 2 == 1 for _, core in self.terms)

    def __str__(self):
        out = []
        for i, (c, core) in enumerate(self.terms):
            c = c * core.sign
            neg = c < 0
            mag = abs(c)
            text = core.body if mag == 1 else f"{mag}*{core.body}"
            if i == 0:
                out.append("-" + text if neg else text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)


# --------------------------------------------------------------------------
# core text syntax

_CORE_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<fn>[fg])\s*\(|(?P<op>[-+*/^(),]))")


def parse_core_sum(text: str, dim: int = 2) -> CoreSum:
    """Parse ``f(1,2)*g(1,2)^2``-style products, optionally combined with
    rational coefficients and ``+``/``-``."""
    tokens = []
    pos = 0
    text_s = text.rstrip()
    while pos < len(text_s):
        m = _CORE_TOKEN.match(text_s, pos)
        if not m:
            raise CoreSyntaxError(f"unexpected character at offset {pos} in {text!r}")
        if m.group("num"):
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("fn"):
            tokens.append(("fn", m.group("fn"), m.start("fn")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text_s)))
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise CoreSyntaxError(f"expected {want!r} at offset {tok[2]} in {text!r}")
        i += 1
        return tok

    def atom():
        _, fn, _ = take("fn")
        args = [take("num")[1]]
        while peek()[1] == ",":
            take("op", ",")
            args.append(take("num")[1])
        take("op", ")")
        return fn, tuple(args)

    def power():
        if peek()[1] == "^":
            take("op", "^")
            return take("num")[1]
        return 1

    def factor(coeff, specs):
        tok = peek()
        if tok[0] == "num":
            num = take("num")[1]
            den = 1
            if peek()[1] == "/":
                take("op", "/")
                den = take("num")[1]
            return coeff * Fraction(num, den)
        if tok[0] == "fn":
            spec = atom()
            specs.extend([spec] * power())
            return coeff
        if tok[1] == "(":
            take("op", "(")
            spec = atom()
            take("op", ")")
            specs.extend([spec] * power())
            return coeff
        raise CoreSyntaxError(f"unexpected token at offset {tok[2]} in {text!r}")

    terms = []
    sign = 1
    if peek()[1] in ("+", "-"):
        sign = -1 if take("op")[1] == "-" else 1
    while True:
        coeff = Fraction(sign)
        specs = []
        coeff = factor(coeff, specs)
        while peek()[1] == "*" or peek()[0] == "fn" or peek()[1] == "(":
            if peek()[1] == "*":
                take("op", "*")
            coeff = factor(coeff, specs)
        if not specs:
            raise CoreSyntaxError(f"term without generating functions in {text!r}")
        try:
            core = InvariantCore.from_factors(specs, dim)
        except ValueError as exc:
            raise CoreSyntaxError(f"{text!r}: {exc}") from None
        terms.append((coeff, core))
        tok = peek()
        if tok[0] == "end":
            break
        if tok[1] not in ("+", "-"):
            raise CoreSyntaxError(f"unexpected token at offset {tok[2]} in {text!r}")
        sign = -1 if take("op")[1] == "-" else 1
    return CoreSum(tuple(terms))


def parse_core(text: str, dim: int = 2):
    """Parse a core; returns an :class:`InvariantCore` for plain signed
    products and a :class:`CoreSum` otherwise."""
    cs = parse_core_sum(text, dim)
    if len(cs.terms) == 1 and abs(cs.terms[0][0]) == 1:
        coeff, core = cs.terms[0]
        return core if coeff > 0 else core.negated()
    return cs


# --------------------------------------------------------------------------
# moment polynomials

def moment_name(idx) -> str:
    if all(p < 10 for p in idx):
        return "mu" + "".join(map(str, idx))
    return "mu_" + "_".join(map(str, idx))


class MomentPolynomial:
    """Polynomial over moment symbols with exact rational coefficients.

    A term key is the sorted tuple of the moment multi-indices in the
    monomial, e.g. ``((0, 2), (2, 0))`` for ``mu02*mu20``.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping | None = None):
        self.dim = dim
        clean = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = tuple(sorted(tuple(i) for i in key))
                if any(len(i) != dim for i in key):
                    raise ValueError(f"moment index arity does not match dim {dim}: {key}")
                clean[key] = clean.get(key, 0) + c
        self._terms = {k: v for k, v in sorted(clean.items()) if v}
        self._hash = None

    @classmethod
    def symbol(cls, idx, dim=None) -> "MomentPolynomial":
        idx = tuple(idx)
        return cls(dim or len(idx), {(idx,): 1})

    @classmethod
    def constant(cls, c, dim: int = 2) -> "MomentPolynomial":
        return cls(dim, {(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest number of moment factors in a term."""
        return max((len(k) for k in self._terms), default=0)

    @property
    def order(self) -> int:
        """Highest moment order appearing."""
        return max((sum(i) for k in self._terms for i in k), default=0)

    def symbols(self) -> set:
        return {i for k in self._terms for i in k}

    def leading(self):
        """``(key, coefficient)`` of the lexicographically first term."""
        key = next(iter(self._terms))
        return key, self._terms[key]

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MomentPolynomial):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MomentPolynomial.constant(other, self.dim)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) + v
        return MomentPolynomial(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return MomentPolynomial(self.dim, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MomentPolynomial(self.dim, {k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = defaultdict(Fraction)
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                terms[tuple(sorted(k1 + k2))] += v1 * v2
        return MomentPolynomial(self.dim, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = MomentPolynomial.constant(1, self.dim)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MomentPolynomial.constant(other, self.dim)
        if not isinstance(other, MomentPolynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"MomentPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for n, (key, c) in enumerate(self._terms.items()):
            mono = "*".join(
                moment_name(i) if e == 1 else f"{moment_name(i)}^{e}"
                for i, e in Counter(key).items()
            )
            mag = abs(c)
            if not mono:
                text = str(mag)
            elif mag == 1:
                text = mono
            else:
                text = f"{mag}*{mono}"
            if n == 0:
                out.append("-" + text if c < 0 else text)
            else:
                out.append((" - " if c < 0 else " + ") + text)
        return "".join(out)

    def to_json(self) -> list:
        return [
            {"coeff": f"{c.numerator}/{c.denominator}", "monomial": [list(i) for i in key]}
            for key, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data, dim: int) -> "MomentPolynomial":
        return cls(dim, {tuple(tuple(i) for i in t["monomial"]): Fraction(t["coeff"]) for t in data})


_NAME = re.compile(r"mu(?:_(\d+(?:_\d+)+)|(\d+))$")


def _parse_name(name, dim):
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"unknown symbol {name!r}")
    if m.group(1):
        idx = tuple(int(p) for p in m.group(1).split("_"))
    else:
        idx = tuple(int(c) for c in m.group(2))
    if len(idx) != dim:
        raise ValueError(f"symbol {name!r} is not a {dim}D moment")
    return idx


def parse_polynomial(text: str, dim: int = 2) -> MomentPolynomial:
    """Parse arithmetic over ``mu20``-style symbols (``+ - * ** ^``, integer
    and ``a/b`` rational constants, parentheses)."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div) and isinstance(right, Fraction):
                return left / right
            if isinstance(node.op, ast.Pow) and isinstance(right, Fraction) and right.denominator == 1:
                return left ** int(right)
            raise ValueError(f"unsupported operation in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return MomentPolynomial.symbol(_parse_name(node.id, dim))
        raise ValueError(f"unsupported syntax in {text!r}")

    out = walk(tree)
    if isinstance(out, Fraction):
        out = MomentPolynomial.constant(out, dim)
    return out


# --------------------------------------------------------------------------
# translation

_BITS = 6
_MASK = (1 << _BITS) - 1


def _slot(label, axis, dim):
    return 1 << (((label - 1) * dim + axis) * _BITS)


@functools.lru_cache(maxsize=None)
def _expand_factor(fc: GFFactor) -> tuple:
    """Coordinate-monomial expansion of one factor as packed exponents."""
    dim = fc.dim
    if fc.kind == "f":
        i, j = fc.args
        return tuple((_slot(i, d, dim) + _slot(j, d, dim), 1) for d in range(dim))
    rows = fc.args
    out = []
    for perm in itertools.permutations(range(dim)):
        # axis d taken from row perm[d]
        mono = sum(_slot(rows[perm[d]], d, dim) for d in range(dim))
        out.append((mono, _perm_sign(perm)))
    return tuple(out)


@functools.lru_cache(maxsize=200_000)
def _translate_core(core: InvariantCore, central: bool) -> MomentPolynomial:
    dim = core.dim
    n = core.labels
    if central and any(c == 1 for c in core.occurrences().values()):
        # a label used once contributes a first-order central moment, which is 0
        return MomentPolynomial(dim)
    poly = {0: core.sign}
    for fc in core.factors:
        nxt = defaultdict(int)
        for m, c in poly.items():
            for fm, fcoef in _expand_factor(fc):
                nxt[m + fm] += c * fcoef
        poly = {m: c for m, c in nxt.items() if c}
        if not poly:
            return MomentPolynomial(dim)
    terms = defaultdict(int)
    for packed, c in poly.items():
        key = []
        for label in range(n):
            idx = []
            for d in range(dim):
                idx.append((packed >> ((label * dim + d) * _BITS)) & _MASK)
            key.append(tuple(idx))
        terms[tuple(sorted(key))] += c
    return MomentPolynomial(dim, terms)


def translate(core, central: bool = True) -> MomentPolynomial:
    """Moment polynomial obtained by integrating ``core`` once per label.

    With ``central=True`` (the default) first-order moments are treated as
    zero, so any core with a label occurring exactly once translates to 0.
    """
    if isinstance(core, CoreSum):
        out = MomentPolynomial(core.dim)
        for c, term in core.terms:
            out = out + _translate_core(term, central) * c
        return out
    if isinstance(core, str):
        return translate(parse_core(core), central)
    return _translate_core(core, central)


def degree_order(core) -> tuple[int, int]:
    """``(number of distinct labels, largest occurrence count of a label)``."""
    if isinstance(core, CoreSum):
        pairs = [degree_order(c) for _, c in core.terms]
        return max(p[0] for p in pairs), max(p[1] for p in pairs)
    occ = core.occurrences()
    return len(occ), max(occ.values())


def canonicalize(p: MomentPolynomial) -> MomentPolynomial:
    """Scale so the lexicographically first term has coefficient +1."""
    if p.is_zero():
        return p
    _, lead = p.leading()
    return p / lead


def scalar_ratio(a: MomentPolynomial, b: MomentPolynomial):
    """Rational ``r`` with ``a == r * b``, or ``None`` if not proportional.

    Two zero polynomials give ``Fraction(1)``; exactly one zero gives None.
    """
    if a.is_zero() or b.is_zero():
        return Fraction(1) if a.is_zero() and b.is_zero() else None
    if canonicalize(a) != canonicalize(b):
        return None
    return a.leading()[1] / b.leading()[1]


def normalization_exponent(core, group) -> int:
    """Power ``k`` of ``mu00`` dividing the translated core.

    Affine: labels plus ``g`` factors (``f`` is not affine-covariant).
    Similarity (2D): labels plus all factors.  Rotation3D: 0, rotations
    leave ``mu000`` unchanged.
    """
    group = Group.parse(group)
    if isinstance(core, CoreSum):
        ks = {normalization_exponent(c, group) for _, c in core.terms}
        if len(ks) != 1:
            raise ValueError(f"summands of {core} need different normalizations {sorted(ks)}")
        return ks.pop()
    n = core.labels
    if group is Group.AFFINE:
        if core.n_f:
            raise ValueError("f not affine-covariant")
        return n + core.n_g
    if group is Group.SIMILARITY:
        if core.dim != 2:
            raise ValueError("similarity normalization is defined for 2D cores")
        return n + core.n_f + core.n_g
    return 0


def evaluate(p: MomentPolynomial, mv) -> float:
    """Numeric value of ``p`` with moments looked up in ``mv``.

    ``mv`` is a :class:`~gfinv.moments.MomentVector` or any mapping from
    multi-index to value.  Exact when every value is an int or Fraction.
    """
    from .moments import MomentError, MomentVector

    if isinstance(mv, MomentVector):
        if mv.dim != p.dim:
            raise ValueError(f"{p.dim}D polynomial evaluated on {mv.dim}D moments")
        if p.order > mv.max_order:
            raise MomentError(
                f"insufficient moment order: need {p.order}, have {mv.max_order}"
            )
        lookup = mv.entries
    else:
        lookup = mv
    vals = []
    exact = True
    for key, c in p.items():
        v = c
        for idx in key:
            x = lookup[idx]
            if not isinstance(x, (int, Fraction)):
                exact = False
            v = v * x
        vals.append(v)
    if exact:
        return sum(vals, Fraction(0))
    return math.fsum(float(v) for v in vals)


def differentiate(p: MomentPolynomial, symbol) -> MomentPolynomial:
    """Formal partial derivative with respect to the moment ``symbol``."""
    symbol = tuple(symbol)
    terms = defaultdict(Fraction)
    for key, c in p.items():
        m = key.count(symbol)
        if m:
            rest = list(key)
            rest.remove(symbol)
            terms[tuple(rest)] += c * m
    return MomentPolynomial(p.dim, terms)
