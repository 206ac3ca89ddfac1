"""Exact multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from power-products to nonzero
``Fraction`` coefficients.  Variables are plain strings:

* ``"g"`` -- the genus,
* ``"d1"``, ``"d2"``, ... -- formal degrees of generic zero-cycles,
* ``"p1"``, ``"q1"``, ... -- generators of the genus-3 tautological algebra.

Power-products are tuples of ``(variable, exponent)`` pairs sorted by
:func:`var_key`, so two polys are equal exactly when their term maps agree.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from fractions import Fraction

GENUS = "g"

_VAR_RE = re.compile(r"^([A-Za-z]+)(\d*)$")
_PREFIX_RANK = {"g": 0, "d": 1, "p": 2, "q": 3}

Number = int | Fraction
PowerProduct = tuple  # tuple[tuple[str, int], ...]


def generic_degree(j: int) -> str:
    """Name of the formal degree parameter of the generic zero-cycle ``z_j``."""
    if j < 1:
        raise ValueError(f"generic degree index must be positive, got {j}")
    return f"d{j}"


def var_key(name: str):
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    prefix, digits = m.groups()
    return (_PREFIX_RANK.get(prefix, 99), prefix, int(digits) if digits else 0)


def _pp_mul(a: PowerProduct, b: PowerProduct) -> PowerProduct:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def _pp_degree(pp: PowerProduct) -> int:
    return sum(e for _, e in pp)


class Poly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("_hash", "_terms")

    def __init__(self, terms: Mapping[PowerProduct, Number] | None = None):
        clean = {}
        if terms:
            for pp, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[pp] = c
        self._terms = clean
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls({(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> Poly:
        var_key(name)
        if power == 0:
            return cls.const(1)
        return cls({((name, power),): 1})

    @classmethod
    def coerce(cls, x) -> Poly:
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=_term_order)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(pp == () for pp in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def variables(self) -> set:
        return {v for pp in self._terms for v, _ in pp}

    def degree(self) -> int:
        return max((_pp_degree(pp) for pp in self._terms), default=0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for pp, c in other._terms.items():
            s = out.get(pp, 0) + c
            if s:
                out[pp] = s
            else:
                out.pop(pp, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({pp: -c for pp, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return _raw({pp: c * other for pp, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for pa, ca in self._terms.items():
            for pb, cb in other._terms.items():
                pp = _pp_mul(pa, pb)
                s = out.get(pp, 0) + ca * cb
                if s:
                    out[pp] = s
                else:
                    out.pop(pp, None)
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other:
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    # substitution ---------------------------------------------------------
    def substitute(self, bindings: Mapping[str, Number | Poly]) -> Poly:
        """Replace variables by scalars or polys; unbound variables stay."""
        if not bindings:
            return self
        vals = {k: Poly.coerce(v) for k, v in bindings.items()}
        out = ZERO
        for pp, c in self._terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in pp:
                if v in vals:
                    term = term * vals[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * _raw({tuple(rest): 1})
            out = out + term
        return out

    # text -----------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _raw(terms: dict) -> Poly:
    p = Poly.__new__(Poly)
    p._terms = terms
    p._hash = None
    return p


def _term_order(item):
    pp, _ = item
    # higher total degree first, then lexicographic on variables
    return (-_pp_degree(pp), tuple((var_key(v), -e) for v, e in pp))


ZERO = Poly()
ONE = Poly.const(1)
G = Poly.var(GENUS)


def poly_sum(items: Iterable) -> Poly:
    out = ZERO
    for x in items:
        out = out + x
    return out


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    """Canonical text, e.g. ``2*g - 2`` or ``1/2*g^2``."""
    items = p.items()
    if not items:
        return "0"
    chunks = []
    for i, (pp, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        factors = [v if e == 1 else f"{v}^{e}" for v, e in pp]
        if not factors:
            body = _fmt_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(a) + "*" + "*".join(factors)
        if i == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def parse_poly(text: str) -> Poly:
    """Parse the canonical text form produced by :func:`format_poly`.

    Accepts sums of products of integers, rationals ``a/b``, variables and
    ``var^k``; parentheses are allowed.
    """
    from .dsl import parse_scalar

    return parse_scalar(text)
