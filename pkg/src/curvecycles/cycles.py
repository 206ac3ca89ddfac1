"""Tautological cycles on powers of a curve.

A basis cycle on ``C^n`` is a :class:`Monomial`: a set partition of
``{1..n}`` where each block ``B`` stands for the partial diagonal
``pr_B^* Delta^{(|B|)}`` and may carry one zero-cycle decoration
(``e``, ``K`` or a generic ``z_j``), in which case it stands for
``pr_B^* Delta^{(|B|)}_*(decoration)``.  A monomial is the product of its
blocks; its dimension is the number of undecorated blocks.

:class:`CycleExpr` is a finite linear combination of monomials with
:class:`~curvecycles.coeff.Poly` coefficients.  All operations return new
values in canonical form.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import cache, lru_cache
from typing import NamedTuple

from .coeff import GENUS, ONE, ZERO, Poly, generic_degree
from .errors import (
    AmbientMismatch,
    ArityMismatch,
    IndexOutOfRange,
    NonInjectiveMap,
    NotZeroDimensional,
    UnsupportedDecoration,
)

E = "e"
K = "K"
FUNDAMENTAL = "C"

_SYM_RE = re.compile(r"^(e|K|z([1-9]\d*))$")


def z(j: int) -> str:
    """Decoration name of the generic zero-cycle ``z_j``."""
    return f"z{int(j)}"


def check_decoration(dec: str) -> str:
    if not isinstance(dec, str) or not _SYM_RE.match(dec):
        raise UnsupportedDecoration(f"unknown zero-cycle symbol {dec!r}")
    return dec


def decoration_key(dec: str | None):
    """Ordering e < K < z1 < z2 < ...; undecorated sorts first."""
    if dec is None:
        return (0, 0)
    if dec == E:
        return (1, 0)
    if dec == K:
        return (2, 0)
    return (3, int(dec[1:]))


@cache
def decoration_degree(dec: str) -> Poly:
    """Degree of a zero-cycle symbol: e -> 1, K -> 2g-2, z_j -> d_j."""
    if dec == E:
        return ONE
    if dec == K:
        return Poly.var(GENUS) * 2 - 2
    check_decoration(dec)
    return Poly.var(generic_degree(int(dec[1:])))


Block = tuple  # (tuple[int, ...], Optional[str])


class Monomial(NamedTuple):
    """Decorated set partition of ``{1..ambient}`` in canonical order."""

    ambient: int
    blocks: tuple

    @classmethod
    def make(cls, ambient: int, blocks: Iterable) -> Monomial:
        """Validate and canonicalise ``blocks`` = iterable of (indices, dec)."""
        seen = set()
        out = []
        for idx, dec in blocks:
            idx = tuple(sorted(idx))
            if not idx:
                raise ValueError("empty block")
            for i in idx:
                if not 1 <= i <= ambient:
                    raise IndexOutOfRange(f"index {i} outside 1..{ambient}")
                if i in seen:
                    raise ValueError(f"index {i} appears in two blocks")
                seen.add(i)
            if dec is not None:
                check_decoration(dec)
            out.append((idx, dec))
        if len(seen) != ambient:
            raise ValueError("blocks do not cover 1..n")
        out.sort(key=lambda b: b[0][0])
        return cls(ambient, tuple(out))

    @property
    def dim(self) -> int:
        return sum(1 for _, dec in self.blocks if dec is None)

    def sort_key(self):
        return (
            len(self.blocks),
            tuple((idx, decoration_key(dec)) for idx, dec in self.blocks),
        )

    def __str__(self):
        inner = ",".join(
            "{" + ",".join(map(str, idx)) + "}:" + (dec if dec else "∅")
            for idx, dec in self.blocks
        )
        return f"⟨{inner}⟩@{self.ambient}"


def unit_monomial(n: int) -> Monomial:
    """Fundamental class of ``C^n``: all undecorated singletons."""
    return Monomial(n, tuple(((i,), None) for i in range(1, n + 1)))


class CycleExpr:
    """Poly-linear combination of monomials on a fixed ``C^n``."""

    __slots__ = ("_hash", "_terms", "ambient")

    def __init__(self, ambient: int, terms: Mapping[Monomial, Poly] | None = None):
        self.ambient = ambient
        clean = {}
        if terms:
            for m, c in terms.items():
                if m.ambient != ambient:
                    raise AmbientMismatch(f"monomial on C^{m.ambient} in expression on C^{ambient}")
                c = Poly.coerce(c)
                if c:
                    clean[m] = clean.get(m, ZERO) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> CycleExpr:
        return cls(n)

    @classmethod
    def unit(cls, n: int) -> CycleExpr:
        return cls(n, {unit_monomial(n): ONE})

    @classmethod
    def mono(cls, ambient: int, blocks: Iterable, coeff=1) -> CycleExpr:
        return cls(ambient, {Monomial.make(ambient, blocks): Poly.coerce(coeff)})

    @classmethod
    def point(cls, dec: str) -> CycleExpr:
        """A zero-cycle symbol as a class on ``C^1``."""
        if dec == FUNDAMENTAL:
            return cls.unit(1)
        return cls.mono(1, [((1,), check_decoration(dec))])

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda mc: mc[0].sort_key())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, m: Monomial) -> Poly:
        return self._terms.get(m, ZERO)

    def __eq__(self, other):
        if not isinstance(other, CycleExpr):
            return NotImplemented
        return self.ambient == other.ambient and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # linear structure -----------------------------------------------------
    def _check(self, other: CycleExpr):
        if not isinstance(other, CycleExpr):
            raise TypeError(f"expected CycleExpr, got {type(other).__name__}")
        if other.ambient != self.ambient:
            raise AmbientMismatch(f"C^{self.ambient} vs C^{other.ambient}")

    def __add__(self, other):
        if not isinstance(other, CycleExpr):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return _raw(self.ambient, out)

    def __neg__(self):
        return _raw(self.ambient, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CycleExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> CycleExpr:
        c = Poly.coerce(c)
        if not c:
            return CycleExpr(self.ambient)
        return _raw(self.ambient, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, CycleExpr):
            return intersect(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, fn) -> CycleExpr:
        return CycleExpr(self.ambient, {m: fn(c) for m, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return f"0@{self.ambient}"
        parts = []
        for m, c in self.items():
            parts.append(f"({c})·{m}")
        return " + ".join(parts)

    def __repr__(self):
        from .dsl import format_expr

        return f"CycleExpr({format_expr(self)!r})"


def _raw(ambient: int, terms: dict) -> CycleExpr:
    x = CycleExpr.__new__(CycleExpr)
    x.ambient = ambient
    x._terms = terms
    x._hash = None
    return x


class _Accumulator:
    """Mutable sum used while building results."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.terms: dict = {}

    def add(self, m: Monomial, c: Poly):
        s = self.terms.get(m)
        s = c if s is None else s + c
        if s:
            self.terms[m] = s
        else:
            self.terms.pop(m, None)

    def result(self) -> CycleExpr:
        return _raw(self.ambient, self.terms)


def linear_combination(ambient: int, pairs: Iterable) -> CycleExpr:
    acc = _Accumulator(ambient)
    for c, x in pairs:
        c = Poly.coerce(c)
        if not c:
            continue
        for m, v in x._terms.items():
            acc.add(m, v * c)
    return acc.result()


def expr_sum(ambient: int, exprs: Iterable[CycleExpr]) -> CycleExpr:
    return linear_combination(ambient, ((ONE, x) for x in exprs))


# ---------------------------------------------------------------------------
# monomial-level kernels (cached; Monomials are hashable values)


@lru_cache(maxsize=1 << 18)
def _intersect_mono(a: Monomial, b: Monomial):
    """Product of two monomials: ``(monomial, sign)`` or ``None`` for zero."""
    n = a.ambient
    parent = list(range(n + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mono in (a, b):
        for idx, _ in mono.blocks:
            r = find(idx[0])
            for i in idx[1:]:
                s = find(i)
                if s != r:
                    parent[s] = r

    edges: dict = {}
    decs: dict = {}
    for mono in (a, b):
        for idx, dec in mono.blocks:
            r = find(idx[0])
            edges[r] = edges.get(r, 0) + len(idx) - 1
            if dec is not None:
                decs.setdefault(r, []).append(dec)

    comps: dict = {}
    for i in range(1, n + 1):
        comps.setdefault(find(i), []).append(i)

    sign = 1
    blocks = []
    for r, members in comps.items():
        excess = edges[r] - (len(members) - 1)
        d = decs.get(r, ())
        if excess + len(d) >= 2:
            return None
        if excess == 1:
            sign = -sign
            blocks.append((tuple(members), K))
        elif d:
            blocks.append((tuple(members), d[0]))
        else:
            blocks.append((tuple(members), None))
    blocks.sort(key=lambda blk: blk[0][0])
    return Monomial(n, tuple(blocks)), sign


def intersect(a: CycleExpr, b: CycleExpr) -> CycleExpr:
    """Intersection product on ``C^n``.

    Blocks of both factors are glued along shared indices.  On each glued
    component, every independent cycle of the gluing graph contributes the
    self-intersection of the diagonal, ``-K``, and every decoration is a
    point; two or more such point classes on one curve multiply to zero.
    """
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"cannot intersect C^{a.ambient} with C^{b.ambient}")
    acc = _Accumulator(a.ambient)
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            r = _intersect_mono(ma, mb)
            if r is None:
                continue
            m, sign = r
            c = ca * cb
            acc.add(m, c if sign > 0 else -c)
    return acc.result()


def intersect_all(factors: Sequence[CycleExpr]) -> CycleExpr:
    out = factors[0]
    for f in factors[1:]:
        out = intersect(out, f)
    return out


def exterior(a: CycleExpr, b: CycleExpr) -> CycleExpr:
    """Exterior product ``a x b`` on ``C^(m+n)``; indices of ``b`` shift by m."""
    m = a.ambient
    n = a.ambient + b.ambient
    acc = _Accumulator(n)
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            blocks = ma.blocks + tuple(
                (tuple(i + m for i in idx), dec) for idx, dec in mb.blocks
            )
            acc.add(Monomial(n, blocks), ca * cb)
    return acc.result()


def exterior_all(factors: Sequence[CycleExpr]) -> CycleExpr:
    out = CycleExpr.unit(0)
    for f in factors:
        out = exterior(out, f)
    return out


@lru_cache(maxsize=1 << 16)
def _push_mono(m: Monomial, keep: tuple):
    pos = {i: k + 1 for k, i in enumerate(keep)}
    coeff = ONE
    blocks = []
    for idx, dec in m.blocks:
        kept = [pos[i] for i in idx if i in pos]
        if not kept:
            if dec is None:
                return None
            coeff = coeff * decoration_degree(dec)
            continue
        blocks.append((tuple(sorted(kept)), dec))
    blocks.sort(key=lambda blk: blk[0][0])
    return Monomial(len(keep), tuple(blocks)), coeff


def push_proj(w: CycleExpr, keep: Sequence[int]) -> CycleExpr:
    """Proper pushforward along ``pr_I: C^n -> C^|I|``.

    ``keep`` lists the retained coordinates; ``keep[k]`` becomes coordinate
    ``k+1`` of the target.
    """
    keep = tuple(keep)
    n = w.ambient
    for i in keep:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")
    if len(set(keep)) != len(keep):
        raise NonInjectiveMap("repeated index in projection")
    acc = _Accumulator(len(keep))
    for m, c in w._terms.items():
        r = _push_mono(m, keep)
        if r is None:
            continue
        mm, f = r
        acc.add(mm, c * f)
    return acc.result()


def pull_proj(w: CycleExpr, images: Sequence[int], n: int) -> CycleExpr:
    """Flat pullback along the projection ``C^n -> C^m``.

    ``images[k]`` is the coordinate of ``C^n`` that coordinate ``k+1`` of the
    source maps to.  Untouched coordinates become undecorated singletons.
    """
    images = tuple(images)
    if len(images) != w.ambient:
        raise ArityMismatch(f"map has {len(images)} entries, expression lives on C^{w.ambient}")
    if len(set(images)) != len(images):
        raise NonInjectiveMap(f"images {images} are not injective")
    for i in images:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"image {i} outside 1..{n}")
    free = [((i,), None) for i in range(1, n + 1) if i not in set(images)]
    acc = _Accumulator(n)
    for m, c in w._terms.items():
        blocks = [
            (tuple(sorted(images[i - 1] for i in idx)), dec) for idx, dec in m.blocks
        ] + free
        blocks.sort(key=lambda blk: blk[0][0])
        acc.add(Monomial(n, tuple(blocks)), c)
    return acc.result()


def diag_push(x: str | CycleExpr, n: int) -> CycleExpr:
    """Small-diagonal pushforward ``Delta^{(n)}_*: CH(C) -> CH(C^n)``.

    ``x`` is a decoration name, :data:`FUNDAMENTAL`, or any class on ``C^1``.
    """
    if n < 1:
        raise ArityMismatch("diagonal needs n >= 1")
    if isinstance(x, str):
        x = CycleExpr.point(x)
    if x.ambient != 1:
        raise AmbientMismatch("diag_push takes a class on C^1")
    full = tuple(range(1, n + 1))
    acc = _Accumulator(n)
    for m, c in x._terms.items():
        ((_, dec),) = m.blocks
        acc.add(Monomial(n, ((full, dec),)), c)
    return acc.result()


def diagonal(n: int, indices: Sequence[int], dec: str | None = None) -> CycleExpr:
    """``pr_I^* Delta^{(|I|)}_*(dec)`` on ``C^n`` (other coordinates free)."""
    idx = tuple(sorted(indices))
    blocks = [(idx, dec)] + [((i,), None) for i in range(1, n + 1) if i not in idx]
    return CycleExpr.mono(n, blocks)


def point_at(n: int, i: int, dec: str) -> CycleExpr:
    """``pr_i^*(dec)`` on ``C^n``."""
    return diagonal(n, (i,), dec)


def diag_pull(w: CycleExpr) -> CycleExpr:
    """Pullback along the small diagonal ``C -> C^n``."""
    n = w.ambient
    if n < 1:
        raise ArityMismatch("diag_pull needs n >= 1")
    acc = _Accumulator(1)
    for m, c in w._terms.items():
        excess = n - len(m.blocks)
        decs = [dec for _, dec in m.blocks if dec is not None]
        if excess + len(decs) >= 2:
            continue
        if excess == 1:
            acc.add(Monomial(1, (((1,), K),)), -c)
        elif decs:
            acc.add(Monomial(1, (((1,), decs[0]),)), c)
        else:
            acc.add(unit_monomial(1), c)
    return acc.result()


def degree(w: CycleExpr) -> Poly:
    """Degree of a zero-cycle on ``C^n``."""
    out = ZERO
    for m, c in w._terms.items():
        if m.dim != 0:
            raise NotZeroDimensional(f"{m} has dimension {m.dim}")
        f = ONE
        for _, dec in m.blocks:
            f = f * decoration_degree(dec)
        out = out + c * f
    return out


def correspondence_compose(rho: CycleExpr, tau: CycleExpr, arities: tuple) -> CycleExpr:
    """``rho o tau`` for ``tau: C^a -> C^b`` and ``rho: C^b -> C^c``.

    Computed as ``pr_13*(pr_12^* tau . pr_23^* rho)`` on ``C^(a+b+c)``.
    """
    a, b, c = arities
    if tau.ambient != a + b or rho.ambient != b + c:
        raise ArityMismatch(
            f"arities {arities} do not match C^{tau.ambient} and C^{rho.ambient}"
        )
    total = a + b + c
    t = pull_proj(tau, range(1, a + b + 1), total)
    r = pull_proj(rho, range(a + 1, total + 1), total)
    keep = list(range(1, a + 1)) + list(range(a + b + 1, total + 1))
    return push_proj(intersect(t, r), keep)


def corr_apply(rho: CycleExpr, w: CycleExpr) -> CycleExpr:
    """``rho_*(w) = pr_Y*(pr_X^* w . rho)`` with ``X = C^a`` the first factors."""
    a = w.ambient
    if rho.ambient < a:
        raise ArityMismatch(f"correspondence on C^{rho.ambient} cannot act on C^{a}")
    total = rho.ambient
    pulled = pull_proj(w, range(1, a + 1), total)
    return push_proj(intersect(pulled, rho), range(a + 1, total + 1))


def xi_normalize(w: CycleExpr) -> CycleExpr:
    """Specialise ``e = K/(2g-2)``: rewrite each ``K`` as ``(2g-2) e``."""
    kdeg = decoration_degree(K)
    acc = _Accumulator(w.ambient)
    for m, c in w._terms.items():
        nk = sum(1 for _, dec in m.blocks if dec == K)
        if not nk:
            acc.add(m, c)
            continue
        blocks = tuple((idx, E if dec == K else dec) for idx, dec in m.blocks)
        acc.add(Monomial(m.ambient, blocks), c * kdeg ** nk)
    return acc.result()


def substitute(w: CycleExpr, bindings: Mapping[str, object]) -> CycleExpr:
    """Substitute parameters in every coefficient."""
    return CycleExpr(w.ambient, {m: c.substitute(bindings) for m, c in w._terms.items()})
