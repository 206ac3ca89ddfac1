"""A free model of Beauville-graded classes on the Jacobian.

Classes are Poly-linear combinations of Pontryagin words in four families
of graded atoms, for a fixed concrete genus ``g``:

==========  =====================================  ===  ===========
family      meaning                                dim  index range
==========  =====================================  ===  ===========
``CLS``     graded pieces of the embedded curve      1  0 .. g-1
``DEL``     graded pieces of ``iota_*(e) - [0]``     0  2 .. g
``KAP``     graded pieces of ``iota_*(K)``           0  1 .. g
``Z<j>``    graded pieces of ``iota_*(z_j)``         0  1 .. g
==========  =====================================  ===  ===========

``[N]_*`` scales a word of total dimension ``i`` and total index ``s`` by
``N^(2i+s)``.  No relations are imposed beyond the grading and the unit
``[0]`` (the empty word).
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from functools import cache
from math import factorial
from typing import NamedTuple

from .coeff import GENUS, ONE, ZERO, Poly
from .cycles import CycleExpr, E, K, decoration_degree
from .errors import GenusMismatch, GenusTooSmall, IndexOutOfRange, UnsupportedDecoration

CLS = "CLS"
DEL = "DEL"
KAP = "KAP"
ZPUSH = "Z"

_FAMILY_RANK = {CLS: 0, DEL: 1, KAP: 2, ZPUSH: 3}
_ATOM_RE = re.compile(r"^(CLS|DEL|KAP|Z([1-9]\d*))_(\d+)$")


class Atom(NamedTuple):
    family: str
    s: int
    j: int = 0  # only for ZPUSH

    @property
    def dim(self) -> int:
        return 1 if self.family == CLS else 0

    def sort_key(self):
        return (_FAMILY_RANK[self.family], self.j, self.s)

    def __str__(self):
        head = f"Z{self.j}" if self.family == ZPUSH else self.family
        return f"{head}_{self.s}"


def index_range(family: str, g: int) -> range:
    if family == CLS:
        return range(g)
    if family == DEL:
        return range(2, g + 1)
    return range(1, g + 1)


def check_atom(a: Atom, g: int) -> Atom:
    if a.s not in index_range(a.family, g):
        raise IndexOutOfRange(f"{a} has Beauville index outside its range for g={g}")
    return a


def parse_atom(text: str) -> Atom:
    m = _ATOM_RE.match(text)
    if not m:
        raise ValueError(f"not an atom: {text!r}")
    fam, j, s = m.groups()
    if j:
        return Atom(ZPUSH, int(s), int(j))
    return Atom(fam, int(s))


def make_word(atoms: Iterable[Atom]) -> tuple:
    return tuple(sorted(atoms, key=Atom.sort_key))


def word_dim(word: tuple) -> int:
    return sum(a.dim for a in word)


def word_index(word: tuple) -> int:
    return sum(a.s for a in word)


def _word_key(word: tuple):
    return (len(word), tuple(a.sort_key() for a in word))


def format_word(word: tuple) -> str:
    return "*".join(map(str, word)) if word else "[0]"


class JacExpr:
    """Poly-linear combination of words for a fixed genus."""

    __slots__ = ("_terms", "genus")

    def __init__(self, genus: int, terms: Mapping[tuple, object] | None = None):
        if genus < 2:
            raise GenusTooSmall(f"genus must be at least 2, got {genus}")
        self.genus = genus
        clean = {}
        for word, c in (terms or {}).items():
            word = make_word(word)
            for a in word:
                check_atom(a, genus)
            c = Poly.coerce(c)
            s = clean.get(word, ZERO) + c
            if s:
                clean[word] = s
            else:
                clean.pop(word, None)
        self._terms = clean

    @classmethod
    def unit(cls, g: int) -> JacExpr:
        return cls(g, {(): ONE})

    @classmethod
    def atom(cls, g: int, family: str, s: int, j: int = 0, coeff=1) -> JacExpr:
        return cls(g, {(Atom(family, s, j),): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda wc: _word_key(wc[0]))

    def coeff(self, word) -> Poly:
        return self._terms.get(make_word(word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, JacExpr):
            return NotImplemented
        return self.genus == other.genus and self._terms == other._terms

    def __hash__(self):
        return hash((self.genus, frozenset(self._terms.items())))

    def _same_genus(self, other: JacExpr):
        if not isinstance(other, JacExpr):
            raise TypeError(f"expected JacExpr, got {type(other).__name__}")
        if other.genus != self.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    def __add__(self, other):
        if not isinstance(other, JacExpr):
            return NotImplemented
        self._same_genus(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return _raw(self.genus, out)

    def __neg__(self):
        return _raw(self.genus, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, JacExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> JacExpr:
        c = Poly.coerce(c)
        if not c:
            return _raw(self.genus, {})
        return _raw(self.genus, {w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, JacExpr):
            return pont_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __repr__(self):
        return f"JacExpr({format_jac(self)!r})"

    def __str__(self):
        return format_jac(self)


def _raw(g: int, terms: dict) -> JacExpr:
    x = JacExpr.__new__(JacExpr)
    x.genus = g
    x._terms = terms
    return x


def pont_mul(a: JacExpr, b: JacExpr) -> JacExpr:
    """Pontryagin product: concatenation of words, extended bilinearly."""
    a._same_genus(b)
    out: dict = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            w = make_word(wa + wb)
            s = out.get(w, ZERO) + ca * cb
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return _raw(a.genus, out)


def pont_power(x: JacExpr, k: int) -> JacExpr:
    out = JacExpr.unit(x.genus)
    for _ in range(k):
        out = pont_mul(out, x)
    return out


def mult_push(n: int, w: JacExpr) -> JacExpr:
    """``[n]_*`` on the graded model (``[0]_*`` keeps only the weight-0 points)."""
    out = {}
    for word, c in w._terms.items():
        f = n ** (2 * word_dim(word) + word_index(word))
        if f:
            out[word] = c * f
    return _raw(w.genus, out)


def beauville_component(w: JacExpr, dim: int, s: int) -> JacExpr:
    return _raw(
        w.genus,
        {word: c for word, c in w._terms.items() if word_dim(word) == dim and word_index(word) == s},
    )


# ---------------------------------------------------------------------------
# curve powers -> Jacobian


def _atom_family(dec: str):
    if dec == E:
        return DEL, 0
    if dec == K:
        return KAP, 0
    if dec.startswith("z"):
        return ZPUSH, int(dec[1:])
    raise UnsupportedDecoration(f"no Jacobian atom for decoration {dec!r}")


@cache
def _block_image(size: int, dec: str | None, g: int) -> JacExpr:
    """Image of one partition block under the summation map."""
    if dec is None:
        return JacExpr(g, {(Atom(CLS, s),): size ** (2 + s) for s in index_range(CLS, g)})
    fam, j = _atom_family(dec)
    terms = {(Atom(fam, s, j),): size ** s for s in index_range(fam, g)}
    deg = decoration_degree(dec).substitute({GENUS: g})
    terms[()] = deg
    return JacExpr(g, terms)


def sigma_push(w: CycleExpr, g: int) -> JacExpr:
    """Push a class on ``C^n`` to the Jacobian along ``(x_i) -> sum x_i``."""
    if g < 2:
        raise GenusTooSmall(f"genus must be at least 2, got {g}")
    out = JacExpr(g)
    for m, c in w.items():
        term = JacExpr(g, {(): c.substitute({GENUS: g})})
        for idx, dec in m.blocks:
            term = pont_mul(term, _block_image(len(idx), dec, g))
        out = out + term
    return out


def curve_class(g: int) -> JacExpr:
    """The embedded curve as the sum of its graded pieces."""
    return JacExpr(g, {(Atom(CLS, s),): 1 for s in index_range(CLS, g)})


def delta_class(g: int) -> JacExpr:
    return JacExpr(g, {(Atom(DEL, s),): 1 for s in index_range(DEL, g)})


def drop_family(w: JacExpr, family: str) -> JacExpr:
    return _raw(w.genus, {word: c for word, c in w._terms.items() if all(a.family != family for a in word)})


def zhang_expand(g: int, delta_zero: bool) -> JacExpr:
    """Image of the modified diagonal on ``C^3``, optionally with ``delta`` set to 0."""
    from .moddiag import big_gamma

    out = sigma_push(big_gamma(3), g)
    return drop_family(out, DEL) if delta_zero else out


def zhang_coefficient(s: int) -> int:
    return 3 ** (2 + s) - 3 * 2 ** (2 + s) + 3


def zhang_shape(g: int) -> JacExpr:
    """``[3]_*X - 3 [2]_*X * (delta+[0]) + 3 X * (delta+[0])^2`` with ``X`` the curve."""
    x = curve_class(g)
    d1 = delta_class(g) + JacExpr.unit(g)
    return (
        mult_push(3, x)
        - pont_mul(mult_push(2, x), d1).scale(3)
        + pont_mul(x, pont_power(d1, 2)).scale(3)
    )


def ceresa_class(g: int) -> JacExpr:
    if g < 2:
        raise GenusTooSmall(f"genus must be at least 2, got {g}")
    return JacExpr(g, {(Atom(CLS, s),): 2 for s in index_range(CLS, g) if s % 2 == 1})


def factorial_component_target(s: int, g: int) -> JacExpr:
    """``s! DEL_s``, which is 0 when ``s`` lies outside the range of ``DEL``."""
    if s not in index_range(DEL, g):
        return JacExpr(g)
    return JacExpr(g, {(Atom(DEL, s),): factorial(s)})


def xi_mode(w: JacExpr) -> JacExpr:
    """Identify ``iota_*(K)`` with ``(2g-2) iota_*(e)`` piece by piece.

    ``KAP_s`` becomes ``(2g-2) DEL_s``; ``KAP_1`` has no partner and becomes 0.
    """
    g = w.genus
    factor = 2 * g - 2
    out = JacExpr(g)
    for word, c in w._terms.items():
        new = []
        coeff = c
        dead = False
        for a in word:
            if a.family != KAP:
                new.append(a)
            elif a.s in index_range(DEL, g):
                new.append(Atom(DEL, a.s))
                coeff = coeff * factor
            else:
                dead = True
                break
        if not dead:
            out = out + JacExpr(g, {tuple(new): coeff})
    return out


# ---------------------------------------------------------------------------
# text form


def format_jac(w: JacExpr) -> str:
    from .dsl import format_linear

    return format_linear([(c, format_word(word)) for word, c in w.items()]) + f" @@g={w.genus}"


def jac_to_json(w: JacExpr) -> dict:
    from .coeff import format_poly

    return {
        "schema": "jacexpr/1",
        "genus": w.genus,
        "terms": [
            {"coeff": format_poly(c), "atoms": [str(a) for a in word]} for word, c in w.items()
        ],
    }
