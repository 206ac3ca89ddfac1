"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from curvecycles.coeff import Poly
from curvecycles.cycles import CycleExpr, Monomial

DECORATIONS = (None, "e", "K", "z1", "z2")
SMALL = st.integers(min_value=-9, max_value=9)


@st.composite
def polys(draw, max_degree: int = 3, names=("g", "d1", "d2")):
    out = Poly()
    for _ in range(draw(st.integers(0, 3))):
        term = Poly.const(draw(SMALL))
        for _ in range(draw(st.integers(0, max_degree))):
            term = term * Poly.var(draw(st.sampled_from(names)))
        out = out + term
    return out


@st.composite
def monomials(draw, n: int, decorations=DECORATIONS):
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    groups: dict = {}
    for i, lab in enumerate(labels, start=1):
        groups.setdefault(lab, []).append(i)
    blocks = [(tuple(idx), draw(st.sampled_from(decorations))) for idx in groups.values()]
    return Monomial.make(n, blocks)


@st.composite
def cycles(draw, n: int, max_terms: int = 3, symbolic: bool = False, decorations=DECORATIONS):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        m = draw(monomials(n, decorations))
        c = draw(polys(max_degree=1)) if symbolic else Poly.const(draw(SMALL))
        terms[m] = terms.get(m, Poly()) + c
    return CycleExpr(n, terms)


arities = st.integers(min_value=1, max_value=4)
