import itertools

import pytest

from curvecycles.coeff import G, Poly
from curvecycles.cycles import CycleExpr, E, K, pull_proj
from curvecycles.errors import ArityTooSmall
from curvecycles.moddiag import (
    Flavor,
    Projector,
    Route,
    Target,
    b_push,
    b_push_expected,
    beta,
    betaz_check,
    big_b,
    big_gamma,
    fourier_projection,
    fourier_rhs,
    gamma,
    projector_power_apply,
    recurrence_residual,
)

SYMBOLS = (E, K, "z1", "C")
DEG = {E: Poly.const(1), K: G * 2 - 2, "z1": Poly.var("d1")}


def mono(n, *blocks, coeff=1):
    return CycleExpr.mono(n, blocks, coeff)


def gamma_oracle(n, dec):
    """Replace each coordinate in J by e (sign -1 each); the rest stays on the diagonal."""
    out = CycleExpr.zero(n)
    for r in range(n + 1):
        for J in itertools.combinations(range(1, n + 1), r):
            rest = tuple(i for i in range(1, n + 1) if i not in J)
            es = [((j,), E) for j in J]
            if rest:
                term = mono(n, (rest, dec), *es)
            else:
                term = mono(n, *es).scale(DEG[dec])
            out = out + term.scale((-1) ** r)
    return out


def big_gamma_oracle(n):
    out = CycleExpr.zero(n)
    for r in range(1, n + 1):
        for I in itertools.combinations(range(1, n + 1), r):
            rest = [((j,), E) for j in range(1, n + 1) if j not in I]
            out = out + mono(n, (I, None), *rest).scale((-1) ** (n - r))
    return out


def test_gamma_small_cases():
    d = Poly.var("d1")
    assert gamma(1, "z1") == CycleExpr.point("z1") - CycleExpr.point(E).scale(d)
    assert gamma(2, E) == mono(2, ((1, 2), E)) - mono(2, ((1,), E), ((2,), E))
    assert beta(1, "z1") == gamma(1, "z1")
    assert beta(2, E) == gamma(2, E)
    assert beta(1, "C").is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("sym", [E, K, "z1"])
def test_gamma_matches_oracle(n, sym):
    assert gamma(n, sym) == gamma_oracle(n, sym)


def test_gamma3_e_shape():
    want = mono(3, ((1, 2, 3), E)) + mono(3, ((1,), E), ((2,), E), ((3,), E)).scale(2)
    for pair, single in (((1, 2), 3), ((1, 3), 2), ((2, 3), 1)):
        want = want - mono(3, (pair, E), ((single,), E))
    assert gamma(3, E) == want


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("sym", SYMBOLS)
def test_route_agreement(n, sym):
    assert gamma(n, sym, Route.PROJECTOR) == gamma(n, sym, Route.EXPLICIT)
    assert beta(n, sym, Route.PROJECTOR) == beta(n, sym, Route.EXPLICIT)


def test_big_gamma_small():
    assert big_gamma(1) == CycleExpr.unit(1)
    assert big_gamma(2) == mono(2, ((1, 2), None)) - mono(2, ((1,), None), ((2,), E)) - mono(2, ((1,), E), ((2,), None))
    assert len(big_gamma(3)) == 7


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_big_gamma_subset_formula(n):
    assert big_gamma(n) == big_gamma_oracle(n)


def test_big_b_small():
    assert big_b(2) == big_gamma(2)
    g2 = gamma(2, E)
    pulled = [pull_proj(g2, [j for j in (1, 2, 3) if j != i], 3) for i in (1, 2, 3)]
    assert big_b(3) == big_gamma(3) - pulled[0] - pulled[1] - pulled[2]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_b_is_projection_of_big_gamma(n):
    assert projector_power_apply(Projector.P1, n, big_gamma(n)) == big_b(n)


def test_piplus_square_on_point_diagonal():
    assert projector_power_apply(Projector.PPLUS, 2, mono(2, ((1, 2), E))) == gamma(2, E)
    assert projector_power_apply(Projector.P1, 2, CycleExpr.unit(2)).is_zero()


def test_b_push_diagonal_value():
    want = -CycleExpr.point(K) - CycleExpr.point(E).scale(2) + CycleExpr.point(E).scale(G * 2)
    assert b_push(3, Target.DIAGONAL) == want


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("target", list(Target))
def test_b_push(n, target):
    assert b_push(n, target) == b_push_expected(n, target)


def test_b_push_needs_three():
    with pytest.raises(ArityTooSmall):
        b_push(2, Target.DIAGONAL)


@pytest.mark.parametrize(
    "n,m,sym,flavor",
    [
        (n, m, sym, fl)
        for n in range(2, 5)
        for m in range(1, 4)
        if n + m <= 5
        for sym in (E, "z1", "C")
        for fl in Flavor
    ],
)
def test_recurrence_residual_vanishes(n, m, sym, flavor):
    assert recurrence_residual(n, m, sym, flavor).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("sym", [E, K, "z1"])
def test_betaz(n, sym):
    assert betaz_check(n, sym) == beta(n, sym)


def test_fourier_rhs_leading_term():
    # dropping every correction term leaves (-1)^s B^(s+2); the corrections are pulled back
    for s in (0, 1):
        rhs = fourier_rhs(s)
        lead = big_b(s + 2).scale((-1) ** s)
        assert rhs != lead
        assert projector_power_apply(Projector.P1, s + 2, rhs - lead).is_zero()


@pytest.mark.parametrize("s", [0, 1, 2])
def test_fourier_projection_signed(s):
    assert fourier_projection(s) == big_b(s + 2).scale((-1) ** s)


def test_fourier_rhs_s0_literal():
    k4 = CycleExpr.point(K) + CycleExpr.point(E).scale(4)
    g1 = k4 - CycleExpr.point(E).scale(G * 2 + 2)
    single = pull_proj(g1, [2], 2) + pull_proj(g1, [1], 2)
    es = mono(2, ((1,), E), ((2,), None)) + mono(2, ((1,), None), ((2,), E))
    want = big_b(2) - single.scale(Poly.const(1) / 2) - es.scale(G)
    assert fourier_rhs(0) == want

