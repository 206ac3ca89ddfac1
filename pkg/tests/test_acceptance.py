"""Acceptance criteria, one test per criterion, each with its time budget."""

import random
import time
from contextlib import contextmanager

from curvecycles.coeff import Poly
from curvecycles.cycles import (
    CycleExpr,
    E,
    K,
    Monomial,
    correspondence_compose,
    diagonal,
    exterior,
    intersect,
    pull_proj,
    push_proj,
)
from curvecycles.genus3 import class_c2_xi, reduce
from curvecycles.inference import RULES, G, propagate
from curvecycles.jacobian import (
    CLS,
    DEL,
    Atom,
    JacExpr,
    beauville_component,
    pont_mul,
    sigma_push,
    zhang_expand,
    zhang_shape,
)
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
    fourier_projection,
    gamma,
    projector,
    recurrence_residual,
)
from curvecycles.numtheory import (
    Direction,
    big_m,
    big_m_from_genus,
    f_sum,
    gcd_lemma_check,
    is_prime,
    torsion_bound,
    valuation,
)


@contextmanager
def budget(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f} s, budget {seconds} s"


SYMBOLS = (E, K, "z1", "C")


def test_c01_projector_algebra():
    with budget(1):
        p = {t: projector(t) for t in (Projector.P0, Projector.P1, Projector.P2)}
        for i, a in p.items():
            for j, b in p.items():
                want = a if i == j else CycleExpr.zero(2)
                assert correspondence_compose(a, b, (1, 1, 1)) == want, (i, j)
        assert p[Projector.P0] + p[Projector.P1] + p[Projector.P2] == diagonal(2, (1, 2))


def test_c02_route_agreement():
    with budget(60):
        for n in range(1, 6):
            for sym in SYMBOLS:
                assert gamma(n, sym, Route.PROJECTOR) == gamma(n, sym, Route.EXPLICIT), (n, sym)
                assert beta(n, sym, Route.PROJECTOR) == beta(n, sym, Route.EXPLICIT), (n, sym)


def test_c03_pushforwards_of_b():
    with budget(120):
        for n in (3, 4, 5):
            for target in Target:
                assert b_push(n, target) == b_push_expected(n, target), (n, target)


def test_c04_recurrence_residual():
    with budget(180):
        for n in range(2, 5):
            for m in range(1, 6 - n):
                for sym in (E, "z1", "C"):
                    for flavor in Flavor:
                        assert recurrence_residual(n, m, sym, flavor).is_zero(), (n, m, sym, flavor)


def test_c05_betaz():
    with budget(120):
        for n in range(1, 5):
            for sym in (E, K, "z1"):
                assert betaz_check(n, sym) == beta(n, sym), (n, sym)


def test_c06_fourier_projection_is_b():
    # stated without the (-1)^s sign; see the decisions ledger
    with budget(120):
        for s in (0, 1):
            assert fourier_projection(s) == big_b(s + 2), f"s={s}"


def test_c06b_fourier_projection_is_b_extended():
    with budget(600):
        assert fourier_projection(2) == big_b(4)


def test_c07_zhang_formula():
    with budget(10):
        for g in range(2, 7):
            got = zhang_expand(g, True)
            want = JacExpr(g, {(Atom(CLS, s),): 3 ** (2 + s) - 3 * 2 ** (2 + s) + 3 for s in range(g)})
            assert got == want, g
            assert zhang_expand(g, False) == zhang_shape(g), g
        assert [zhang_expand(6, True).coeff((Atom(CLS, s),)) for s in range(4)] == [0, 6, 36, 150]


def test_c08_factorial_component():
    with budget(30):
        g = 5
        for s in range(1, 5):
            got = beauville_component(sigma_push(gamma(s, E), g), 0, s)
            # DEL_1 does not exist: delta has no index-1 piece
            want = JacExpr(g, {(Atom(DEL, s),): _fact(s)}) if s >= 2 else JacExpr(g)
            assert got == want, s


def test_c09_genus_three_class():
    with budget(1):
        assert reduce(class_c2_xi()).is_zero()


def test_c10_gcd_lemma_and_stirling():
    with budget(5):
        for s in range(3, 16, 2):
            lhs, rhs, ok = gcd_lemma_check(s)
            assert ok and lhs == rhs, s
            assert all(valuation(lhs, p) <= 1 for p in range(2, s + 1) if is_prime(p)), s
        for s in range(1, 16):
            for n in range(1, s + 1):
                assert f_sum(n, s) == _fact(n) * _stirling(s, n), (n, s)


def test_c11_big_m_and_torsion():
    with budget(1):
        for m in range(3, 21):
            mm = big_m(m)
            for p in range(2, m + 1):
                if is_prime(p):
                    assert valuation(mm, p) == (m - 2 if p == 2 else (m - 1) // (p - 1)), (m, p)
        for g in range(2, 20):
            assert big_m(g + 1) == big_m_from_genus(g), g
        r = torsion_bound(Direction.QZ_CRITERION, 3, N=1, group_order=48)
        assert (r.gamma3_bound, r.ceresa_bound) == (192, 2304)
        r = torsion_bound(Direction.QZ_CRITERION, 4, N=1, group_order=36)
        assert (r.gamma3_bound, r.ceresa_bound) == (216, 77760)


ZHANG_CONCLUSIONS = [
    "Gamma(>=3)=0",
    "B(>=3)=0",
    "Curve(>=1)=0",
    "gamma_e(>=1)=0",
    "delta(0)=0",
    "delta(>=1)=0",
    "delta=0",
    "Ceresa=0",
    "e=xi",
]


def test_c12_inference_closure():
    with budget(10):
        closure = propagate([G(3)], 3)
        assert [str(f) for f in closure.normalized()] == ZHANG_CONCLUSIONS
        rng = random.Random(20261018)
        for _ in range(100):
            rules = list(RULES)
            rng.shuffle(rules)
            assert propagate([G(3)], 3, rules).facts == closure.facts


def test_c13_algebra_laws():
    with budget(60):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(1, 4)
            a, b, c = (_random_cycle(rng, n) for _ in range(3))
            assert intersect(a, b) == intersect(b, a)
            assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))
        for _ in range(200):
            n = rng.randint(2, 4)
            m = rng.randint(1, n - 1)
            keep = rng.sample(range(1, n + 1), m)
            w, v = _random_cycle(rng, n, symbolic=True), _random_cycle(rng, m)
            assert push_proj(intersect(w, pull_proj(v, keep, n)), keep) == intersect(push_proj(w, keep), v)
        for _ in range(200):
            g = rng.randint(2, 4)
            m = rng.randint(1, 3)
            n = rng.randint(1, 4 - m)
            a, b = _random_cycle(rng, m), _random_cycle(rng, n)
            assert sigma_push(exterior(a, b), g) == pont_mul(sigma_push(a, g), sigma_push(b, g))


# --- helpers ---------------------------------------------------------------


def _fact(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _stirling(s: int, n: int) -> int:
    row = [1] + [0] * n
    for _ in range(s):
        row = [0] + [k * row[k] + row[k - 1] for k in range(1, n + 1)]
    return row[n]


def _random_cycle(rng: random.Random, n: int, symbolic: bool = False) -> CycleExpr:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        labels = [rng.randrange(n) for _ in range(n)]
        groups: dict = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        blocks = [(tuple(idx), rng.choice((None, None, E, K, "z1"))) for idx in groups.values()]
        c = Poly.const(rng.randint(-9, 9))
        if symbolic:
            c = c + Poly.var("g") * rng.randint(-3, 3)
        m = Monomial.make(n, blocks)
        terms[m] = terms.get(m, Poly()) + c
    return CycleExpr(n, terms)
