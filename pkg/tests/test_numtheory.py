import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvecycles.errors import InvalidGenus
from curvecycles.numtheory import (
    Direction,
    big_m,
    big_m_from_genus,
    f_sum,
    gcd_lemma_check,
    is_prime,
    prime_set,
    torsion_bound,
    valuation,
)


def stirling2(s, n):
    """Second-kind Stirling numbers by the triangle recurrence."""
    table = [[0] * (n + 1) for _ in range(s + 1)]
    table[0][0] = 1
    for a in range(1, s + 1):
        for b in range(1, n + 1):
            table[a][b] = b * table[a - 1][b] + table[a - 1][b - 1]
    return table[s][n]


def fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def test_f_sum_examples():
    assert f_sum(3, 3) == 6
    assert f_sum(4, 3) == 0
    assert f_sum(3, 5) == 150


@pytest.mark.parametrize("s", range(1, 16))
def test_f_sum_matches_stirling(s):
    for n in range(1, s + 1):
        assert f_sum(n, s) == fact(n) * stirling2(s, n)


def test_prime_sets():
    assert prime_set(3) == {2, 3}
    assert prime_set(4) == {2}
    assert prime_set(5) == {2, 3, 5}


def test_gcd_examples():
    assert gcd_lemma_check(3) == (6, 6, True)
    assert gcd_lemma_check(5) == (30, 30, True)
    assert gcd_lemma_check(7) == (42, 42, True)


@pytest.mark.parametrize("s", range(3, 16, 2))
def test_gcd_lemma_and_squarefree(s):
    lhs, rhs, ok = gcd_lemma_check(s)
    assert ok and lhs == rhs
    assert all(valuation(lhs, p) <= 1 for p in range(2, s + 1) if is_prime(p))


def test_big_m_examples():
    assert big_m(3) == 6
    assert big_m(4) == 12
    assert big_m(5) == 360


@pytest.mark.parametrize("m", range(3, 21))
def test_big_m_valuations(m):
    mm = big_m(m)
    for p in range(2, m + 1):
        if is_prime(p):
            want = m - 2 if p == 2 else (m - 1) // (p - 1)
            assert valuation(mm, p) == want
    assert all(mm % p != 0 for p in range(m + 1, 2 * m + 2) if is_prime(p))


@pytest.mark.parametrize("g", range(2, 20))
def test_big_m_genus_formula(g):
    assert big_m(g + 1) == big_m_from_genus(g)


def test_torsion_examples():
    r = torsion_bound(Direction.QZ_CRITERION, 3, N=1, group_order=48)
    assert (r.gamma3_bound, r.ceresa_bound) == (192, 2304)
    r = torsion_bound(Direction.QZ_CRITERION, 4, N=1, group_order=36)
    assert (r.gamma3_bound, r.ceresa_bound) == (216, 77760)
    assert torsion_bound(Direction.CER_TO_GAMMA, 3, d=1).gamma3_bound == 2
    payload = json.loads(r.to_json())
    assert payload["ceresa_bound"] == 77760 and payload["trace"]


def test_invalid_genus():
    with pytest.raises(InvalidGenus):
        torsion_bound(Direction.CER_TO_GAMMA, 1)


@given(st.integers(2, 12), st.integers(1, 50))
def test_gamma_to_ceresa_ratio(g, d):
    r = torsion_bound(Direction.GAMMA_TO_CER, g, d=d)
    assert r.ceresa_bound % d == 0 and r.ceresa_bound // d == big_m(g + 1)


@given(st.integers(2, 10), st.integers(1, 5), st.integers(1, 100))
def test_qz_bounds_are_consistent(g, n, order):
    r = torsion_bound(Direction.QZ_CRITERION, g, N=n, group_order=order)
    assert r.gamma3_bound == n * (2 * g - 2) * order
    assert r.ceresa_bound == big_m(g + 1) * r.gamma3_bound
