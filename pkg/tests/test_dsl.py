import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import cycles

from curvecycles.coeff import G
from curvecycles.cycles import CycleExpr, E, K, intersect
from curvecycles.dsl import Style, format_expr, parse_expr, parse_scalar
from curvecycles.errors import AmbientAmbiguous, SyntaxError_
from curvecycles.genus3 import class_c2_xi
from curvecycles.jacobian import JacExpr, delta_class, zhang_shape
from curvecycles.moddiag import Projector, big_gamma, gamma, projector


def test_parse_examples():
    assert parse_expr("diag(1,2) - e@1 - e@2 @@2") == big_gamma(2)
    assert parse_expr("Gamma(3)") == big_gamma(3)
    d = CycleExpr.mono(2, [((1, 2), None)])
    assert parse_expr("diag(1,2)*diag(1,2) @@2") == intersect(d, d)
    assert parse_expr("gamma(2, e)") == gamma(2, E)
    assert parse_expr("pi1") == projector(Projector.P1)
    assert parse_expr("(2*g - 2)*e@1 - K@1") == CycleExpr.point(E).scale(G * 2 - 2) - CycleExpr.point(K)


def test_print_examples():
    assert format_expr(big_gamma(1)) == "1*diag(1) @@1"
    assert format_expr(CycleExpr.zero(2)) == "0 @@2"
    assert format_expr(gamma(2, E)) == "1*e@{1,2} - 1*e@1*e@2 @@2"


def test_json_form():
    payload = json.loads(format_expr(gamma(2, E), Style.JSON))
    assert payload["schema"] == "cycleexpr/1"
    assert payload["ambient"] == 2
    assert {"indices": [1, 2], "dec": "e"} in payload["terms"][0]["blocks"]


def test_errors():
    with pytest.raises(SyntaxError_) as info:
        parse_expr("diag(1,2) +")
    assert info.value.position is not None
    with pytest.raises(AmbientAmbiguous):
        parse_expr("3")
    with pytest.raises(SyntaxError_):
        parse_expr("diag(1,2) + CLS_1 @@2")


def test_scalar_and_other_kinds():
    assert parse_scalar("2*g - 2") == G * 2 - 2
    assert parse_expr(format_expr(class_c2_xi())) == class_c2_xi()
    d = delta_class(3) + JacExpr.unit(3)
    assert parse_expr(format_expr(d)) == d


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda n: cycles(n, symbolic=True)))
def test_round_trip(w):
    text = format_expr(w)
    back = parse_expr(text)
    assert back == w
    assert format_expr(back) == text


@pytest.mark.parametrize("g", [2, 3, 4])
def test_jacobian_round_trip(g):
    w = zhang_shape(g)
    assert parse_expr(format_expr(w)) == w
