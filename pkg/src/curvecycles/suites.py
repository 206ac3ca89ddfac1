"""Named verification suites used by ``curvecycles verify``.

A check is a module-level function returning ``(lhs, rhs)``; the runner
compares the two after optional e = K/(2g-2) normalisation.  Checks are
plain data (function name plus arguments) so they can be shipped to worker
processes; results are always reported in declaration order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import genus3, inference, jacobian, moddiag, numtheory
from .coeff import Poly
from .cycles import (
    CycleExpr,
    E,
    K,
    corr_apply,
    correspondence_compose,
    diag_pull,
    diag_push,
    diagonal,
    intersect,
    point_at,
    xi_normalize,
)
from .dsl import format_expr
from .moddiag import Flavor, Projector, Route, Target

SUITES = ("core", "moddiag", "jacobian", "genus3", "numtheory", "inference")
DEFAULT_MAX_N = 5


def arity_cap() -> int:
    try:
        return int(os.environ.get("CYC_MAX_N", DEFAULT_MAX_N))
    except ValueError:
        return DEFAULT_MAX_N


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    func: str
    args: tuple = ()


@dataclass(frozen=True)
class Result:
    check: Check
    ok: bool
    detail: str = ""


# ---------------------------------------------------------------------------
# check bodies (module level so they pickle)


def _proj(tag: str) -> CycleExpr:
    return moddiag.projector(Projector(tag))


def chk_projector_product(i: str, j: str):
    lhs = correspondence_compose(_proj(i), _proj(j), (1, 1, 1))
    rhs = _proj(i) if i == j else CycleExpr.zero(2)
    return lhs, rhs


def chk_projector_sum():
    return _proj("pi0") + _proj("pi1") + _proj("pi2"), diagonal(2, (1, 2))


def chk_self_intersection():
    d = diagonal(2, (1, 2))
    return intersect(d, d), -diagonal(2, (1, 2), K)


def chk_pi1_square():
    p = _proj("pi1")
    rhs = -diagonal(2, (1, 2), K) - diagonal(2, (1, 2), E).scale(4) + intersect(point_at(2, 1, E), point_at(2, 2, E)).scale(2)
    return intersect(p, p), rhs


def chk_triangle():
    a, b, c = diagonal(3, (1, 2)), diagonal(3, (2, 3)), diagonal(3, (1, 3))
    return intersect(intersect(a, b), c), -diagonal(3, (1, 2, 3), K)


def chk_diag_pull_delta():
    return diag_pull(diagonal(2, (1, 2))), -CycleExpr.point(K)


def chk_diag_roundtrip(n: int):
    # pulling back a small-diagonal class multiplies by the normal bundle, (-K)^(n-1)
    normal = CycleExpr.unit(1)
    for _ in range(n - 1):
        normal = intersect(normal, -CycleExpr.point(K))
    syms = ("e", "K", "z1", "C")
    lhs = [diag_pull(diag_push(s, n)) for s in syms]
    rhs = [intersect(CycleExpr.point(s), normal) for s in syms]
    return lhs, rhs


def chk_pi1_on_point():
    d = Poly.var("d1")
    return corr_apply(_proj("pi1"), CycleExpr.point("z1")), CycleExpr.point("z1") - CycleExpr.point(E).scale(d)


def chk_piplus_kills_e():
    return corr_apply(_proj("piplus"), CycleExpr.point(E)), CycleExpr.zero(1)


def chk_pi1_kills_fundamental():
    return corr_apply(_proj("pi1"), CycleExpr.unit(1)), CycleExpr.zero(1)


def chk_xi_gamma1():
    k2e = CycleExpr.point(K) + CycleExpr.point(E).scale(2)
    return xi_normalize(moddiag.gamma(1, k2e)), CycleExpr.zero(1)


def chk_route(kind: str, n: int, sym: str):
    op = moddiag.gamma if kind == "gamma" else moddiag.beta
    return op(n, sym, Route.PROJECTOR), op(n, sym, Route.EXPLICIT)


def chk_big_gamma(n: int):
    return moddiag.big_gamma(n), moddiag.gamma(n, "C", Route.PROJECTOR)


def chk_big_b(n: int):
    return moddiag.big_b(n), moddiag.beta(n, "C", Route.PROJECTOR)


def chk_b_is_projected_gamma(n: int):
    return moddiag.projector_power_apply(Projector.P1, n, moddiag.big_gamma(n)), moddiag.big_b(n)


def chk_b_push(n: int, target: str):
    t = Target(target)
    return moddiag.b_push(n, t), moddiag.b_push_expected(n, t)


def chk_recurrence(n: int, m: int, sym: str, flavor: str):
    return moddiag.recurrence_residual(n, m, sym, Flavor(flavor)), CycleExpr.zero(n + m)


def chk_betaz(n: int, sym: str):
    return moddiag.betaz_check(n, sym), moddiag.beta(n, sym)


def chk_fourier_projection(s: int):
    sign = 1 if s % 2 == 0 else -1
    return moddiag.fourier_projection(s), moddiag.big_b(s + 2).scale(sign)


def chk_zhang(g: int):
    expected = jacobian.JacExpr(
        g, {(jacobian.Atom(jacobian.CLS, s),): jacobian.zhang_coefficient(s) for s in range(g)}
    )
    return jacobian.zhang_expand(g, True), expected


def chk_zhang_shape(g: int):
    return jacobian.zhang_expand(g, False), jacobian.zhang_shape(g)


def chk_factorial(s: int, g: int):
    pushed = jacobian.sigma_push(moddiag.gamma(s, E), g)
    return jacobian.beauville_component(pushed, 0, s), jacobian.factorial_component_target(s, g)


def chk_sigma_fp(g: int):
    d = jacobian.delta_class(g)
    rhs = jacobian.mult_push(2, d) - d.scale(2) - jacobian.pont_mul(d, d)
    return jacobian.sigma_push(moddiag.gamma(2, E), g), rhs


def chk_mult_push_hom(g: int):
    x = jacobian.curve_class(g) + jacobian.delta_class(g)
    lhs = jacobian.mult_push(3, jacobian.pont_mul(x, x))
    rhs = jacobian.pont_mul(jacobian.mult_push(3, x), jacobian.mult_push(3, x))
    return lhs, rhs


def chk_genus3_class():
    return genus3.reduce(genus3.class_c2_xi()), Poly()


def chk_genus3_relation():
    return genus3.reduce(genus3.Q2 * 4 - genus3.Q1 ** 2), Poly()


def chk_gcd(s: int):
    lhs, rhs, _ = numtheory.gcd_lemma_check(s)
    return lhs, rhs


def chk_stirling(n: int, s: int):
    return numtheory.f_sum(n, s), _stirling_oracle(n, s)


def _stirling_oracle(n: int, s: int) -> int:
    # S(s, n) via S(a, b) = b S(a-1, b) + S(a-1, b-1)
    row = [1] + [0] * n
    for _ in range(s):
        row = [0] + [k * row[k] + row[k - 1] for k in range(1, n + 1)]
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return fact * row[n]


def chk_big_m_valuations(m: int):
    mm = numtheory.big_m(m)
    got = {p: numtheory.valuation(mm, p) for p in range(2, m + 1) if numtheory.is_prime(p)}
    want = {p: (m - 2 if p == 2 else (m - 1) // (p - 1)) for p in got}
    return got, want


def chk_torsion_example(g: int, group_order: int):
    r = numtheory.torsion_bound(numtheory.Direction.QZ_CRITERION, g, group_order=group_order)
    return (r.gamma3_bound, r.ceresa_bound), {(3, 48): (192, 2304), (4, 36): (216, 77760)}[(g, group_order)]


def chk_zhang_closure():
    c = inference.propagate([inference.G(3)], 3)
    want = [
        inference.Fact(inference.E_IS_XI),
        inference.Fact(inference.CERESA_ZERO),
        inference.Cc(1),
        inference.Cc(2),
        inference.Fact(inference.DELTA_ZERO),
    ] + [inference.G(k) for k in range(3, 3 * 3 + 4)]
    return all(f in c for f in want) and inference.G(3, True) in c, True


def chk_successive(g: int):
    c = inference.propagate([inference.Cc(1), inference.Cc(2)], g)
    return all(inference.Cc(t) in c for t in range(1, g)), True


def chk_large_gamma(g: int):
    c = inference.propagate([], g)
    return inference.G(g + 2, True) in c, True


def chk_explain_delta():
    c = inference.propagate([inference.G(3)], 3)
    return [t.rule for t in inference.explain(inference.Fact(inference.DELTA_ZERO), c)], ["R2", "R5", "R6", "R7"]


def chk_soundness(g: int):
    c = inference.propagate([inference.G(3)], g)
    return all(ok for _, _, ok in inference.soundness_checks(c)), True


# ---------------------------------------------------------------------------
# suite declarations


def build(suite: str, max_n: int) -> list:
    out: list = []

    def add(name, func, *args):
        out.append(Check(suite, name, func, args))

    if suite == "core":
        tags = ("pi0", "pi1", "pi2")
        for i in tags:
            for j in tags:
                add(f"{i} o {j}", "chk_projector_product", i, j)
        add("pi0 + pi1 + pi2 = Delta", "chk_projector_sum")
        add("Delta . Delta = -Delta_*(K)", "chk_self_intersection")
        add("pi1 . pi1", "chk_pi1_square")
        add("three pairwise diagonals on C^3", "chk_triangle")
        add("diagonal pullback of Delta", "chk_diag_pull_delta")
        for n in range(1, min(max_n, 4) + 1):
            add(f"diagonal pullback of a small-diagonal push, n={n}", "chk_diag_roundtrip", n)
        add("pi1 on a generic point", "chk_pi1_on_point")
        add("piplus kills e", "chk_piplus_kills_e")
        add("pi1 kills [C]", "chk_pi1_kills_fundamental")
        add("gamma^1(K + 2e) in xi mode", "chk_xi_gamma1")
    elif suite == "moddiag":
        for n in range(1, max_n + 1):
            for sym in ("e", "K", "z1", "C"):
                add(f"gamma routes n={n} z={sym}", "chk_route", "gamma", n, sym)
                add(f"beta routes n={n} z={sym}", "chk_route", "beta", n, sym)
            add(f"Gamma^{n} subset formula", "chk_big_gamma", n)
            add(f"B^{n} closed form", "chk_big_b", n)
            add(f"pi1 projection of Gamma^{n}", "chk_b_is_projected_gamma", n)
        for n in range(3, max_n + 1):
            for t in Target:
                add(f"B^{n} push {t.value}", "chk_b_push", n, t.value)
        for total in range(3, max_n + 1):
            for n in range(2, total):
                for sym in ("e", "z1", "C"):
                    for fl in Flavor:
                        add(f"recurrence n={n} m={total - n} z={sym} {fl.value}",
                            "chk_recurrence", n, total - n, sym, fl.value)
        for n in range(1, min(max_n, 4) + 1):
            for sym in ("e", "K", "z1"):
                add(f"beta via pi1 products n={n} z={sym}", "chk_betaz", n, sym)
        for s in range(min(2, max_n - 2) + 1):
            add(f"pi1 projection of the transform, s={s}", "chk_fourier_projection", s)
    elif suite == "jacobian":
        for g in range(2, 7):
            add(f"Zhang coefficients g={g}", "chk_zhang", g)
        add("Zhang shape g=3", "chk_zhang_shape", 3)
        for s in range(1, 5):
            add(f"weight {s} point part of sigma(gamma^{s}(e)), g=5", "chk_factorial", s, 5)
        add("sigma of gamma^2(e)", "chk_sigma_fp", 4)
        add("[3]_* respects the Pontryagin product", "chk_mult_push_hom", 3)
    elif suite == "genus3":
        add("reduce(8*p3 - 4*q1*p2 + q1^2*p1) = 0", "chk_genus3_class")
        add("4*q2 - q1^2 reduces to 0", "chk_genus3_relation")
    elif suite == "numtheory":
        for s in range(3, 16, 2):
            add(f"gcd of f(n, {s})", "chk_gcd", s)
        for s in range(1, 16):
            for n in range(1, s + 1):
                add(f"f({n},{s}) = n! S", "chk_stirling", n, s)
        for m in range(3, 21):
            add(f"valuations of M_{m}", "chk_big_m_valuations", m)
        add("torsion example g=3 |G|=48", "chk_torsion_example", 3, 48)
        add("torsion example g=4 |G|=36", "chk_torsion_example", 4, 36)
    elif suite == "inference":
        add("closure of Gamma(3)=0 at g=3", "chk_zhang_closure")
        add("successive vanishing g=5", "chk_successive", 5)
        for g in (2, 3, 4):
            add(f"large Gamma vanish g={g}", "chk_large_gamma", g)
        add("derivation of delta=0", "chk_explain_delta")
        for g in (3, 4):
            add(f"engine confirms derived facts g={g}", "chk_soundness", g)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out


def build_all(suites, max_n: int) -> list:
    return [c for s in suites for c in build(s, max_n)]


# ---------------------------------------------------------------------------
# running


def _normalise(v, xi: bool):
    if not xi:
        return v
    if isinstance(v, CycleExpr):
        return xi_normalize(v)
    if isinstance(v, jacobian.JacExpr):
        return jacobian.xi_mode(v)
    if isinstance(v, list):
        return [_normalise(x, xi) for x in v]
    return v


def _show(v) -> str:
    if isinstance(v, (CycleExpr, jacobian.JacExpr, Poly)):
        return format_expr(v)
    if isinstance(v, list):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    return str(v)


def run_check(check: Check, xi: bool = False) -> Result:
    fn = globals()[check.func]
    try:
        lhs, rhs = fn(*check.args)
    except Exception as exc:  # noqa: BLE001  reported as a failed check
        return Result(check, False, f"raised {type(exc).__name__}: {exc}")
    lhs, rhs = _normalise(lhs, xi), _normalise(rhs, xi)
    if lhs == rhs:
        return Result(check, True)
    if isinstance(lhs, CycleExpr) and isinstance(rhs, CycleExpr) and lhs.ambient == rhs.ambient:
        return Result(check, False, f"difference: {format_expr(lhs - rhs)}")
    return Result(check, False, f"got {_show(lhs)}, expected {_show(rhs)}")


def _run_pair(args):
    return run_check(*args)


def run(checks: list, xi: bool = False, jobs: int | None = None) -> list:
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_pair, [(c, xi) for c in checks]))
    return [run_check(c, xi) for c in checks]
