"""Modified diagonal cycles and the operators built from the Künneth projectors.

Conventions: a class ``rho`` on ``C^(a+b)`` acts as a correspondence from the
first ``a`` factors to the last ``b`` (see :func:`~curvecycles.cycles.corr_apply`).
The projectors on ``C^2`` are ``pi0 = C x e``, ``pi2 = e x C``,
``pi1 = Delta - pi0 - pi2`` and ``piplus = Delta - pi0``.

Most operators come in two independent versions so they can be checked
against each other: a ``PROJECTOR`` route that pushes small diagonals through
tensor powers of a projector, and an ``EXPLICIT`` route that writes the
answer down as a signed sum of decorated partitions.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import cache, lru_cache
from itertools import combinations

from .coeff import ONE, Poly, generic_degree
from .cycles import (
    FUNDAMENTAL,
    CycleExpr,
    E,
    K,
    Monomial,
    _Accumulator,
    corr_apply,
    decoration_degree,
    diag_push,
    diagonal,
    expr_sum,
    exterior,
    intersect,
    intersect_all,
    linear_combination,
    point_at,
    pull_proj,
    push_proj,
    z,
)
from .errors import ArityMismatch, ArityTooSmall

PointLike = str | CycleExpr


class Projector(enum.Enum):
    P0 = "pi0"
    P1 = "pi1"
    P2 = "pi2"
    PPLUS = "piplus"


class Route(enum.Enum):
    PROJECTOR = "projector"
    EXPLICIT = "explicit"


class Target(enum.Enum):
    GENERIC_Z = "generic_z"
    DIAGONAL = "diagonal"
    SLICE12 = "slice12"


class Flavor(enum.Enum):
    GAMMA = "gamma"
    BETA = "beta"


# ---------------------------------------------------------------------------
# projectors


@cache
def projector(tag: Projector) -> CycleExpr:
    delta = diagonal(2, (1, 2))
    p0 = point_at(2, 2, E)
    p2 = point_at(2, 1, E)
    if tag is Projector.P0:
        return p0
    if tag is Projector.P2:
        return p2
    if tag is Projector.P1:
        return delta - p0 - p2
    return delta - p0


@lru_cache(maxsize=64)
def projector_tensor(tag: Projector, n: int) -> CycleExpr:
    """``pi^{(x)n}`` on ``C^(2n)``, pairing coordinate ``i`` with ``n+i``."""
    if n < 1:
        raise ArityMismatch("tensor power needs n >= 1")
    p = projector(tag)
    factors = [pull_proj(p, (i, n + i), 2 * n) for i in range(1, n + 1)]
    return intersect_all(factors)


def projector_power_apply(tag: Projector, n: int, w: CycleExpr) -> CycleExpr:
    """Push ``w`` on ``C^n`` through ``pi^{(x)n}``."""
    if n < 1:
        raise ArityMismatch("tensor power needs n >= 1")
    if w.ambient != n:
        raise ArityMismatch(f"expression lives on C^{w.ambient}, projector power acts on C^{n}")
    return corr_apply(projector_tensor(tag, n), w)


# ---------------------------------------------------------------------------
# gamma / beta


def as_point(x: PointLike) -> CycleExpr:
    """Coerce a symbol name (``e``, ``K``, ``z1``, ``C``) to a class on ``C^1``."""
    if isinstance(x, CycleExpr):
        if x.ambient != 1:
            raise ArityMismatch(f"expected a class on C^1, got C^{x.ambient}")
        return x
    return CycleExpr.point(x)


def _split_point(x: CycleExpr):
    """Yield ``(coeff, dec)`` pairs, ``dec`` None for the fundamental class."""
    for m, c in x.items():
        ((_, dec),) = m.blocks
        yield c, dec


def _zero_part_degree(x: CycleExpr) -> Poly:
    out = Poly()
    for c, dec in _split_point(x):
        if dec is not None:
            out = out + c * decoration_degree(dec)
    return out


def _times_e(x: CycleExpr) -> CycleExpr:
    """Intersection product with ``e`` on ``C``: only the fundamental part survives."""
    return intersect(x, CycleExpr.point(E))


@cache
def _gamma_explicit_symbol(n: int, dec) -> CycleExpr:
    """Closed form of gamma on a single decoration (None means ``[C]``)."""
    acc = _Accumulator(n)
    if dec is not None:
        sign = 1 if n % 2 == 0 else -1
        acc.add(Monomial(n, tuple(((i,), E) for i in range(1, n + 1))), decoration_degree(dec) * sign)
    for k in range(1, n + 1):
        sign = 1 if (n - k) % 2 == 0 else -1
        for sub in combinations(range(1, n + 1), k):
            blocks = [(sub, dec)] + [((j,), E) for j in range(1, n + 1) if j not in sub]
            blocks.sort(key=lambda b: b[0][0])
            acc.add(Monomial(n, tuple(blocks)), Poly.const(sign))
    return acc.result()


def _explicit(n: int, x: CycleExpr, fundamental_fn) -> CycleExpr:
    pairs = []
    for c, dec in _split_point(x):
        pairs.append((c, _gamma_explicit_symbol(n, dec) if dec is not None else fundamental_fn(n)))
    return linear_combination(n, pairs)


@cache
def gamma(n: int, x: PointLike, route: Route = Route.EXPLICIT) -> CycleExpr:
    """``gamma^n`` applied to a class on ``C``."""
    if n < 1:
        raise ArityMismatch("gamma needs n >= 1")
    x = as_point(x)
    if route is Route.PROJECTOR:
        return projector_power_apply(Projector.PPLUS, n, diag_push(x, n))
    return _explicit(n, x, lambda k: _gamma_explicit_symbol(k, None))


@cache
def beta(n: int, x: PointLike, route: Route = Route.EXPLICIT) -> CycleExpr:
    """``beta^n`` applied to a class on ``C``; agrees with gamma on zero-cycles."""
    if n < 1:
        raise ArityMismatch("beta needs n >= 1")
    x = as_point(x)
    if route is Route.PROJECTOR:
        return projector_power_apply(Projector.P1, n, diag_push(x, n))
    return _explicit(n, x, big_b)


@cache
def big_gamma(n: int) -> CycleExpr:
    """Signed sum over nonempty ``I`` of the partial diagonal on ``I`` times ``e`` elsewhere."""
    if n < 1:
        raise ArityMismatch("Gamma needs n >= 1")
    pairs = []
    for k in range(1, n + 1):
        sign = 1 if (n - k) % 2 == 0 else -1
        for sub in combinations(range(1, n + 1), k):
            rest = [((j,), E) for j in range(1, n + 1) if j not in sub]
            pairs.append((sign, CycleExpr.mono(n, [(sub, None)] + rest)))
    return linear_combination(n, pairs)


def pull_omit(w: CycleExpr, omit, n: int) -> CycleExpr:
    """Pull back along the projection ``C^n -> C^(n-|omit|)`` forgetting ``omit``."""
    omit = set(omit)
    return pull_proj(w, [i for i in range(1, n + 1) if i not in omit], n)


@cache
def big_b(n: int) -> CycleExpr:
    if n < 1:
        raise ArityMismatch("B needs n >= 1")
    if n == 1:
        return CycleExpr.zero(1)
    g_e = gamma(n - 1, E)
    return big_gamma(n) - expr_sum(n, (pull_omit(g_e, (i,), n) for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# pushforwards of B^n


def b_push(n: int, target: Target) -> CycleExpr:
    """Evaluate one of the three pushforwards of ``B^n`` directly."""
    if n < 3:
        raise ArityTooSmall(f"b_push needs n >= 3, got {n}")
    bn = big_b(n)
    if target is Target.GENERIC_Z:
        return corr_apply(bn, CycleExpr.point(z(1)))
    if target is Target.DIAGONAL:
        return corr_apply(bn, diagonal(2, (1, 2)))
    return push_proj(intersect(bn, diagonal(n, (1, 2))), range(2, n + 1))


def b_push_expected(n: int, target: Target) -> CycleExpr:
    """Closed-form value each :func:`b_push` target should equal."""
    if n < 3:
        raise ArityTooSmall(f"b_push needs n >= 3, got {n}")
    k_plus_2e = CycleExpr.point(K) + CycleExpr.point(E).scale(2)
    if target is Target.GENERIC_Z:
        d = Poly.var(generic_degree(1))
        return gamma(n - 1, z(1)) - gamma(n - 1, E).scale(d)
    if target is Target.DIAGONAL:
        return -beta(n - 2, k_plus_2e)
    minus_k_4e = -CycleExpr.point(K) - CycleExpr.point(E).scale(4)
    return beta(n - 1, minus_k_4e) - exterior(CycleExpr.point(E), beta(n - 2, k_plus_2e))


# ---------------------------------------------------------------------------
# recurrence


def recurrence_operator(w: CycleExpr, m: int, flavor: Flavor) -> CycleExpr:
    """``pi^{(x)(n+m)}_*(pr_[1,n]^* w . pr_[n,n+m]^* Delta^(m+1))`` for ``w`` on ``C^n``."""
    n = w.ambient
    total = n + m
    tag = Projector.PPLUS if flavor is Flavor.GAMMA else Projector.P1
    glued = intersect(
        pull_proj(w, range(1, n + 1), total),
        diagonal(total, range(n, total + 1)),
    )
    return projector_power_apply(tag, total, glued)


def recurrence_residual(n: int, m: int, x: PointLike, flavor: Flavor) -> CycleExpr:
    """Unconditional form of the two-step recurrence; identically zero."""
    if n < 2 or m < 1:
        raise ArityTooSmall(f"recurrence needs n >= 2 and m >= 1, got ({n}, {m})")
    x = as_point(x)
    op = gamma if flavor is Flavor.GAMMA else beta
    lhs = op(n + m, x)
    main = recurrence_operator(op(n, x), m, flavor)
    tail = exterior(op(n - 1, x), op(m + 1, E))
    out = lhs - main - tail
    if flavor is Flavor.BETA:
        xe = _times_e(x)
        if xe:
            out = out - exterior(op(n - 1, xe), op(m + 1, FUNDAMENTAL))
    return out


# ---------------------------------------------------------------------------
# pulled-back Fourier transform of a Beauville component


def _gamma_or_degree(k: int, x: CycleExpr) -> CycleExpr:
    # gamma^0 of a zero-cycle is its degree, viewed on C^0
    if k == 0:
        return CycleExpr.unit(0).scale(_zero_part_degree(x))
    return gamma(k, x)


def fourier_rhs(s: int) -> CycleExpr:
    """Pullback to ``C^(s+2)`` of the transform of the ``s``-th curve component."""
    if s < 0:
        raise ArityMismatch("Beauville index must be non-negative")
    n = s + 2
    k4 = CycleExpr.point(K) + CycleExpr.point(E).scale(4)
    k2 = CycleExpr.point(K) + CycleExpr.point(E).scale(2)
    g1 = gamma(s + 1, k4)
    single = expr_sum(n, (pull_omit(g1, (j,), n) for j in range(1, n + 1)))
    g0 = _gamma_or_degree(s, k2)
    double = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if k != j:
                double.append(intersect(point_at(n, k, E), pull_omit(g0, (j, k), n)))
    inner = linear_combination(
        n,
        [
            (ONE, big_b(n)),
            (-Fraction(s + 1, 2), single),
            (-Fraction(1, 2), expr_sum(n, double)),
        ],
    )
    return inner if s % 2 == 0 else -inner


def fourier_projection(s: int) -> CycleExpr:
    """``pi1^{(x)(s+2)}`` applied to :func:`fourier_rhs`."""
    return projector_power_apply(Projector.P1, s + 2, fourier_rhs(s))


# ---------------------------------------------------------------------------
# beta via the product of pulled-back projectors


def betaz_check(n: int, x: PointLike) -> CycleExpr:
    """``pr_[1,n]*(pr_0^* x . prod_j pr_0j^* pi1)`` with the extra index placed first."""
    if n < 1:
        raise ArityMismatch("needs n >= 1")
    x = as_point(x)
    total = n + 1
    p1 = projector(Projector.P1)
    factors = [pull_proj(x, (1,), total)]
    factors += [pull_proj(p1, (1, j), total) for j in range(2, total + 1)]
    return push_proj(intersect_all(factors), range(2, total + 1))

