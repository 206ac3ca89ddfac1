"""Integer arithmetic behind the torsion bounds.

``f(n, s)`` is the alternating binomial sum that appears when the
``s``-th graded piece of ``[n]_*`` is expanded; ``M_m`` collects the primes
that can divide the gcd of those sums for ``3 <= s <= m``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field
from functools import cache
from functools import reduce as fold
from math import comb, gcd, prod

from .errors import InvalidGenus


def f_sum(n: int, s: int) -> int:
    if n < 1 or s < 0:
        raise ValueError(f"f_sum needs n >= 1 and s >= 0, got ({n}, {s})")
    return sum((-1) ** k * comb(n, k) * (n - k) ** s for k in range(n))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_set(s: int) -> frozenset:
    """Primes ``p <= s`` with ``(p - 1) | (s - 1)``."""
    if s < 3:
        raise ValueError(f"prime_set needs s >= 3, got {s}")
    return frozenset(p for p in range(2, s + 1) if is_prime(p) and (s - 1) % (p - 1) == 0)


def gcd_lemma_check(s: int) -> tuple[int, int, bool]:
    if s < 3 or s % 2 == 0:
        raise ValueError(f"gcd_lemma_check needs odd s >= 3, got {s}")
    lhs = fold(gcd, (f_sum(n, s) for n in range(3, s + 1)))
    rhs = prod(prime_set(s))
    return lhs, rhs, lhs == rhs


@cache
def big_m(m: int) -> int:
    if m < 3:
        raise ValueError(f"M_m needs m >= 3, got {m}")
    return prod(prod(prime_set(s)) for s in range(3, m + 1))


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def big_m_from_genus(g: int) -> int:
    """``M_(g+1)`` as ``2^(g-1) * prod_{3<=p<=g+1} p^floor(g/(p-1))``."""
    out = 2 ** (g - 1)
    for p in range(3, g + 2):
        if is_prime(p):
            out *= p ** (g // (p - 1))
    return out


class Direction(enum.Enum):
    CER_TO_GAMMA = "cer-to-gamma"
    GAMMA_TO_CER = "gamma-to-cer"
    QZ_CRITERION = "qz"


@dataclass(frozen=True)
class BoundReport:
    genus: int
    gamma3_bound: int
    ceresa_bound: int
    inputs: dict
    trace: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def to_text(self) -> str:
        lines = [
            f"genus: {self.genus}",
            f"inputs: {', '.join(f'{k}={v}' for k, v in self.inputs.items())}",
            f"modified diagonal torsion divides: {self.gamma3_bound}",
            f"Ceresa torsion divides: {self.ceresa_bound}",
        ]
        lines += [f"  - {t}" for t in self.trace]
        return "\n".join(lines)


def torsion_bound(direction: Direction, g: int, *, d: int = 1, N: int = 1, group_order: int = 1) -> BoundReport:
    """Torsion orders transferred between the Ceresa and modified diagonal cycles."""
    if not isinstance(g, int) or g < 2:
        raise InvalidGenus(f"genus must be an integer >= 2, got {g!r}")
    for name, v in (("d", d), ("N", N), ("G", group_order)):
        if v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v}")
    mg = big_m(g + 1)
    if direction is Direction.CER_TO_GAMMA:
        return BoundReport(
            g, 2 * d, d, {"d": d},
            [f"Ceresa cycle is {d}-torsion", f"modified diagonal is killed by 2*{d} = {2 * d}"],
        )
    if direction is Direction.GAMMA_TO_CER:
        return BoundReport(
            g, d, mg * d, {"d": d},
            [
                f"modified diagonal is {d}-torsion",
                f"M_{g + 1} = {mg}",
                f"Ceresa cycle is killed by {mg}*{d} = {mg * d}",
            ],
        )
    gamma3 = N * (2 * g - 2) * group_order
    return BoundReport(
        g, gamma3, mg * gamma3, {"N": N, "G": group_order},
        [
            f"N*(2g-2)*|G| = {N}*{2 * g - 2}*{group_order} = {gamma3} kills the modified diagonal",
            f"M_{g + 1} = {mg}",
            f"Ceresa cycle is killed by {mg}*{gamma3} = {mg * gamma3}",
        ],
    )
