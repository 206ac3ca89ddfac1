"""Genus-3 tautological polynomials in ``p1, p2, p3, q1, q2``.

Two relations are imposed and used as rewrite rules, applied in this order::

    q2 -> q1^2 / 4
    p3 -> (4 p2 q1 + 4 q2 p1 - 2 p1 q1^2) / 8     (with q2 already replaced)

After the first rule the second right-hand side is ``(4 p2 q1 - p1 q1^2) / 8``.
Neither left-hand side occurs in either right-hand side, so a single pass
reaches the normal form.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import Poly

P1, P2, P3 = (Poly.var(f"p{i}") for i in (1, 2, 3))
Q1, Q2 = (Poly.var(f"q{i}") for i in (1, 2))

GENERATORS = ("p1", "p2", "p3", "q1", "q2")

Q2_RULE = Q1 ** 2 * Fraction(1, 4)
P3_RULE = (P2 * Q1 * 4 + Q2 * P1 * 4 - P1 * Q1 ** 2 * 2).substitute({"q2": Q2_RULE}) * Fraction(1, 8)


def reduce(w: Poly) -> Poly:
    """Normal form modulo the two relations; the output mentions neither ``q2`` nor ``p3``."""
    extra = w.variables() - set(GENERATORS)
    if extra:
        raise ValueError(f"not a genus-3 tautological polynomial: {sorted(extra)}")
    return w.substitute({"q2": Q2_RULE}).substitute({"p3": P3_RULE})


def class_c2_xi() -> Poly:
    """Eight times the second graded piece of the curve for the canonical slice.

    Built from the shifted expansion
    ``p3 + t p2 + t^2/2 p1`` with ``t = -q1/2``.
    """
    t = -Q1 * Fraction(1, 2)
    return (P3 + t * P2 + t ** 2 * Fraction(1, 2) * P1) * 8
