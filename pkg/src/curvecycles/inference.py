"""Forward chaining over vanishing statements for a curve of fixed genus.

A :class:`Fact` says that some class vanishes.  Indexed facts come in two
shapes: an instance (``Gamma(4)=0``) and a universal statement
(``Gamma(>=4)=0``, vanishing for every index from 4 on).  Instances are
materialised up to ``cap = 2g + 4``; a universal fact stands for the
infinite tail.

Every rule carries a citation.  :func:`propagate` computes the least
fixpoint of the rule set, and :func:`explain` extracts a shallowest
derivation, breaking ties by rule number.
"""

from __future__ import annotations

import json
import re
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .errors import FactNotDerived, InvalidGenus, SyntaxError_

GAMMA_ZERO = "GAMMA_ZERO"
B_ZERO = "B_ZERO"
CURVE_COMP_ZERO = "CURVE_COMP_ZERO"
GAMMA_E_ZERO = "GAMMA_E_ZERO"
DELTA_COMP_ZERO = "DELTA_COMP_ZERO"
DELTA_ZERO = "DELTA_ZERO"
CERESA_ZERO = "CERESA_ZERO"
E_IS_XI = "E_IS_XI"

INDEXED = (GAMMA_ZERO, B_ZERO, CURVE_COMP_ZERO, GAMMA_E_ZERO, DELTA_COMP_ZERO)
PLAIN = (DELTA_ZERO, CERESA_ZERO, E_IS_XI)
KIND_ORDER = {k: i for i, k in enumerate(INDEXED + PLAIN)}
MIN_INDEX = {GAMMA_ZERO: 1, B_ZERO: 1, CURVE_COMP_ZERO: 0, GAMMA_E_ZERO: 1, DELTA_COMP_ZERO: 0}

_TEXT_NAME = {
    GAMMA_ZERO: "Gamma",
    B_ZERO: "B",
    CURVE_COMP_ZERO: "Curve",
    GAMMA_E_ZERO: "gamma_e",
    DELTA_COMP_ZERO: "delta",
}
_PLAIN_TEXT = {DELTA_ZERO: "delta=0", CERESA_ZERO: "Ceresa=0", E_IS_XI: "e=xi"}


@dataclass(frozen=True, order=True)
class Fact:
    kind: str
    index: int | None = None
    universal: bool = False

    def sort_key(self):
        return (KIND_ORDER[self.kind], -1 if self.index is None else self.index, self.universal)

    def __str__(self):
        if self.kind in PLAIN:
            return _PLAIN_TEXT[self.kind]
        idx = f">={self.index}" if self.universal else str(self.index)
        return f"{_TEXT_NAME[self.kind]}({idx})=0"


def G(n, universal=False):
    return Fact(GAMMA_ZERO, n, universal)


def Bz(n, universal=False):
    return Fact(B_ZERO, n, universal)


def Cc(s, universal=False):
    return Fact(CURVE_COMP_ZERO, s, universal)


def Ge(k, universal=False):
    return Fact(GAMMA_E_ZERO, k, universal)


def Dc(s, universal=False):
    return Fact(DELTA_COMP_ZERO, s, universal)


_FACT_RE = re.compile(r"^\s*([A-Za-z_]+)\s*\(\s*(>=)?\s*(\d+)\s*\)\s*=\s*0\s*$")
_NAME_KIND = {v.lower(): k for k, v in _TEXT_NAME.items()}
_PLAIN_KIND = {re.sub(r"\s", "", v).lower(): k for k, v in _PLAIN_TEXT.items()}


def parse_fact(text: str) -> Fact:
    """Parse ``Gamma(3)=0``, ``Curve(>=2)=0``, ``delta=0``, ``Ceresa=0`` or ``e=xi``."""
    compact = re.sub(r"\s", "", text).lower()
    if compact in _PLAIN_KIND:
        return Fact(_PLAIN_KIND[compact])
    m = _FACT_RE.match(text)
    if not m or m.group(1).lower() not in _NAME_KIND:
        raise SyntaxError_(f"cannot read vanishing statement {text!r}", 0)
    kind = _NAME_KIND[m.group(1).lower()]
    idx = int(m.group(3))
    if idx < MIN_INDEX[kind]:
        raise SyntaxError_(f"index {idx} is below the smallest allowed value {MIN_INDEX[kind]}", m.start(3))
    return Fact(kind, idx, bool(m.group(2)))


@dataclass(frozen=True)
class Trace:
    fact: Fact
    rule: str
    premises: tuple
    citation: str

    def to_dict(self) -> dict:
        return {
            "fact": str(self.fact),
            "rule": self.rule,
            "premises": [str(p) for p in self.premises],
            "citation": self.citation,
        }


@dataclass(frozen=True)
class Rule:
    rid: str
    citation: str
    fire: Callable  # (state) -> iterable of (conclusion, premises)

    @property
    def rank(self) -> int:
        return int(self.rid[1:])


# ---------------------------------------------------------------------------
# state


class _State:
    def __init__(self, g: int):
        self.g = g
        self.cap = 2 * g + 4
        self.facts: set = set()

    def has(self, f: Fact) -> bool:
        return f in self.facts

    def instances(self, kind: str) -> list:
        return sorted(f.index for f in self.facts if f.kind == kind and not f.universal)

    def universals(self, kind: str) -> list:
        return sorted(f.index for f in self.facts if f.kind == kind and f.universal)

    def expand(self, f: Fact) -> list:
        """A fact plus the instances it stands for within the cap."""
        if not f.universal:
            return [f]
        return [f] + [Fact(f.kind, k) for k in range(f.index, self.cap + 1)]


# ---------------------------------------------------------------------------
# rules


def _shift_both_ways(a_kind, b_kind, offset, lo):
    """``a(i) <=> b(i + offset)`` for ``i >= lo``, including universal forms."""

    def fire(st: _State):
        for f in list(st.facts):
            if f.kind == a_kind and f.index >= lo:
                yield Fact(b_kind, f.index + offset, f.universal), (f,)
            elif f.kind == b_kind and f.index - offset >= lo:
                yield Fact(a_kind, f.index - offset, f.universal), (f,)

    return fire


def _consecutive(kind, lo):
    def fire(st: _State):
        have = set(st.instances(kind))
        for n in sorted(have):
            if n >= lo and n + 1 in have:
                yield Fact(kind, n, True), (Fact(kind, n), Fact(kind, n + 1))

    return fire


def _r4(st: _State):
    for n in st.instances(GAMMA_ZERO):
        if n >= 3:
            yield G(2 * n - 2, True), (G(n),)


def _r5(st: _State):
    for n in st.instances(B_ZERO):
        if n >= 3:
            yield Ge(n - 1, True), (Bz(n),)


def _r7(st: _State):
    if st.has(Dc(2)):
        yield Fact(DELTA_ZERO), (Dc(2),)


def _r8(st: _State):
    yield G(st.g + 2, True), ()


def _r9(st: _State):
    if st.has(G(3)):
        yield Fact(E_IS_XI), (G(3),)


def _odd_range(g):
    return [s for s in range(1, g) if s % 2 == 1]


def _r10(st: _State):
    odd = [Cc(s) for s in _odd_range(st.g)]
    if all(st.has(f) for f in odd):
        yield Fact(CERESA_ZERO), tuple(odd)
    if st.has(Fact(CERESA_ZERO)):
        for f in odd:
            yield f, (Fact(CERESA_ZERO),)


def _r11(st: _State):
    g = st.g
    yield Cc(g, True), ()
    yield Dc(0), ()
    yield Dc(1), ()
    yield Dc(g + 1, True), ()
    comps = [Dc(s) for s in range(2, g + 1)]
    if all(st.has(f) for f in comps):
        yield Fact(DELTA_ZERO), tuple(comps)
    if st.has(Fact(DELTA_ZERO)):
        for f in comps:
            yield f, (Fact(DELTA_ZERO),)


def _r12(st: _State):
    yield Ge(1), ()
    for n in st.instances(GAMMA_E_ZERO):
        if n < 2:
            continue
        k = 2
        while k * (n - 1) + 1 <= st.cap:
            yield Ge(k * (n - 1) + 1), (Ge(n),)
            k += 1


def _r14(st: _State):
    if st.has(G(3)):
        yield G(3, True), (G(3),)


def _r3(st: _State):
    yield from _consecutive(GAMMA_ZERO, 1)(st)
    yield from _consecutive(GAMMA_E_ZERO, 1)(st)


RULES: tuple = (
    Rule("R1", "curve component s vanishes iff Gamma^(s+2) vanishes, s >= 1",
         _shift_both_ways(CURVE_COMP_ZERO, GAMMA_ZERO, 2, 1)),
    Rule("R2", "Gamma^n vanishes iff B^n vanishes, n >= 2",
         _shift_both_ways(GAMMA_ZERO, B_ZERO, 0, 2)),
    Rule("R3", "two consecutive vanishing gamma^n(z), gamma^(n+1)(z) force gamma^k(z) = 0 for all k >= n",
         _r3),
    Rule("R4", "Gamma^n = 0 with n >= 3 forces Gamma^k = 0 for all k >= 2n - 2", _r4),
    Rule("R5", "B^n = 0 with n >= 3 forces gamma^k(z) = 0 for every zero-cycle z and all k >= n - 1 "
               "(recorded for z = e)", _r5),
    Rule("R6", "delta component s vanishes iff gamma^s(e) vanishes, s >= 1",
         _shift_both_ways(DELTA_COMP_ZERO, GAMMA_E_ZERO, 0, 1)),
    Rule("R7", "delta component 2 vanishing forces delta = 0", _r7),
    Rule("R8", "Gamma^n = 0 for every n > g + 1", _r8),
    Rule("R9", "Gamma^3 = 0 forces (2g - 2) e = K", _r9),
    Rule("R10", "Ceresa = 2 * sum of the odd curve components", _r10),
    Rule("R11", "graded pieces vanish outside their index range; delta is the sum of its components", _r11),
    Rule("R12", "gamma^n(e) = 0 with n >= 2 forces gamma^(k(n-1)+1)(e) = 0 for all k >= 0", _r12),
    Rule("R14", "Gamma^3 = 0 forces Gamma^n = 0 for all n >= 3", _r14),
)


# ---------------------------------------------------------------------------
# closure


@dataclass
class Closure:
    genus: int
    axioms: frozenset
    facts: frozenset
    traces: dict = field(repr=False)  # Fact -> list[Trace] (every firing)
    annotations: tuple = ()

    def normalized(self) -> list:
        """The closure with every fact covered by a smaller universal one removed."""
        smallest: dict = {}
        for f in self.facts:
            if f.universal:
                smallest[f.kind] = min(smallest.get(f.kind, f.index), f.index)
        out = [
            f
            for f in self.facts
            if f.index is None
            or f.kind not in smallest
            or f.index < smallest[f.kind]
            or (f.universal and f.index == smallest[f.kind])
        ]
        return sorted(out, key=Fact.sort_key)

    def __contains__(self, f: Fact) -> bool:
        if f in self.facts:
            return True
        if f.index is not None:
            # an instance or universal fact beyond the cap is covered by a universal one
            return any(
                u.kind == f.kind and u.universal and u.index <= f.index for u in self.facts
            )
        return False

    def best_traces(self) -> list:
        return [best_trace(self, f) for f in self.normalized() if f not in self.axioms]

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "axioms": [str(f) for f in sorted(self.axioms, key=Fact.sort_key)],
            "facts": [str(f) for f in self.normalized()],
            "traces": [t.to_dict() for t in self.best_traces()],
            "annotations": list(self.annotations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"genus {self.genus}", "axioms: " + ", ".join(str(f) for f in sorted(self.axioms, key=Fact.sort_key))]
        lines.append("derived:")
        for t in self.best_traces():
            prem = ", ".join(str(p) for p in t.premises) or "unconditional"
            lines.append(f"  {t.fact}  [{t.rule}: {prem}]")
        for a in self.annotations:
            lines.append(f"note: {a}")
        return "\n".join(lines)


ANNOTATIONS = (
    "generic non-vanishing of the second curve component for g >= 4 is not derivable here",
)


def propagate(axioms: Iterable[Fact], g: int, rules: Sequence[Rule] = RULES) -> Closure:
    """Least fixpoint of ``rules`` over ``axioms`` for a curve of genus ``g``."""
    if not isinstance(g, int) or g < 2:
        raise InvalidGenus(f"genus must be an integer >= 2, got {g!r}")
    st = _State(g)
    axioms = frozenset(axioms)
    for a in axioms:
        if a.index is not None and a.index < MIN_INDEX[a.kind]:
            raise ValueError(f"{a} has an index below the allowed range")
        st.facts.update(st.expand(a))
    while True:
        new = set()
        for rule in rules:
            for concl, _ in rule.fire(st):
                for f in st.expand(concl):
                    if f not in st.facts:
                        new.add(f)
        if not new:
            break
        st.facts |= new
    traces = _collect_traces(st, axioms, rules)
    return Closure(g, axioms, frozenset(st.facts), traces, ANNOTATIONS)


def _collect_traces(st: _State, axioms, rules) -> dict:
    traces: dict = {}
    for rule in rules:
        for concl, prem in rule.fire(st):
            for f in st.expand(concl):
                if f in axioms:
                    continue
                traces.setdefault(f, []).append(Trace(f, rule.rid, tuple(prem), rule.citation))
    return traces


def _depths(closure: Closure) -> dict:
    depth = {f: 0 for f in closure.axioms}
    changed = True
    while changed:
        changed = False
        for f, ts in closure.traces.items():
            for t in ts:
                if all(p in depth for p in t.premises):
                    d = 1 + max((depth[p] for p in t.premises), default=0)
                    if d < depth.get(f, 1 << 30):
                        depth[f] = d
                        changed = True
    return depth


def best_trace(closure: Closure, fact: Fact) -> Trace:
    depth = _depths(closure)
    return _best(closure, fact, depth)


def _best(closure: Closure, fact: Fact, depth: dict) -> Trace:
    options = [t for t in closure.traces.get(fact, []) if all(p in depth for p in t.premises)]
    if not options:
        raise FactNotDerived(f"{fact} is not in the closure")

    def key(t: Trace):
        d = 1 + max((depth[p] for p in t.premises), default=0)
        return (d, int(t.rule[1:]), tuple(p.sort_key() for p in t.premises))

    return min(options, key=key)


def explain(fact: Fact, closure: Closure) -> list:
    """Shallowest derivation of ``fact`` as a list of traces, premises first.

    Axioms yield an empty list.
    """
    if fact in closure.axioms:
        return []
    if fact not in closure.facts:
        raise FactNotDerived(f"{fact} is not in the closure")
    depth = _depths(closure)
    out: list = []
    seen: set = set()

    def walk(f: Fact):
        if f in seen or f in closure.axioms:
            return
        seen.add(f)
        t = _best(closure, f, depth)
        for p in t.premises:
            walk(p)
        out.append(t)

    walk(fact)
    return out


def format_explanation(fact: Fact, closure: Closure) -> str:
    chain = explain(fact, closure)
    if not chain:
        return f"{fact}: axiom"
    lines = []
    for t in chain:
        prem = ", ".join(str(p) for p in t.premises) or "unconditional"
        lines.append(f"{t.rule}: {prem}  =>  {t.fact}   ({t.citation})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# cross-checks against the symbolic engine


def soundness_checks(closure: Closure) -> list:
    """Facts in the closure that the symbolic engine can confirm directly.

    Returns ``(fact, description, confirmed)`` triples.
    """
    from .cycles import CycleExpr, E, K, xi_normalize
    from .jacobian import JacExpr, beauville_component, sigma_push
    from .moddiag import gamma

    g = closure.genus
    out = []
    if Ge(1) in closure:
        out.append((Ge(1), "gamma^1(e) is zero", gamma(1, E).is_zero()))
    if Fact(E_IS_XI) in closure:
        k2e = CycleExpr.point(K) + CycleExpr.point(E).scale(2)
        out.append((Fact(E_IS_XI), "gamma^1(K + 2e) vanishes once e = K/(2g-2)",
                    xi_normalize(gamma(1, k2e)).is_zero()))
    delta = sigma_push(CycleExpr.point(E), g) - JacExpr.unit(g)
    for s in (0, 1):
        if Dc(s) in closure:
            out.append((Dc(s), f"component {s} of delta is zero in the Jacobian model",
                        beauville_component(delta, 0, s).is_zero()))
    return out
