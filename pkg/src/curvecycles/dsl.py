"""Text syntax for cycles, Jacobian classes and genus-3 tautological polynomials.

Cycle expressions::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*       # '/' only by a nonzero number
    factor := atom ['^' int]
    atom   := int | var | '(' expr ')'
            | 'diag' '(' int (',' int)* ')'
            | sym '@' int | sym '@' '{' int (',' int)* '}'
            | 'Gamma' '(' int ')' | 'B' '(' int ')'
            | 'gamma' '(' int ',' sym ')' | 'beta' '(' int ',' sym ')'
            | 'pi0' | 'pi1' | 'pi2' | 'piplus'
    sym    := 'e' | 'K' | 'z' int  (and 'C' inside gamma/beta)
    var    := 'g' | 'd' int
    text   := expr ['@@' int]

``*`` between two cycles is the intersection product.  ``diag(i,j,..)``
is the partial diagonal on those coordinates, ``e@{i,j}`` the same diagonal
carrying ``e``.  Without a trailing ``@@n`` the ambient comes from the first
named class (``Gamma(n)`` etc. live on ``C^n``, projectors on ``C^2``) and
otherwise from the largest index used.

Jacobian classes use atoms ``CLS_s``, ``DEL_s``, ``KAP_s``, ``Z<j>_s``, the
unit ``[0]`` and the trailing marker ``@@g=<genus>``; ``*`` is the
Pontryagin product.  Genus-3 polynomials are plain polynomials in
``p1, p2, p3, q1, q2``.
"""

from __future__ import annotations

import enum
import json
import re
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import GENUS, ONE, Poly, format_poly
from .cycles import FUNDAMENTAL, CycleExpr, Monomial
from .errors import AmbientAmbiguous, AmbientMismatch, SyntaxError_

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<unit>\[0\])|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>@@|[-+*/^(),@{}=])"
)
_SCALAR_VAR = re.compile(r"^(g|d[1-9]\d*)$")
_TAUT_VAR = re.compile(r"^(p[1-3]|q[1-2])$")
_TAUT_LIKE = re.compile(r"^[pq][1-9]\d*$")
_POINT_SYM = re.compile(r"^(e|K|z[1-9]\d*)$")
_JAC_ATOM = re.compile(r"^(CLS|DEL|KAP|Z[1-9]\d*)_\d+$")
_PROJECTORS = ("pi0", "pi1", "pi2", "piplus")
_CONSTRUCTORS = ("Gamma", "B", "gamma", "beta")


class Style(enum.Enum):
    TEXT = "text"
    JSON = "json"


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise SyntaxError_(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", len(src)))
    return out


# ---------------------------------------------------------------------------
# AST


@dataclass
class Node:
    kind: str
    pos: int
    value: object = None
    children: list = field(default_factory=list)


@dataclass
class Parsed:
    """Result of the syntactic pass, before evaluation."""

    root: Node
    ambient: int | None = None
    genus: int | None = None
    kinds: set = field(default_factory=set)  # subset of {"cycle", "jac", "taut"}
    hint: int | None = None  # ambient implied by the first named class
    max_index: int = 0


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.info = Parsed(root=None)

    # token helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            raise SyntaxError_(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.take()

    def integer(self) -> int:
        t = self.peek()
        if t.kind != "num":
            raise SyntaxError_(f"expected an integer, found {t.text or 'end of input'!r}", t.pos)
        self.take()
        return int(t.text)

    def index(self) -> int:
        i = self.integer()
        self.info.max_index = max(self.info.max_index, i)
        return i

    # grammar
    def parse(self) -> Parsed:
        root = self.expr()
        t = self.peek()
        if t.text == "@@":
            self.take()
            if self.peek().text == "g":
                self.take()
                self.expect("=")
                self.info.genus = self.integer()
            else:
                self.info.ambient = self.integer()
        t = self.peek()
        if t.kind != "eof":
            raise SyntaxError_(f"unexpected {t.text!r}", t.pos)
        self.info.root = root
        return self.info

    def expr(self) -> Node:
        t = self.peek()
        node = Node("sum", t.pos)
        sign = 1
        if t.text == "-":
            self.take()
            sign = -1
        elif t.text == "+":
            self.take()
        node.children.append((sign, self.term()))
        while self.peek().text in ("+", "-"):
            sign = 1 if self.take().text == "+" else -1
            node.children.append((sign, self.term()))
        return node

    def term(self) -> Node:
        node = Node("prod", self.peek().pos)
        node.children.append(("*", self.factor()))
        while self.peek().text in ("*", "/"):
            op = self.take().text
            node.children.append((op, self.factor()))
        return node

    def factor(self) -> Node:
        base = self.atom()
        if self.peek().text == "^":
            t = self.take()
            return Node("pow", t.pos, self.integer(), [base])
        return base

    def _note_hint(self, n: int):
        if self.info.hint is None:
            self.info.hint = n

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Node("num", t.pos, int(t.text))
        if t.kind == "unit":
            self.take()
            self.info.kinds.add("jac")
            return Node("jac_unit", t.pos)
        if t.text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind != "id":
            raise SyntaxError_(f"unexpected {t.text or 'end of input'!r}", t.pos)
        name = t.text
        self.take()
        if name == "diag":
            self.info.kinds.add("cycle")
            return Node("diag", t.pos, self._index_list_parens())
        if name in _CONSTRUCTORS:
            self.info.kinds.add("cycle")
            self.expect("(")
            n = self.integer()
            sym = None
            if name in ("gamma", "beta"):
                self.expect(",")
                st = self.peek()
                if st.kind != "id" or not (_POINT_SYM.match(st.text) or st.text == FUNDAMENTAL):
                    raise SyntaxError_(f"expected a zero-cycle symbol, found {st.text!r}", st.pos)
                sym = self.take().text
            self.expect(")")
            self._note_hint(n)
            return Node("named", t.pos, (name, n, sym))
        if name in _PROJECTORS:
            self.info.kinds.add("cycle")
            self._note_hint(2)
            return Node("named", t.pos, (name, 2, None))
        if _POINT_SYM.match(name):
            if self.peek().text != "@":
                raise SyntaxError_(f"symbol {name!r} must be placed with '@'", self.peek().pos)
            self.take()
            self.info.kinds.add("cycle")
            if self.peek().text == "{":
                self.take()
                idx = self._index_list()
                self.expect("}")
            else:
                idx = (self.index(),)
            return Node("point", t.pos, (name, idx))
        if _JAC_ATOM.match(name):
            self.info.kinds.add("jac")
            return Node("jac_atom", t.pos, name)
        if _SCALAR_VAR.match(name):
            return Node("var", t.pos, name)
        if _TAUT_LIKE.match(name):
            if not _TAUT_VAR.match(name):
                raise SyntaxError_(f"generator {name!r} is outside p1..p3, q1..q2", t.pos)
            self.info.kinds.add("taut")
            return Node("var", t.pos, name)
        raise SyntaxError_(f"unknown identifier {name!r}", t.pos)

    def _index_list(self) -> tuple:
        idx = [self.index()]
        while self.peek().text == ",":
            self.take()
            idx.append(self.index())
        return tuple(idx)

    def _index_list_parens(self) -> tuple:
        self.expect("(")
        idx = self._index_list()
        self.expect(")")
        return idx


def parse_syntax(src: str) -> Parsed:
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# evaluation


class _Eval:
    def __init__(self, mode: str, ambient: int | None, genus: int | None):
        self.mode = mode
        self.n = ambient
        self.g = genus

    def run(self, node: Node):
        return getattr(self, "_" + node.kind)(node)

    # scalars
    def _num(self, node):
        return Poly.const(node.value)

    def _var(self, node):
        if self.mode == "jac" and node.value == GENUS:
            return Poly.const(self.g)
        return Poly.var(node.value)

    # cycles
    def _diag(self, node):
        idx = node.value
        if len(set(idx)) != len(idx):
            raise SyntaxError_("repeated index in diag", node.pos)
        blocks = [(idx, None)] + [((i,), None) for i in range(1, self.n + 1) if i not in idx]
        return CycleExpr(self.n, {Monomial.make(self.n, blocks): ONE})

    def _point(self, node):
        sym, idx = node.value
        if len(set(idx)) != len(idx):
            raise SyntaxError_("repeated index in block", node.pos)
        blocks = [(idx, sym)] + [((i,), None) for i in range(1, self.n + 1) if i not in idx]
        return CycleExpr(self.n, {Monomial.make(self.n, blocks): ONE})

    def _named(self, node):
        from . import moddiag

        name, n, sym = node.value
        if name == "Gamma":
            v = moddiag.big_gamma(n)
        elif name == "B":
            v = moddiag.big_b(n)
        elif name == "gamma":
            v = moddiag.gamma(n, sym)
        elif name == "beta":
            v = moddiag.beta(n, sym)
        else:
            v = moddiag.projector(moddiag.Projector(name))
        if v.ambient != self.n:
            raise AmbientMismatch(f"{name} lives on C^{v.ambient}, expression on C^{self.n}")
        return v

    # Jacobian
    def _jac_atom(self, node):
        from .jacobian import JacExpr, parse_atom

        return JacExpr(self.g, {(parse_atom(node.value),): ONE})

    def _jac_unit(self, node):
        from .jacobian import JacExpr

        return JacExpr.unit(self.g)

    # structure
    def _lift(self, v, pos):
        """Turn a bare scalar into a multiple of the unit of the current mode."""
        if not isinstance(v, Poly) or self.mode == "taut":
            return v
        if self.mode == "cycle":
            return CycleExpr.unit(self.n).scale(v)
        from .jacobian import JacExpr

        return JacExpr.unit(self.g).scale(v)

    def _sum(self, node):
        parts = [(sign, self.run(child)) for sign, child in node.children]
        if all(isinstance(v, Poly) for _, v in parts):
            out = Poly()
            for sign, v in parts:
                out = out + v if sign > 0 else out - v
            return out
        out = None
        for sign, v in parts:
            v = self._lift(v, node.pos)
            v = v if sign > 0 else -v
            out = v if out is None else out + v
        return out

    def _prod(self, node):
        out = None
        for op, child in node.children:
            v = self.run(child)
            if out is None:
                out = v
                continue
            if op == "/":
                if not isinstance(v, Poly) or not v.is_constant() or not v:
                    raise SyntaxError_("division only by a nonzero number", child.pos)
                out = out * (Fraction(1) / v.constant_value())
                continue
            if isinstance(out, Poly) and not isinstance(v, Poly):
                out = v * out
            else:
                out = out * v
        return out

    def _pow(self, node):
        (base,) = node.children
        v = self.run(base)
        if not isinstance(v, Poly):
            raise SyntaxError_("only scalars can be raised to a power", node.pos)
        return v ** node.value


def _decide(info: Parsed):
    kinds = info.kinds
    if len(kinds) > 1:
        raise SyntaxError_(f"cannot mix {' and '.join(sorted(kinds))} syntax", 0)
    if info.genus is not None and "cycle" in kinds:
        raise SyntaxError_("genus marker on a cycle expression", 0)
    if "jac" in kinds or info.genus is not None:
        if info.genus is None:
            raise AmbientAmbiguous("Jacobian expression needs a trailing '@@g=<genus>'")
        return "jac", None, info.genus
    if "taut" in kinds:
        if info.ambient is not None:
            raise SyntaxError_("ambient marker on a tautological polynomial", 0)
        return "taut", None, None
    if info.ambient is not None:
        n = info.ambient
    elif info.hint is not None:
        n = info.hint
    elif info.max_index:
        n = info.max_index
    else:
        raise AmbientAmbiguous("no ambient declared and none can be inferred")
    return "cycle", n, None


def parse_expr(src: str, ambient: int | None = None):
    """Parse text into a CycleExpr, JacExpr or genus-3 Poly."""
    info = parse_syntax(src)
    if ambient is not None and info.ambient is None and "jac" not in info.kinds:
        info.ambient = ambient
    mode, n, g = _decide(info)
    value = _Eval(mode, n, g).run(info.root)
    if isinstance(value, Poly) and mode != "taut":
        value = _Eval(mode, n, g)._lift(value, 0)
    return value


def parse_scalar(src: str) -> Poly:
    """Parse a polynomial in the formal parameters."""
    info = parse_syntax(src)
    if info.kinds - {"taut"} or info.ambient is not None or info.genus is not None:
        raise SyntaxError_("expected a scalar polynomial", 0)
    return _Eval("scalar", None, None).run(info.root)


# ---------------------------------------------------------------------------
# printing


def _coeff_text(c: Poly) -> tuple[int, str]:
    """Split a coefficient into a sign and a printable magnitude."""
    items = c.items()
    lead = items[0][1]
    sign = -1 if lead < 0 else 1
    mag = -c if sign < 0 else c
    text = format_poly(mag)
    if len(items) > 1:
        text = f"({text})"
    return sign, text


def format_linear(pairs: Iterable[tuple]) -> str:
    """Join ``(coeff, body)`` pairs as ``c1*body1 - c2*body2 ...``."""
    chunks = []
    for c, body in pairs:
        sign, mag = _coeff_text(Poly.coerce(c))
        piece = f"{mag}*{body}"
        if not chunks:
            chunks.append(("-" if sign < 0 else "") + piece)
        else:
            chunks.append((" - " if sign < 0 else " + ") + piece)
    return "".join(chunks) if chunks else "0"


def format_block(idx: tuple, dec: str | None) -> str:
    inner = ",".join(map(str, idx))
    if dec is None:
        return f"diag({inner})"
    if len(idx) == 1:
        return f"{dec}@{inner}"
    return f"{dec}@{{{inner}}}"


def format_monomial(m: Monomial) -> str:
    return "*".join(format_block(idx, dec) for idx, dec in m.blocks) if m.blocks else "1"


def cycle_to_json(w: CycleExpr) -> dict:
    return {
        "schema": "cycleexpr/1",
        "ambient": w.ambient,
        "terms": [
            {
                "coeff": format_poly(c),
                "blocks": [{"indices": list(idx), "dec": dec} for idx, dec in m.blocks],
            }
            for m, c in w.items()
        ],
    }


def poly_to_json(p: Poly) -> dict:
    return {
        "schema": "poly/1",
        "text": format_poly(p),
        "terms": [{"coeff": format_poly(Poly.const(c)), "powers": dict(pp)} for pp, c in p.items()],
    }


def to_json_obj(v) -> dict:
    from .jacobian import JacExpr, jac_to_json

    if isinstance(v, CycleExpr):
        return cycle_to_json(v)
    if isinstance(v, JacExpr):
        return jac_to_json(v)
    if isinstance(v, Poly):
        return poly_to_json(v)
    raise TypeError(f"cannot serialise {type(v).__name__}")


def format_expr(v: CycleExpr | Poly | object, style: Style = Style.TEXT) -> str:
    from .jacobian import JacExpr, format_jac

    if style is Style.JSON:
        return json.dumps(to_json_obj(v), ensure_ascii=False)
    if isinstance(v, CycleExpr):
        body = format_linear((c, format_monomial(m)) for m, c in v.items())
        return f"{body} @@{v.ambient}"
    if isinstance(v, JacExpr):
        return format_jac(v)
    if isinstance(v, Poly):
        return format_poly(v)
    raise TypeError(f"cannot format {type(v).__name__}")
