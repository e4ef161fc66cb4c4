"""Expression grammar shared by the CLI and definition files.

    expr    := ['+'|'-'] tensor (('+'|'-') tensor)*
    tensor  := product ('@' product)*
    product := power (('*'|'/') power)*
    power   := atom ['^' INT]
    atom    := INT | 'i' | IDENT | '(' expr ')'

Identifiers resolve to deformation parameters, Lie generators, coordinates
or derivative tokens ``d_<coordinate>``. The element type of the result
follows from the namespaces used: coordinates give a polynomial,
generators an element of U(g), both together an element of A⋊U(g),
derivative tokens a differential operator and ``@`` a tensor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from ..errors import ParseError, UsageError
from ..lie_pbw import tensor as make_tensor
from ..polynomials import DiffRing
from ..scalars import GaussianRational, Series

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")

KINDS = ("uea", "poly", "smash", "diff", "tensor")


@dataclass
class Token:
    kind: str  # INT, IDENT, OP, END
    text: str
    line: int
    column: int


def tokenize(text, line=1, column=1):
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        col = column + start
        if m.group(1) is not None:
            out.append(Token("INT", m.group(1), line, col))
        elif m.group(2) is not None:
            out.append(Token("IDENT", m.group(2), line, col))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^@()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            out.append(Token("OP", ch, line, col))
        pos = m.end()
    out.append(Token("END", "", line, column + len(text)))
    return out


class Namespace:
    """Resolves identifiers for one deformation context, Lie algebra and module."""

    def __init__(self, context, lie=None, module=None):
        self.context = context
        self.lie = lie
        self.module = module
        self.params = set(context.params)
        self.generators = set(lie.generators) if lie is not None else set()
        self.coordinates = set(module.coordinates) if module is not None else set()
        names = [("deformation parameter", self.params), ("generator", self.generators),
                 ("coordinate", self.coordinates)]
        seen = {}
        for label, group in names:
            for x in group:
                if x == "i" or x.startswith("d_"):
                    raise UsageError(f"{label} name {x!r} is reserved")
                if x in seen:
                    raise UsageError(f"name {x!r} is both a {seen[x]} and a {label}")
                seen[x] = label
        self._diff = DiffRing(module.ring) if module is not None else None

    def classify(self, name):
        if name == "i":
            return "imag"
        if name in self.params:
            return "param"
        if name in self.generators:
            return "gen"
        if name in self.coordinates:
            return "coord"
        if name.startswith("d_") and name[2:] in self.coordinates:
            return "deriv"
        return None


# --- syntax tree ------------------------------------------------------------

@dataclass
class Node:
    op: str
    args: tuple
    tok: Token


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, text):
        t = self.take()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.column)
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t.kind != "END":
            raise ParseError(f"unexpected {t.text!r}", t.line, t.column)
        return node

    def expr(self):
        t = self.peek()
        terms = []
        sign = "+"
        if t.text in "+-" and t.kind == "OP":
            sign = self.take().text
        terms.append((sign, self.tensor()))
        while self.peek().kind == "OP" and self.peek().text in "+-":
            sign = self.take().text
            terms.append((sign, self.tensor()))
        return Node("sum", tuple(terms), t)

    def tensor(self):
        t = self.peek()
        legs = [self.product()]
        while self.peek().text == "@":
            self.take()
            legs.append(self.product())
        return legs[0] if len(legs) == 1 else Node("tensor", tuple(legs), t)

    def product(self):
        node = self.power()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op = self.take()
            node = Node("mul" if op.text == "*" else "div", (node, self.power()), op)
        return node

    def power(self):
        node = self.atom()
        if self.peek().text == "^":
            op = self.take()
            e = self.take()
            if e.kind != "INT":
                raise ParseError("exponent must be a non-negative integer", e.line, e.column)
            node = Node("pow", (node, int(e.text)), op)
        return node

    def atom(self):
        t = self.take()
        if t.kind == "INT":
            return Node("int", (int(t.text),), t)
        if t.kind == "IDENT":
            return Node("name", (t.text,), t)
        if t.text == "(":
            inner = self.expr()
            self.expect(")")
            return Node("paren", (inner,), t)
        if t.kind == "END":
            raise ParseError("unexpected end of input", t.line, t.column)
        raise ParseError(f"unexpected {t.text!r}", t.line, t.column)


def parse_tree(text, line=1, column=1) -> Node:
    return _Parser(tokenize(text, line, column)).parse()


def _names(node, out):
    if node.op == "name":
        out.append((node.args[0], node.tok))
    elif node.op in ("int",):
        pass
    elif node.op == "pow":
        _names(node.args[0], out)
    elif node.op == "sum":
        for _, n in node.args:
            _names(n, out)
    else:
        for n in node.args:
            _names(n, out)
    return out


def _has_tensor(node):
    if node.op == "tensor":
        return True
    if node.op == "sum":
        return any(_has_tensor(n) for _, n in node.args)
    if node.op in ("int", "name"):
        return False
    if node.op == "pow":
        return _has_tensor(node.args[0])
    return any(_has_tensor(n) for n in node.args)


# --- evaluation -------------------------------------------------------------

class _Evaluator:
    def __init__(self, ns: Namespace, kind):
        self.ns = ns
        self.kind = kind
        ctx = ns.context
        if kind == "uea":
            self.one = ns.lie.unit()
        elif kind == "poly":
            self.one = ns.module.ring.one()
        elif kind == "smash":
            self.one = ns.module.smash.one()
        elif kind == "diff":
            self.one = ns._diff.identity()
        self.ctx = ctx

    def name(self, tok, name):
        ns = self.ns
        cls = ns.classify(name)
        if cls is None:
            raise ParseError(f"unknown identifier {name!r}", tok.line, tok.column)
        if cls == "imag":
            return self.one.scale(GaussianRational(0, 1))
        if cls == "param":
            return self.one.scale(self.ctx.param(name))
        k = self.kind
        if cls == "gen":
            if k == "uea":
                return ns.lie.gen(name)
            if k == "smash":
                return ns.module.smash.gen(name)
        elif cls == "coord":
            if k == "poly":
                return ns.module.ring.var(name)
            if k == "smash":
                return ns.module.smash.var(name)
            if k == "diff":
                return ns._diff.multiplication(ns.module.ring.var(name))
        elif cls == "deriv" and k == "diff":
            return ns._diff.partial(name[2:])
        raise ParseError(f"{name!r} cannot appear in a {k} expression", tok.line, tok.column)

    def scalar_of(self, node):
        """Value of a constant subexpression (no identifiers except i)."""
        if node.op == "int":
            return GaussianRational(node.args[0])
        if node.op == "name" and node.args[0] == "i":
            return GaussianRational(0, 1)
        if node.op == "paren":
            return self.scalar_of(node.args[0])
        if node.op == "pow":
            v = self.scalar_of(node.args[0])
            out = GaussianRational(1)
            for _ in range(node.args[1]):
                out = out * v
            return out
        if node.op in ("mul", "div"):
            a, b = self.scalar_of(node.args[0]), self.scalar_of(node.args[1])
            if node.op == "mul":
                return a * b
            if not b:
                raise ParseError("division by zero", node.tok.line, node.tok.column)
            return a / b
        if node.op == "sum":
            out = GaussianRational(0)
            for sign, n in node.args:
                v = self.scalar_of(n)
                out = out + v if sign == "+" else out - v
            return out
        raise ParseError("divisor must be a constant", node.tok.line, node.tok.column)

    def reciprocal(self, node):
        b = self.scalar_of(node.args[1])
        if not b:
            raise ParseError("division by zero", node.tok.line, node.tok.column)
        return GaussianRational(1) / b

    def eval(self, node):
        op = node.op
        if op == "int":
            return self.one.scale(node.args[0])
        if op == "name":
            return self.name(node.tok, node.args[0])
        if op == "paren":
            return self.eval(node.args[0])
        if op == "pow":
            base = self.eval(node.args[0])
            out = self.one
            for _ in range(node.args[1]):
                out = out * base
            return out
        if op == "mul":
            return self.eval(node.args[0]) * self.eval(node.args[1])
        if op == "div":
            return self.eval(node.args[0]).scale(self.reciprocal(node))
        if op == "sum":
            total = self.one.scale(0)
            for sign, n in node.args:
                v = self.eval(n)
                total = total + v if sign == "+" else total - v
            return total
        raise ParseError("tensor '@' inside a factor is not supported", node.tok.line, node.tok.column)


def _eval_tensor(ns, node):
    """Sum of tensor terms; every term must have the same number of legs."""
    ev = _Evaluator(ns, "uea")
    lie = ns.lie
    total = None
    arity = None
    for sign, term in node.args:
        legs = term.args if term.op == "tensor" else (term,)
        if arity is None:
            arity = len(legs)
        elif len(legs) != arity:
            raise ParseError(f"tensor term has {len(legs)} legs, expected {arity}",
                             term.tok.line, term.tok.column)
        for leg in legs:
            if _has_tensor(leg):
                raise ParseError("tensor '@' inside a factor is not supported",
                                 leg.tok.line, leg.tok.column)
        t = make_tensor(lie, *(ev.eval(leg) for leg in legs))
        if sign == "-":
            t = -t
        total = t if total is None else total + t
    return total


def infer_kind(ns: Namespace, node) -> str:
    if _has_tensor(node):
        return "tensor"
    classes = {ns.classify(n) for n, _ in _names(node, [])}
    for n, tok in _names(node, []):
        if ns.classify(n) is None:
            raise ParseError(f"unknown identifier {n!r}", tok.line, tok.column)
    if "deriv" in classes:
        return "diff"
    if "coord" in classes and "gen" in classes:
        return "smash"
    if "coord" in classes:
        return "poly"
    if ns.lie is None:
        return "poly"
    return "uea"


def parse_expr(text, ns: Namespace, kind=None, line=1, column=1):
    """Parse and normalize ``text``; ``kind`` forces the result type."""
    node = parse_tree(text, line, column)
    inferred = infer_kind(ns, node)
    kind = kind or inferred
    if kind not in KINDS:
        raise UsageError(f"unknown expression kind {kind!r}")
    if kind in ("uea", "tensor") and ns.lie is None:
        raise ParseError("no Lie algebra declared", line, column)
    if kind in ("poly", "smash", "diff") and ns.module is None:
        raise ParseError("no module algebra declared", line, column)
    if kind == "tensor":
        return _eval_tensor(ns, node)
    if inferred == "tensor":
        raise ParseError(f"'@' is not allowed in a {kind} expression", line, column)
    return _Evaluator(ns, kind).eval(node)


def parse_scalar(text, ns: Namespace, line=1, column=1) -> Series:
    """A deformation-series value (parameters, i and rationals only)."""
    node = parse_tree(text, line, column)
    for n, tok in _names(node, []):
        if ns.classify(n) not in ("imag", "param"):
            raise ParseError(f"{n!r} is not allowed in a scalar", tok.line, tok.column)
    return _ScalarEvaluator(ns.context).eval(node)


class _ScalarEvaluator(_Evaluator):
    def __init__(self, ctx):
        self.ctx = ctx
        self.one = ctx.one()
        self.kind = "scalar"

    def name(self, tok, name):
        if name == "i":
            return Series.const(self.ctx, GaussianRational(0, 1))
        return self.ctx.param(name)

    def eval(self, node):
        op = node.op
        if op == "int":
            return Series.const(self.ctx, node.args[0])
        if op == "div":
            return self.eval(node.args[0]) * Series.const(self.ctx, self.reciprocal(node))
        if op == "sum":
            total = self.ctx.zero()
            for sign, n in node.args:
                v = self.eval(n)
                total = total + v if sign == "+" else total - v
            return total
        if op == "tensor":
            raise ParseError("'@' is not allowed in a scalar", node.tok.line, node.tok.column)
        return super().eval(node)
