"""Loader for ``.defs`` definition files (format described in docs/defs-format.md)."""

from __future__ import annotations

import os
import re
from importlib import resources

from ..errors import ParseError, UsageError, ValidationError
from ..hopf_core import ActionSpec, HopfContext, PolyModuleAlgebra
from ..lie_pbw import LiePresentation, validate_presentation
from ..polynomials import DiffOperator, DiffRing, PolyRing
from ..scalars import DeformationContext
from ..twist_engine import TwistSpec, expand_twist
from .parser import Namespace, parse_expr, parse_scalar

SECTIONS = ("deformation", "lie", "module", "twist")
_BRACKET = re.compile(r"^\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=(.*)$")
_FENTRY = re.compile(r"^f\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=(.*)$")
_ACTION = re.compile(r"^action\s+(\w+)\s*=(.*)$")
_ORDER = re.compile(r"^order\s+(\d+)\s*=(.*)$")
_SETTING = re.compile(r"^(\w+)\s*=(.*)$")


class DefinitionFile:
    """Everything a definition file declares, built and validated."""

    def __init__(self, name, context, lie, module=None, twist_spec=None, twist=None):
        self.name = name
        self.context = context
        self.lie = lie
        self.module = module
        self.twist_spec = twist_spec
        self.twist = twist
        self.namespace = Namespace(context, lie, module)

    @property
    def order(self):
        return self.context.max_order

    @property
    def hopf(self):
        return HopfContext(self.lie)

    def parse(self, text, kind=None):
        return parse_expr(text, self.namespace, kind=kind)


def bundled_names():
    root = resources.files("hopftwist") / "defs"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".defs"))


def resolve_defs(path):
    """A filesystem path, or the name of a bundled file (with or without .defs)."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return os.path.basename(path), fh.read()
    name = path if path.endswith(".defs") else path + ".defs"
    res = resources.files("hopftwist") / "defs" / os.path.basename(name)
    if res.is_file():
        return res.name, res.read_text(encoding="utf-8")
    raise UsageError(f"definition file not found: {path}")


def load_defs(path, order=None, validate=True, expand=True) -> DefinitionFile:
    name, text = resolve_defs(path)
    return load_defs_text(text, name=name, order=order, validate=validate, expand=expand)


def _split(text):
    """{section: [(line number, content)]} with comments and blanks removed."""
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[\s*(\w+)\s*\]", line)
        if m and m.group(1) in SECTIONS:
            current = m.group(1)
            if current in sections:
                raise ParseError(f"duplicate section [{current}]", lineno, 1)
            sections[current] = []
            continue
        if current is None:
            raise ParseError("content before the first section", lineno, 1)
        col = raw.index(line[0]) + 1
        sections[current].append((lineno, col, line))
    return sections


def _names(value, lineno):
    names = [x.strip() for x in value.split(",") if x.strip()]
    for x in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", x):
            raise ParseError(f"invalid name {x!r}", lineno, 1)
    return names


def _rhs_col(line, col, rhs):
    return col + len(line) - len(rhs)


def load_defs_text(text, name="<string>", order=None, validate=True, expand=True) -> DefinitionFile:
    """Build context, Lie algebra, module algebra and twist from definition text.

    ``order`` overrides the file's truncation order. With ``validate=False``
    the Lie presentation and the action are not checked (useful for
    deliberately corrupted fixtures); ``expand=False`` skips twist expansion.
    """
    sections = _split(text)
    params, file_order = (), 4
    for lineno, col, line in sections.get("deformation", []):
        m = _SETTING.match(line)
        if not m:
            raise ParseError(f"cannot read {line!r}", lineno, col)
        key, value = m.group(1), m.group(2).strip()
        if key == "params":
            params = tuple(_names(value, lineno))
        elif key == "order":
            if not value.isdigit():
                raise ParseError("order must be a non-negative integer", lineno, col)
            file_order = int(value)
        else:
            raise ParseError(f"unknown deformation setting {key!r}", lineno, col)
    ctx = DeformationContext(params, file_order if order is None else order)

    if "lie" not in sections:
        raise ParseError("missing [lie] section", 1, 1)
    generators, raw_brackets = None, []
    for lineno, col, line in sections["lie"]:
        m = _BRACKET.match(line)
        if m:
            raw_brackets.append((lineno, col, line, m))
            continue
        m = _SETTING.match(line)
        if m and m.group(1) == "generators":
            generators = _names(m.group(2), lineno)
            continue
        raise ParseError(f"cannot read {line!r}", lineno, col)
    if not generators:
        raise ParseError("[lie] needs a generators line", 1, 1)
    # brackets are linear in the generators, so an abelian scratch algebra parses them
    scratch = LiePresentation(generators, {}, ctx)
    ns0 = Namespace(ctx, scratch)
    brackets = {}
    for lineno, col, line, m in raw_brackets:
        a, b, rhs = m.group(1), m.group(2), m.group(3)
        for k, g in ((1, a), (2, b)):
            if g not in generators:
                raise ParseError(f"unknown generator {g!r}", lineno, col + m.start(k))
        if (a, b) in brackets:
            raise ParseError(f"bracket [{a}, {b}] given twice", lineno, col)
        v = parse_expr(rhs, ns0, kind="uea", line=lineno, column=_rhs_col(line, col, rhs))
        vec = {}
        for mono, c in v.terms.items():
            if sum(mono) != 1:
                raise ParseError(f"bracket [{a}, {b}] must be linear in the generators", lineno, col)
            vec[generators[mono.index(1)]] = c
        brackets[(a, b)] = vec
    lie = LiePresentation(generators, brackets, ctx)
    if validate:
        report = validate_presentation(lie)
        if not report.valid:
            raise ValidationError("invalid Lie presentation: " + ", ".join(
                str(v) for v in report.violations[:3]), report.violations)

    module = None
    if "module" in sections:
        coords, actions = None, []
        for lineno, col, line in sections["module"]:
            m = _ACTION.match(line)
            if m:
                actions.append((lineno, col, line, m))
                continue
            m = _SETTING.match(line)
            if m and m.group(1) == "coordinates":
                coords = _names(m.group(2), lineno)
                continue
            raise ParseError(f"cannot read {line!r}", lineno, col)
        if coords is None:
            raise ParseError("[module] needs a coordinates line", 1, 1)
        ring = PolyRing(coords, ctx)
        scratch_module = PolyModuleAlgebra(lie, coords)
        ns1 = Namespace(ctx, None, scratch_module)
        ops = {}
        for lineno, col, line, m in actions:
            g, rhs = m.group(1), m.group(2)
            if g not in generators:
                raise ParseError(f"unknown generator {g!r}", lineno, col + m.start(1))
            op = parse_expr(rhs, ns1, kind="diff", line=lineno, column=_rhs_col(line, col, rhs))
            ops[g] = DiffOperator(DiffRing(ring), op.terms)
        module = PolyModuleAlgebra(lie, action=ActionSpec(lie, ring, ops, validate=validate))

    spec = None
    twist = None
    if "twist" in sections:
        spec = _load_twist(sections["twist"], ctx, lie, module)
        if expand:
            twist = expand_twist(spec)
    return DefinitionFile(name, ctx, lie, module, spec, twist)


def _load_twist(lines, ctx, lie, module):
    ns = Namespace(ctx, lie, module)
    kind = None
    gens = None
    matrix = {}
    contributions = []
    for lineno, col, line in lines:
        m = _FENTRY.match(line)
        if m:
            a, b, rhs = m.group(1), m.group(2), m.group(3)
            for k, g in ((1, a), (2, b)):
                if g not in lie.generators:
                    raise ParseError(f"unknown generator {g!r}", lineno, col + m.start(k))
            matrix[(a, b)] = parse_scalar(rhs, ns, line=lineno, column=_rhs_col(line, col, rhs))
            continue
        m = _ORDER.match(line)
        if m:
            k, rhs = int(m.group(1)), m.group(2)
            t = parse_expr(rhs, ns, kind="tensor", line=lineno, column=_rhs_col(line, col, rhs))
            if t.arity != 2:
                raise ParseError("twist terms must have two legs", lineno, col)
            contributions.append((k, t))
            continue
        m = _SETTING.match(line)
        if m and m.group(1) == "kind":
            kind = m.group(2).strip()
            continue
        if m and m.group(1) == "generators":
            gens = _names(m.group(2), lineno)
            continue
        raise ParseError(f"cannot read {line!r}", lineno, col)
    if kind == "abelian":
        if contributions:
            raise ParseError("abelian twists take f[...] entries, not order lines", 1, 1)
        if gens is None:
            gens = []
            for a, b in matrix:
                for g in (a, b):
                    if g not in gens:
                        gens.append(g)
        return TwistSpec.abelian(lie, gens, matrix)
    if kind == "explicit":
        if matrix:
            raise ParseError("explicit twists take order lines, not f[...] entries", 1, 1)
        return TwistSpec.explicit(lie, contributions)
    raise ParseError(f"[twist] kind must be abelian or explicit, got {kind!r}", 1, 1)
