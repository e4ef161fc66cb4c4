"""Shared machinery for sparse linear combinations with Series coefficients."""

from __future__ import annotations

from numbers import Rational

from .errors import UsageError
from .scalars import GaussianRational, Series


def accumulate(out: dict, key, coeff: Series):
    """out[key] += coeff, dropping zeros."""
    prev = out.get(key)
    if prev is None:
        if coeff.terms:
            out[key] = coeff
        return
    s = prev + coeff
    if s.terms:
        out[key] = s
    else:
        del out[key]


class LinearElement:
    """Immutable sparse vector ``{basis key: Series}`` over a parent structure.

    Subclasses define ``__mul__`` for their own algebra product and
    ``sort_key`` for canonical ordering.
    """

    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent, terms=None, *, _trusted=False):
        self.parent = parent
        if _trusted:
            self.terms = terms
        else:
            ctx = parent.context
            clean = {}
            for k, c in (terms or {}).items():
                c = Series.const(ctx, c)
                if c.terms:
                    clean[k] = c
            self.terms = clean
        self._hash = None

    @property
    def context(self):
        return self.parent.context

    def _new(self, terms):
        return type(self)(self.parent, terms, _trusted=True)

    def _compatible(self, other):
        if type(other) is not type(self):
            raise UsageError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.parent is not self.parent and other.parent != self.parent:
            raise UsageError(f"{type(self).__name__} operands live in different algebras")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key) -> Series:
        return self.terms.get(key, self.context.zero())

    def __eq__(self, other):
        if isinstance(other, LinearElement):
            if type(other) is not type(self):
                return False
            if other.parent is not self.parent and other.parent != self.parent:
                return False
            return self.terms == other.terms
        if isinstance(other, (int, Rational, GaussianRational)) and not other:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, LinearElement):
            other = self.scalar(other)
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, c)
        return self._new(out)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        if not isinstance(other, LinearElement):
            other = self.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Series.const(self.context, c)
        if not c.terms:
            return self._new({})
        out = {}
        for k, v in self.terms.items():
            p = v * c
            if p.terms:
                out[k] = p
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational, Series)):
            return self.scale(other)
        return NotImplemented

    def scalar(self, value):
        """The scalar ``value`` times the unit of this element's algebra."""
        raise UsageError(f"{type(self).__name__} has no scalar embedding")

    def order_part(self, degree):
        """Part of the element homogeneous of the given deformation degree."""
        out = {}
        for k, c in self.terms.items():
            h = c.homogeneous_part(degree)
            if h.terms:
                out[k] = h
        return self._new(out)

    def truncated(self, max_order):
        """Drop every coefficient term of deformation degree above ``max_order``."""
        out = {}
        for k, c in self.terms.items():
            kept = {e: v for e, v in c.terms.items() if sum(e) <= max_order}
            if kept:
                out[k] = type(c)(c.context, kept, _trusted=True)
        return self._new(out)

    def min_order(self):
        degs = [c.min_degree() for c in self.terms.values()]
        return min(degs) if degs else None

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]))

    @staticmethod
    def sort_key(key):
        return key

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        from .frontend.printer import print_canonical

        return print_canonical(self)
