"""Commutative polynomials in coordinates and polynomial differential operators."""

from __future__ import annotations

from math import comb

from .errors import UsageError
from .lie_pbw import grlex_key
from .linear import LinearElement, accumulate
from .scalars import Series


class PolyRing:
    def __init__(self, coordinates, context):
        self.coordinates = tuple(coordinates)
        if len(set(self.coordinates)) != len(self.coordinates):
            raise UsageError("duplicate coordinate name")
        self.context = context
        self.n = len(self.coordinates)
        self._index = {x: k for k, x in enumerate(self.coordinates)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.coordinates == self.coordinates \
            and other.context == self.context

    def __hash__(self):
        return hash((self.coordinates, self.context))

    def index(self, name):
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise UsageError(f"coordinate index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown coordinate {name!r}") from None

    def one(self):
        return Polynomial(self, {(0,) * self.n: self.context.one()}, _trusted=True)

    def zero(self):
        return Polynomial(self, {}, _trusted=True)

    def var(self, name):
        e = [0] * self.n
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.context.one()}, _trusted=True)

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): Series.const(self.context, coeff)})

    def monomials(self, max_degree):
        """All exponent vectors of total degree ≤ max_degree, graded-lex order."""
        out = [()]
        for _ in range(self.n):
            out = [m + (k,) for m in out for k in range(max_degree + 1)]
        out = [m for m in out if sum(m) <= max_degree]
        return sorted(out, key=grlex_key)


class Polynomial(LinearElement):
    """Element of the commutative coordinate algebra A."""

    __slots__ = ()

    @staticmethod
    def sort_key(exps):
        return grlex_key(exps)

    @property
    def ring(self):
        return self.parent

    def scalar(self, value):
        r = self.parent
        return Polynomial(r, {(0,) * r.n: Series.const(r.context, value)})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._compatible(other)
            out = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    c = ca * cb
                    if c.terms:
                        accumulate(out, tuple(x + y for x, y in zip(ea, eb)), c)
            return Polynomial(self.parent, out, _trusted=True)
        if isinstance(other, LinearElement):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k):
        result = self.parent.one()
        for _ in range(k):
            result = result * self
        return result

    def derivative(self, coord, times=1):
        q = self.parent.index(coord)
        out = {}
        for e, c in self.terms.items():
            if e[q] < times:
                continue
            f = 1
            for t in range(times):
                f *= e[q] - t
            new = list(e)
            new[q] -= times
            accumulate(out, tuple(new), c * f)
        return Polynomial(self.parent, out, _trusted=True)

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)


def _falling(e, k):
    f = 1
    for t in range(k):
        f *= e - t
    return f


class DiffRing:
    """Parent of polynomial differential operators on a PolyRing."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.context = ring.context

    def __eq__(self, other):
        return isinstance(other, DiffRing) and other.ring == self.ring

    def __hash__(self):
        return hash(("diff", self.ring))

    def partial(self, coord):
        n = self.ring.n
        b = [0] * n
        b[self.ring.index(coord)] = 1
        return DiffOperator(self, {((0,) * n, tuple(b)): self.context.one()}, _trusted=True)

    def multiplication(self, poly: Polynomial):
        n = self.ring.n
        return DiffOperator(self, {(e, (0,) * n): c for e, c in poly.terms.items()},
                            _trusted=True)

    def identity(self):
        return self.multiplication(self.ring.one())


class DiffOperator(LinearElement):
    """Σ c · x^α ∂^β, keys ``(α, β)``; ``*`` is operator composition."""

    __slots__ = ()

    @staticmethod
    def sort_key(key):
        a, b = key
        return (sum(b), grlex_key(b), grlex_key(a))

    def scalar(self, value):
        return self.parent.identity().scale(value)

    def order(self):
        return max((sum(b) for _, b in self.terms), default=0)

    def coefficient_of(self, beta) -> Polynomial:
        """Polynomial coefficient of ∂^β."""
        beta = tuple(beta)
        return Polynomial(self.parent.ring,
                          {a: c for (a, b), c in self.terms.items() if b == beta},
                          _trusted=True)

    def apply(self, p: Polynomial) -> Polynomial:
        ring = self.parent.ring
        out = {}
        for (a, b), c in self.terms.items():
            for e, ce in p.terms.items():
                if any(x < y for x, y in zip(e, b)):
                    continue
                f = 1
                for x, y in zip(e, b):
                    f *= _falling(x, y)
                v = c * ce * f
                if v.terms:
                    accumulate(out, tuple(x - y + z for x, y, z in zip(e, b, a)), v)
        return Polynomial(ring, out, _trusted=True)

    def __call__(self, p):
        return self.apply(p)

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return _compose(self, other)
        if isinstance(other, LinearElement):
            return NotImplemented
        return self.scale(other)


def _sub_multi_indices(beta):
    out = [()]
    for b in beta:
        out = [k + (t,) for k in out for t in range(b + 1)]
    return out


def _compose(X: DiffOperator, Y: DiffOperator) -> DiffOperator:
    X._compatible(Y)
    out = {}
    for (a, b), c in X.terms.items():
        for (g, d), cy in Y.terms.items():
            cc = c * cy
            if not cc.terms:
                continue
            # ∂^b x^g = Σ_k C(b,k) (∂^k x^g) ∂^{b-k}
            for k in _sub_multi_indices(b):
                if any(x < y for x, y in zip(g, k)):
                    continue
                f = 1
                for bb, kk, gg in zip(b, k, g):
                    f *= comb(bb, kk) * _falling(gg, kk)
                alpha = tuple(x + y - z for x, y, z in zip(a, g, k))
                beta = tuple(x - y + z for x, y, z in zip(b, k, d))
                accumulate(out, (alpha, beta), cc * f)
    return DiffOperator(X.parent, out, _trusted=True)
