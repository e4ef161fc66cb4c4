"""Exact scalars: Gaussian rationals and truncated series in deformation parameters.

Every coefficient in the package is a :class:`Series`, a polynomial in the
declared deformation parameters with Gaussian-rational coefficients, truncated
at a fixed total degree.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational

from .errors import DomainError, UsageError

__all__ = [
    "GaussianRational",
    "DeformationContext",
    "Series",
    "series_add",
    "series_mul",
    "series_exp",
    "series_invert",
    "I",
]


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        # Fraction normalizes to lowest terms with positive denominator
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        if isinstance(value, complex):
            raise UsageError("floats are not exact; use GaussianRational")
        raise UsageError(f"cannot use {value!r} as a Gaussian rational")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        from .frontend.printer import format_gaussian

        return format_gaussian(self)


I = GaussianRational(0, 1)
_ONE = GaussianRational(1)


class DeformationContext:
    """Named deformation parameters plus the truncation order N."""

    __slots__ = ("params", "max_order", "_index")

    def __init__(self, params=(), max_order=4):
        params = tuple(params)
        if len(set(params)) != len(params):
            raise UsageError(f"duplicate deformation parameter in {params}")
        if max_order < 0:
            raise UsageError("truncation order must be non-negative")
        self.params = params
        self.max_order = int(max_order)
        self._index = {p: k for k, p in enumerate(params)}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, DeformationContext):
            return NotImplemented
        return self.params == other.params and self.max_order == other.max_order

    def __hash__(self):
        return hash((self.params, self.max_order))

    def __repr__(self):
        return f"DeformationContext({list(self.params)}, max_order={self.max_order})"

    def with_order(self, max_order):
        return DeformationContext(self.params, max_order)

    @property
    def zero_exponent(self):
        return (0,) * len(self.params)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown deformation parameter {name!r}") from None

    def const(self, value) -> "Series":
        return Series.const(self, value)

    def param(self, name) -> "Series":
        return Series.param(self, name)

    def zero(self):
        return Series(self, {})

    def one(self):
        return Series.const(self, 1)


def _grlex_key(exps):
    return (sum(exps), tuple(-e for e in exps))


class Series:
    """Truncated polynomial in the context's parameters over Q(i).

    ``terms`` maps exponent vectors to nonzero :class:`GaussianRational`.
    Values are immutable once built; do not mutate ``terms``.
    """

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: DeformationContext, terms=None, *, _trusted=False):
        self.context = context
        if _trusted:
            self.terms = terms
        else:
            n = context.max_order
            clean = {}
            for exps, c in (terms or {}).items():
                exps = tuple(exps)
                if len(exps) != len(context.params):
                    raise UsageError("exponent vector length does not match context")
                if sum(exps) > n:
                    continue
                c = GaussianRational.coerce(c)
                if c:
                    clean[exps] = c
            self.terms = clean
        self._hash = None

    # construction
    @classmethod
    def const(cls, context, value):
        if isinstance(value, Series):
            value._check(context)
            return value
        c = GaussianRational.coerce(value)
        return cls(context, {context.zero_exponent: c} if c else {}, _trusted=True)

    @classmethod
    def param(cls, context, name, power=1):
        exps = [0] * len(context.params)
        exps[context.index(name)] = power
        return cls(context, {tuple(exps): _ONE})

    def _check(self, context):
        if self.context is not context and self.context != context:
            raise UsageError(f"deformation context mismatch: {self.context} vs {context}")

    def _coerce(self, other):
        if isinstance(other, Series):
            other._check(self.context)
            return other
        return Series.const(self.context, other)

    # inspection
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(self.context.zero_exponent, GaussianRational())

    def is_constant(self):
        z = self.context.zero_exponent
        return all(e == z for e in self.terms)

    def min_degree(self):
        """Lowest total degree carrying a nonzero coefficient (None for zero)."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def homogeneous_part(self, degree):
        return Series(self.context, {e: c for e, c in self.terms.items() if sum(e) == degree},
                      _trusted=True)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def normalized(self):
        return Series(self.context, dict(self.terms))

    # equality
    def __eq__(self, other):
        if isinstance(other, Series):
            if other.context != self.context:
                return False
            return self.terms == other.terms
        if isinstance(other, (int, Rational, GaussianRational)):
            c = GaussianRational.coerce(other)
            if not c:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(self.context.zero_exponent) == c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic
    def __neg__(self):
        return Series(self.context, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Series(self.context, out, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, (int, Rational, GaussianRational)):
                c = GaussianRational.coerce(other)
                if not c:
                    return Series(self.context, {}, _trusted=True)
                return Series(self.context, {e: v * c for e, v in self.terms.items()},
                              _trusted=True)
            return NotImplemented
        other._check(self.context)
        if not self.terms or not other.terms:
            return Series(self.context, {}, _trusted=True)
        n = self.context.max_order
        out = {}
        b_items = [(e, sum(e), c) for e, c in other.terms.items()]
        for ea, ca in self.terms.items():
            da = sum(ea)
            for eb, db, cb in b_items:
                if da + db > n:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb)) if ea else ea
                v = ca * cb
                s = out.get(e)
                out[e] = v if s is None else s + v
        return Series(self.context, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise UsageError("Series powers must be non-negative integers")
        result = Series.const(self.context, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * series_invert(other)
        return self * GaussianRational.coerce(other).inverse()

    def exp(self):
        return series_exp(self)

    def invert(self):
        return series_invert(self)

    def __repr__(self):
        return f"Series({self})"

    def __str__(self):
        from .frontend.printer import format_series

        return format_series(self)


def series_add(a: Series, b: Series) -> Series:
    a._check(b.context)
    return a + b


def series_mul(a: Series, b: Series) -> Series:
    a._check(b.context)
    return a * b


def series_exp(a: Series) -> Series:
    if a.constant_term():
        raise DomainError("exp of a series with nonzero constant term is not a polynomial series")
    result = Series.const(a.context, 1)
    power = result
    for k in range(1, a.context.max_order + 1):
        power = power * a
        if not power:
            break
        result = result + power * GaussianRational(Fraction(1, factorial(k)))
    return result


def series_invert(a: Series) -> Series:
    c = a.constant_term()
    if not c:
        raise DomainError("series with zero constant term is not invertible")
    c_inv = c.inverse()
    # a = c(1 - u) with u nilpotent mod degree N+1
    u = -(a * c_inv - 1)
    result = Series.const(a.context, 1)
    power = result
    for _ in range(a.context.max_order):
        power = power * u
        if not power:
            break
        result = result + power
    return result * c_inv
