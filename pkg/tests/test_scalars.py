from fractions import Fraction

import pytest

from hopftwist.errors import DomainError, UsageError
from hopftwist.scalars import (
    I, DeformationContext, GaussianRational, Series, series_add, series_exp, series_invert, series_mul,
)


def ctx(N=4):
    return DeformationContext(["theta"], N)


def th(c):
    return c.param("theta")


def coeffs(s, N):
    """Coefficients of theta^0..theta^N as GaussianRationals."""
    return [s.terms.get((k,), GaussianRational(0)) for k in range(N + 1)]


class TestGaussianRational:
    def test_norm_of_conjugates(self):
        a = GaussianRational(Fraction(1, 2), 1)
        assert a * a.conjugate() == Fraction(5, 4)

    def test_inverse(self):
        a = GaussianRational(3, -4)
        assert a * a.inverse() == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(0).inverse()

    def test_floats_rejected(self):
        with pytest.raises(UsageError):
            GaussianRational.coerce(0.5)


class TestSeries:
    def test_add_cancels(self):
        c = ctx()
        assert series_add(c.one() + th(c), c.const(-1)) == th(c)

    def test_add_zero_is_identity(self):
        c = ctx()
        s = th(c) * 3 + 2
        assert series_add(c.zero(), s) == s

    def test_conjugate_sum(self):
        c = ctx()
        a = c.const(GaussianRational(Fraction(1, 2), 1))
        b = c.const(GaussianRational(Fraction(1, 2), -1))
        assert series_add(a, b) == c.one()

    def test_mul_norm(self):
        c = ctx()
        a = c.const(GaussianRational(Fraction(1, 2), 1))
        b = c.const(GaussianRational(Fraction(1, 2), -1))
        assert series_mul(a, b) == c.const(Fraction(5, 4))

    def test_truncation(self):
        c = ctx(1)
        assert series_mul(th(c), th(c)).is_zero()

    def test_difference_of_squares(self):
        c = ctx(3)
        assert series_mul(1 + th(c), 1 - th(c)) == 1 - th(c) * th(c)

    def test_context_mismatch(self):
        with pytest.raises(UsageError):
            series_add(ctx(3).one(), ctx(4).one())

    def test_exp_taylor(self):
        # oracle (tools/oracles.py): 1, 1, 1/2, 1/6
        c = ctx(3)
        assert coeffs(series_exp(th(c)), 3) == [1, 1, Fraction(1, 2), Fraction(1, 6)]

    def test_exp_zero(self):
        c = ctx()
        assert series_exp(c.zero()) == c.one()

    def test_exp_inverse_pair(self):
        # oracle: exp(i theta) exp(-i theta) = 1 at N = 4
        c = ctx(4)
        assert series_exp(th(c) * I) * series_exp(th(c) * -I) == c.one()

    def test_exp_needs_zero_constant(self):
        c = ctx()
        with pytest.raises(DomainError):
            series_exp(c.one() + th(c))

    def test_invert_geometric(self):
        # oracle: 1 - theta + theta^2 - theta^3
        c = ctx(3)
        assert coeffs(series_invert(1 + th(c)), 3) == [1, -1, 1, -1]

    def test_invert_constant(self):
        c = ctx()
        assert series_invert(c.const(2)) == c.const(Fraction(1, 2))

    def test_invert_times_original(self):
        c = ctx(4)
        s = 1 + th(c) * I
        assert series_invert(s) * s == c.one()

    def test_invert_needs_constant(self):
        c = ctx()
        with pytest.raises(DomainError):
            series_invert(th(c))

    def test_two_parameters(self):
        c = DeformationContext(["a", "b"], 2)
        a, b = c.param("a"), c.param("b")
        assert (a * b) * a == c.zero()
        assert (a + b) * (a - b) == a * a - b * b

    def test_min_degree(self):
        c = ctx()
        assert (th(c) * th(c) + th(c) * th(c) * th(c)).min_degree() == 2
