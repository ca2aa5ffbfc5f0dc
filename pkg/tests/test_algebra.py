from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from a5kit.algebra import (
    INFINITY,
    DivisionByZeroFunction,
    Poly,
    RatFunc,
    UnsupportedPoint,
    laurent_expand,
    pole_support,
    poly_gcd,
    rational_roots,
    residue,
)

T = RatFunc.t()
ONE = RatFunc.one()


def rf(num, den=(1,)):
    return RatFunc(Poly(num), Poly(den))


small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=6)


def ratfunc_strategy():
    coeffs = st.lists(small_fractions, min_size=0, max_size=4)
    nonzero = coeffs.filter(lambda c: any(x != 0 for x in c))
    return st.builds(lambda n, d: RatFunc(Poly(n), Poly(d)), coeffs, nonzero)


class TestArithmetic:
    def test_doubling(self):
        assert T + T == rf((0, 2))

    def test_inverse_pair(self):
        assert T * (ONE / T) == ONE

    def test_long_division(self):
        # oracle: divide the coefficient lists by hand
        num, den = Poly((-1, 0, 1)), Poly((-1, 1))
        q, r = num.divmod(den)
        assert r.is_zero() and q == Poly((1, 1))
        assert rf((-1, 0, 1)) / rf((-1, 1)) == rf((1, 1))

    def test_division_by_zero_function(self):
        with pytest.raises(DivisionByZeroFunction):
            ONE / RatFunc.zero()

    def test_canonical_form_monic_coprime(self):
        f = RatFunc(Poly((0, 2)), Poly((0, 0, 4)))  # 2t / 4t^2
        assert f.num == Poly((F(1, 2),))
        assert f.den == Poly((0, 1))
        assert f.den.leading() == 1

    @given(ratfunc_strategy())
    @settings(max_examples=60, deadline=None)
    def test_canonicalization_idempotent(self, f):
        again = RatFunc(f.num, f.den)
        assert again == f

    @given(ratfunc_strategy(), ratfunc_strategy(), ratfunc_strategy())
    @settings(max_examples=40, deadline=None)
    def test_field_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(ratfunc_strategy(), ratfunc_strategy())
    @settings(max_examples=40, deadline=None)
    def test_division_inverts_multiplication(self, f, g):
        if not g.is_zero():
            assert (f / g) * g == f


class TestDerivative:
    def test_basic(self):
        assert T.derivative() == ONE
        assert (ONE / T).derivative() == rf((-1,), (0, 0, 1))

    def test_against_limit_oracle(self):
        # derivative at a point equals the h->0 limit of the difference
        # quotient, evaluated exactly as a rational function of h
        f = T + RatFunc.constant(F(1, 2)) / T
        expected = f.derivative()
        for a in (F(1), F(2), F(-3), F(1, 2), F(5, 3)):
            # (f(a+h) - f(a)) / h as a rational function of h
            h = RatFunc.t()
            shifted_num = f.num.taylor_shift(a)
            shifted_den = f.den.taylor_shift(a)
            fa_h = RatFunc(shifted_num, shifted_den)  # f(a + h) in variable h
            quotient = (fa_h - RatFunc.constant(f.evaluate(a))) / h
            assert quotient.evaluate(0) == expected.evaluate(a)

    @given(ratfunc_strategy(), ratfunc_strategy())
    @settings(max_examples=40, deadline=None)
    def test_linearity_and_leibniz(self, f, g):
        assert (f + g).derivative() == f.derivative() + g.derivative()
        assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


class TestLaurent:
    def test_own_expansion_at_infinity(self):
        f = T + RatFunc.constant(F(1, 2)) / T
        s = laurent_expand(f, INFINITY, 3)
        assert s.coefficient(1) == 1
        assert s.coefficient(-1) == F(1, 2)
        assert all(s.coefficient(e) == 0 for e in (0, -2, -3))

    def test_simple_pole_at_zero(self):
        f = rf((-1,), (0, 2))  # -1/(2t)
        s = laurent_expand(f, 0, 2)
        assert s.coefficient(-1) == F(-1, 2)

    def test_geometric_series_oracle(self):
        # t/(t^2-1) = -t * sum t^(2k)
        f = rf((0, 1), (-1, 0, 1))
        s = laurent_expand(f, 0, 5)
        expected = {1: F(-1), 3: F(-1), 5: F(-1)}
        for e in range(1, 6):
            assert s.coefficient(e) == expected.get(e, F(0))

    def test_resummation_matches(self):
        # subtracting the truncated series from f leaves valuation > order
        f = rf((1, 2, 1), (3, 0, 0, 1))
        s = laurent_expand(f, 0, 8)
        poly_part = Poly([s.coefficient(e) for e in range(0, 9)])
        diff = f - RatFunc(poly_part)
        assert diff.num.valuation() - diff.den.valuation() > 8

    def test_expansion_at_finite_point(self):
        f = rf((0, 1), (-4, 0, 1))  # t/(t^2-4)
        s = laurent_expand(f, 2, 1)
        assert s.coefficient(-1) == F(1, 2)

    def test_unsupported_point(self):
        with pytest.raises(UnsupportedPoint):
            laurent_expand(T, object(), 3)

    @given(ratfunc_strategy())
    @settings(max_examples=40, deadline=None)
    def test_residue_matches_expansion(self, f):
        assert residue(f, 0) == laurent_expand(f, 0, 0).coefficient(-1)
        assert residue(f, INFINITY) == -laurent_expand(f, INFINITY, 1).coefficient(-1)


class TestResidues:
    def test_sign_convention_at_infinity(self):
        f = T + RatFunc.constant(F(1, 2)) / T
        assert residue(f, INFINITY) == F(-1, 2)

    def test_residue_at_zero(self):
        assert residue(rf((-1,), (0, 2)), 0) == F(-1, 2)

    def test_limit_oracle_at_finite_pole(self):
        # residue at a simple pole c equals ((t-c) f)(c)
        f = rf((0, 1), (-4, 0, 1))
        g = f * rf((-2, 1))
        assert residue(f, 2) == g.evaluate(2) == F(1, 2)

    def test_regular_point_gives_zero(self):
        assert residue(T, 5) == 0


class TestPoleSupport:
    def test_single_pole(self):
        sup = pole_support(ONE / T)
        assert sup.locations() == {F(0)} and not sup.has_irrational_factor

    def test_polynomial(self):
        sup = pole_support(T)
        assert sup.locations() == set() and not sup.has_irrational_factor

    def test_irrational_factor_flag(self):
        # rational-root oracle: t^2+1 has no rational roots since +-1 fail
        sup = pole_support(rf((1,), (1, 0, 1)))
        assert sup.locations() == set() and sup.has_irrational_factor

    def test_mixed(self):
        # den = t (t-2) (t^2+1)
        den = Poly((0, 1)) * Poly((-2, 1)) * Poly((1, 0, 1))
        sup = pole_support(RatFunc(Poly((1,)), den))
        assert sup.locations() == {F(0), F(2)}
        assert sup.has_irrational_factor

    def test_rational_roots_multiplicity(self):
        p = Poly((-1, 1)) * Poly((-1, 1)) * Poly((3, 1))
        assert rational_roots(p) == {F(1): 2, F(-3): 1}


class TestOddness:
    def test_odd(self):
        assert (T + RatFunc.constant(F(1, 2)) / T).is_odd()

    def test_not_odd(self):
        assert not (T + ONE).is_odd()

    def test_zero_is_odd(self):
        assert RatFunc.zero().is_odd()


def test_poly_gcd():
    assert poly_gcd(Poly((-1, 0, 1)), Poly((-1, 1))) == Poly((-1, 1))
    a = Poly((1, 2, 1))   # (t+1)^2
    b = Poly((1, 1))
    assert poly_gcd(a, b) == Poly((1, 1))
    assert poly_gcd(a, Poly((2,))) == Poly((1,))


def test_integer_form_round_trip():
    f = rf((1, 0, 2), (0, 2))  # (2t^2+1)/(2t) canonical: (t^2+1/2)/t
    num, den, denom = f.integer_form()
    assert num == [1, 0, 2] and den == [0, 2] and denom == 2
    assert RatFunc.from_integer_form(num, den) == f
