"""Exact-rational layer: Bernoulli machinery, Apostol sums, g_w."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellded.exact import (
    CoprimePair,
    LaurentPoly,
    apostol_sum,
    bernoulli_function,
    bernoulli_number,
    bernoulli_polynomial,
    dim_data,
    g_poly,
    rational_str,
    verify_apostol_reciprocity,
)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=97
)


class TestBernoulliNumber:
    def test_base_case(self):
        assert bernoulli_number(0) == 1

    def test_b1_convention(self):
        assert bernoulli_number(1) == Fraction(-1, 2)

    def test_odd_vanish(self):
        for k in (3, 5, 7, 9, 11):
            assert bernoulli_number(k) == 0

    def test_known_values(self):
        assert bernoulli_number(2) == Fraction(1, 6)
        assert bernoulli_number(4) == Fraction(-1, 30)
        assert bernoulli_number(12) == Fraction(-691, 2730)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bernoulli_number(-1)


class TestBernoulliPolynomial:
    def test_constant_term(self):
        for k in range(8):
            assert bernoulli_polynomial(k, 0) == bernoulli_number(k)

    def test_half(self):
        assert bernoulli_polynomial(2, Fraction(1, 2)) == Fraction(-1, 12)

    def test_third(self):
        assert bernoulli_polynomial(3, Fraction(1, 3)) == Fraction(1, 27)

    @given(x=rationals, k=st.integers(0, 12))
    def test_forward_difference(self, x, k):
        # B_k(x+1) - B_k(x) = k x^{k-1}
        lhs = bernoulli_polynomial(k, x + 1) - bernoulli_polynomial(k, x)
        rhs = 0 if k == 0 else k * x ** (k - 1)
        assert lhs == rhs


class TestBernoulliFunction:
    def test_integer_k1(self):
        assert bernoulli_function(1, 0) == 0
        assert bernoulli_function(1, 5) == 0

    def test_half_integer(self):
        assert bernoulli_function(1, Fraction(7, 2)) == 0

    def test_on_unit_interval(self):
        assert bernoulli_function(3, Fraction(1, 3)) == Fraction(1, 27)

    @given(x=rationals, k=st.integers(1, 10))
    def test_periodicity(self, x, k):
        assert bernoulli_function(k, x + 1) == bernoulli_function(k, x)

    @given(x=rationals, k=st.integers(1, 10))
    def test_matches_polynomial_on_fraction(self, x, k):
        frac = x - (x.numerator // x.denominator)
        if not (k == 1 and frac == 0):
            assert bernoulli_function(k, x) == bernoulli_polynomial(k, frac)


coprime_pairs = st.tuples(
    st.integers(1, 25), st.integers(1, 25)
).filter(lambda t: math.gcd(*t) == 1)


class TestApostolSum:
    def test_empty(self):
        assert apostol_sum(3, 7, 1) == 0

    def test_even_k_example(self):
        assert apostol_sum(2, 1, 3) == 0

    def test_direct_example(self):
        assert apostol_sum(3, 1, 3) == Fraction(-1, 81)

    def test_coprimality_enforced(self):
        with pytest.raises(ValueError):
            apostol_sum(3, 2, 4)

    @given(pq=coprime_pairs, k=st.sampled_from([2, 4, 6]))
    def test_even_k_vanishes(self, pq, k):
        p, q = pq
        assert apostol_sum(k, q, p) == 0

    @given(pq=coprime_pairs, k=st.integers(1, 7))
    def test_periodicity_in_q(self, pq, k):
        p, q = pq
        assert apostol_sum(k, q + p, p) == apostol_sum(k, q, p)


class TestGPoly:
    def test_symmetric(self):
        for w in (2, 4, 6, 10):
            g = g_poly(w)
            assert g - g.swap_vars() == LaurentPoly.zero()

    def test_value_example(self):
        assert g_poly(2).evaluate(3, 1) == Fraction(1, 54)

    def test_corner_coefficient(self):
        for w in (2, 4, 8, 12):
            expected = -bernoulli_number(w + 2) / (2 * (w + 2))
            assert g_poly(w).coeffs[(-1, -1)] == expected

    def test_odd_w_rejected(self):
        with pytest.raises(ValueError):
            g_poly(3)

    @pytest.mark.parametrize("w", [2, 4, 6, 8, 10])
    def test_three_term_identity_symbolically(self, w):
        # g(p+q, q) + g(p, p+q) = g(p, q), checked as polynomials after
        # clearing denominators: multiply through by pq(p+q).
        g = g_poly(w)
        a = g * LaurentPoly.monomial(1, 1)  # pq * g, no negative exponents
        term1 = LaurentPoly.monomial(1, 0) * a.substitute_p_plus_q("p")
        term2 = LaurentPoly.monomial(0, 1) * a.substitute_p_plus_q("q")
        term3 = (LaurentPoly.monomial(1, 0) + LaurentPoly.monomial(0, 1)) * a
        assert term1 + term2 - term3 == LaurentPoly.zero()


class TestReciprocity:
    def test_example_value(self):
        pair = CoprimePair(3, 1)
        assert verify_apostol_reciprocity(2, pair) == 0
        # both sides equal -1/9
        lhs = (Fraction(3) ** 2 * apostol_sum(3, 1, 3)
               + Fraction(1) ** 2 * apostol_sum(3, 3, 1))
        assert lhs == Fraction(-1, 9)

    def test_trivial_pair(self):
        assert verify_apostol_reciprocity(2, CoprimePair(1, 1)) == 0

    @given(pq=coprime_pairs, w=st.sampled_from([2, 4, 6]))
    @settings(max_examples=40, deadline=None)
    def test_residual_always_zero(self, pq, w):
        p, q = pq
        assert verify_apostol_reciprocity(w, CoprimePair(p, q)) == 0

    def test_requires_u(self):
        with pytest.raises(ValueError):
            verify_apostol_reciprocity(2, CoprimePair(3, -1))


class TestDimData:
    @pytest.mark.parametrize("w,expected", [
        (2, (0, 1)), (4, (0, 1)), (6, (0, 1)), (8, (0, 1)),
        (10, (1, 2)), (12, (0, 1)), (14, (1, 2)), (22, (2, 3)), (24, (1, 2)),
    ])
    def test_values(self, w, expected):
        assert dim_data(w) == expected


class TestCoprimePair:
    def test_validation(self):
        with pytest.raises(ValueError):
            CoprimePair(0, 1)
        with pytest.raises(ValueError):
            CoprimePair(4, 2)

    def test_membership(self):
        assert CoprimePair(3, 2).in_u
        assert not CoprimePair(3, -2).in_u


class TestLaurentPoly:
    def test_no_zero_coeffs_stored(self):
        p = LaurentPoly({(1, 1): Fraction(0), (0, 0): Fraction(2)})
        assert (1, 1) not in p.coeffs

    def test_pole_at_zero(self):
        p = LaurentPoly.monomial(-1, -1)
        with pytest.raises(ZeroDivisionError):
            p.evaluate(0, 1)

    def test_substitution_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            LaurentPoly.monomial(-1, 0).substitute_p_plus_q("p")

    def test_serialization_sorted(self):
        p = LaurentPoly({(1, 0): Fraction(2), (-1, 3): Fraction(1, 3)})
        obj = p.to_json_obj()
        assert [(it["i"], it["j"]) for it in obj] == [(-1, 3), (1, 0)]
        assert obj[0]["coeff"] == "1/3"

    @given(st.dictionaries(
        st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
        st.fractions(min_value=-10, max_value=10, max_denominator=30)
            .filter(lambda f: f != 0),
        max_size=8,
    ))
    def test_json_roundtrip(self, coeffs):
        p = LaurentPoly(dict(coeffs))
        assert LaurentPoly.from_json(p.to_json()) == p

    @given(st.integers(1, 9), st.integers(1, 9))
    def test_g2_evaluation_matches_expansion(self, p, q):
        # spot-check evaluate() against the explicit degree-2 expansion
        g = g_poly(2)
        expected = (Fraction(q**3, 720 * p) + Fraction(p**3, 720 * q)
                    - Fraction(p * q, 144) + Fraction(1, 240 * p * q))
        assert g.evaluate(p, q) == expected


def test_rational_str_canonical():
    assert rational_str(Fraction(0)) == "0/1"
    assert rational_str(Fraction(-2, 4)) == "-1/2"
