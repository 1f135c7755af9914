"""Finite fields, polynomials, rational functions, the expression parser and places."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgdiv.algebra import (
    MODULI,
    FieldCtx,
    Place,
    Poly,
    RatFunc,
    ff_arith,
    ff_as_solve,
    ff_sqrt,
    ff_trace,
    gf,
    is_irreducible,
    max_power_exponent,
    parse_ratfunc,
    places_up_to_degree,
    rf_canonical,
    rf_eval_at_place,
    rf_power_test,
    valuation,
)
from lgdiv.algebra.field import is_irreducible_f2
from lgdiv.algebra.ratfunc import format_ratfunc
from lgdiv.errors import CtxMismatch, DivisionByZero, ExprSyntaxError, ZeroDenominator


# -- GF(2^m) ---------------------------------------------------------------------


class TestFieldExamples:
    def test_gf4_products(self, F4):
        w = F4.gen()
        assert w * w == w + 1
        assert w + w == F4.zero()
        assert ff_arith(w, None, "inv") == w + 1
        assert ff_arith(w, w, "mul") == w + 1

    def test_sqrt(self, F2, F4):
        w = F4.gen()
        assert ff_sqrt(F2.one()) == F2.one()
        assert ff_sqrt(w) == w + 1
        assert ff_sqrt(w + 1) == w

    def test_trace(self, F2, F4):
        assert ff_trace(F2.one()) == 1
        assert ff_trace(F4.gen()) == 1
        assert ff_trace(F4.one()) == 0

    def test_as_solve(self, F2, F4):
        assert ff_as_solve(F2.zero()) == F2.zero()
        assert ff_as_solve(F4.one()) == F4.gen()
        assert ff_as_solve(F2.one()) is None

    def test_errors(self, F4):
        with pytest.raises(DivisionByZero):
            F4.zero().inverse()
        with pytest.raises(CtxMismatch):
            F4.gen() + gf(3).gen()

    def test_gf2_modulus_is_x(self):
        assert gf(1).modulus == 0b10

    def test_moduli_are_least_irreducibles(self):
        for m, p in MODULI.items():
            assert is_irreducible_f2(p)
            assert not any(is_irreducible_f2(c) for c in range(1 << m, p))

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            FieldCtx(2, 0b101)


@pytest.mark.parametrize("m", range(1, 9))
def test_field_properties_exhaustive(m):
    F = gf(m)
    traces = 0
    for x in range(F.q):
        s = F.sqrt(x)
        assert F.mul(s, s) == x
        assert F.sqrt(F.mul(x, x)) == x
        assert F.pow(x, F.q) == x
        tr = F.trace(x)
        assert tr in (0, 1)
        traces += tr
        w = F.as_solve(x)
        if tr == 0:
            assert F.mul(w, w) ^ w == x
        else:
            assert w is None
        if x:
            assert F.mul(x, F.inv(x)) == 1
    assert traces == F.q // 2


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16), st.data())
def test_field_axioms(m, data):
    F = gf(m)
    x, y, z = (F.from_bits(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert ff_trace(x + y) == ff_trace(x) ^ ff_trace(y)
    assert x + x == F.zero()


# -- polynomials and rational functions ------------------------------------------


class TestCanonical:
    def test_common_factor(self, rf2):
        assert rf2("(t^2+t)/t") == rf2("t+1")

    def test_already_canonical(self, rf2):
        f = rf2("(t^16+1)/t^8")
        assert rf_canonical(f) == f
        assert f.den == Poly.t(gf(1)) ** 8

    def test_gcd_cancellation(self, rf2):
        f = rf2("((t+1)*t)/((t+1)*t^3)")
        assert f == rf2("1/t^2")
        assert f.num.degree == 0 and f.den.degree == 2

    def test_zero_denominator(self, F2):
        with pytest.raises(ZeroDenominator):
            RatFunc(Poly.one(F2), Poly.zero(F2))

    def test_monic_denominator(self, rf4):
        f = rf4("1/(w*t + 1)")
        assert f.den.is_monic()


class TestPowerTest:
    def test_examples(self, rf2):
        assert rf_power_test(rf2("t^8"), 3) == rf2("t")
        assert rf_power_test(rf2("t^8"), 4) is None
        assert rf_power_test(rf2("(t^16+1)/t^8"), 3) == rf2("(t^2+1)/t")

    def test_nu_zero(self, rf2):
        assert rf_power_test(rf2("t+1"), 0) == rf2("t+1")

    def test_max_exponent(self, rf2):
        assert max_power_exponent(rf2("t^8"), 4) == 3
        assert max_power_exponent(rf2("1/t^2"), 3) == 1

    def test_not_a_power_exhaustive(self, F2):
        # every g of degree <= 2 over F2: g^2 lists all squares of that shape
        squares = set()
        for c in itertools.product(range(2), repeat=3):
            squares.add(Poly(F2, c).square())
        for c in itertools.product(range(2), repeat=5):
            p = Poly(F2, c)
            if p.is_zero():
                continue
            got = rf_power_test(RatFunc.from_poly(p), 1)
            assert (got is not None) == (p in squares)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.integers(0, 3))
    def test_roundtrip(self, coeffs, nu):
        F = gf(2)
        p = Poly(F, tuple(coeffs))
        if p.is_zero():
            return
        f = RatFunc.from_poly(p) ** (1 << nu)
        g = rf_power_test(f, nu)
        assert g is not None and g ** (1 << nu) == f


class TestPolyArithmetic:
    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 3), max_size=6), st.lists(st.integers(0, 3), min_size=1, max_size=5))
    def test_divmod(self, a, b):
        F = gf(2)
        A, B = Poly(F, tuple(a)), Poly(F, tuple(b))
        if B.is_zero():
            return
        q, r = A.divmod(B)
        assert q * B + r == A
        assert r.is_zero() or r.degree < B.degree

    def test_irreducible(self, F2):
        assert is_irreducible(Poly(F2, (1, 1, 1)))
        assert not is_irreducible(Poly(F2, (1, 0, 1)))


# -- the expression grammar --------------------------------------------------------


class TestParse:
    def test_examples(self, F2, F4, rf2):
        assert rf2("0").is_zero()
        f = parse_ratfunc("w*t + 1", F4)
        assert f.num.c == (1, 2)
        assert rf2("(t^16+1)/t^8") == RatFunc(Poly(F2, (1,) + (0,) * 15 + (1,)), Poly.t(F2) ** 8)

    def test_minus_is_plus(self, rf2):
        assert rf2("t - 1") == rf2("t + 1")

    def test_integers_reduce_mod_2(self, rf2):
        assert rf2("3*t") == rf2("t")
        assert rf2("2").is_zero()

    def test_whitespace(self, rf2):
        assert rf2("  ( t ^ 2 + 1 ) / t ") == rf2("(t^2+1)/t")

    def test_errors(self, F2):
        with pytest.raises(ExprSyntaxError) as err:
            parse_ratfunc("t +* 1", F2)
        assert err.value.pos == 3
        with pytest.raises(ExprSyntaxError):
            parse_ratfunc("(t + 1", F2)
        with pytest.raises(CtxMismatch):
            parse_ratfunc("w*t", F2)
        with pytest.raises(ZeroDenominator):
            parse_ratfunc("1/(t+t)", F2)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.lists(st.integers(0, 3), min_size=1, max_size=4))
    def test_print_parse_roundtrip(self, num, den):
        F = gf(2)
        D = Poly(F, tuple(den))
        if D.is_zero():
            return
        f = RatFunc(Poly(F, tuple(num)), D)
        assert parse_ratfunc(format_ratfunc(f), F) == f


# -- places --------------------------------------------------------------------------


class TestPlaces:
    def test_small_lists(self, F2):
        assert [str(v) for v in places_up_to_degree(F2, 1)] == ["(t)", "(t + 1)", "inf"]
        assert [str(v) for v in places_up_to_degree(F2, 2)] == ["(t)", "(t + 1)", "(t^2 + t + 1)", "inf"]
        names = [str(v) for v in places_up_to_degree(F2, 3)]
        assert "(t^3 + t + 1)" in names and "(t^3 + t^2 + 1)" in names

    @pytest.mark.parametrize("m,dmax", [(1, 6), (2, 4), (3, 3)])
    def test_necklace_counts(self, m, dmax):
        F = gf(m)
        places = places_up_to_degree(F, dmax)
        counts = {d: sum(1 for v in places if not v.is_infinity and v.degree == d) for d in range(1, dmax + 1)}
        for d in range(1, dmax + 1):
            assert sum(e * counts[e] for e in range(1, d + 1) if d % e == 0) == F.q ** d

    def test_all_monic_irreducible(self, F4):
        for v in places_up_to_degree(F4, 3):
            if not v.is_infinity:
                assert v.poly.is_monic() and is_irreducible(v.poly)

    def test_infinity_last(self, F2):
        assert places_up_to_degree(F2, 3)[-1] == Place.infinity(F2)
        assert Place.infinity(F2).degree == 1

    def test_eval(self, F2, rf2):
        t_place = Place(F2, Poly.t(F2))
        t1 = Place(F2, Poly(F2, (1, 1)))
        inf = Place.infinity(F2)
        assert rf_eval_at_place(rf2("t"), t_place).is_zero()
        assert rf_eval_at_place(rf2("t"), t1).bits == 1
        assert rf_eval_at_place(rf2("1/t"), inf).is_zero()
        assert rf_eval_at_place(rf2("(t+1)/t"), inf).bits == 1

    def test_pole(self, F2, rf2):
        from lgdiv.errors import Pole

        with pytest.raises(Pole):
            rf_eval_at_place(rf2("1/t"), Place(F2, Poly.t(F2)))
        with pytest.raises(Pole):
            rf_eval_at_place(rf2("t"), Place.infinity(F2))

    def test_valuation(self, F2, rf2):
        assert valuation(rf2("(t^16+1)/t^8"), Place(F2, Poly.t(F2))) == -8
        assert valuation(rf2("(t^16+1)/t^8"), Place.infinity(F2)) == -8
        assert valuation(rf2("(t+1)^3/t"), Place(F2, Poly(F2, (1, 1)))) == 3

    def test_residue_degree(self, F4):
        from lgdiv.algebra import residue_field

        for v in places_up_to_degree(F4, 2):
            assert residue_field(v).field.m == 2 * v.degree
