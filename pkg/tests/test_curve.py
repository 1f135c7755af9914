"""Group law, torsion formulas, local halving, reduction and point counting."""

import itertools
import random

import pytest

from lgdiv.algebra import Place, Poly, gf, places_up_to_degree
from lgdiv.curve import (
    INFINITY,
    Curve,
    Divisibility,
    MWPresentation,
    Point,
    ec_add,
    ec_count_points,
    ec_count_points_naive,
    ec_divisible_local,
    ec_double,
    ec_four_torsion,
    ec_halve_local,
    ec_mul,
    ec_neg,
    ec_nontorsion_witness,
    ec_on_curve,
    ec_point_order,
    ec_points,
    ec_reduce_at_place,
    ec_two_torsion,
    ec_x_double,
    points_agree,
)
from lgdiv.errors import BadReduction, BadU, NotASquare, NotOnCurve
from lgdiv.local import embed_const, local_ctx

F2 = gf(1)
T1 = Place(F2, Poly(F2, (1, 1)))
T2 = Place(F2, Poly(F2, (1, 1, 1)))


@pytest.fixture
def prop32(rf2):
    E = Curve(rf2("t^8"), rf2("1/t^8"))
    P = Point(rf2("(t^4+1)/t^2"), rf2("(t^10+t^8+1)/t^4"))
    T = Point(rf2("0"), rf2("1/t^4"))
    return E, P, T


def random_curve(rng, m):
    F = gf(m)
    return Curve(F.from_bits(rng.randrange(F.q)), F.from_bits(rng.randrange(1, F.q)))


class TestPoints:
    def test_mw_generators(self, prop32):
        E, P, T = prop32
        assert ec_on_curve(E, P) and ec_on_curve(E, T) and ec_on_curve(E, INFINITY)

    def test_not_on_curve(self, prop32, rf2):
        E, P, _ = prop32
        with pytest.raises(NotOnCurve):
            E.point(P.x, P.y + rf2("1"))

    def test_singular_rejected(self, F2):
        with pytest.raises(ValueError):
            Curve(F2.one(), F2.zero())

    def test_j_invariant(self, prop32, rf2):
        assert prop32[0].j == rf2("t^8")


class TestGroupLaw:
    def test_two_torsion_small(self, F2):
        E = Curve(F2.one(), F2.one())
        P = Point(F2.zero(), F2.one())
        assert ec_add(E, P, P) is INFINITY
        assert [str(Q) for Q in ec_points(E)] == ["O", "(0, 1)"]

    def test_identity_and_inverse(self, prop32):
        E, P, _ = prop32
        assert ec_add(E, P, INFINITY) == P
        assert ec_add(E, P, ec_neg(E, P)).is_infinity
        assert ec_double(E, P) == ec_add(E, P, P)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_associativity_exhaustive(self, m):
        F = gf(m)
        rng = random.Random(m)
        for _ in range(3):
            E = random_curve(rng, m)
            pts = ec_points(E)
            if len(pts) > 16:
                pts = rng.sample(pts, 16)
            for P, Q, R in itertools.product(pts, repeat=3):
                assert ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R))
            for P in pts:
                assert ec_on_curve(E, ec_double(E, P))
        assert F.q == 2 ** m

    def test_associativity_random(self):
        rng = random.Random(1)
        for _ in range(50):
            m = rng.randrange(5, 9)
            E = random_curve(rng, m)
            P, Q, R = ec_points_sample(E, rng, 3)
            assert ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R))

    def test_multiplication(self, prop32):
        E, P, T = prop32
        assert ec_mul(E, 2, T).is_infinity
        assert ec_mul(E, 5, P) == ec_add(E, ec_mul(E, 4, P), P)
        assert ec_mul(E, -1, P) == ec_neg(E, P)


def ec_points_sample(E, rng, k):
    F = E.b.ctx
    out = []
    for _ in range(64 * k):
        if len(out) == k:
            break
        x = rng.randrange(1, F.q)
        c = x ^ E.a.bits ^ F.mul(E.b.bits, F.inv(F.mul(x, x)))
        s = F.as_solve(c)
        if s is not None:
            out.append(Point(F.from_bits(x), F.from_bits(F.mul(x, s ^ rng.randrange(2)))))
    return out


class TestDoublingFormulas:
    def test_x_double_examples(self, F4):
        w = F4.gen()
        E = Curve(F4.zero(), w)
        assert ec_x_double(E, F4.one()) == w + 1
        b4 = w.sqrt().sqrt()
        assert ec_x_double(E, b4).is_zero()

    def test_x_double_zero(self, F4):
        with pytest.raises(ZeroDivisionError):
            ec_x_double(Curve(F4.zero(), F4.one()), F4.zero())

    def test_x_double_agrees(self):
        rng = random.Random(2)
        for _ in range(200):
            E = random_curve(rng, rng.randrange(1, 9))
            if E.b.ctx.q < 4:
                continue
            for P in ec_points_sample(E, rng, 2):
                assert ec_x_double(E, P.x) == ec_double(E, P).x

    def test_two_torsion(self, prop32, rf2, F2):
        E = prop32[0]
        assert ec_two_torsion(E) == Point(rf2("0"), rf2("1/t^4"))
        assert ec_two_torsion(Curve(F2.one(), F2.one())) == Point(F2.zero(), F2.one())
        with pytest.raises(NotASquare):
            ec_two_torsion(Curve(rf2("1"), rf2("t")))

    def test_four_torsion(self, F2):
        E = Curve(F2.zero(), F2.one())
        R = ec_four_torsion(E, F2.zero())
        assert R == Point(F2.one(), F2.one())
        assert ec_double(E, R) == Point(F2.zero(), F2.one())
        assert ec_four_torsion(E, F2.one()) == Point(F2.one(), F2.zero())  # the other root of u^2 + u = 0
        with pytest.raises(BadU):
            ec_four_torsion(Curve(F2.one(), F2.one()), F2.zero())

    def test_four_torsion_order_gf256(self):
        rng = random.Random(3)
        F = gf(8)
        done = 0
        while done < 30:
            a = F.from_bits(rng.randrange(F.q))
            if a.trace():
                continue
            E = Curve(a, F.from_bits(rng.randrange(1, F.q)))
            R = ec_four_torsion(E, F.from_bits(F.as_solve(a.bits)))
            assert ec_point_order(E, R) == 4
            assert ec_double(E, R) == ec_two_torsion(E)
            done += 1


class TestHalving:
    def test_constant_curve_not_halvable(self):
        lc = local_ctx(Place(F2, Poly.t(F2)))
        E = Curve(lc.one(), lc.one())
        assert ec_halve_local(E, Point(lc.zero(), lc.one())) == []

    def test_lemma_four_torsion_is_a_half(self, rf2):
        # a = t^8 + t^4 + t^2 + t + t, b = t^8: u = t^4 + t^2 + t, b^(1/4) = t^2
        a = rf2("t^8 + t")
        b = rf2("t^8")
        v = T1
        lc = local_ctx(v)
        from lgdiv.local import expand_at_place

        E = Curve(expand_at_place(a, v, 40), expand_at_place(b, v, 40))
        Q = Point(lc.zero(40), expand_at_place(rf2("t^4"), v, 40))
        u = expand_at_place(rf2("t^4 + t^2 + t"), v, 40)
        R = Point(expand_at_place(rf2("t^2"), v, 40), expand_at_place(rf2("t^4"), v, 40) + u * expand_at_place(rf2("t^2"), v, 40))
        assert ec_on_curve(E, R)
        halves = ec_halve_local(E, Q)
        assert any(points_agree(H, R) for H in halves)
        for H in halves:
            assert points_agree(ec_double(E, H), Q)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_agrees_with_enumeration(self, m):
        F = gf(m)
        place = Place(F, Poly.t(F))
        rng = random.Random(10 + m)
        for _ in range(6):
            E = random_curve(rng, m)
            pts = ec_points(E)
            Ev = Curve(embed_const(E.a, place), embed_const(E.b, place))
            for Q in pts:
                expect = sorted(str(R) for R in pts if ec_double(E, R) == Q)
                if Q.is_infinity:
                    Qv = INFINITY
                else:
                    Qv = Point(embed_const(Q.x, place), embed_const(Q.y, place))
                got = ec_halve_local(Ev, Qv)
                got_str = sorted("O" if R.is_infinity else f"({F.from_bits(R.x.coeff(0))}, {F.from_bits(R.y.coeff(0))})"
                                 for R in got)
                assert got_str == expect


class TestLocalDivisibility:
    def test_reduction_places(self, prop32):
        E, P, _ = prop32
        Q = ec_mul(E, 4, P)
        for v in (T1, T2):
            assert ec_divisible_local(E, Q, 3, v).verdict is Divisibility.YES

    def test_infinity(self, prop32):
        E = prop32[0]
        assert ec_divisible_local(E, INFINITY, 1, T1).verdict is Divisibility.YES

    def test_P_not_halvable_at_t_plus_1(self, prop32):
        E, P, _ = prop32
        assert ec_divisible_local(E, P, 1, T1).verdict is Divisibility.NO

    def test_no_false_yes_for_P_at_depth_3(self, prop32):
        E, P, _ = prop32
        # if P is not a double at v it is certainly not divisible by 8 there
        assert ec_divisible_local(E, P, 3, T1).verdict is Divisibility.NO


class TestReduction:
    def test_examples(self, prop32):
        E, P, _ = prop32
        Ev, Pv = ec_reduce_at_place(E, P, T1)
        assert (Ev.a.bits, Ev.b.bits, Pv.x.bits, Pv.y.bits) == (1, 1, 0, 1)
        Ev, Pv = ec_reduce_at_place(E, P, T2)
        assert (Pv.x.bits, Pv.y.bits) == (1, 0)
        with pytest.raises(BadReduction):
            ec_reduce_at_place(E, P, Place(F2, Poly.t(F2)))

    def test_order_at_t_plus_1(self, prop32):
        E, P, T = prop32
        Ev, Pv = ec_reduce_at_place(E, P, T1)
        assert ec_point_order(Ev, Pv) == 2
        Ev, Tv = ec_reduce_at_place(E, T, T1)
        assert ec_point_order(Ev, Tv) == 2
        assert ec_point_order(Ev, INFINITY) == 1

    def test_homomorphism(self, prop32):
        E, P, T = prop32
        pts = [P, T, ec_add(E, P, T), ec_mul(E, 2, P)]
        for v in places_up_to_degree(F2, 3):
            for A, B in itertools.combinations_with_replacement(pts, 2):
                try:
                    Ev, Av = ec_reduce_at_place(E, A, v)
                    _, Bv = ec_reduce_at_place(E, B, v)
                    _, Sv = ec_reduce_at_place(E, ec_add(E, A, B), v)
                except BadReduction:
                    continue
                assert ec_add(Ev, Av, Bv) == Sv

    def test_nontorsion_witness(self, prop32):
        E, P, T = prop32
        w = ec_nontorsion_witness(E, P)
        assert (str(w.place1), w.order1) == ("(t + 1)", 2)
        assert str(w.place2) == "(t^2 + t + 1)" and w.order2 != 2
        assert ec_nontorsion_witness(E, T) is None
        assert ec_nontorsion_witness(E, INFINITY) is None


class TestCounting:
    def test_paper_counts(self, F2, F4):
        assert ec_count_points(Curve(F2.zero(), F2.one())) == (4, -1)
        assert ec_count_points(Curve(F2.one(), F2.one())) == (2, 1)

    def test_gf4_omega_curve(self, F4):
        # y^2 + xy = x^3 + w has 4 points; its quadratic twist has 6
        w = F4.gen()
        assert ec_count_points(Curve(F4.zero(), w)) == (4, 1)
        assert ec_count_points(Curve(w, w)) == (6, -1)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_naive_and_hasse(self, m):
        rng = random.Random(m)
        for _ in range(5):
            E = random_curve(rng, m)
            count, tr = ec_count_points(E)
            assert count == ec_count_points_naive(E) == len(ec_points(E))
            assert tr * tr <= 4 * E.b.ctx.q


class TestPresentation:
    def test_point_and_validation(self, prop32):
        E, P, T = prop32
        M = MWPresentation([P], [(T, 2)])
        M.validate_on(E)
        assert M.point(E, [4], [1]) == ec_add(E, ec_mul(E, 4, P), T)
        assert M.free_names == ["P"] and M.torsion_names == ["T"]
        with pytest.raises(ValueError):
            MWPresentation([P], [(P, 2)])
        with pytest.raises(ValueError):
            MWPresentation([P], [(T, 1)])
