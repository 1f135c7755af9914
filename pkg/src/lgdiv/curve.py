"""Ordinary elliptic curves y^2 + xy = x^3 + a x^2 + b in characteristic 2.

Coordinates may be GF(2^m) elements, rational functions in t, or Laurent
series in a completion; the group law only uses field operations.  For
series, "zero" means zero within the known precision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra.field import FieldCtx, FieldElement
from .algebra.places import Place, places_up_to_degree, rf_eval_at_place
from .algebra.ratfunc import RatFunc, rf_power_test
from .errors import (
    BadReduction,
    BadU,
    InsufficientPrecision,
    NotAFourthPower,
    NotASquare,
    NotOnCurve,
    Pole,
)
from .local import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    LaurentSeries,
    as_solve_laurent,
    expand_at_place,
    ls_sqrt,
)


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when x is None."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.x is None else f"({self.x}, {self.y})"


INFINITY = Point()


def _zero(x) -> bool:
    return x.is_zero()


def _sqrt(x):
    """Square root in the coordinate field, or None."""
    if isinstance(x, FieldElement):
        return x.sqrt()
    if isinstance(x, RatFunc):
        return x if x.is_zero() else rf_power_test(x, 1)
    if isinstance(x, LaurentSeries):
        return ls_sqrt(x)
    raise TypeError(f"no square root for {type(x).__name__}")


class Curve:
    """y^2 + xy = x^3 + a x^2 + b with b != 0; j-invariant 1/b."""

    def __init__(self, a, b):
        if _zero(b):
            if isinstance(b, LaurentSeries) and not b.is_exact():
                raise InsufficientPrecision("b is zero within precision")
            raise ValueError("b = 0: the curve is singular")
        self.a = a
        self.b = b

    def __repr__(self):
        return f"Curve(a={self.a}, b={self.b})"

    def __eq__(self, other):
        return isinstance(other, Curve) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    @property
    def j(self):
        return self.b.one() / self.b

    def point(self, x, y) -> Point:
        P = Point(x, y)
        if not ec_on_curve(self, P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    def lhs_minus_rhs(self, P: Point):
        x, y = P.x, P.y
        return y * y + x * y + x * x * x + self.a * x * x + self.b


def ec_on_curve(E: Curve, P: Point) -> bool:
    if P.is_infinity:
        return True
    return _zero(E.lhs_minus_rhs(P))


def ec_neg(E: Curve, P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.x, P.x + P.y)


def ec_double(E: Curve, P: Point) -> Point:
    if P.is_infinity or _zero(P.x):
        return INFINITY
    x, y = P.x, P.y
    lam = x + y / x
    x3 = lam * lam + lam + E.a
    y3 = x * x + lam * x3 + x3
    return Point(x3, y3)


def ec_add(E: Curve, P: Point, Q: Point) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    dx = P.x + Q.x
    if _zero(dx):
        if _zero(P.y + Q.y):
            return ec_double(E, P)
        return INFINITY
    lam = (P.y + Q.y) / dx
    x3 = lam * lam + lam + dx + E.a
    y3 = lam * (P.x + x3) + x3 + P.y
    return Point(x3, y3)


def ec_mul(E: Curve, n: int, P: Point) -> Point:
    if n < 0:
        return ec_mul(E, -n, ec_neg(E, P))
    R = INFINITY
    while n:
        if n & 1:
            R = ec_add(E, R, P)
        n >>= 1
        if n:
            P = ec_double(E, P)
    return R


def ec_x_double(E: Curve, x):
    """x(2P) = x^2 + b/x^2 for any P with x(P) = x."""
    if _zero(x):
        raise ZeroDivisionError("the 2-torsion point doubles to infinity")
    x2 = x * x
    return x2 + E.b / x2


def ec_two_torsion(E: Curve) -> Point:
    s = _sqrt(E.b)
    if s is None:
        raise NotASquare(f"b = {E.b} is not a square")
    return Point(E.b.zero(), s)


def ec_four_torsion(E: Curve, u) -> Point:
    """(b^(1/4), b^(1/2) + u b^(1/4)) for a root u of u^2 + u = a."""
    if not _zero(u * u + u + E.a):
        raise BadU("u^2 + u != a")
    s = _sqrt(E.b)
    r = _sqrt(s) if s is not None else None
    if r is None:
        raise NotAFourthPower(f"b = {E.b} has no fourth root")
    R = Point(r, s + u * r)
    if not points_agree(ec_double(E, R), Point(E.b.zero(), s)):
        raise AssertionError("four-torsion formula failed its doubling check")
    return R


def points_agree(P: Point, Q: Point) -> bool:
    if P.is_infinity or Q.is_infinity:
        return P.is_infinity and Q.is_infinity
    return _zero(P.x + Q.x) and _zero(P.y + Q.y)


# -- local halving -------------------------------------------------------------


class Divisibility(enum.Enum):
    YES = "Yes"
    NO = "No"
    INDETERMINATE = "Indeterminate"

    def __str__(self):
        return self.value


def _certainly_nonzero(s: LaurentSeries) -> bool:
    return bool(s.coeffs)


def _y_candidates(E: Curve, x: LaurentSeries):
    """Both y with (x, y) on E; empty if y lies outside k_v."""
    c = x + E.a + E.b / (x * x)
    s = as_solve_laurent(c)
    if s is None:
        return []
    y = x * s
    return [y, y + x]


def ec_halve_local(E: Curve, Q: Point) -> list[Point]:
    """All R in E(k_v) with 2R = Q, to the working precision.

    Raises InsufficientPrecision when precision runs out before the answer
    is decided.
    """
    b = E.b
    if Q.is_infinity:
        s = ls_sqrt(b)
        if s is None:
            return [INFINITY]
        return [INFINITY, Point(b.zero(), s)]
    xi, eta = Q.x, Q.y
    if _zero(xi):
        # Q is the 2-torsion point: x(R)^4 = b
        s = ls_sqrt(b)
        roots = [s] if s is not None else []
    else:
        w = as_solve_laurent(b / (xi * xi))
        roots = [] if w is None else [xi * w, xi * w + xi]
    out: list[Point] = []
    for z in roots:
        x = ls_sqrt(z)
        if x is None:
            continue
        if not _certainly_nonzero(x):
            raise InsufficientPrecision("half has an undetermined x-coordinate")
        for y in _y_candidates(E, x):
            R = Point(x, y)
            D = ec_double(E, R)
            if D.is_infinity:
                continue
            if _zero(xi):
                if points_agree(D, Q):
                    out.append(R)
                continue
            same = _zero(D.y + eta)
            other = _zero(D.y + eta + xi)
            if same and not other:
                out.append(R)
            elif same and other:
                raise InsufficientPrecision("cannot separate Q from -Q at this precision")
            elif not other:
                raise ArithmeticError("a computed half doubles to neither Q nor -Q")
    return out


def point_at_place(P: Point, v: Place, prec: int) -> Point:
    if P.is_infinity:
        return P
    return Point(expand_at_place(P.x, v, prec), expand_at_place(P.y, v, prec))


def curve_at_place(E: Curve, v: Place, prec: int) -> Curve:
    return Curve(expand_at_place(E.a, v, prec), expand_at_place(E.b, v, prec))


def _divisible_series(E: Curve, Q: Point, n: int) -> Divisibility:
    level = [Q]
    undecided = False
    for _ in range(n):
        nxt: list[Point] = []
        for R in level:
            try:
                halves = ec_halve_local(E, R)
            except InsufficientPrecision:
                undecided = True
                continue
            for H in halves:
                if not any(points_agree(H, G) for G in nxt):
                    nxt.append(H)
        if not nxt:
            return Divisibility.INDETERMINATE if undecided else Divisibility.NO
        level = nxt
    return Divisibility.YES


@dataclass
class LocalDivisibility:
    place: Place
    verdict: Divisibility
    precision: int


def ec_divisible_local(E: Curve, Q: Point, n: int, v: Place, prec: int = DEFAULT_PRECISION,
                       max_prec: int = MAX_PRECISION) -> LocalDivisibility:
    """Is the global point Q divisible by 2^n in E(k_v)?

    Breadth-first over all halves; precision doubles on Indeterminate.
    """
    if n < 1:
        raise ValueError("halving depth must be at least 1")
    if Q.is_infinity:
        return LocalDivisibility(v, Divisibility.YES, prec)
    p = prec
    while True:
        try:
            Ev = curve_at_place(E, v, p)
            Qv = point_at_place(Q, v, p)
            verdict = _divisible_series(Ev, Qv, n)
        except InsufficientPrecision:
            verdict = Divisibility.INDETERMINATE
        if verdict is not Divisibility.INDETERMINATE or p * 2 > max_prec:
            return LocalDivisibility(v, verdict, p)
        p *= 2


# -- reduction and finite fields ----------------------------------------------


def ec_reduce_at_place(E: Curve, P: Point, v: Place) -> tuple[Curve, Point]:
    """Reduce E and P modulo v.

    Raises BadReduction unless a, b and the coordinates of P are v-integral
    with b a v-unit.
    """
    try:
        a = rf_eval_at_place(E.a, v)
        b = rf_eval_at_place(E.b, v)
    except Pole:
        raise BadReduction(f"{E} has a non-integral coefficient at {v}") from None
    if b.is_zero():
        raise BadReduction(f"b vanishes at {v}")
    Ev = Curve(a, b)
    if P.is_infinity:
        return Ev, INFINITY
    try:
        return Ev, Point(rf_eval_at_place(P.x, v), rf_eval_at_place(P.y, v))
    except Pole:
        raise BadReduction(f"{P} is not integral at {v}") from None


def ec_count_points(E: Curve) -> tuple[int, int]:
    """(#E(GF(q)), q + 1 - #E(GF(q))) for E over a finite field."""
    F: FieldCtx = E.b.ctx
    a, b = E.a.bits, E.b.bits
    count = 2  # infinity and (0, sqrt b)
    for x in range(1, F.q):
        x2 = F.mul(x, x)
        c = x ^ a ^ F.mul(b, F.inv(x2))
        if F.trace(c) == 0:
            count += 2
    return count, F.q + 1 - count


def ec_count_points_naive(E: Curve) -> int:
    F: FieldCtx = E.b.ctx
    a, b = E.a.bits, E.b.bits
    mul = F.mul
    n = 1
    for x in range(F.q):
        rhs = mul(mul(x, x), x) ^ mul(a, mul(x, x)) ^ b
        for y in range(F.q):
            if mul(y, y) ^ mul(x, y) == rhs:
                n += 1
    return n


def ec_points(E: Curve) -> list[Point]:
    F = E.b.ctx
    out = [INFINITY]
    for x in F.elements():
        for y in F.elements():
            P = Point(x, y)
            if ec_on_curve(E, P):
                out.append(P)
    return out


def ec_point_order(E: Curve, P: Point, bound: int | None = None) -> int:
    if bound is None:
        bound = ec_count_points(E)[0]
    R = P
    for n in range(1, bound + 1):
        if R.is_infinity:
            return n
        R = ec_add(E, R, P)
    raise ArithmeticError(f"{P} has order exceeding {bound}")


@dataclass(frozen=True)
class NonTorsionWitness:
    place1: Place
    place2: Place
    order1: int
    order2: int


def ec_nontorsion_witness(E: Curve, P: Point, max_degree: int = 4) -> NonTorsionWitness | None:
    """Two good places where the reductions of P have different orders.

    Torsion injects into the reduction at good places, so a mismatch proves
    that P has infinite order.  None means nothing was found in range.
    """
    if P.is_infinity:
        return None
    seen: tuple[Place, int] | None = None
    for v in places_up_to_degree(E.b.ctx, max_degree):
        if E.b.ctx.m * v.degree > 16:
            continue
        try:
            Ev, Pv = ec_reduce_at_place(E, P, v)
        except BadReduction:
            continue
        n = ec_point_order(Ev, Pv)
        if seen is None:
            seen = (v, n)
        elif n != seen[1]:
            return NonTorsionWitness(seen[0], v, seen[1], n)
    return None


@dataclass
class MWPresentation:
    """E(k) = Z.free_gens + sum of Z/order torsion gens, taken as given."""

    free_gens: list[Point]
    torsion_gens: list[tuple[Point, int]]
    provenance: str = ""
    free_names: list[str] = field(default_factory=list)
    torsion_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.free_names:
            self.free_names = ["P"] if len(self.free_gens) == 1 else [f"P{i + 1}" for i in range(len(self.free_gens))]
        if not self.torsion_names:
            self.torsion_names = ["T"] if len(self.torsion_gens) == 1 else [f"T{i + 1}" for i in range(len(self.torsion_gens))]
        if any(d < 2 for _, d in self.torsion_gens):
            raise ValueError("torsion orders must be at least 2")
        gens = list(self.free_gens) + [P for P, _ in self.torsion_gens]
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")

    def validate_on(self, E: Curve) -> None:
        for P in self.free_gens + [P for P, _ in self.torsion_gens]:
            if not ec_on_curve(E, P):
                raise NotOnCurve(f"generator {P} is not on the curve")

    def point(self, E: Curve, free: list[int], torsion: list[int]) -> Point:
        R = INFINITY
        for c, P in zip(free, self.free_gens):
            R = ec_add(E, R, ec_mul(E, c, P))
        for c, (T, _) in zip(torsion, self.torsion_gens):
            R = ec_add(E, R, ec_mul(E, c, T))
        return R
