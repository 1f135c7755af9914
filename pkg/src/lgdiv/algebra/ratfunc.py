"""Elements of F_q(t) in canonical form: gcd(num, den) = 1 and den monic."""

from __future__ import annotations

from .field import FieldCtx, FieldElement
from .poly import Poly, format_poly
from ..errors import CtxMismatch, ZeroDenominator


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.ctx)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.ctx != den.ctx:
            raise CtxMismatch("numerator and denominator over different fields")
        if num.is_zero():
            num, den = num, Poly.one(num.ctx)
        else:
            g = num.gcd(den)
            if not g.is_one():
                num, den = num // g, den // g
            lc = den.lc()
            if lc != 1:
                k = num.ctx.inv(lc)
                num, den = num.scale(k), den.scale(k)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._raw(p, Poly.one(p.ctx))

    @classmethod
    def const(cls, ctx: FieldCtx, bits: int) -> "RatFunc":
        return cls._raw(Poly.const(ctx, bits), Poly.one(ctx))

    @classmethod
    def t(cls, ctx: FieldCtx) -> "RatFunc":
        return cls._raw(Poly.t(ctx), Poly.one(ctx))

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def zero(self) -> "RatFunc":
        return RatFunc.const(self.ctx, 0)

    def one(self) -> "RatFunc":
        return RatFunc.const(self.ctx, 1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree <= 0

    def constant_bits(self) -> int:
        return self.num.c[0] if self.num.c else 0

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, FieldElement):
            return RatFunc.const(other.ctx, other.bits)
        if isinstance(other, int) and other in (0, 1):
            return RatFunc.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # cross-cancel first to keep intermediate degrees small
        g1 = self.num.gcd(o.den) if not self.num.is_zero() else Poly.one(self.ctx)
        g2 = o.num.gcd(self.den) if not o.num.is_zero() else Poly.one(self.ctx)
        n1, d2 = self.num // g1, o.den // g1
        n2, d1 = o.num // g2, self.den // g2
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def square(self) -> "RatFunc":
        return RatFunc._raw(self.num.square(), self.den.square())

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._raw(self.num ** e, self.den ** e)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int) and other in (0, 1):
            return self.den.is_one() and self.num.c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash((self.num.c, self.den.c))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)

    def sqrt(self) -> "RatFunc | None":
        return rf_power_test(self, 1) if not self.is_zero() else self

    def is_square(self) -> bool:
        return self.is_zero() or rf_power_test(self, 1) is not None

    def valuation_at_infinity(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.den.degree - self.num.degree


def _wrap(s: str) -> str:
    return s if (" + " not in s) else f"({s})"


def format_ratfunc(f: RatFunc) -> str:
    n = format_poly(f.num)
    if f.den.is_one():
        return n
    return f"{_wrap(n)}/{_wrap(format_poly(f.den))}"


def _poly_root(p: Poly, nu: int) -> Poly | None:
    """g with g^(2^nu) = p, or None."""
    ctx = p.ctx
    c = p.c
    for _ in range(nu):
        if any(x for x in c[1::2]):
            return None
        c = tuple(ctx.sqrt(x) for x in c[::2])
    return Poly._raw(ctx, c)


def rf_canonical(f: RatFunc) -> RatFunc:
    # construction already canonicalizes; rebuild to re-verify
    return RatFunc(f.num, f.den)


def rf_power_test(f: RatFunc, nu: int) -> RatFunc | None:
    """g with g^(2^nu) = f, or None when f is not a 2^nu-th power."""
    if f.is_zero():
        raise ValueError("power test of zero")
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    n = _poly_root(f.num, nu)
    if n is None:
        return None
    d = _poly_root(f.den, nu)
    if d is None:
        return None
    return RatFunc._raw(n, d)


def max_power_exponent(f: RatFunc, cap: int) -> int:
    """Largest nu <= cap with f in k^(2^nu)."""
    nu = 0
    while nu < cap and rf_power_test(f, nu + 1) is not None:
        nu += 1
    return nu
