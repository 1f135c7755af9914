"""Dense univariate polynomials over GF(2^m) in the variable t.

Coefficients are kept as a tuple of raw field integers, lowest degree
first, with no trailing zeros.
"""

from __future__ import annotations

from .field import FieldCtx, FieldElement
from ..errors import CtxMismatch, DivisionByZero


def _strip(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


class Poly:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        self.c = _strip([x.bits if isinstance(x, FieldElement) else x for x in coeffs])

    @classmethod
    def _raw(cls, ctx, c: tuple[int, ...]) -> "Poly":
        p = object.__new__(cls)
        p.ctx = ctx
        p.c = c
        return p

    @classmethod
    def zero(cls, ctx) -> "Poly":
        return cls._raw(ctx, ())

    @classmethod
    def one(cls, ctx) -> "Poly":
        return cls._raw(ctx, (1,))

    @classmethod
    def t(cls, ctx) -> "Poly":
        return cls._raw(ctx, (0, 1))

    @classmethod
    def const(cls, ctx, bits: int) -> "Poly":
        return cls._raw(ctx, (bits,) if bits else ())

    @classmethod
    def monomial(cls, ctx, bits: int, k: int) -> "Poly":
        if not bits:
            return cls._raw(ctx, ())
        return cls._raw(ctx, (0,) * k + (bits,))

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.ctx, self.c[i] if i < len(self.c) else 0)

    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.ctx, x) for x in self.c]

    def is_monic(self) -> bool:
        return self.lc() == 1

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ctx == other.ctx and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    def sort_key(self):
        return (self.degree, tuple(reversed(self.c)))

    # -- arithmetic ------------------------------------------------------

    def _same(self, other: "Poly"):
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] ^= x
        return Poly._raw(self.ctx, _strip(out))

    __sub__ = __add__

    def __mul__(self, other) -> "Poly":
        if isinstance(other, FieldElement):
            return self.scale(other.bits)
        self._same(other)
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw(self.ctx, ())
        mul = self.ctx.mul
        out = [0] * (len(a) + len(b) - 1)
        if self.ctx.m == 1:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            out[i + j] ^= 1
        else:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            out[i + j] ^= mul(x, y)
        return Poly._raw(self.ctx, tuple(out))

    def scale(self, bits: int) -> "Poly":
        if not bits:
            return Poly._raw(self.ctx, ())
        if bits == 1:
            return self
        mul = self.ctx.mul
        return Poly._raw(self.ctx, tuple(mul(x, bits) for x in self.c))

    def square(self) -> "Poly":
        # Frobenius: (sum c_i t^i)^2 = sum c_i^2 t^(2i)
        out = [0] * (2 * len(self.c) - 1) if self.c else []
        for i, x in enumerate(self.c):
            out[2 * i] = self.ctx.mul(x, x)
        return Poly._raw(self.ctx, tuple(out))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base.square()
        return r

    def shift(self, k: int) -> "Poly":
        if not self.c:
            return self
        return Poly._raw(self.ctx, (0,) * k + self.c)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same(other)
        if not other.c:
            raise DivisionByZero("polynomial division by zero")
        ctx = self.ctx
        r = list(self.c)
        db = len(other.c) - 1
        inv_lc = ctx.inv(other.c[-1])
        b = other.c
        if len(r) - 1 < db:
            return Poly._raw(ctx, ()), self
        q = [0] * (len(r) - db)
        mul = ctx.mul
        for k in range(len(r) - 1, db - 1, -1):
            x = r[k]
            if not x:
                continue
            f = mul(x, inv_lc)
            q[k - db] = f
            off = k - db
            for j, y in enumerate(b):
                if y:
                    r[off + j] ^= mul(f, y)
        return Poly._raw(ctx, _strip(q)), Poly._raw(ctx, _strip(r[:db]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(self.ctx.inv(self.c[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b.c:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly"):
        """(g, s, u) with s*self + u*other = g, g monic."""
        ctx = self.ctx
        r0, r1 = self, other
        s0, s1 = Poly.one(ctx), Poly.zero(ctx)
        u0, u1 = Poly.zero(ctx), Poly.one(ctx)
        while r1.c:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 + q * s1
            u0, u1 = u1, u0 + q * u1
        if not r0.c:
            return r0, s0, u0
        k = ctx.inv(r0.lc())
        return r0.scale(k), s0.scale(k), u0.scale(k)

    def inverse_mod(self, modulus: "Poly") -> "Poly":
        g, s, _ = self.xgcd(modulus)
        if not g.is_one():
            raise DivisionByZero("not invertible modulo the given polynomial")
        return s % modulus

    def powmod(self, e: int, modulus: "Poly") -> "Poly":
        r = Poly.one(self.ctx) % modulus
        base = self % modulus
        while e:
            if e & 1:
                r = (r * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return r

    def derivative(self) -> "Poly":
        # d/dt t^i = i t^(i-1); only odd i survive in characteristic 2
        return Poly(self.ctx, [x if i % 2 else 0 for i, x in enumerate(self.c)][1:])

    def eval_bits(self, x: int, ctx: FieldCtx | None = None, embed=None) -> int:
        """Horner evaluation at a raw element of ``ctx`` (default: own field).

        ``embed`` maps own-field coefficients into ``ctx``.
        """
        ctx = ctx or self.ctx
        mul = ctx.mul
        acc = 0
        for a in reversed(self.c):
            acc = mul(acc, x) ^ (embed(a) if embed else a)
        return acc

    def __call__(self, x: FieldElement) -> FieldElement:
        return FieldElement(x.ctx, self.eval_bits(x.bits, x.ctx))

    def valuation_at(self, p: "Poly") -> int:
        """Multiplicity of the irreducible p in self (self nonzero)."""
        if not self.c:
            raise DivisionByZero("valuation of zero")
        e, f = 0, self
        while True:
            q, r = f.divmod(p)
            if r.c:
                return e
            e, f = e + 1, q


def format_poly(p: Poly, var: str = "t") -> str:
    if not p.c:
        return "0"
    ctx = p.ctx
    terms = []
    for i in range(len(p.c) - 1, -1, -1):
        x = p.c[i]
        if not x:
            continue
        mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        cs = ctx.format_bits(x)
        if not mon:
            terms.append(cs if " + " not in cs else f"({cs})")
        elif x == 1:
            terms.append(mon)
        elif " + " in cs:
            terms.append(f"({cs})*{mon}")
        else:
            terms.append(f"{cs}*{mon}")
    return " + ".join(terms)


def is_irreducible(p: Poly) -> bool:
    """Irreducibility over the coefficient field (Ben-Or style gcd test)."""
    d = p.degree
    if d < 1:
        return False
    if d == 1:
        return True
    f = p.monic()
    q = p.ctx.q
    t = Poly.t(p.ctx)
    x = t
    for _ in range(d // 2):
        x = x.powmod(q, f)
        if not (x + t).gcd(f).is_one():
            return False
    return True
