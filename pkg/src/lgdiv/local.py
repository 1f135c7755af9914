"""Completions of F_q(t) as truncated Laurent series over the residue field.

A series is known modulo pi^prec (absolute precision).  ``EXACT`` marks
series with no truncation, e.g. embedded constants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .algebra.field import FieldCtx, FieldElement
from .algebra.places import Place, Residue, residue_field, valuation
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc
from .errors import DivisionByZero, InsufficientPrecision, NotIntegral

EXACT = 1 << 60
DEFAULT_PRECISION = 64
MAX_PRECISION = 1024


def is_exact(prec: int) -> bool:
    return prec >= EXACT >> 1


@dataclass(frozen=True)
class LocalCtx:
    place: Place
    residue: Residue
    default_precision: int = DEFAULT_PRECISION
    uniformizer_name: str = "pi"

    @property
    def field(self) -> FieldCtx:
        return self.residue.field

    def zero(self, prec: int = EXACT) -> "LaurentSeries":
        return LaurentSeries(self, prec, (), prec)

    def one(self) -> "LaurentSeries":
        return LaurentSeries(self, 0, (1,), EXACT)

    def const(self, bits: int, prec: int = EXACT) -> "LaurentSeries":
        return LaurentSeries.make(self, 0, [bits], prec)

    def monomial(self, bits: int, k: int, prec: int = EXACT) -> "LaurentSeries":
        return LaurentSeries.make(self, k, [bits], prec)

    def __str__(self):
        return f"k_{self.place}"


@lru_cache(maxsize=None)
def local_ctx(place: Place) -> LocalCtx:
    return LocalCtx(place, residue_field(place))


class LaurentSeries:
    """sum_{i >= val} coeffs[i - val] pi^i + O(pi^prec) over the residue field.

    ``coeffs`` has a nonzero first and last entry; the zero series has
    no coefficients and ``val == prec``.
    """

    __slots__ = ("ctx", "val", "coeffs", "prec")

    def __init__(self, ctx: LocalCtx, val: int, coeffs: tuple[int, ...], prec: int):
        self.ctx = ctx
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def make(cls, ctx: LocalCtx, start: int, dense, prec: int) -> "LaurentSeries":
        """Normalize a dense coefficient list beginning at pi^start."""
        n = min(len(dense), prec - start) if not is_exact(prec) else len(dense)
        lo = 0
        while lo < n and not dense[lo]:
            lo += 1
        if lo >= n:
            return cls(ctx, prec, (), prec)
        hi = n
        while not dense[hi - 1]:
            hi -= 1
        return cls(ctx, start + lo, tuple(dense[lo:hi]), prec)

    # -- queries ---------------------------------------------------------

    @property
    def field(self) -> FieldCtx:
        return self.ctx.residue.field

    def is_zero(self) -> bool:
        """Zero within the known precision."""
        return not self.coeffs

    def is_exact(self) -> bool:
        return is_exact(self.prec)

    @property
    def end(self) -> int:
        return self.val + len(self.coeffs)

    def coeff(self, i: int) -> int:
        if i >= self.prec:
            raise InsufficientPrecision(f"coefficient {i} beyond precision {self.prec}")
        j = i - self.val
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def leading(self) -> int:
        if not self.coeffs:
            raise InsufficientPrecision("leading coefficient of a series that is zero within precision")
        return self.coeffs[0]

    def relative_precision(self) -> int:
        return self.prec - self.val

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries.make(self.ctx, self.val, list(self.coeffs), prec)

    def zero(self) -> "LaurentSeries":
        return self.ctx.zero()

    def one(self) -> "LaurentSeries":
        return self.ctx.one()

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("series over different completions")
            return other
        if isinstance(other, int) and other in (0, 1):
            return self.ctx.const(other)
        if isinstance(other, FieldElement) and other.ctx == self.field:
            return self.ctx.const(other.bits)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prec = min(self.prec, o.prec)
        if not o.coeffs:
            return self.truncate(prec)
        if not self.coeffs:
            return o.truncate(prec)
        start = min(self.val, o.val)
        stop = max(self.end, o.end)
        if not is_exact(prec):
            stop = min(stop, prec)
        if stop <= start:
            return self.ctx.zero(prec)
        dense = [0] * (stop - start)
        for s in (self, o):
            off = s.val - start
            for i, x in enumerate(s.coeffs):
                if off + i < len(dense):
                    dense[off + i] ^= x
        return LaurentSeries.make(self.ctx, start, dense, prec)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prec = min(self.prec + o.val, o.prec + self.val)
        start = self.val + o.val
        if not self.coeffs or not o.coeffs:
            return self.ctx.zero(prec)
        n = len(self.coeffs) + len(o.coeffs) - 1
        if not is_exact(prec):
            n = min(n, prec - start)
        if n <= 0:
            return self.ctx.zero(prec)
        dense = _mul_trunc(self.field, self.coeffs, o.coeffs, n)
        return LaurentSeries.make(self.ctx, start, dense, prec)

    __rmul__ = __mul__

    def scale(self, bits: int) -> "LaurentSeries":
        if not bits:
            return self.ctx.zero()
        mul = self.field.mul
        return LaurentSeries(self.ctx, self.val, tuple(mul(x, bits) for x in self.coeffs), self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by pi^k."""
        prec = self.prec if is_exact(self.prec) else self.prec + k
        if not self.coeffs:
            return self.ctx.zero(prec)
        return LaurentSeries(self.ctx, self.val + k, self.coeffs, prec)

    def square(self) -> "LaurentSeries":
        # Frobenius is additive, so an error O(pi^N) squares to O(pi^2N).
        prec = self.prec if is_exact(self.prec) else 2 * self.prec
        if not self.coeffs:
            return self.ctx.zero(prec)
        mul = self.field.mul
        dense = [0] * (2 * len(self.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            dense[2 * i] = mul(x, x)
        return LaurentSeries(self.ctx, 2 * self.val, tuple(dense), prec)

    def inverse(self, rel_prec: int | None = None) -> "LaurentSeries":
        if not self.coeffs:
            raise InsufficientPrecision("inverse of a series that is zero within precision")
        v = self.val
        if is_exact(self.prec):
            if len(self.coeffs) == 1:
                return LaurentSeries(self.ctx, -v, (self.field.inv(self.coeffs[0]),), EXACT)
            r = rel_prec or self.ctx.default_precision
            prec = -v + r
        else:
            r = self.prec - v
            prec = self.prec - 2 * v
        F = self.field
        u = self.coeffs
        inv0 = F.inv(u[0])
        out = [0] * r
        out[0] = inv0
        mul = F.mul
        for k in range(1, r):
            acc = 0
            for j in range(1, min(k, len(u) - 1) + 1):
                x = out[k - j]
                if x:
                    acc ^= mul(u[j], x)
            out[k] = mul(acc, inv0)
        return LaurentSeries.make(self.ctx, -v, out, prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.coeffs:
            if o.is_exact():
                raise DivisionByZero("division by the zero series")
            raise InsufficientPrecision("divisor is zero within precision")
        if self.is_exact() and o.is_exact() and len(o.coeffs) > 1:
            r = self.ctx.default_precision
            return self * o.inverse(rel_prec=r)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.inverse() ** (-e)
        r = self.ctx.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b.square()
        return r

    def agrees(self, other) -> bool:
        """Equal modulo the smaller of the two precisions."""
        return (self - other).is_zero()

    def __eq__(self, other):
        if isinstance(other, LaurentSeries):
            return (self.val, self.coeffs, self.prec) == (other.val, other.coeffs, other.prec)
        if isinstance(other, int) and other in (0, 1):
            return self.agrees(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.coeffs, self.prec))

    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        return format_series(self)

    def sqrt(self):
        return ls_sqrt(self)


def _mul_trunc(F: FieldCtx, a, b, n: int) -> list[int]:
    out = [0] * n
    if F.m == 1:
        for i, x in enumerate(a):
            if i >= n:
                break
            if x:
                for j in range(min(len(b), n - i)):
                    if b[j]:
                        out[i + j] ^= 1
        return out
    if F._exp is None:
        F._build_tables()
    exp, log = F._exp, F._log
    lb = [(j, log[y]) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if i >= n:
            break
        if x:
            lx = log[x]
            lim = n - i
            for j, ly in lb:
                if j >= lim:
                    break
                out[i + j] ^= exp[lx + ly]
    return out


def format_series(s: LaurentSeries, max_terms: int = 8) -> str:
    F = s.field
    terms = []
    for i, x in enumerate(s.coeffs):
        if not x:
            continue
        k = s.val + i
        cs = F.format_bits(x)
        if " + " in cs:
            cs = f"({cs})"
        mon = "" if k == 0 else "pi" if k == 1 else f"pi^{k}"
        terms.append(cs if not mon else mon if x == 1 else f"{cs}*{mon}")
        if len(terms) >= max_terms:
            terms.append("...")
            break
    if not s.is_exact():
        terms.append(f"O(pi^{s.prec})")
    return " + ".join(terms) if terms else "0"


# -- expansion of global functions -------------------------------------------


@lru_cache(maxsize=256)
def _t_powers(place: Place, M: int) -> tuple[LaurentSeries, ...]:
    """T^0..T^(d-1) mod pi^M, where T is the image of t (v(T) = pi, T = root mod pi)."""
    lc = local_ctx(place)
    res = lc.residue
    v = place.poly
    coeffs = [res.embed(c) for c in v.c]
    dcoeffs = [coeffs[i] if i % 2 else 0 for i in range(1, len(coeffs))]
    pi = lc.monomial(1, 1)

    def ev(cs, T):
        acc = lc.zero()
        for c in reversed(cs):
            acc = acc * T + lc.const(c)
        return acc

    T = LaurentSeries.make(lc, 0, [res.root], M)
    # Newton: v'(root) != 0 since v is separable
    for _ in range(M.bit_length() + 2):
        err = ev(coeffs, T) + pi
        if err.is_zero():
            break
        T = T + err / ev(dcoeffs, T)
    powers = [lc.one().truncate(M)]
    for _ in range(1, v.degree):
        powers.append(powers[-1] * T)
    return tuple(powers)


def _digits(p: Poly, v: Poly, limit: int) -> list[Poly]:
    out = []
    while not p.is_zero() and len(out) < limit:
        p, r = p.divmod(v)
        out.append(r)
    return out


def _poly_at_place(p: Poly, place: Place, M: int) -> LaurentSeries:
    """The polynomial p as an element of k_v, modulo pi^M (finite place)."""
    lc = local_ctx(place)
    res = lc.residue
    digits = _digits(p, place.poly, M)
    if place.degree == 1:
        dense = [res.embed(d.c[0]) if d.c else 0 for d in digits]
        return LaurentSeries.make(lc, 0, dense, M)
    Mr = 1 << max(M - 1, 1).bit_length()
    powers = [s.truncate(M) for s in _t_powers(place, Mr)]
    acc = lc.zero(M)
    for i, dgt in enumerate(digits):
        if dgt.is_zero():
            continue
        term = lc.zero()
        for j, c in enumerate(dgt.c):
            if c:
                term = term + powers[j].scale(res.embed(c))
        acc = acc + term.shift(i).truncate(M)
    return acc.truncate(M)


def expand_at_place(f: RatFunc, v: Place, prec: int) -> LaurentSeries:
    """f as a Laurent series at v, correct modulo pi^prec."""
    if prec < 1:
        raise ValueError("precision must be positive")
    lc = local_ctx(v)
    if f.is_zero():
        return lc.zero(prec)
    if v.is_infinity:
        dn, dd = f.num.degree, f.den.degree
        k = dd - dn
        M = max(prec - k, 1)
        A = LaurentSeries.make(lc, 0, list(reversed(f.num.c)), M)
        B = LaurentSeries.make(lc, 0, list(reversed(f.den.c)), M)
        return (A / B).shift(k).truncate(prec)
    e_den = f.den.valuation_at(v.poly)
    M = prec + 2 * e_den
    num = _poly_at_place(f.num, v, M)
    if f.den.is_one():
        return num.truncate(prec)
    den = _poly_at_place(f.den, v, M)
    return (num / den).truncate(prec)


def embed_const(x: FieldElement, v: Place) -> LaurentSeries:
    lc = local_ctx(v)
    return lc.const(lc.residue.embed(x.bits))


# -- square roots and Artin-Schreier equations --------------------------------


def ls_sqrt(s: LaurentSeries) -> LaurentSeries | None:
    """r with r^2 = s within precision, or None if s is certainly not a square."""
    if not s.coeffs:
        if s.is_exact():
            return s
        return s.ctx.zero((s.prec + 1) // 2)
    if not s.is_exact() and s.prec - s.val < 2:
        raise InsufficientPrecision("too few coefficients to decide squareness")
    if s.val % 2:
        return None
    coeffs = s.coeffs
    if any(coeffs[1::2]):
        return None
    F = s.field
    prec = s.prec if s.is_exact() else (s.prec + 1) // 2
    root = [F.sqrt(x) for x in coeffs[::2]]
    return LaurentSeries.make(s.ctx, s.val // 2, root, prec)


def ls_as_solve(c: LaurentSeries, prec: int | None = None) -> LaurentSeries | None:
    """w with w^2 + w = c modulo pi^precision (c integral); None if locally inert.

    The other solution is w + 1.
    """
    if c.coeffs and c.val < 0:
        raise NotIntegral("Artin-Schreier solve needs an integral right-hand side")
    lc = c.ctx
    F = lc.field
    if c.prec <= 0:
        raise InsufficientPrecision("residue of the right-hand side is unknown")
    c0 = c.coeff(0)
    w0 = F.as_solve(c0)
    if w0 is None:
        return None
    if c.is_exact():
        if not c.coeffs or (c.val == 0 and len(c.coeffs) == 1):
            return lc.const(w0)
        c = c.truncate(prec or lc.default_precision)
    w = lc.const(w0)
    passes = c.prec.bit_length() + 2
    for _ in range(passes):
        err = w.square() + w + c
        if err.is_zero():
            return w.truncate(c.prec)
        # error valuation doubles each pass since the derivative of w^2 + w is 1
        w = w + err
    raise AssertionError("Artin-Schreier Newton iteration failed to converge")


def as_reduce_series(f: LaurentSeries):
    """Remove even-order poles: returns (g, h) with g = f + h^2 + h and
    g either integral or with odd pole order."""
    lc = f.ctx
    F = lc.field
    h = lc.zero()
    g = f
    while g.coeffs and g.val < 0 and g.val % 2 == 0:
        m = -g.val // 2
        s = F.sqrt(g.leading())
        step = lc.monomial(s, -m)
        g = g + step.square() + step
        h = h + step
    return g, h


def as_solve_laurent(c: LaurentSeries, prec: int | None = None) -> LaurentSeries | None:
    """A solution of w^2 + w = c in k_v for arbitrary c, or None if none exists."""
    g, h = as_reduce_series(c)
    if g.coeffs and g.val < 0:
        return None
    w = ls_as_solve(g, prec)
    if w is None:
        return None
    return w + h


class Verdict(enum.Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LocalASClass:
    verdict: Verdict
    reduced_pole_order: int
    residue_trace: int


def classify_series(f: LaurentSeries) -> LocalASClass:
    g, _ = as_reduce_series(f)
    if g.coeffs and g.val < 0:
        return LocalASClass(Verdict.RAMIFIED, -g.val, 0)
    if g.prec <= 0:
        raise InsufficientPrecision("residue of the reduced class is unknown")
    c0 = g.coeff(0)
    tr = g.field.trace(c0)
    return LocalASClass(Verdict.INERT if tr else Verdict.SPLIT, 0, tr)


def as_classify_local(f: RatFunc, v: Place, buffer: int = 16) -> LocalASClass:
    """Behaviour at v of the extension w^2 + w = f."""
    if f.is_zero():
        return LocalASClass(Verdict.SPLIT, 0, 0)
    pole = max(0, -valuation(f, v))
    prec = 2 * pole + buffer
    while True:
        try:
            return classify_series(expand_at_place(f, v, prec))
        except InsufficientPrecision:
            if prec >= MAX_PRECISION:
                raise
            prec *= 2
