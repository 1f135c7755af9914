"""Binary finite fields GF(2^m), m <= 16.

Elements are stored as integers whose bits are the coefficients of a
polynomial in the generator, reduced modulo the field's defining
polynomial.  Multiplication and inversion go through log/exp tables built
lazily per context.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import CtxMismatch, DivisionByZero

MAX_DEGREE = 16

# Lexicographically least irreducible polynomial of each degree over F_2,
# as a bit vector (bit i = coefficient of x^i).
MODULI = {
    1: 0x2,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


def _deg(p: int) -> int:
    return p.bit_length() - 1


def _bmod(a: int, b: int) -> int:
    db = _deg(b)
    while a and _deg(a) >= db:
        a ^= b << (_deg(a) - db)
    return a


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def is_irreducible_f2(p: int) -> bool:
    """Trial division of a bit-vector polynomial by every polynomial of degree 1..deg/2."""
    d = _deg(p)
    if d < 1:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if _bmod(p, q) == 0:
            return False
    return True


class FieldCtx:
    """The field GF(2^m) = F_2[x]/(modulus)."""

    def __init__(self, m: int, modulus: int | None = None, generator_name: str | None = "w"):
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"extension degree {m} outside 1..{MAX_DEGREE}")
        if modulus is None:
            modulus = MODULI[m]
        if _deg(modulus) != m or not is_irreducible_f2(modulus):
            raise ValueError(f"modulus {modulus:#x} is not an irreducible of degree {m}")
        self.m = m
        self.modulus = modulus
        self.q = 1 << m
        # GF(2) has no generator symbol: x mod x is 0.
        self.generator_name = generator_name if m > 1 else None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._trace_mask: int | None = None

    def __repr__(self):
        return f"GF(2^{self.m})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.m == other.m and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.m, self.modulus))

    # -- tables ---------------------------------------------------------

    def _build_tables(self):
        q1 = self.q - 1
        if q1 == 1:
            self._exp = [1, 1]
            self._log = [0, 0]
            return
        factors = _prime_factors(q1)
        for g in range(2, self.q):
            if all(self._slow_pow(g, q1 // p) != 1 for p in factors):
                break
        exp = [0] * (2 * q1)
        log = [0] * self.q
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = _bmod(_clmul(x, g), self.modulus)
        exp[q1:] = exp[:q1]
        self._exp, self._log = exp, log

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _bmod(_clmul(r, a), self.modulus)
            a = _bmod(_clmul(a, a), self.modulus)
            e >>= 1
        return r

    # -- raw integer arithmetic -----------------------------------------

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is None:
            self._build_tables()
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero in " + repr(self))
        if self._exp is None:
            self._build_tables()
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if not a:
            return 0
        if self._exp is None:
            self._build_tables()
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        # Frobenius has order m, so a^(2^(m-1)) squares to a.
        for _ in range(self.m - 1):
            a = self.mul(a, a)
        return a

    def trace(self, a: int) -> int:
        t, x = a, a
        for _ in range(self.m - 1):
            x = self.mul(x, x)
            t ^= x
        return t

    def as_solve(self, c: int) -> int | None:
        """Smallest w with w^2 + w = c, or None when Tr(c) = 1."""
        if self.trace(c):
            return None
        if self.m % 2:
            # half-trace
            w, x = c, c
            for _ in range((self.m - 1) // 2):
                x = self.mul(self.mul(x, x), self.mul(x, x))
                w ^= x
        else:
            w = self._as_solve_linear(c)
        return min(w, w ^ 1)

    def _as_solve_linear(self, c: int) -> int:
        # w -> w^2 + w is F_2-linear; solve by Gaussian elimination on its matrix.
        m = self.m
        cols = [self.mul(1 << i, 1 << i) ^ (1 << i) for i in range(m)]
        # rows: equation for output bit r; augmented with c's bit
        rows = []
        for r in range(m):
            row = 0
            for i in range(m):
                if (cols[i] >> r) & 1:
                    row |= 1 << i
            rows.append((row, (c >> r) & 1))
        pivots = []
        rank = 0
        for col in range(m):
            piv = next((j for j in range(rank, m) if (rows[j][0] >> col) & 1), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for j in range(m):
                if j != rank and (rows[j][0] >> col) & 1:
                    rows[j] = (rows[j][0] ^ rows[rank][0], rows[j][1] ^ rows[rank][1])
            pivots.append(col)
            rank += 1
        w = 0
        for i, col in enumerate(pivots):
            if rows[i][1]:
                w |= 1 << col
        return w

    # -- element constructors -------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise CtxMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            if value in (0, 1):
                return FieldElement(self, value)
            raise ValueError("integer field constants must be 0 or 1; use from_bits")
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def from_bits(self, bits: int) -> "FieldElement":
        return FieldElement(self, _bmod(bits, self.modulus))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def gen(self) -> "FieldElement":
        return FieldElement(self, _bmod(2, self.modulus))

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    def format_bits(self, bits: int) -> str:
        if bits in (0, 1) or self.generator_name is None:
            return str(bits)
        g = self.generator_name
        terms = []
        for i in range(self.m - 1, -1, -1):
            if (bits >> i) & 1:
                terms.append("1" if i == 0 else g if i == 1 else f"{g}^{i}")
        return " + ".join(terms)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def gf(m: int) -> FieldCtx:
    """The standard context for GF(2^m), shared across the package."""
    return FieldCtx(m)


def gf_q(q: int) -> FieldCtx:
    m = q.bit_length() - 1
    if q < 2 or q != 1 << m:
        raise ValueError(f"q = {q} is not a power of 2")
    return gf(m)


class FieldElement:
    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        self.ctx = ctx
        self.bits = bits

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other.bits
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.bits ^ o)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.bits, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.bits, self.ctx.inv(o)))

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(o, self.ctx.inv(self.bits)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.bits, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.bits))

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.sqrt(self.bits))

    def trace(self) -> int:
        return self.ctx.trace(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def zero(self) -> "FieldElement":
        return FieldElement(self.ctx, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self.ctx, 1)

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.bits == other.bits
        if isinstance(other, int) and other in (0, 1):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.m, self.bits))

    def __repr__(self):
        return f"FieldElement({self.ctx!r}, {self})"

    def __str__(self):
        return self.ctx.format_bits(self.bits)


def ff_arith(x: FieldElement, y: FieldElement | None, op: str) -> FieldElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        if not isinstance(y, int):
            raise TypeError("pow takes an integer exponent")
        return x ** y
    raise ValueError(f"unknown op {op!r}")


def ff_sqrt(x: FieldElement) -> FieldElement:
    return x.sqrt()


def ff_trace(x: FieldElement) -> int:
    return x.trace()


def ff_as_solve(c: FieldElement) -> FieldElement | None:
    """A root w of w^2 + w = c (the other is w + 1), or None if Tr(c) = 1."""
    w = c.ctx.as_solve(c.bits)
    return None if w is None else FieldElement(c.ctx, w)


@lru_cache(maxsize=None)
def embedding_images(src: FieldCtx, dst: FieldCtx) -> tuple[int, ...]:
    """Images in dst of the power basis of src, sending the generator of src
    to the least root of its modulus in dst."""
    if dst.m % src.m:
        raise CtxMismatch(f"{src!r} does not embed in {dst!r}")
    if src.m == 1:
        return (1,)
    p = src.modulus
    alpha = None
    for x in range(dst.q):
        acc = 0
        for i in range(p.bit_length() - 1, -1, -1):
            acc = dst.mul(acc, x) ^ ((p >> i) & 1)
        if acc == 0:
            alpha = x
            break
    images, acc = [], 1
    for _ in range(src.m):
        images.append(acc)
        acc = dst.mul(acc, alpha)
    return tuple(images)


def embed(x: FieldElement, dst: FieldCtx) -> FieldElement:
    images = embedding_images(x.ctx, dst)
    out, bits, i = 0, x.bits, 0
    while bits:
        if bits & 1:
            out ^= images[i]
        bits >>= 1
        i += 1
    return FieldElement(dst, out)
