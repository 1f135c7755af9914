"""Places of F_q(t) and their residue fields."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .field import FieldCtx, FieldElement, embedding_images, gf
from .poly import Poly, format_poly
from .ratfunc import RatFunc
from ..errors import Pole, TooLarge

RESIDUE_DEGREE_CAP = 16


@dataclass(frozen=True)
class Place:
    """A monic irreducible ``poly``, or the infinite place when ``poly`` is None."""

    ctx: FieldCtx
    poly: Poly | None = None

    @classmethod
    def infinity(cls, ctx: FieldCtx) -> "Place":
        return cls(ctx, None)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        # infinity sorts after every finite place of the enumerated range
        if self.poly is None:
            return (1, 0, ())
        return (0,) + self.poly.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "inf" if self.poly is None else f"({format_poly(self.poly)})"

    def __repr__(self):
        return f"Place{self}"


def monic_irreducibles(ctx: FieldCtx, d: int) -> list[Poly]:
    """All monic irreducibles of degree exactly d, in canonical order."""
    return list(_irreducibles_upto(ctx, d)[d])


@lru_cache(maxsize=None)
def _irreducibles_upto(ctx: FieldCtx, d: int) -> dict[int, tuple[Poly, ...]]:
    q = ctx.q
    by_deg: dict[int, list[Poly]] = {1: [Poly._raw(ctx, (c, 1)) for c in range(q)]}
    for e in range(2, d + 1):
        # sieve: remove products of lower-degree monic irreducibles
        reducible = set()
        _products(by_deg, e, reducible, ctx)
        found = []
        for tail in product(range(q), repeat=e):
            c = tail + (1,)
            if c not in reducible:
                found.append(Poly._raw(ctx, c))
        by_deg[e] = found
    out = {e: tuple(sorted(ps, key=lambda p: p.sort_key())) for e, ps in by_deg.items() if e <= d}
    return out


def _products(by_deg, e, acc, ctx):
    # every multiset of lower-degree irreducibles with degree sum e
    def rec(remaining, start_deg, start_idx, prod, nfac):
        if remaining == 0:
            if nfac >= 2:
                acc.add(prod.c)
            return
        for dd in range(start_deg, 0, -1):
            if dd > remaining:
                continue
            lst = by_deg[dd]
            i0 = start_idx if dd == start_deg else 0
            for i in range(i0, len(lst)):
                rec(remaining - dd, dd, i, prod * lst[i], nfac + 1)

    rec(e, min(e - 1, max(by_deg)), 0, Poly.one(ctx), 0)


def places_up_to_degree(ctx: FieldCtx, d: int) -> list[Place]:
    if d < 1:
        raise ValueError("degree bound must be positive")
    table = _irreducibles_upto(ctx, d)
    out = [Place(ctx, p) for e in range(1, d + 1) for p in table[e]]
    out.append(Place.infinity(ctx))
    return out


@dataclass(frozen=True)
class Residue:
    """Residue field GF(2^(m*deg v)) of a place with its chosen embedding.

    ``base_images[i]`` is the image of the i-th power basis element of the
    constant field; ``root`` is the image of t (None at infinity).
    """

    field: FieldCtx
    base_images: tuple[int, ...]
    root: int | None

    def embed(self, bits: int) -> int:
        out = 0
        i = 0
        while bits:
            if bits & 1:
                out ^= self.base_images[i]
            bits >>= 1
            i += 1
        return out

    def embed_elem(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.embed(x.bits))


@lru_cache(maxsize=None)
def residue_field(place: Place) -> Residue:
    ctx = place.ctx
    if place.is_infinity:
        return Residue(ctx, tuple(1 << i for i in range(ctx.m)), None)
    md = ctx.m * place.degree
    if md > RESIDUE_DEGREE_CAP:
        raise TooLarge(f"residue field degree {md} exceeds cap {RESIDUE_DEGREE_CAP}")
    big = gf(md)
    images = embedding_images(ctx, big)
    res = Residue(big, images, None)
    # t maps to the least root of v
    root = next(x for x in range(big.q) if place.poly.eval_bits(x, big, res.embed) == 0)
    return Residue(big, images, root)


def rf_eval_at_place(f: RatFunc, v: Place) -> FieldElement:
    """Value of f in the residue field at v; raises Pole if f has a pole there."""
    res = residue_field(v)
    if v.is_infinity:
        dn, dd = f.num.degree, f.den.degree
        if f.is_zero() or dn < dd:
            return FieldElement(res.field, 0)
        if dn > dd:
            raise Pole(f"{f} has a pole at infinity")
        return FieldElement(res.field, res.field.mul(f.num.lc(), res.field.inv(f.den.lc())))
    den = f.den.eval_bits(res.root, res.field, res.embed)
    if den == 0:
        raise Pole(f"{f} has a pole at {v}")
    num = f.num.eval_bits(res.root, res.field, res.embed)
    return FieldElement(res.field, res.field.mul(num, res.field.inv(den)))


def valuation(f: RatFunc, v: Place) -> int:
    """Order of f at v; zero has valuation +infinity, returned as a large int."""
    if f.is_zero():
        return 1 << 60
    if v.is_infinity:
        return f.den.degree - f.num.degree
    return f.num.valuation_at(v.poly) - f.den.valuation_at(v.poly)
