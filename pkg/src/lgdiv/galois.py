"""Artin-Schreier classes over F_q(t), the 8-torsion field of y^2+xy = x^3+ax^2+b,
decomposition groups, and the resulting order of Sha^1(k, E[2^n])."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra.field import FieldCtx
from .algebra.places import Place
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc, max_power_exponent
from .curve import Curve, MWPresentation, Point
from .errors import InconsistentTriple, Unsupported
from .local import LocalASClass, Verdict, as_classify_local

LEVEL_CAP = 3


@dataclass(frozen=True)
class ASClass:
    """Class of f in k / {h^2 + h}, with rep = f + h^2 + h reduced."""

    source: RatFunc
    rep: RatFunc
    h: RatFunc
    ramified_places: tuple[Place, ...]
    is_trivial: bool

    def __str__(self):
        return f"[{self.rep}]"


def _sqrt_mod(g: Poly, p: Poly) -> Poly:
    """Square root of g in F_q[t]/(p): g^(Q/2) with Q = q^deg p."""
    Q = p.ctx.q ** p.degree
    return g.powmod(Q // 2, p)


def _trace_one_constant(ctx: FieldCtx) -> int:
    return next(c for c in range(ctx.q) if ctx.trace(c))


def as_reduce_global(f: RatFunc) -> ASClass:
    """Strip even-order poles from f by adding h^2 + h, place by place."""
    ctx = f.ctx
    g = f
    H = RatFunc.const(ctx, 0)

    def step(h: RatFunc):
        nonlocal g, H
        g = g + h.square() + h
        H = H + h

    # infinite place: every even-degree monomial of the polynomial part, top down
    while True:
        poly_part = g.num // g.den
        even = [i for i in range(2, poly_part.degree + 1, 2) if poly_part.c[i]]
        if not even:
            break
        d = even[-1]
        s = ctx.sqrt(poly_part.c[d])
        step(RatFunc.from_poly(Poly.monomial(ctx, s, d // 2)))

    # finite places: every even-order term of the principal part, top down
    for p in _denominator_primes(g.den):
        while True:
            j = _top_even_pole(g, p)
            if not j:
                break
            e = g.den.valuation_at(p)
            rest = g.den // (p ** e)
            A = (g.num * rest.inverse_mod(p ** e)) % (p ** e)
            digit = (A // (p ** (e - j))) % p
            s = _sqrt_mod(digit, p)
            step(RatFunc(s, p ** (j // 2)))

    # the constant term: normalise to 0 or a fixed trace-one constant
    c = (g.num // g.den).c[0] if not (g.num // g.den).is_zero() else 0
    target = _trace_one_constant(ctx) if ctx.trace(c) else 0
    if c != target:
        w = ctx.as_solve(c ^ target)
        step(RatFunc.const(ctx, w))

    ramified = []
    for p in _denominator_primes(g.den):
        ramified.append(Place(ctx, p))
    pp = (g.num // g.den)
    if pp.degree >= 1:
        ramified.append(Place.infinity(ctx))
    trivial = not ramified and g.is_zero()
    return ASClass(f, g, H, tuple(sorted(ramified)), trivial)


def _top_even_pole(g: RatFunc, p: Poly) -> int:
    """Largest even j with a nonzero p^-j digit in the principal part of g at p, else 0."""
    e = g.den.valuation_at(p)
    if e < 2:
        return 0
    rest = g.den // (p ** e)
    A = (g.num * rest.inverse_mod(p ** e)) % (p ** e)
    for j in range(e - e % 2, 1, -2):
        if not ((A // (p ** (e - j))) % p).is_zero():
            return j
    return 0


def _denominator_primes(den: Poly) -> list[Poly]:
    """Monic irreducible factors of den, by distinct-degree then equal-degree splitting."""
    from .algebra.places import monic_irreducibles

    out = []
    rest = den.monic()
    d = 1
    while rest.degree >= 1:
        if 2 * d > rest.degree:
            out.append(rest)
            break
        for p in monic_irreducibles(den.ctx, d):
            if rest.degree < d:
                break
            if (rest % p).is_zero():
                out.append(p)
                while (rest % p).is_zero():
                    rest = rest // p
        d += 1
    return sorted(set(out), key=lambda p: p.sort_key())


@dataclass
class TorsionFieldData:
    n: int
    N: int
    nu: int
    classes: tuple[ASClass, ...]
    G_rank: int

    @property
    def group_order(self) -> int:
        return 1 << self.G_rank


def torsion_field(E: Curve, n: int) -> TorsionFieldData:
    """Galois data of k(E[2^n](k_s)) / k for E over F_q(t)."""
    if n < 1:
        raise ValueError("level n must be at least 1")
    j = E.j
    constant_j = j.is_constant()
    if n > LEVEL_CAP:
        if constant_j:
            raise Unsupported("constant j-invariant: no torsion-field formula beyond level 8")
        nu = max_power_exponent(j, LEVEL_CAP + 1)
        if nu > LEVEL_CAP:
            raise Unsupported("j is a 16th power: E[2^n](k_s) would exceed Z/8")
    else:
        nu = LEVEL_CAP if constant_j else max_power_exponent(j, LEVEL_CAP)
    N = min(n, nu)
    if N == LEVEL_CAP:
        ca = as_reduce_global(E.a)
        cb = as_reduce_global(E.b)
        csum = as_reduce_global(E.a + E.b)
        nontrivial = sum(not c.is_trivial for c in (ca, cb, csum))
        rank = 2 if nontrivial == 3 else (1 if nontrivial else 0)
        return TorsionFieldData(n, N, nu, (ca, cb), rank)
    # N <= 2: G = Gal(k(b^(1/2^N), u)/k) with b^(1/2^N) in k, at most Z/2
    rank = 0
    if N == 2 and not as_reduce_global(E.a).is_trivial:
        rank = 1
    return TorsionFieldData(n, N, nu, (), rank)


@dataclass(frozen=True)
class DecompReport:
    place: Place
    subext_classes: tuple[LocalASClass, LocalASClass, LocalASClass]
    group_order: int
    is_full: bool


def decomposition_group(v: Place, classes: tuple[ASClass, ASClass]) -> DecompReport:
    """Decomposition group at v in Gal(k(u, v)/k) for two independent classes."""
    f1, f2 = classes[0].rep, classes[1].rep
    triple = tuple(as_classify_local(f, v) for f in (f1, f2, f1 + f2))
    splits = sum(c.verdict is Verdict.SPLIT for c in triple)
    if splits == 2:
        raise InconsistentTriple(f"exactly two of three subextensions split at {v}")
    order = {0: 4, 1: 2, 3: 1}[splits]
    return DecompReport(v, triple, order, order == 4)


class Reason(enum.Enum):
    CYCLIC_G = "CyclicG"
    FULL_DECOMPOSITION_GROUP = "FullDecompositionGroupAt"
    NONCYCLIC_NO_FULL_DECOMP = "NonCyclicNoFullDecomp"

    def __str__(self):
        return self.value


@dataclass
class Sha1Verdict:
    order: int
    torsion: TorsionFieldData
    decomposition: list[DecompReport]
    reason: Reason
    full_place: Place | None = None
    candidates: list[Place] = field(default_factory=list)


def candidate_places(classes: tuple[ASClass, ASClass]) -> list[Place]:
    # unramified decomposition groups are generated by Frobenius, hence cyclic
    s = set(classes[0].ramified_places) | set(classes[1].ramified_places)
    return sorted(s)


def sha1_compute(E: Curve, n: int) -> Sha1Verdict:
    data = torsion_field(E, n)
    if data.G_rank <= 1:
        return Sha1Verdict(1, data, [], Reason.CYCLIC_G)
    cands = candidate_places(data.classes)
    reports = []
    for v in cands:
        rep = decomposition_group(v, data.classes)
        reports.append(rep)
        if rep.is_full:
            return Sha1Verdict(1, data, reports, Reason.FULL_DECOMPOSITION_GROUP, v, cands)
    return Sha1Verdict(2, data, reports, Reason.NONCYCLIC_NO_FULL_DECOMP, None, cands)


# -- global divisibility in a given Mordell-Weil lattice ------------------------


class GlobalDivisibility(enum.Enum):
    DIVISIBLE = "Divisible"
    NOT_DIVISIBLE = "NotDivisible"

    def __str__(self):
        return self.value


def mw_divisibility_check(M: MWPresentation, free: list[int], torsion: list[int], m: int,
                          modulo_torsion: bool = False) -> GlobalDivisibility:
    """Is sum free_i P_i + sum torsion_j T_j in m E(k) (or in m E(k) + E(k)_tors)?

    Works in the abstract group Z^r + prod Z/d_j described by M.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if len(free) != len(M.free_gens) or len(torsion) != len(M.torsion_gens):
        raise ValueError("coordinate vector does not match the presentation")
    ok = all(c % m == 0 for c in free)
    if not modulo_torsion:
        from math import gcd

        ok = ok and all(e % gcd(m, d) == 0 for e, (_, d) in zip(torsion, M.torsion_gens))
    return GlobalDivisibility.DIVISIBLE if ok else GlobalDivisibility.NOT_DIVISIBLE


def lattice_point(E: Curve, M: MWPresentation, free: list[int], torsion: list[int]) -> Point:
    return M.point(E, free, torsion)
