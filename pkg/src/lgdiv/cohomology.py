"""Brute-force H^1 of subgroups G of (Z/2^N)^x acting on M = Z/2^N by multiplication.

Everything is enumerated: cocycles are found by assigning values on a
generating set and propagating along the Cayley graph, coboundaries are
listed directly.  Nothing here uses a closed formula for H^1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import NotASubgroup, TooLarge

MAX_GROUP_ORDER = 1 << 7
MAX_N = 6


@dataclass(frozen=True)
class UnitSubgroup:
    N: int
    elements: frozenset

    def __post_init__(self):
        mod = 1 << self.N
        els = self.elements
        if 1 % mod not in els:
            raise NotASubgroup("subgroup must contain 1")
        if any(x % 2 == 0 or not 0 <= x < mod for x in els):
            raise NotASubgroup("elements must be odd residues mod 2^N")
        if any((x * y) % mod not in els for x in els for y in els):
            raise NotASubgroup("not closed under multiplication")

    @classmethod
    def generated(cls, N: int, gens) -> "UnitSubgroup":
        mod = 1 << N
        els = {1 % mod}
        frontier = list(els)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = (x * g) % mod
                if y not in els:
                    els.add(y)
                    frontier.append(y)
        return cls(N, frozenset(els))

    @classmethod
    def full(cls, N: int) -> "UnitSubgroup":
        mod = 1 << N
        return cls(N, frozenset(x for x in range(mod) if x % 2 == 1 or mod == 1))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def modulus(self) -> int:
        return 1 << self.N

    def sorted(self) -> list[int]:
        return sorted(self.elements)

    def generators(self) -> list[int]:
        """A small generating set, greedily chosen from sorted elements."""
        gens: list[int] = []
        span = {1 % self.modulus}
        for x in self.sorted():
            if x not in span:
                gens.append(x)
                span = set(UnitSubgroup.generated(self.N, gens).elements)
        return gens

    def is_cyclic(self) -> bool:
        return any(UnitSubgroup.generated(self.N, [g]).elements == self.elements for g in self.elements)

    def contains_minus_one(self) -> bool:
        return (self.modulus - 1) % self.modulus in self.elements

    def issubgroup(self, other: "UnitSubgroup") -> bool:
        return self.N == other.N and self.elements <= other.elements

    def __str__(self):
        return "{" + ",".join(map(str, self.sorted())) + "}"


def all_subgroups(N: int) -> list[UnitSubgroup]:
    """Every subgroup of (Z/2^N)^x, ordered by (order, elements)."""
    full = UnitSubgroup.full(N)
    els = full.sorted()
    seen = set()
    # (Z/2^N)^x needs at most two generators, so do its subgroups
    for g1 in els:
        for g2 in els:
            seen.add(UnitSubgroup.generated(N, [g1, g2]).elements)
    return sorted((UnitSubgroup(N, s) for s in seen), key=lambda H: (H.order, sorted(H.elements)))


def cyclic_subgroups(G: UnitSubgroup) -> list[UnitSubgroup]:
    seen = {UnitSubgroup.generated(G.N, [g]).elements for g in G.elements}
    return sorted((UnitSubgroup(G.N, s) for s in seen), key=lambda H: (H.order, sorted(H.elements)))


Cocycle = tuple  # values c(g) listed in the order of G.sorted()


def is_cocycle(G: UnitSubgroup, c: Cocycle) -> bool:
    mod = G.modulus
    idx = {g: i for i, g in enumerate(G.sorted())}
    for g in G.elements:
        for h in G.elements:
            if c[idx[(g * h) % mod]] != (c[idx[g]] + g * c[idx[h]]) % mod:
                return False
    return True


@lru_cache(maxsize=None)
def cocycles(G: UnitSubgroup) -> tuple[Cocycle, ...]:
    if G.order > MAX_GROUP_ORDER:
        raise TooLarge(f"|G| = {G.order} exceeds {MAX_GROUP_ORDER}")
    mod = G.modulus
    order = G.sorted()
    idx = {g: i for i, g in enumerate(order)}
    gens = G.generators()
    out = []
    for vals in product(range(mod), repeat=len(gens)):
        c = _propagate(order, idx, gens, vals, mod)
        if c is not None:
            out.append(c)
    return tuple(out)


def _propagate(order, idx, gens, vals, mod):
    # c(g s) = c(g) + g c(s); every Cayley edge is checked
    c = [None] * len(order)
    c[idx[1 % mod]] = 0
    queue = [1 % mod]
    while queue:
        g = queue.pop()
        cg = c[idx[g]]
        for s, cs in zip(gens, vals):
            h = (g * s) % mod
            val = (cg + g * cs) % mod
            i = idx[h]
            if c[i] is None:
                c[i] = val
                queue.append(h)
            elif c[i] != val:
                return None
    return tuple(c)


@lru_cache(maxsize=None)
def coboundaries(G: UnitSubgroup) -> frozenset:
    mod = G.modulus
    return frozenset(tuple(((g - 1) * m) % mod for g in G.sorted()) for m in range(mod))


def _sub(c1, c2, mod):
    return tuple((x - y) % mod for x, y in zip(c1, c2))


@dataclass(frozen=True)
class H1Result:
    group: UnitSubgroup
    order: int
    representatives: tuple[Cocycle, ...]
    structure: tuple[int, ...]


def _class_key(G: UnitSubgroup, c: Cocycle) -> Cocycle:
    """Lexicographically least member of the coset c + B^1."""
    mod = G.modulus
    return min(tuple((x + y) % mod for x, y in zip(c, b)) for b in coboundaries(G))


@lru_cache(maxsize=None)
def h1_compute(G: UnitSubgroup) -> H1Result:
    Z = cocycles(G)
    B = coboundaries(G)
    mod = G.modulus
    reps = sorted({_class_key(G, c) for c in Z})
    order = len(Z) // len(B)
    assert order == len(reps)
    # 2-group structure from |Q[2^i]|, Q = Z^1/B^1
    sizes = [1]
    while sizes[-1] < order:
        k = 1 << len(sizes)
        sizes.append(sum(1 for c in reps if tuple((k * x) % mod for x in c) in B))
    # ranks[i] = number of cyclic factors of order >= 2^(i+1)
    ranks = [(sizes[i + 1] // sizes[i]).bit_length() - 1 for i in range(len(sizes) - 1)] + [0]
    structure = []
    for i in range(len(ranks) - 1):
        structure += [2 << i] * (ranks[i] - ranks[i + 1])
    return H1Result(G, order, tuple(reps), tuple(sorted(structure, reverse=True)))


def _restrict(G: UnitSubgroup, H: UnitSubgroup, c: Cocycle) -> Cocycle:
    idx = {g: i for i, g in enumerate(G.sorted())}
    return tuple(c[idx[h]] for h in H.sorted())


def _is_coboundary(H: UnitSubgroup, c: Cocycle) -> bool:
    return c in coboundaries(H)


@dataclass(frozen=True)
class Restriction:
    images: tuple[int, ...]  # index into target representatives, per source representative
    is_zero: bool
    kernel_order: int


def h1_restrict(G: UnitSubgroup, H: UnitSubgroup) -> Restriction:
    if not H.issubgroup(G):
        raise NotASubgroup(f"{H} is not a subgroup of {G}")
    src = h1_compute(G)
    dst = h1_compute(H)
    images = []
    for c in src.representatives:
        r = _class_key(H, _restrict(G, H, c))
        images.append(dst.representatives.index(r))
    zero_idx = dst.representatives.index(_class_key(H, tuple(0 for _ in H.elements)))
    kernel = sum(1 for i in images if i == zero_idx)
    return Restriction(tuple(images), all(i == zero_idx for i in images), kernel)


@dataclass(frozen=True)
class Sha1GroupResult:
    kernel_order: int
    representatives: tuple[Cocycle, ...]


def sha1_group(G: UnitSubgroup, family) -> Sha1GroupResult:
    """Kernel of H^1(G, M) -> prod over the family of H^1(G_v, M)."""
    for H in family:
        if not H.issubgroup(G):
            raise NotASubgroup(f"{H} is not a subgroup of {G}")
    src = h1_compute(G)
    kernel = [c for c in src.representatives
              if all(_is_coboundary(H, _restrict(G, H, c)) for H in family)]
    return Sha1GroupResult(len(kernel), tuple(kernel))


@dataclass(frozen=True)
class TableRow:
    N: int
    group: UnitSubgroup
    h1_order: int
    predicted_order: int
    cyclic: bool
    contains_minus_one: bool
    proper_restrictions_zero: bool

    @property
    def agrees(self) -> bool:
        noncyclic_ok = self.cyclic or (self.contains_minus_one and self.N >= 3)
        return self.h1_order == self.predicted_order and noncyclic_ok and self.proper_restrictions_zero


def lemma24_table(N_max: int) -> list[TableRow]:
    """H^1 for every subgroup of (Z/2^N)^x, N = 1..N_max, against the closed form."""
    if N_max > MAX_N:
        raise TooLarge(f"N_max = {N_max} exceeds {MAX_N}")
    rows = []
    for N in range(1, N_max + 1):
        subs = all_subgroups(N)
        for G in subs:
            h = h1_compute(G)
            predicted = 2 if (N >= 3 and G.contains_minus_one()) else 1
            zero = all(h1_restrict(G, H).is_zero for H in subs
                       if H.elements < G.elements)
            rows.append(TableRow(N, G, h.order, predicted, G.is_cyclic(), G.contains_minus_one(), zero))
    return rows
