"""Brute-force H^1 of subgroups of (Z/2^N)^x on Z/2^N."""

import pytest

from lgdiv.cohomology import (
    UnitSubgroup,
    all_subgroups,
    coboundaries,
    cocycles,
    cyclic_subgroups,
    h1_compute,
    h1_restrict,
    is_cocycle,
    lemma24_table,
    sha1_group,
)
from lgdiv.errors import NotASubgroup, TooLarge


def G(N, *els):
    return UnitSubgroup(N, frozenset(els))


def cyclic_h1(H):
    """|ker(norm)| / |(g - 1)M| for cyclic H = <g>: an independent formula."""
    mod = H.modulus
    g = next(x for x in H.elements if UnitSubgroup.generated(H.N, [x]).elements == H.elements)
    norm = sum(H.elements) % mod
    ker = sum(1 for m in range(mod) if (norm * m) % mod == 0)
    image = len({((g - 1) * m) % mod for m in range(mod)})
    return ker // image


class TestH1:
    def test_examples(self):
        assert h1_compute(G(3, 1, 3, 5, 7)).order == 2
        assert h1_compute(G(3, 1, 3)).order == 1
        assert h1_compute(G(3, 1, 7)).order == 2

    def test_n2_minus_one(self):
        # sigma = -1 on Z/4: every m gives a cocycle, coboundaries are {0, 2}
        h = h1_compute(G(2, 1, 3))
        assert h.order == 2 and h.structure == (2,)

    def test_structure(self):
        for N in range(1, 6):
            for H in all_subgroups(N):
                h = h1_compute(H)
                prod = 1
                for f in h.structure:
                    prod *= f
                assert prod == h.order == len(h.representatives)

    def test_cocycle_identity_exhaustive(self):
        for N in range(1, 5):
            for H in all_subgroups(N):
                Z = cocycles(H)
                assert all(is_cocycle(H, c) for c in Z)
                assert all(is_cocycle(H, b) for b in coboundaries(H))
                assert set(coboundaries(H)) <= set(Z)

    def test_representatives_distinct(self):
        H = G(3, 1, 3, 5, 7)
        reps = h1_compute(H).representatives
        B = coboundaries(H)
        for i, c in enumerate(reps):
            for d in reps[i + 1:]:
                assert tuple((x - y) % 8 for x, y in zip(c, d)) not in B

    def test_cyclic_formula_agrees(self):
        for N in range(1, 7):
            for H in all_subgroups(N):
                if H.is_cyclic():
                    assert h1_compute(H).order == cyclic_h1(H)

    def test_trivial_group(self):
        for N in range(1, 6):
            assert h1_compute(G(N, 1 % (1 << N))).order == 1

    def test_too_large(self):
        with pytest.raises(TooLarge):
            lemma24_table(7)


class TestRestriction:
    def test_examples(self):
        r = h1_restrict(G(3, 1, 3, 5, 7), G(3, 1, 7))
        assert r.is_zero
        r = h1_restrict(UnitSubgroup.full(4), G(4, 1, 15))
        assert r.is_zero

    def test_identity(self):
        H = G(3, 1, 3, 5, 7)
        r = h1_restrict(H, H)
        assert r.images == tuple(range(len(r.images))) and r.kernel_order == 1

    def test_not_subgroup(self):
        with pytest.raises(NotASubgroup):
            h1_restrict(G(3, 1, 7), G(3, 1, 3))

    def test_to_trivial_kills(self):
        for H in all_subgroups(4):
            assert h1_restrict(H, G(4, 1)).is_zero


class TestSha1Group:
    def test_examples(self):
        full = G(3, 1, 3, 5, 7)
        assert sha1_group(full, cyclic_subgroups(full)).kernel_order == 2
        assert sha1_group(full, cyclic_subgroups(full) + [full]).kernel_order == 1
        assert sha1_group(G(3, 1, 7), [G(3, 1, 7)]).kernel_order == 1

    def test_not_subgroup(self):
        with pytest.raises(NotASubgroup):
            sha1_group(G(3, 1, 7), [G(3, 1, 3)])


class TestTable:
    def test_subgroup_counts(self):
        assert len(all_subgroups(3)) == 5
        assert [len([r for r in lemma24_table(3) if r.N == N]) for N in (1, 2, 3)] == [1, 2, 5]

    def test_noncyclic_shape(self):
        for r in lemma24_table(6):
            if not r.cyclic:
                assert r.contains_minus_one and r.N >= 3

    def test_restrictions_vanish(self):
        assert all(r.proper_restrictions_zero for r in lemma24_table(6))

    def test_closed_form_holds_for_n_ge_3(self):
        for r in lemma24_table(6):
            if r.N >= 3:
                assert r.h1_order == r.predicted_order

    def test_only_disagreement_is_n2_minus_one(self):
        bad = [(r.N, str(r.group)) for r in lemma24_table(6) if not r.agrees]
        assert bad == [(2, "{1,3}")]

    def test_validation(self):
        with pytest.raises(NotASubgroup):
            G(3, 1, 3, 5)
        with pytest.raises(NotASubgroup):
            G(3, 3)
