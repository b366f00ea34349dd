import itertools

import pytest

from medialq import (Mapping, OrderTooLargeError, as_abelian_group,
                     automorphisms, canonical_form, cyclic_group,
                     decompose_holomorphism, direct_product, groups_isomorphic,
                     is_holomorphism, split_affine_identity, validate_table)
from medialq.abelian import (GroupError, NoIdentityError, NotAssociativeError,
                             NotCommutativeError, NotHolomorphismError,
                             element_order, find_isomorphism, is_automorphism)

from conftest import (KLEIN_EPS, KLEIN_PHI2, KLEIN_PHI3, KLEIN_PHI4,
                      KLEIN_PHI5, KLEIN_PHI6, all_abelian_groups_up_to,
                      cyclic_table, subtraction_table)


class TestDetection:
    def test_cyclic_tables(self):
        for n in range(1, 7):
            g = as_abelian_group(cyclic_table(n))
            assert g.identity == 0
            assert g.order == n

    def test_no_identity(self):
        # x - y has a right identity only
        with pytest.raises(NoIdentityError):
            as_abelian_group(subtraction_table(3))

    def test_not_commutative(self):
        # the symmetric group S3 as a Cayley table: not abelian
        perms = list(itertools.permutations(range(3)))

        def mul(i, j):
            a, b = perms[i], perms[j]
            return perms.index(tuple(a[k] for k in b))

        table = validate_table([[mul(i, j) for j in range(6)] for i in range(6)])
        with pytest.raises(NotCommutativeError) as exc:
            as_abelian_group(table)
        x, y = exc.value.witness
        assert table(x, y) != table(y, x)

    def test_not_associative_with_witness(self):
        # a commutative loop of order 6 that is not a group
        cells = [[0, 1, 2, 3, 4, 5],
                 [1, 0, 3, 2, 5, 4],
                 [2, 3, 4, 5, 0, 1],
                 [3, 2, 5, 4, 1, 0],
                 [4, 5, 0, 1, 3, 2],
                 [5, 4, 1, 0, 2, 3]]
        table = validate_table(cells)
        with pytest.raises(NotAssociativeError) as exc:
            as_abelian_group(table)
        x, y, z = exc.value.witness
        assert table(table(x, y), z) != table(x, table(y, z))


class TestCanonicalForm:
    def test_small_cyclic(self):
        assert canonical_form(cyclic_group(1)) == []
        assert canonical_form(cyclic_group(6)) == [6]
        assert canonical_form(cyclic_group(12)) == [12]

    def test_klein(self, klein):
        assert canonical_form(klein) == [2, 2]

    def test_z2_x_z4(self):
        g = direct_product(cyclic_group(2), cyclic_group(4))
        assert canonical_form(g) == [2, 4]

    def test_z2_x_z3_collapses_to_z6(self):
        g = direct_product(cyclic_group(2), cyclic_group(3))
        assert canonical_form(g) == [6]
        assert groups_isomorphic(g, cyclic_group(6))

    def test_all_classes_up_to_16_distinct(self):
        groups = all_abelian_groups_up_to(16)
        forms = [tuple(canonical_form(g)) for g in groups]
        assert len(set(forms)) == len(forms)
        for f in forms:
            for a, b in zip(f, f[1:]):
                assert b % a == 0

    def test_isomorphism_iff_same_canonical(self):
        groups = all_abelian_groups_up_to(8)
        for g1 in groups:
            for g2 in groups:
                same = canonical_form(g1) == canonical_form(g2)
                assert groups_isomorphic(g1, g2) == same
                assert (find_isomorphism(g1, g2) is not None) == same

    def test_relabelled_group_recognized(self):
        # relabel Z4 by a permutation and recover [4]
        p = (2, 0, 3, 1)
        inv = tuple(p.index(i) for i in range(4))
        cells = [[p[(inv[a] + inv[b]) % 4] for b in range(4)] for a in range(4)]
        g = as_abelian_group(validate_table(cells))
        assert canonical_form(g) == [4]


class TestElementOrder:
    def test_z6(self):
        g = cyclic_group(6)
        assert [element_order(g, x) for x in range(6)] == [1, 6, 3, 2, 3, 6]

    def test_orders_divide_group_order(self):
        for g in all_abelian_groups_up_to(12):
            for x in range(g.order):
                assert g.order % element_order(g, x) == 0


class TestAutomorphisms:
    def test_z1_and_z2(self):
        assert len(automorphisms(cyclic_group(1))) == 1
        assert len(automorphisms(cyclic_group(2))) == 1

    def test_cyclic_counts_are_euler_phi(self):
        # |Aut(Zn)| = phi(n)
        phi = {2: 1, 3: 2, 4: 2, 5: 4, 6: 2, 7: 6, 8: 4, 9: 6}
        for n, expect in phi.items():
            assert len(automorphisms(cyclic_group(n))) == expect

    def test_klein_has_six(self, klein):
        auts = automorphisms(klein)
        assert len(auts) == 6
        expected = {m.images for m in (KLEIN_EPS, KLEIN_PHI2, KLEIN_PHI3,
                                       KLEIN_PHI4, KLEIN_PHI5, KLEIN_PHI6)}
        assert {a.map.images for a in auts} == expected

    def test_elementary_abelian_counts(self):
        # |GL(3, 2)| = 168
        g = direct_product(direct_product(cyclic_group(2), cyclic_group(2)),
                           cyclic_group(2))
        assert len(automorphisms(g)) == 168

    def test_closed_under_composition(self, klein):
        auts = automorphisms(klein)
        images = {a.map.images for a in auts}
        for a in auts:
            for b in auts:
                assert a.map.compose(b.map).images in images

    def test_cap_enforced(self):
        with pytest.raises(OrderTooLargeError):
            automorphisms(cyclic_group(5), cap=4)

    def test_is_automorphism_rejects_shift(self):
        g = cyclic_group(4)
        shift = Mapping.from_callable(4, lambda x: (x + 1) % 4)
        assert not is_automorphism(g, shift)
        assert is_automorphism(g, Mapping.from_callable(4, lambda x: (3 * x) % 4))


class TestHolomorphisms:
    def test_translations_are_holomorphisms(self):
        g = cyclic_group(5)
        for k in range(5):
            shift = Mapping.from_callable(5, lambda x, k=k: (x + k) % 5)
            assert is_holomorphism(g, shift)

    def test_non_affine_rejected(self):
        g = cyclic_group(4)
        assert not is_holomorphism(g, Mapping((0, 2, 1, 3)))

    def test_decompose_roundtrip(self):
        g = cyclic_group(6)
        alpha = Mapping.from_callable(6, lambda x: (5 * x + 2) % 6)
        dec = decompose_holomorphism(g, alpha)
        assert dec.k == 2
        assert dec.phi.map.images == tuple((5 * x) % 6 for x in range(6))
        assert all(dec(x) == alpha(x) for x in range(6))

    def test_decompose_rejects_non_holomorphism(self):
        with pytest.raises(NotHolomorphismError):
            decompose_holomorphism(cyclic_group(4), Mapping((0, 2, 1, 3)))

    def test_klein_every_bijection_affine(self, klein):
        # Aut = GL(2,2) of size 6, so 6 * 4 = 24 = 4! affine maps: here every
        # permutation of the Klein group is a holomorphism
        for p in itertools.permutations(range(4)):
            assert is_holomorphism(klein, Mapping(p))

    def test_split_affine_identity(self):
        g = cyclic_group(5)
        a1 = Mapping.from_callable(5, lambda x: (2 * x + 3) % 5)
        a2 = Mapping.from_callable(5, lambda x: (2 * x + 1) % 5)
        a3 = Mapping.from_callable(5, lambda x: (2 * x + 2) % 5)
        assert split_affine_identity(g, a1, a2, a3)
        assert not split_affine_identity(g, a1, a2, a2)


class TestConstructors:
    def test_direct_product_encoding(self):
        g = direct_product(cyclic_group(2), cyclic_group(3))
        # (1, 0) + (1, 2) = (0, 2) -> 0 + 2*2
        assert g.add(1, 1 + 2 * 2) == 2 * 2

    def test_neg_and_sub(self):
        g = cyclic_group(7)
        for a in range(7):
            assert g.add(a, g.neg(a)) == g.identity
            for b in range(7):
                assert g.add(g.sub(a, b), b) == a
