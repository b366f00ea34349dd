import pytest

from medialq import (Mapping, affine_table, cyclic_group, direct_product,
                     table_from_function, validate_table)


def cyclic_table(n):
    return validate_table([[(i + j) % n for j in range(n)] for i in range(n)])


def subtraction_table(n):
    return table_from_function(n, lambda x, y: (x - y) % n)


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def klein():
    """Z2 x Z2 with pair (a, b) encoded as a + 2b, so the element listing is
    (0;0), (1;0), (0;1), (1;1)."""
    return direct_product(cyclic_group(2), cyclic_group(2))


def klein_matrix_map(a, b, c, d):
    """Automorphism of the Klein group given by the 2x2 matrix [[a,b],[c,d]]
    over GF(2), acting on row vectors: (x1,x2) -> (x1,x2) M."""
    def fn(i):
        x1, x2 = i % 2, i // 2
        return (a * x1 + c * x2) % 2 + 2 * ((b * x1 + d * x2) % 2)
    return Mapping.from_callable(4, fn)


# the six automorphisms of Z2 x Z2
KLEIN_EPS = klein_matrix_map(1, 0, 0, 1)
KLEIN_PHI2 = klein_matrix_map(1, 0, 1, 1)
KLEIN_PHI3 = klein_matrix_map(1, 1, 0, 1)
KLEIN_PHI4 = klein_matrix_map(0, 1, 1, 0)
KLEIN_PHI5 = klein_matrix_map(1, 1, 1, 0)
KLEIN_PHI6 = klein_matrix_map(0, 1, 1, 1)


@pytest.fixture(scope="session")
def klein_ops(klein):
    """The four affine operations (f1, f2, f3, f4) over Z2 x Z2 used in the
    worked paramedial/medial example, with constant c = 0."""
    f1 = affine_table(klein, KLEIN_PHI2, KLEIN_PHI3, 0)
    f2 = affine_table(klein, KLEIN_PHI3, KLEIN_PHI2, 0)
    f3 = affine_table(klein, KLEIN_EPS, KLEIN_PHI5, 0)
    f4 = affine_table(klein, KLEIN_EPS, KLEIN_PHI6, 0)
    return f1, f2, f3, f4


def all_abelian_groups_up_to(max_order):
    """One representative per isomorphism class, orders 1..max_order."""
    groups = []
    for factors in [(1,), (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,),
                    (2, 4), (2, 2, 2), (9,), (3, 3), (10,), (12,), (2, 6),
                    (16,), (2, 8), (4, 4), (2, 2, 4), (2, 2, 2, 2)]:
        n = 1
        for d in factors:
            n *= d
        if n > max_order:
            continue
        g = cyclic_group(factors[0])
        for d in factors[1:]:
            g = direct_product(g, cyclic_group(d))
        groups.append(g)
    return groups
