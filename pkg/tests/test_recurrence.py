import pytest

from rank2cluster.combinat import ClusterContext
from rank2cluster.laurent import LaurentPoly2
from rank2cluster.recurrence import (
    chi_from_expansion,
    cluster_var_recurrence,
    scalar_cluster_value,
)


def test_x3_c2():
    ctx = ClusterContext(2)
    assert cluster_var_recurrence(ctx, 3) == LaurentPoly2(
        {(-1, 0): 1, (-1, 2): 1}
    )


def test_x4_c2_hand_expansion():
    # ((x2^2+1)^2 + x1^2) / (x1^2 x2)
    ctx = ClusterContext(2)
    want = LaurentPoly2({(-2, 3): 1, (-2, 1): 2, (-2, -1): 1, (0, -1): 1})
    assert cluster_var_recurrence(ctx, 4) == want


def test_x3_c3():
    ctx = ClusterContext(3)
    assert cluster_var_recurrence(ctx, 3) == LaurentPoly2(
        {(-1, 0): 1, (-1, 3): 1}
    )


def test_initial_variables():
    ctx = ClusterContext(2)
    assert cluster_var_recurrence(ctx, 1) == LaurentPoly2({(1, 0): 1})
    assert cluster_var_recurrence(ctx, 2) == LaurentPoly2({(0, 1): 1})


def test_preconditions():
    with pytest.raises(ValueError):
        cluster_var_recurrence(ClusterContext(1), 3)
    with pytest.raises(ValueError):
        cluster_var_recurrence(ClusterContext(2), 0)
    with pytest.raises(ValueError):
        chi_from_expansion(ClusterContext(2), 2)


def test_memoized_value_is_stable():
    ctx = ClusterContext(2)
    first = cluster_var_recurrence(ctx, 7)
    assert cluster_var_recurrence(ctx, 7) is first


def test_scalar_sequence_c2():
    assert [scalar_cluster_value(2, n) for n in range(1, 7)] == [1, 1, 2, 5, 13, 34]


def test_scalar_matches_poly_evaluation():
    for c, n_top in ((2, 9), (3, 6)):
        ctx = ClusterContext(c)
        for n in range(1, n_top + 1):
            assert cluster_var_recurrence(ctx, n).eval_exact(1, 1) == (
                scalar_cluster_value(c, n)
            )


def test_chi_table_n4_c2():
    table = chi_from_expansion(ClusterContext(2), 4)
    assert table.dim_vector == (2, 1)
    assert dict(table.items()) == {(0, 0): 1, (0, 1): 1, (1, 1): 2, (2, 1): 1}


def test_chi_table_n3_c2():
    table = chi_from_expansion(ClusterContext(2), 3)
    assert table.dim_vector == (1, 0)
    assert dict(table.items()) == {(0, 0): 1, (1, 0): 1}


def test_chi_corner_cells_always_one():
    for c, n_top in ((2, 8), (3, 6), (4, 5)):
        ctx = ClusterContext(c)
        for n in range(3, n_top + 1):
            table = chi_from_expansion(ctx, n)
            an1, an2 = table.dim_vector
            assert table.chi(0, 0) == 1
            assert table.chi(an1, an2) == 1


def test_chi_sum_equals_scalar_value():
    for c, n_top in ((2, 9), (3, 7)):
        ctx = ClusterContext(c)
        for n in range(3, n_top + 1):
            assert chi_from_expansion(ctx, n).total() == scalar_cluster_value(c, n)


def test_chi_absent_when_pairing_negative():
    for c, n_top in ((2, 8), (3, 6)):
        ctx = ClusterContext(c)
        for n in range(3, n_top + 1):
            an1, an2 = ctx.a(n - 1), ctx.a(n - 2)
            for (e1, e2) in chi_from_expansion(ctx, n).entries:
                assert e2 * an1 - e1 * an2 >= 0


def test_denominator_vector():
    for c, n_top in ((2, 10), (3, 7), (4, 6)):
        ctx = ClusterContext(c)
        for n in range(3, n_top + 1):
            poly = cluster_var_recurrence(ctx, n)
            assert poly.min_exponents() == (-ctx.a(n - 1), -ctx.a(n - 2))


def test_coefficients_observed_nonnegative():
    for c, n_top in ((2, 10), (3, 7), (4, 6)):
        ctx = ClusterContext(c)
        for n in range(1, n_top + 1):
            assert all(v > 0 for _, v in cluster_var_recurrence(ctx, n).items())
