import itertools

import numpy as np
import pytest

import oracles
from ferro.code import min_rank_distance, verify_maximal
from ferro.construct import (
    METHODS,
    applicable_methods,
    construct_companion,
    construct_ctn,
    construct_f1334,
    construct_fn1,
    construct_invariance,
    construct_mds_diagonal,
    construct_staircase,
    construct_upper_triangular_explicit,
    construct_upper_triangular_recursive,
    default_quadratic,
    gabidulin,
    invariant_subspaces,
    mds_generator,
    moore_matrix,
    mrd_with_first_column,
    systematic_generator,
)
from ferro.ferrers import FerrersDiagram, nu_min, not_subfield_realizable, pending_dots
from ferro.gf import extend_field, field_of_order, primitive_element
from ferro.matrix import GfMatrix


def D(cols, m=None):
    return FerrersDiagram(cols, m)


def assert_maximal(C, dim, d):
    rep = verify_maximal(C)
    assert rep.shape_ok
    assert (rep.dimension, rep.distance) == (dim, d)
    assert rep.is_maximal, rep.summary()


# -- Gabidulin and systematic generators ---------------------------------------

@pytest.mark.parametrize("q,m,n,delta", [
    (2, 3, 3, 2), (2, 4, 2, 2), (2, 3, 3, 3), (3, 2, 2, 2), (2, 4, 4, 3),
    (3, 3, 2, 2), (2, 4, 3, 2), (3, 3, 3, 3),
])
def test_gabidulin_is_mrd(q, m, n, delta):
    G = gabidulin(q, m, n, delta)
    ell = n - delta + 1
    assert G.code.k == m * ell
    assert_maximal(G.code, m * ell, delta)


def test_gabidulin_full_space():
    C = gabidulin(2, 3, 2, 1).code
    assert C.k == 6 and min_rank_distance(C)[0] == 1


def test_gabidulin_rejects_dependent_points():
    with pytest.raises(ValueError):
        gabidulin(2, 3, 2, 2, g=[1, 1])


def test_gabidulin_small_matches_oracle():
    C = gabidulin(2, 2, 2, 2).code
    assert oracles.min_distance(2, [M.tolist() for M in C.basis]) == 2


def test_moore_rows_are_frobenius_powers():
    ext = extend_field(field_of_order(2), 4)
    a = primitive_element(ext).value
    g = [1, a, ext.pow(a, 2)]
    M = moore_matrix(ext, g, 3)
    for r in range(1, 3):
        assert [ext.pow(x, 2) for x in M.data[r - 1]] == list(M.data[r])


@pytest.mark.parametrize("q,m,n,delta", [(2, 4, 4, 3), (2, 4, 4, 2), (3, 3, 3, 2), (2, 6, 6, 4)])
def test_systematic_generator_independence(q, m, n, delta):
    gen = systematic_generator(gabidulin(q, m, n, delta).generator)
    ext = gen.ctx
    assert (gen.G.data[:, : gen.ell] == np.eye(gen.ell)).all()
    for j in range(gen.A.shape[1]):
        col = [1] + [int(x) for x in gen.A[:, j]]
        coords = np.array([[(x // ext.base_order**i) % ext.base_order for i in range(m)] for x in col])
        assert GfMatrix(ext.base, coords).rank() == len(col)
    assert all(int(x) >= ext.base_order for x in gen.A.ravel())


def test_systematic_single_row():
    ext = extend_field(field_of_order(2), 3)
    M = GfMatrix(ext, [[3, 5, 6]])
    gen = systematic_generator(M)
    assert int(gen.G.data[0, 0]) == 1
    assert int(gen.G.data[0, 1]) == ext.div(5, 3)


# -- subspaces of MRD codes --------------------------------------------------

def test_fn1():
    assert_maximal(construct_fn1(D([1, 2, 3]), 2, 2), 3, 2)
    assert_maximal(construct_fn1(D([2, 4, 4, 4]), 4, 2), 2, 4)
    C = construct_fn1(D([3, 3, 3]), 2, 2)
    assert C.k == 6


def test_fn1_hypothesis():
    with pytest.raises(ValueError):
        construct_fn1(D([1, 2, 3]), 3, 2)


def test_staircase_examples():
    assert_maximal(construct_staircase(D([1, 2, 4, 5, 6, 6]), 4, 2), 7, 4)
    assert_maximal(construct_staircase(D([1, 3, 5, 7, 7, 8, 8, 8]), 6, 2), 9, 6)


def test_staircase_without_epsilon_matches_fn1_dimension():
    F = D([1, 2, 4, 4])
    assert construct_staircase(F, 3, 2).k == construct_fn1(F, 3, 2).k == 3


def test_staircase_rejects():
    with pytest.raises(ValueError):
        construct_staircase(D([3, 3, 3, 3]), 3, 2)


def test_ctn_dots_below_n():
    F = D([3, 4, 5, 6, 6, 7])
    assert (7, 6) in pending_dots(F, 5)
    C = construct_ctn(F, 5, 2)
    assert_maximal(C, 7, 5)


def test_ctn_column_counts_at_least_n():
    assert_maximal(construct_ctn(D([2, 4, 4, 5, 5]), 3, 2), 10, 3)


def test_mrd_with_first_column_224466():
    ext = extend_field(field_of_order(2), 6)
    a = primitive_element(ext).value
    b = ext.pow(a, 21)
    col = [a, ext.mul(a, b), b]
    gen = mrd_with_first_column(2, 6, 6, col)
    assert [int(x) for x in gen.A[:, 0]] == col


def test_mrd_with_first_column_rejects_dependent():
    with pytest.raises(ValueError):
        mrd_with_first_column(2, 4, 3, [1, 2])


def test_invariance_examples():
    C = construct_invariance(2, 6, 6, 4, 2)
    assert C.shape == D([2, 2, 4, 4, 6, 6])
    assert_maximal(C, 8, 4)
    C = construct_invariance(2, 4, 4, 4, 2)
    assert C.shape == D([2, 2, 4, 4])
    assert_maximal(C, 2, 4)


@pytest.mark.parametrize("b", [1, 6, 4])
def test_invariance_rejects(b):
    with pytest.raises(ValueError):
        construct_invariance(2, 6, 6, 4, b)


# -- companion, MDS diagonals, upper triangles, ad hoc -------------------------

def test_companion():
    C = construct_companion(2, 3, 2)
    assert_maximal(C, 2, 3)
    C = construct_companion(3, 4, 3, t=1)
    assert C.n == 3
    assert_maximal(C, 3, 3)
    assert min_rank_distance(construct_companion(2, 4, 1))[0] == 4


def test_companion_full_matches_gabidulin_dimension():
    C = construct_companion(2, 3, 3)
    assert C.k == 3 and min_rank_distance(C)[0] == 3
    with pytest.raises(ValueError):
        construct_companion(2, 3, 4)


def test_mds_generator_minors():
    for q, length, k in [(3, 4, 2), (4, 5, 3), (5, 6, 2), (2, 3, 2)]:
        G = mds_generator(field_of_order(q), length, k)
        for cols in itertools.combinations(range(length), k):
            assert GfMatrix(G.ctx, G.data[:, list(cols)]).det() != 0
    with pytest.raises(ValueError):
        mds_generator(field_of_order(2), 4, 2)


def test_mds_diagonal_example():
    C = construct_mds_diagonal(D([1, 2, 2, 4, 7]), 3, 3)
    assert C.meta["maximal"]
    assert_maximal(C, 5, 3)


@pytest.mark.parametrize("n,a,delta", [(3, 1, 2), (4, 0, 3), (3, 2, 3), (4, 1, 2)])
def test_mds_diagonal_triangle_plus_rows(n, a, delta):
    m = n + a
    F = D([j + a for j in range(1, n + 1)], m)
    C = construct_mds_diagonal(F, delta, 5)
    expected = (n - delta + 1) * (n - delta + 2) // 2 + a * (n - delta + 1)
    assert C.k == expected == nu_min(F, delta)
    assert min_rank_distance(C)[0] >= delta


def test_mds_diagonal_delta_one():
    F = D([1, 2, 3])
    assert construct_mds_diagonal(F, 1, 2).k == len(F)


def test_mds_diagonal_non_maximal_flag():
    C = construct_mds_diagonal(D([2, 2, 4, 4, 6]), 4, 5)
    assert not C.meta["maximal"] and C.k < 4


def test_default_quadratic():
    assert default_quadratic(2) == (1, 1)
    c, d = default_quadratic(3)
    assert all((x * x - d * x - c) % 3 for x in range(3))


@pytest.mark.parametrize("n,q,c,d", [(4, 2, 1, 1), (5, 3, None, None), (3, 2, None, None), (5, 3, 1, 1)])
def test_upper_triangular_explicit(n, q, c, d):
    C = construct_upper_triangular_explicit(n, q, c, d)
    assert C.shape == D(list(range(1, n + 1)))
    assert_maximal(C, 3, n - 1)


def test_upper_triangular_base_case():
    C = construct_upper_triangular_explicit(2, 2)
    assert C.k == 3 and min_rank_distance(C)[0] == 1


def test_upper_triangular_explicit_rejects_reducible():
    with pytest.raises(ValueError):
        construct_upper_triangular_explicit(4, 2, 0, 1)


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (4, 2), (5, 2), (4, 3)])
def test_upper_triangular_recursive(n, q):
    C = construct_upper_triangular_recursive(n, q)
    assert_maximal(C, 3, n - 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_f1334(q):
    C = construct_f1334(q)
    assert C.shape == D([1, 3, 3, 4])
    assert_maximal(C, 4, 3)
    assert not_subfield_realizable(C.shape, 3)


# -- obstruction and dispatch ------------------------------------------------

@pytest.mark.parametrize("m", [3, 4])
def test_no_invariant_subspaces_of_coprime_dimension(m):
    ext = extend_field(field_of_order(2), m)
    rng = np.random.default_rng(m)
    for dim in range(1, m):
        if np.gcd(dim, m) != 1:
            continue
        for a in rng.integers(2, ext.order, 6):
            assert invariant_subspaces(ext, int(a), dim) == []


def test_invariant_subspaces_for_subfield_elements():
    ext = extend_field(field_of_order(2), 4)
    beta = ext.pow(primitive_element(ext).value, 5)
    assert len(invariant_subspaces(ext, beta, 2)) == 5


def test_applicable_methods():
    assert applicable_methods(D([1, 3, 3, 4]), 3, 2) == ["f1334"]
    assert applicable_methods(D([4, 4, 4, 4]), 3, 2) == ["fn1", "staircase", "ctn"]
    assert "mds-diagonal" in applicable_methods(D([1, 2, 2, 4, 7]), 3, 3)


def test_method_table_complete():
    assert set(METHODS) == {"gabidulin", "fn1", "staircase", "ctn", "invariance", "companion",
                            "mds-diagonal", "ut-explicit", "ut-recursive", "f1334"}
