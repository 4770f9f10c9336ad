import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxlab import intlin
from oracles import naive_rank

small_int = st.integers(-6, 6)


def int_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)))


def _check_snf(m):
    s, u, v = intlin.smith_normal_form(m)
    assert intlin.matmul(intlin.matmul(u, m), v) == s
    assert abs(intlin.determinant(u)) == 1 and abs(intlin.determinant(v)) == 1
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    for i in range(len(s)):
        for j in range(len(s[0])):
            if i != j:
                assert s[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return diag


def test_snf_identity():
    s, u, v = intlin.smith_normal_form([[1, 0], [0, 1]])
    assert s == [[1, 0], [0, 1]] and u == intlin.identity(2) and v == intlin.identity(2)


def test_snf_diag_2_3():
    assert _check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero():
    assert _check_snf([[0]]) == [0]


@given(int_matrices())
def test_snf_properties(m):
    _check_snf(m)


def test_kernel_examples():
    k = intlin.kernel_basis([[1, 1]])
    assert k in ([[1, -1]], [[-1, 1]])
    assert intlin.kernel_basis([[1, 0], [0, 1]]) == []
    k = intlin.kernel_basis([[0, 0]])
    assert len(k) == 2 and intlin.rank(k) == 2


@given(int_matrices())
def test_kernel_is_saturated_lattice_basis(m):
    k = intlin.kernel_basis(m)
    for x in k:
        assert all(sum(a * b for a, b in zip(row, x)) == 0 for row in m)
    assert len(k) == len(m[0]) - intlin.rank(m)
    if k:
        # saturation: the invariant factors of the basis matrix are all 1
        assert all(d == 1 for d in intlin.invariant_factors(k))


def test_rank_examples():
    assert intlin.rank(intlin.identity(5)) == 5
    assert intlin.rank([[1, 2, 3], [1, 2, 3], [0, 1, 1]]) == 2


def test_rank_random_5x7_against_naive_oracle():
    rng = random.Random(0)
    for _ in range(200):
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(7)] for _ in range(5)]
        if rng.random() < 0.5:
            m[4] = [a + 2 * b for a, b in zip(m[0], m[1])]
        assert intlin.rank(m) == naive_rank(m)


@given(int_matrices(5, 5), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_scaling(m, rnd):
    r = intlin.rank(m)
    assert r == naive_rank(m)
    perm = list(m)
    rnd.shuffle(perm)
    factors = [Fraction(rnd.choice([-3, -1, 2, 5]), rnd.choice([1, 2, 7])) for _ in perm]
    scaled = [[Fraction(x) * f for x in row] for row, f in zip(perm, factors)]
    assert intlin.rank(scaled) == r


def test_pivot_rows_deterministic():
    m = [[0, 1], [0, 2], [1, 0]]
    assert intlin.rank_and_basis(m) == (2, [0, 2])
    assert intlin.rank_and_basis(m) == intlin.rank_and_basis([list(r) for r in m])


@given(int_matrices())
def test_rref_and_nullspace(m):
    red, piv = intlin.rref(m)
    assert len(red) == intlin.rank(m)
    for row, p in zip(red, piv):
        assert row[p] == 1
        assert all(r[p] == 0 for r in red if r is not row)
    for x in intlin.nullspace(m):
        assert all(sum(Fraction(a) * b for a, b in zip(row, x)) == 0 for row in m)


def test_solve():
    x = intlin.solve([[1, 1], [1, -1]], [3, 1])
    assert x == [2, 1]
    assert intlin.solve([[1, 1], [1, 1]], [1, 2]) is None


def test_hermite_normal_form_basic():
    h = intlin.hermite_normal_form([[2, 4], [1, 3]])
    assert h == [[1, 1], [0, 2]]


def test_positive_functional_examples():
    assert intlin.positive_functional([(1,), (1,), (1,)]) == (1,)
    assert intlin.positive_functional([(1, 0), (0, 1), (1, 0), (1, 1)]) == (1, 1)
    with pytest.raises(intlin.NotFound):
        intlin.positive_functional([(1,), (-1,)])


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5))
def test_positive_functional_is_positive(degs):
    try:
        ell = intlin.positive_functional(degs, bound=4)
    except intlin.NotFound:
        return
    assert all(ell[0] * a + ell[1] * b > 0 for a, b in degs)
