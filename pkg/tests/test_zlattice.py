import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from gsig.zlattice import (LatticeBasis, LatticeError, canonical_coset_rep, det, hnf, intersect,
                           kernel, lattice_sum, matmul, preimage, quotient, snf)

small_ints = st.integers(min_value=-9, max_value=9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def sympy_invariants(M):
    D = smith_normal_form(Matrix(M))
    return sorted(abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0)


def test_hnf_small_example():
    H, U = hnf([[1, 1, 1], [1, 0, 0]])
    assert H == [[1, 0, 0], [0, 1, 1]]
    assert matmul(U, [[1, 1, 1], [1, 0, 0]]) == H


def test_snf_coprime_diagonal():
    U, D, V = snf([[2, 0], [0, 3]])
    assert [D[0][0], D[1][1]] == [1, 6]


def test_snf_matches_sympy_on_fixed_matrix():
    M = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    U, D, V = snf(M)
    assert matmul(matmul(U, M), V) == D
    assert sorted(abs(D[i][i]) for i in range(4) if D[i][i]) == sympy_invariants(M) == [1, 10, 30]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_certificate_and_invariants(M):
    U, D, V = snf(M)
    assert matmul(matmul(U, M), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    assert nz == sympy_invariants(M)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_certificate(M):
    H, U = hnf(M)
    assert matmul(U, M) == H
    assert abs(det(U)) == 1
    rows = [r for r in H if any(r)]
    pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
    assert pivots == sorted(set(pivots))
    for i, (r, c) in enumerate(zip(rows, pivots)):
        assert r[c] > 0
        for above in rows[:i]:
            assert 0 <= above[c] < r[c]


def test_det_against_sympy():
    rnd = random.Random(3)
    for n in range(1, 7):
        M = [[rnd.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        assert det(M) == Matrix(M).det()


def test_quotient_of_z2_by_2z2():
    Q = quotient([[1, 0], [0, 1]], [[2, 0], [0, 2]])
    assert Q.factors == (2, 2)
    assert Q.order == 4


def test_quotient_free_part_and_coords():
    Q = quotient([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[2, 0, 0], [0, 3, 0]])
    assert sorted(Q.factors) == [0, 6]
    assert Q.order is None and Q.rank == 1
    for i, g in enumerate(Q.gens):
        c = Q.coords(g)
        assert c == [int(i == j) for j in range(len(Q.factors))]


def test_quotient_rejects_non_sublattice():
    with pytest.raises(LatticeError):
        quotient([[2, 0], [0, 2]], [[1, 0]])


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), st.lists(small_ints, min_size=4, max_size=4))
def test_coset_rep_is_canonical(M, v):
    dim = len(M[0])
    v = v[:dim] + [0] * (dim - len(v))
    L = LatticeBasis.from_generators(M, dim)
    w = canonical_coset_rep(v, L)
    # shifting by any lattice vector leaves the representative unchanged
    shift = [sum(r[j] for r in M) for j in range(dim)]
    assert canonical_coset_rep([a + b for a, b in zip(v, shift)], L) == w
    assert [a - b for a, b in zip(v, w)] in L


def test_preimage_and_kernel():
    A = [[1, 2], [2, 4], [0, 1]]
    K = kernel(A)
    assert K.rank == 1
    x = list(K.rows[0])
    assert [sum(x[i] * A[i][j] for i in range(3)) for j in range(2)] == [0, 0]
    L = LatticeBasis.from_generators([[2, 0], [0, 2]], 2)
    P = preimage(A, L)
    for row in P.rows:
        img = [sum(row[i] * A[i][j] for i in range(3)) for j in range(2)]
        assert img in L


def test_intersect_and_sum():
    L1 = LatticeBasis.from_generators([[2, 0], [0, 1]], 2)
    L2 = LatticeBasis.from_generators([[1, 0], [0, 3]], 2)
    assert intersect(L1, L2) == LatticeBasis.from_generators([[2, 0], [0, 3]], 2)
    assert lattice_sum(L1, L2) == LatticeBasis.full(2)
