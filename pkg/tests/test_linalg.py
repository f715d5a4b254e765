"""Oracle tests for the canonical-form linear algebra.

The expected values below were computed by independent brute force:
row spans and kernels by exhaustive enumeration over the finite rings,
integer kernels by scanning a box of small vectors.
"""

import itertools
import random

import pytest

from tannaka.linalg import (
    Matrix,
    det_sign_unimodular,
    in_rowspan,
    kernel,
    matrix_inverse,
    normal_form,
    smith,
    solve,
    span_size_mod,
)
from tannaka.rings import GF, QQ, ZZ, Zmod


def mat(ring, rows, ncols=None):
    return Matrix(ring, rows, ncols=ncols)


def enumerate_span(ring, M):
    """Row span by brute force over a finite ring."""
    vecs = set()
    for coeffs in itertools.product(ring.elements(), repeat=M.nrows):
        v = [ring.zero] * M.ncols
        for c, row in zip(coeffs, M.data):
            v = [ring.normalize(x + c * y) for x, y in zip(v, row)]
        vecs.add(tuple(v))
    return vecs


# -- normal_form ------------------------------------------------------------


def test_normal_form_f5_example():
    # enumerating both row spans over F_5^2 shows [[2,4]] and [[1,2]] agree
    F5 = GF(5)
    assert normal_form(mat(F5, [[2, 4]])) == mat(F5, [[1, 2]])
    assert enumerate_span(F5, mat(F5, [[2, 4]])) == enumerate_span(F5, mat(F5, [[1, 2]]))


@pytest.mark.parametrize("ring", [GF(2), GF(5), ZZ, QQ, Zmod(4), Zmod(6)])
def test_normal_form_identity(ring):
    ident = Matrix.identity(ring, 3)
    assert normal_form(ident) == ident


def test_normal_form_z4_example():
    # exhaustive row-span enumeration over (Z/4)^2
    Z4 = Zmod(4)
    M = mat(Z4, [[2, 2], [0, 2]])
    expected = mat(Z4, [[2, 0], [0, 2]])
    assert normal_form(M) == expected
    assert enumerate_span(Z4, M) == enumerate_span(Z4, expected)


def test_normal_form_idempotent_random():
    rng = random.Random(7)
    for ring in [ZZ, QQ, GF(3), Zmod(4), Zmod(12)]:
        for _ in range(40):
            rows = rng.randrange(0, 4)
            cols = rng.randrange(1, 4)
            M = mat(ring, [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)], ncols=cols)
            H = normal_form(M)
            assert normal_form(H) == H


def test_hermite_over_z():
    M = mat(ZZ, [[4, 6], [6, 4]])
    H = normal_form(M)
    # rows generate the same lattice and the form is echelon with reduced entries
    assert in_rowspan(M, H.row(0)) and in_rowspan(M, H.row(1))
    assert in_rowspan(H, M.row(0)) and in_rowspan(H, M.row(1))
    assert H == normal_form(H)


# -- kernel ------------------------------------------------------------------


def test_kernel_zero_map_f3():
    F3 = GF(3)
    assert kernel(mat(F3, [[0]])) == mat(F3, [[1]])


def test_kernel_integer_map():
    # kernel of (x, y) -> x + 2y over Z is {(2t, -t)}; brute force box check
    M = mat(ZZ, [[1], [2]])
    K = kernel(M)
    assert K.nrows == 1
    for x, y in itertools.product(range(-4, 5), repeat=2):
        if x + 2 * y == 0:
            assert solve(K, mat(ZZ, [[x, y]])) is not None
    for row in K.data:
        assert row[0] * 1 + row[1] * 2 == 0


def test_kernel_z4():
    Z4 = Zmod(4)
    assert kernel(mat(Z4, [[2]])) == mat(Z4, [[2]])


# -- solve -------------------------------------------------------------------


def test_solve_parity_obstruction():
    assert solve(mat(ZZ, [[2]]), mat(ZZ, [[3]])) is None


def test_solve_identity():
    for ring in [ZZ, QQ, GF(7), Zmod(9)]:
        v = mat(ring, [[1, 2, 3]])
        x = solve(Matrix.identity(ring, 3), v)
        assert x == v


def test_solve_z4():
    Z4 = Zmod(4)
    x = solve(mat(Z4, [[2]]), mat(Z4, [[2]]))
    assert x is not None
    assert (x @ mat(Z4, [[2]])) == mat(Z4, [[2]])


def test_solve_matches_enumeration_small():
    for ring in [Zmod(4), GF(3)]:
        vectors = list(itertools.product(ring.elements(), repeat=2))
        for rows in itertools.product(vectors, repeat=2):
            M = mat(ring, [list(r) for r in rows], ncols=2)
            span = enumerate_span(ring, M)
            for b in vectors:
                x = solve(M, mat(ring, [list(b)]))
                if tuple(ring.normalize(v) for v in b) in span:
                    assert x is not None and (x @ M) == mat(ring, [list(b)])
                else:
                    assert x is None


# -- smith -------------------------------------------------------------------


def test_smith_diag_2_3():
    M = mat(ZZ, [[2, 0], [0, 3]])
    U, D, V = smith(M)
    assert U @ M @ V == D
    assert D == mat(ZZ, [[1, 0], [0, 6]])


def test_smith_zero_and_one():
    U, D, V = smith(Matrix.zeros(ZZ, 2, 3))
    assert D == Matrix.zeros(ZZ, 2, 3)
    U, D, V = smith(mat(ZZ, [[1]]))
    assert D == mat(ZZ, [[1]])


def test_smith_random_properties():
    rng = random.Random(1234)
    for _ in range(60):
        m = rng.randrange(1, 6)
        n = rng.randrange(1, 6)
        M = mat(ZZ, [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)], ncols=n)
        U, D, V = smith(M)
        assert U @ M @ V == D
        assert abs(det_sign_unimodular(U)) == 1
        assert abs(det_sign_unimodular(V)) == 1
        diag = [D.entry(i, i) for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D.entry(i, j) == 0
        nonzero = [d for d in diag if d != 0]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        # zeros only at the tail
        seen_zero = False
        for d in diag:
            if d == 0:
                seen_zero = True
            else:
                assert not seen_zero


# -- membership / rowspan ------------------------------------------------------


def test_membership_matches_enumeration():
    for ring in [Zmod(2), Zmod(3), Zmod(4)]:
        vectors = list(itertools.product(ring.elements(), repeat=2))
        for rows in itertools.product(vectors, repeat=2):
            M = mat(ring, [list(r) for r in rows], ncols=2)
            span = enumerate_span(ring, M)
            H = normal_form(M)
            assert span_size_mod(H) == len(span)
            for v in vectors:
                assert (solve(H, mat(ring, [list(v)])) is not None) == (v in span)


def test_matrix_inverse():
    F5 = GF(5)
    M = mat(F5, [[1, 2], [3, 4]])
    X = matrix_inverse(M)
    assert X is not None
    assert M @ X == Matrix.identity(F5, 2)
    assert matrix_inverse(mat(F5, [[1, 2], [2, 4]])) is None
    Z4 = Zmod(4)
    assert matrix_inverse(mat(Z4, [[2]])) is None
    assert matrix_inverse(mat(Z4, [[3]])) == mat(Z4, [[3]])


def test_kron_convention():
    R = GF(7)
    A = mat(R, [[1, 2]])
    B = mat(R, [[3], [4]])
    K = A.kron(B)
    # row (0, i2), column (j1, j2) -> j1 * 1 + j2
    assert K.tolist() == [[3, 6], [4, 1]]
