import json

import numpy as np
import pytest

from conftest import b
from osp12 import sampling
from osp12.algebra import GRADING, generators
from osp12.grassmann import GrassmannNumber, Parity, ParityError
from osp12.supermatrix import (
    DimensionError, SuperMatrix, graded_adjoint, graded_adjoint_linear, regular_representation, scalar_lmul,
    scalar_matrix, sm_mul, supertrace, supertranspose,
)

G = (2, 1)


def rand(rng, parity, rows=G, cols=G, L=4, backend="exact"):
    return sampling.even_supermatrix(rng, rows, cols, L, backend, parity)


def test_identity_is_neutral(rng):
    M = rand(rng, 0)
    I = SuperMatrix.identity(G, 4)
    assert sm_mul(I, M) == M and sm_mul(M, I) == M


def test_product_matches_regular_representation(rng):
    for _ in range(5):
        X = rand(rng, int(rng.integers(2)), (2, 1), (1, 2), backend="float")
        Y = rand(rng, int(rng.integers(2)), (1, 2), (2, 2), backend="float")
        lhs = regular_representation(sm_mul(X, Y))
        rhs = regular_representation(X) @ regular_representation(Y)
        assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_grading_mismatch():
    X = SuperMatrix.zeros((2, 1), (1, 1), 2)
    with pytest.raises(DimensionError):
        sm_mul(X, X)
    with pytest.raises(DimensionError):
        supertrace(X)


def test_generator_products_parity():
    T1, T2, T3, t1, t2 = generators().all
    assert sm_mul(T1, T2).parity is Parity.EVEN
    assert sm_mul(t1, t2).parity is Parity.EVEN
    assert sm_mul(T1, t1).parity is Parity.ODD


def test_parity_classification():
    even = SuperMatrix.from_entries([[b(1, 2), b(1)], [b(2), GrassmannNumber.scalar(1, 2)]], (1, 1), (1, 1))
    odd = SuperMatrix.from_entries([[b(1), b(1, 2)], [GrassmannNumber.scalar(3, 2), b(2)]], (1, 1), (1, 1))
    assert even.parity is Parity.EVEN and odd.parity is Parity.ODD
    assert (even + odd).parity is Parity.MIXED
    assert SuperMatrix.zeros((1, 1), (1, 1), 2).parity is Parity.EVEN
    e, o = (even + odd).parity_split()
    assert e == even and o == odd


def test_parity_adds(rng):
    for p in (0, 1):
        for q in (0, 1):
            assert sm_mul(rand(rng, p), rand(rng, q)).degree == (p + q) % 2


def test_supertrace_examples():
    T1, T2, T3, t1, t2 = generators().all
    assert supertrace(T3) == 0
    assert supertrace(SuperMatrix.identity(GRADING, 2)) == 1
    for M in (t1, t2):
        assert supertrace(M) == 0


def test_supertrace_of_odd_matrix_vanishes(rng):
    M = rand(rng, 1)
    assert supertrace(M).parity in (Parity.ODD, Parity.EVEN)
    # odd matrices have odd diagonal entries, so only odd monomials survive
    assert all(bin(k).count("1") % 2 for k in supertrace(M).coeffs)


def test_supertrace_graded_cyclic(rng):
    for p in (0, 1):
        for q in (0, 1):
            X, Y = rand(rng, p), rand(rng, q)
            assert supertrace(sm_mul(X, Y)) == supertrace(sm_mul(Y, X)) * (-1) ** (p * q)


def test_supertranspose_blocks(rng):
    M = rand(rng, 0)
    A, B, C, D = M.blocks()
    A2, B2, C2, D2 = supertranspose(M).blocks()
    tr = lambda X: np.transpose(X, (0, 2, 1))  # noqa: E731
    assert np.array_equal(A2, tr(A)) and np.array_equal(D2, tr(D))
    assert np.array_equal(B2, tr(C)) and np.array_equal(C2, -tr(B))
    # odd matrices pick up the opposite off-diagonal signs
    O = rand(rng, 1)
    A, B, C, D = O.blocks()
    _, B2, C2, _ = supertranspose(O).blocks()
    assert np.array_equal(B2, -tr(C)) and np.array_equal(C2, tr(B))


def test_double_supertranspose_flips_off_diagonal(rng):
    M = rand(rng, 0)
    flip = SuperMatrix.identity(G, 4).data.copy()
    flip[0, 2, 2] = -1
    P = SuperMatrix(flip, G, G, 4, "exact")
    assert supertranspose(supertranspose(M)) == sm_mul(sm_mul(P, M), P)


def test_block_diagonal_supertranspose():
    A, D = np.array([[1, 2j], [3, 4]]), np.array([[5]])
    M = SuperMatrix.from_complex(np.block([[A, np.zeros((2, 1))], [np.zeros((1, 2)), D]]), G, G, 2)
    assert supertranspose(M) == SuperMatrix.from_complex(np.block([[A.T, np.zeros((2, 1))], [np.zeros((1, 2)), D.T]]),
                                                         G, G, 2)


def test_supertranspose_of_even_column(rng):
    psi = sampling.even_supervector(rng, (2, 1), 2, "exact")
    st = supertranspose(psi)
    assert st.row_grading == (1, 0) and st.col_grading == (2, 1)
    assert st.entries()[0] == [row[0] for row in psi.entries()]
    phi = supertranspose(st)
    expect = [row[0] for row in psi.entries()]
    assert [row[0] for row in phi.entries()] == expect[:2] + [-x for x in expect[2:]]


def test_supertranspose_rejects_mixed(rng):
    with pytest.raises(ParityError):
        supertranspose(rand(rng, 0) + rand(rng, 1))
    even, odd = rand(rng, 0), rand(rng, 1)
    assert graded_adjoint_linear(even + odd) == graded_adjoint(even) + graded_adjoint(odd)


def test_graded_adjoint_complex_displays(rng):
    M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    A, B, C, D = M[:2, :2], M[:2, 2:], M[2:, :2], M[2:, 2:]
    even = SuperMatrix.from_complex(np.block([[A, 0 * B], [0 * C, D]]), G, G, 2, "float")
    adj = graded_adjoint(even).body
    assert np.allclose(adj, np.block([[A.conj().T, 0 * C.T], [0 * B.T, D.conj().T]]), atol=0)
    assert graded_adjoint(graded_adjoint(even)) == even
    # odd complex-bodied matrix: only B, C nonzero
    odd = SuperMatrix.from_complex(np.block([[0 * A, B], [C, 0 * D]]), G, G, 2, "float")
    assert odd.parity is Parity.ODD
    adj = graded_adjoint(odd).body
    assert np.allclose(adj, np.block([[0 * A, -C.conj().T], [B.conj().T, 0 * D]]), atol=0)


def test_graded_adjoint_anti_multiplicative(rng):
    # (XY)^dagger = (-1)^(|X||Y|) Y^dagger X^dagger; the sign only bites for odd . odd
    for p in (0, 1):
        for q in (0, 1):
            X, Y = rand(rng, p), rand(rng, q)
            lhs = graded_adjoint(sm_mul(X, Y))
            rhs = sm_mul(graded_adjoint(Y), graded_adjoint(X))
            assert lhs == (rhs if p * q == 0 else -rhs)


def right_mul(M, a):
    """Graded right multiplication ``M a = M . diag(a I, (-1)^deg(a) a I)``."""
    return sm_mul(M, scalar_lmul(a, SuperMatrix.identity(M.col_grading, M.L, M.backend)))


def test_scalar_lmul_examples(rng):
    T1, T2, T3, t1, t2 = generators().all
    beta1 = b(1)
    assert scalar_lmul(beta1, t1) == -right_mul(t1, beta1)
    a = b(1, 2, c=3) + GrassmannNumber.scalar(2, 2)
    M = rand(rng, 0, GRADING, GRADING, L=2)
    assert scalar_lmul(a, M) == right_mul(M, a) == sm_mul(M, scalar_matrix(a, GRADING))
    assert scalar_lmul(GrassmannNumber(2), M).is_zero()
    with pytest.raises(ParityError):
        scalar_lmul(a + beta1, M)


def test_scalar_lmul_graded_commutes(rng):
    for deg_a in (0, 1):
        a = sampling.grassmann(rng, 4, deg_a)
        for deg_m in (0, 1):
            M = rand(rng, deg_m)
            expect = right_mul(M, a)
            assert scalar_lmul(a, M) == (-expect if deg_a * deg_m else expect)


def test_even_action_closure(rng):
    for _ in range(10):
        M = rand(rng, 0, L=2)
        psi = sampling.even_supervector(rng, G, 2, "exact")
        assert sm_mul(M, psi).parity is Parity.EVEN


def test_json_round_trip(rng):
    M = rand(rng, 1)
    obj = json.loads(json.dumps(M.to_json()))
    assert obj["row_grading"] == [2, 1]
    assert SuperMatrix.from_json(obj) == M
