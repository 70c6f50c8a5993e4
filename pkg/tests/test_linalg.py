"""Tests for the fixed-size complex matrix layer."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qtomo.linalg import (
    add,
    cmatrix,
    dagger,
    hermitian_eig,
    identity,
    is_density,
    is_hermitian,
    is_unitary,
    kron,
    matmul,
    max_abs,
    scale,
    sub,
    trace,
)
from qtomo.states import SIGMA0, SIGMA1, SIGMA2, SIGMA3

I2 = identity(2)
I4 = identity(4)
KET0 = cmatrix([[1, 0], [0, 0]])
KET1 = cmatrix([[0, 0], [0, 1]])


def complex_matrices(dim):
    """Random matrices with re/im entries in [-1, 1]."""
    parts = arrays(np.float64, (dim, dim, 2), elements=st.floats(-1.0, 1.0, allow_nan=False))
    return parts.map(lambda r: cmatrix(r[..., 0] + 1j * r[..., 1]))


class TestConstruction:
    def test_rejects_unsupported_shapes(self):
        with pytest.raises(ValueError):
            cmatrix(np.zeros((3, 3)))
        with pytest.raises(ValueError):
            cmatrix(np.zeros((2, 4)))
        with pytest.raises(ValueError):
            cmatrix([1.0, 2.0])

    def test_rejects_non_finite_entries(self):
        with pytest.raises(ValueError):
            cmatrix([[np.nan, 0], [0, 0]])
        with pytest.raises(ValueError):
            cmatrix([[0, 1j * np.inf], [0, 0]])

    def test_result_is_read_only(self):
        m = cmatrix([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            m[0, 0] = 5.0


class TestMatmul:
    def test_identity_is_neutral(self):
        m = cmatrix([[1 + 2j, 3], [0, -1j]])
        np.testing.assert_array_equal(matmul(I2, m), m)

    def test_pauli_involution(self):
        np.testing.assert_array_equal(matmul(SIGMA1, SIGMA1), I2)

    def test_pauli_product(self):
        # sigma1 @ sigma2 expanded by hand: [[0,1],[1,0]] @ [[0,-i],[i,0]]
        expected = cmatrix([[1j, 0], [0, -1j]])
        np.testing.assert_array_equal(matmul(SIGMA1, SIGMA2), expected)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            matmul(I2, I4)

    @settings(deadline=None)
    @given(complex_matrices(2), complex_matrices(2), complex_matrices(2))
    def test_associative_2x2(self, a, b, c):
        lhs = matmul(matmul(a, b), c)
        rhs = matmul(a, matmul(b, c))
        assert max_abs(lhs - rhs) <= 1e-12

    @settings(deadline=None, max_examples=50)
    @given(complex_matrices(4), complex_matrices(4), complex_matrices(4))
    def test_associative_4x4(self, a, b, c):
        lhs = matmul(matmul(a, b), c)
        rhs = matmul(a, matmul(b, c))
        assert max_abs(lhs - rhs) <= 1e-12

    @settings(deadline=None)
    @given(complex_matrices(4), complex_matrices(4))
    def test_trace_cyclic(self, a, b):
        assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) <= 1e-12


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(I2, I2), I4)

    def test_basis_order(self):
        # |0><0| kron |1><1| occupies the |01> slot
        np.testing.assert_array_equal(kron(KET0, KET1), np.diag([0, 1, 0, 0]).astype(complex))

    def test_sigma3_blocks(self):
        # block expansion by hand: diag(1, -1) kron diag(1, -1)
        expected = np.diag([1, -1, -1, 1]).astype(complex)
        np.testing.assert_array_equal(kron(SIGMA3, SIGMA3), expected)

    def test_rejects_4x4_operands(self):
        with pytest.raises(ValueError):
            kron(I4, I2)
        with pytest.raises(ValueError):
            kron(I2, I4)

    @settings(deadline=None)
    @given(complex_matrices(2), complex_matrices(2), complex_matrices(2), complex_matrices(2))
    def test_mixed_product(self, a, b, c, d):
        lhs = matmul(kron(a, b), kron(c, d))
        rhs = kron(matmul(a, c), matmul(b, d))
        assert max_abs(lhs - rhs) <= 1e-12


class TestDagger:
    def test_identity(self):
        np.testing.assert_array_equal(dagger(I2), I2)

    def test_hermitian_fixed_point(self):
        np.testing.assert_array_equal(dagger(SIGMA2), SIGMA2)

    def test_conjugate_transpose(self):
        m = cmatrix([[0, 1j], [0, 0]])
        np.testing.assert_array_equal(dagger(m), cmatrix([[0, 0], [-1j, 0]]))

    @settings(deadline=None)
    @given(complex_matrices(4))
    def test_involution_exact(self, a):
        np.testing.assert_array_equal(dagger(dagger(a)), a)


class TestTraceAndElementwise:
    def test_trace_identity(self):
        assert trace(I4) == 4.0

    def test_trace_pauli(self):
        assert trace(SIGMA1) == 0.0

    @settings(deadline=None)
    @given(complex_matrices(2))
    def test_trace_of_appended_block(self, m):
        # tr((|0><0| kron m)) computed two ways
        assert abs(trace(kron(KET0, m)) - trace(m)) <= 1e-12

    def test_add_zero(self):
        m = cmatrix([[1, 2j], [3, 4]])
        np.testing.assert_array_equal(add(m, scale(m, 0.0)), m)

    def test_pauli_combination_is_projector(self):
        np.testing.assert_allclose(add(scale(I2, 0.5), scale(SIGMA3, 0.5)), KET0, atol=0)

    def test_sub_self_is_zero(self):
        np.testing.assert_array_equal(sub(SIGMA1, SIGMA1), np.zeros((2, 2)))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            add(I2, I4)
        with pytest.raises(ValueError):
            sub(I4, I2)


class TestPredicates:
    def test_unitary_examples(self):
        assert is_unitary(I2, 1e-9)
        assert is_unitary(SIGMA2, 1e-9)
        assert not is_unitary(cmatrix([[1, 0], [0, 0.5]]), 1e-9)

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            is_unitary(I2, 0.0)
        with pytest.raises(ValueError):
            is_density(I2, -1e-9)

    def test_hermitian(self):
        assert is_hermitian(SIGMA2, 1e-12)
        assert not is_hermitian(cmatrix([[0, 1], [0, 0]]), 1e-12)

    def test_density_examples(self):
        assert is_density(scale(I2, 0.5), 1e-9)
        # trace-1 Hermitian with one eigenvalue pushed below -tol
        perturbed = cmatrix([[1.0 + 5e-9, 0.0], [0.0, -5e-9]])
        assert not is_density(perturbed, 1e-9)
        assert not is_density(cmatrix([[0.6, 0], [0, 0.6]]), 1e-9)  # trace 1.2
        assert not is_density(cmatrix([[1, 1], [0, 0]]), 1e-9)  # not Hermitian


class TestHermitianEig:
    def test_reconstruction_on_random_hermitian(self):
        rng = np.random.default_rng(1234)
        for _ in range(60):
            n = int(rng.choice([2, 4]))
            m = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
            herm = cmatrix((m + m.conj().T) / 2)
            w, v = hermitian_eig(herm)
            rebuilt = v @ np.diag(w) @ v.conj().T
            assert max_abs(rebuilt - herm) <= 1e-9
            assert max_abs(v @ v.conj().T - np.eye(n)) <= 1e-9
            assert np.all(np.diff(w) >= 0)
            # independent oracle for the eigenvalues themselves
            np.testing.assert_allclose(w, np.linalg.eigvalsh(herm), atol=1e-10)

    def test_diagonal_input_is_fixed_point(self):
        w, v = hermitian_eig(cmatrix(np.diag([3.0, -1.0, 0.5, 2.0])))
        np.testing.assert_allclose(w, [-1.0, 0.5, 2.0, 3.0], atol=0)
        np.testing.assert_allclose(np.abs(v[np.abs(v) > 0.5]), 1.0, atol=0)
