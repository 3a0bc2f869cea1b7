import numpy as np
import pytest
from numpy.testing import assert_allclose

from hybridmimo import gram_inverse, psd_sqrt
from hybridmimo.channels import Rng, SystemConfig
from hybridmimo.errors import NegativeEigenvalue, NotHermitian, SingularMatrix
from hybridmimo.feedback import empirical_correlation
from hybridmimo.linalg import hermitian_eigh


def adjugate_inverse(a):
    """3x3 inverse via cofactors; independent of the elimination path."""
    c = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
            c[j, i] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    det = a[0, 0] * c[0, 0] + a[0, 1] * c[1, 0] + a[0, 2] * c[2, 0]
    return c / det


class TestGramInverse:
    def test_identity(self):
        assert_allclose(gram_inverse(np.eye(4, dtype=complex)), np.eye(4), atol=1e-14)

    def test_scaled_identity(self):
        assert_allclose(gram_inverse(2.0 * np.eye(2)), 0.25 * np.eye(2), atol=1e-14)

    def test_random_residual_and_adjugate(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            g += 2 * np.eye(3)
            x = gram_inverse(g)
            gram = g.conj().T @ g
            assert np.linalg.norm(gram @ x - np.eye(3)) <= 1e-10 * 3
            assert_allclose(x, adjugate_inverse(gram), rtol=1e-9, atol=1e-11)

    def test_residual_bound_many_sizes(self):
        rng = np.random.default_rng(11)
        for k in (1, 2, 4, 8, 16, 64):
            g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            g += 2 * np.eye(k)
            x = gram_inverse(g)
            gram = g.conj().T @ g
            assert np.linalg.norm(gram @ x - np.eye(k)) <= 1e-10 * k

    def test_singular_rejected(self):
        g = np.ones((3, 3), dtype=complex)
        with pytest.raises(SingularMatrix):
            gram_inverse(g)

    def test_ill_conditioned_rejected(self):
        # cond(G^H G) = (1e4/1e-4)^2 = 1e16 > 1e12
        g = np.diag([1e4, 1e-4]).astype(complex)
        with pytest.raises(SingularMatrix):
            gram_inverse(g)


class TestPsdSqrt:
    def test_diagonal(self):
        s = psd_sqrt(np.diag([4.0, 1.0]))
        assert_allclose(s, np.diag([2.0, 1.0]), atol=1e-12)

    def test_identity(self):
        assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-12)

    def test_diag_exactness(self):
        d = np.array([0.0, 0.25, 2.0, 9.0])
        assert_allclose(psd_sqrt(np.diag(d)), np.diag(np.sqrt(d)), atol=1e-12)

    def test_random_psd_squares_back(self):
        rng = np.random.default_rng(12)
        for k in (2, 4, 8):
            b = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            r = b @ b.conj().T
            s = psd_sqrt(r)
            assert np.linalg.norm(s @ s - r) <= 1e-8 * np.linalg.norm(r)
            assert np.abs(s - s.conj().T).max() <= 1e-10

    def test_empirical_correlation_sqrt(self):
        # shaped by a real sampled effective-channel correlation
        cfg = SystemConfig(m=64, k=4, p=1.0, b1=3, structure="sub")
        r = empirical_correlation(cfg, 0, 100_000, Rng(99).generator(0)).r
        s = psd_sqrt(r)
        assert np.linalg.norm(s @ s - r) <= 1e-8 * np.linalg.norm(r)

    def test_not_hermitian(self):
        r = np.array([[1.0, 0.5], [0.0, 1.0]], dtype=complex)
        with pytest.raises(NotHermitian):
            psd_sqrt(r)

    def test_negative_eigenvalue(self):
        with pytest.raises(NegativeEigenvalue):
            psd_sqrt(np.diag([1.0, -1e-3]))
        v = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        r = v @ np.diag([1.0, -1e-3]) @ v.T
        with pytest.raises(NegativeEigenvalue):
            psd_sqrt(r.astype(complex))

    def test_tiny_negative_clamped(self):
        s = psd_sqrt(np.diag([1.0, -1e-8]))
        assert_allclose(s, np.diag([1.0, 0.0]), atol=1e-12)


def test_hermitian_eigh_rejects_asymmetric():
    with pytest.raises(NotHermitian):
        hermitian_eigh(np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex))
