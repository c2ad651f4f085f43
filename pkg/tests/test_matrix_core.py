import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlalgebra.errors import (
    ConvergenceError,
    PreconditionError,
    ShapeError,
    SiteIndexError,
    SizeError,
)
from tlalgebra.matrix_core import (
    dagger,
    embed_site,
    hermitian_eigenvalues,
    kron,
    partial_transpose,
    trace_norm_hermitian,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_hermitian(rng, n):
    a = random_complex(rng, n, n)
    return (a + a.conj().T) / 2


def ghz3():
    psi = np.zeros(9, dtype=complex)
    psi[[0, 4, 8]] = 1 / np.sqrt(3)
    return psi


def kron_by_loops(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def partial_transpose_by_loops(rho, n):
    out = np.zeros_like(rho)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    out[a * n + b, c * n + d] = rho[c * n + b, a * n + d]
    return out


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_scalar_unit(self):
        a = random_complex(np.random.default_rng(0), 3, 2)
        np.testing.assert_array_equal(kron(a, [[1]]), a)

    def test_signed_diagonals(self):
        z = np.diag([1, -1])
        np.testing.assert_array_equal(kron(z, z), np.diag([1, -1, -1, 1]))

    def test_matches_entrywise_definition(self):
        rng = np.random.default_rng(1)
        a, b = random_complex(rng, 2, 3), random_complex(rng, 3, 2)
        np.testing.assert_allclose(kron(a, b), kron_by_loops(a, b), atol=1e-15)

    @pytest.mark.parametrize("seed", range(5))
    def test_associativity(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = random_complex(rng, 2, 2), random_complex(rng, 3, 3), random_complex(rng, 2, 3)
        lhs = kron(kron(a, b), c)
        rhs = kron(a, kron(b, c))
        assert np.max(np.abs(lhs - rhs)) < 1e-14

    def test_size_cap(self):
        with pytest.raises(SizeError):
            kron(np.eye(64), np.eye(65))


class TestDagger:
    def test_identity(self):
        np.testing.assert_array_equal(dagger(np.eye(3)), np.eye(3))

    def test_conjugates(self):
        assert dagger([[1j]])[0, 0] == -1j

    def test_involution(self):
        a = random_complex(np.random.default_rng(2), 4, 3)
        np.testing.assert_array_equal(dagger(dagger(a)), a)


class TestEigen:
    def test_diagonal(self):
        res = hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(res.eigenvalues, [1, 2, 3], atol=1e-14)

    def test_pauli_x(self):
        np.testing.assert_allclose(hermitian_eigenvalues(X).eigenvalues, [-1, 1], atol=1e-14)

    def test_partial_transpose_of_maximally_entangled(self):
        rho_pt = partial_transpose(np.outer(ghz3(), ghz3().conj()), 3)
        lam = hermitian_eigenvalues(rho_pt).eigenvalues
        # brute-force oracle
        oracle = np.linalg.eigvalsh(rho_pt)
        np.testing.assert_allclose(oracle, [-1 / 3] * 3 + [1 / 3] * 6, atol=1e-14)
        np.testing.assert_allclose(lam, oracle, atol=1e-13)
        assert abs(np.trace(rho_pt) - 1) < 1e-14

    @pytest.mark.parametrize("n", [2, 5, 9, 27])
    def test_against_lapack(self, n):
        rng = np.random.default_rng(n)
        m = random_hermitian(rng, n)
        res = hermitian_eigenvalues(m, vectors=True)
        np.testing.assert_allclose(res.eigenvalues, np.linalg.eigvalsh(m), atol=1e-12)
        assert res.residual < 1e-11
        v = res.eigenvectors
        np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_trace_and_permutation_invariance(self, seed):
        rng = np.random.default_rng(seed)
        m = random_hermitian(rng, 9)
        lam = hermitian_eigenvalues(m).eigenvalues
        assert abs(lam.sum() - np.trace(m).real) < 1e-11
        p = np.eye(9)[rng.permutation(9)]
        np.testing.assert_allclose(hermitian_eigenvalues(p @ m @ p.T).eigenvalues, lam, atol=1e-12)

    def test_degenerate_spectrum(self):
        u = np.linalg.qr(random_complex(np.random.default_rng(7), 6, 6))[0]
        m = u @ np.diag([1, 1, 1, -2, -2, 5]) @ u.conj().T
        m = (m + m.conj().T) / 2
        np.testing.assert_allclose(hermitian_eigenvalues(m).eigenvalues, [-2, -2, 1, 1, 1, 5],
                                   atol=1e-12)

    def test_non_square(self):
        with pytest.raises(ShapeError):
            hermitian_eigenvalues(np.zeros((2, 3)))

    def test_non_hermitian(self):
        with pytest.raises(PreconditionError):
            hermitian_eigenvalues([[0, 1], [0, 0]])

    def test_sweep_cap(self):
        m = random_hermitian(np.random.default_rng(3), 8)
        with pytest.raises(ConvergenceError):
            hermitian_eigenvalues(m, max_sweeps=1)


class TestTraceNorm:
    def test_identity(self):
        assert trace_norm_hermitian(np.eye(3)) == pytest.approx(3, abs=1e-14)

    def test_mixed_signs(self):
        assert trace_norm_hermitian(np.diag([1.0, -2.0])) == pytest.approx(3, abs=1e-14)

    def test_maximally_entangled(self):
        rho_pt = partial_transpose(np.outer(ghz3(), ghz3().conj()), 3)
        assert trace_norm_hermitian(rho_pt) == pytest.approx(3, abs=1e-13)


class TestPartialTranspose:
    def test_identity(self):
        np.testing.assert_array_equal(partial_transpose(np.eye(9), 3), np.eye(9))

    def test_involution(self):
        rho = random_complex(np.random.default_rng(4), 9, 9)
        np.testing.assert_array_equal(partial_transpose(partial_transpose(rho, 3), 3), rho)

    def test_matches_entrywise_definition(self):
        rho = random_complex(np.random.default_rng(5), 16, 16)
        np.testing.assert_array_equal(partial_transpose(rho, 4), partial_transpose_by_loops(rho, 4))

    def test_maximally_entangled_gives_swap(self):
        swap = np.zeros((9, 9))
        for a in range(3):
            for b in range(3):
                swap[a * 3 + b, b * 3 + a] = 1
        rho = np.outer(ghz3(), ghz3().conj())
        np.testing.assert_allclose(partial_transpose(rho, 3), swap / 3, atol=1e-15)

    def test_first_factor_convention(self):
        # |0><1| (x) |0><0| -> |1><0| (x) |0><0|
        rho = np.zeros((4, 4))
        rho[0, 2] = 1
        out = partial_transpose(rho, 2)
        assert out[2, 0] == 1 and np.count_nonzero(out) == 1

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_preserves_trace_and_hermiticity(self, seed):
        rng = np.random.default_rng(seed)
        a = random_complex(rng, 9, 9)
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        out = partial_transpose(rho, 3)
        assert abs(np.trace(out) - 1) < 1e-14
        assert np.max(np.abs(out - out.conj().T)) < 1e-15

    def test_bad_shape(self):
        with pytest.raises(ShapeError):
            partial_transpose(np.eye(8), 3)


class TestEmbedSite:
    def test_two_strands(self):
        u = random_complex(np.random.default_rng(6), 9, 9)
        np.testing.assert_array_equal(embed_site(u, 1, 2, 3), u)

    def test_identity(self):
        np.testing.assert_array_equal(embed_site(np.eye(9), 1, 3, 3), np.eye(27))

    def test_middle_site(self):
        xx = np.kron(X, X)
        np.testing.assert_array_equal(embed_site(xx, 2, 3, 2), kron_by_loops(np.eye(2), xx))

    @pytest.mark.parametrize("seed", range(3))
    def test_far_sites_commute(self, seed):
        rng = np.random.default_rng(seed)
        u, v = random_complex(rng, 4, 4), random_complex(rng, 4, 4)
        a, b = embed_site(u, 1, 5, 2), embed_site(v, 3, 5, 2)
        assert np.max(np.abs(a @ b - b @ a)) < 1e-13
        c = embed_site(v, 4, 5, 2)
        assert np.max(np.abs(a @ c - c @ a)) < 1e-13

    @pytest.mark.parametrize("site", [0, 3])
    def test_site_range(self, site):
        with pytest.raises(SiteIndexError):
            embed_site(np.eye(4), site, 3, 2)

    def test_strand_budget(self):
        with pytest.raises(SizeError):
            embed_site(np.eye(9), 1, 8, 3)
