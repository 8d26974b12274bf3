import math
import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dressed_cqed import numeric
from dressed_cqed.model import ModelParams, hamiltonian_matrix, ket_index
from dressed_cqed.numeric import (
    eigensolve_symmetric,
    evolve,
    oracle_spectrum,
    random_state,
    singlet_population,
)

SEED = int(os.environ.get("DRESSED_SEED", "20240611"))


def check_decomposition(A, dec, tol=1e-10):
    V, E = dec.eigenvectors, dec.eigenvalues
    assert np.all(np.diff(E) >= 0)
    scale = max(np.linalg.norm(A), 1.0)
    assert np.linalg.norm(A @ V - V * E) <= tol * scale
    assert np.max(np.abs(V.T @ V - np.eye(len(E)))) <= 1e-11


class TestJacobi:
    def test_identity(self):
        dec = eigensolve_symmetric(np.eye(5))
        np.testing.assert_array_equal(dec.eigenvalues, np.ones(5))
        np.testing.assert_array_equal(dec.eigenvectors, np.eye(5))

    def test_two_by_two(self):
        dec = eigensolve_symmetric([[-4.0, 2.0], [2.0, 4.0]])
        np.testing.assert_allclose(dec.eigenvalues, [-math.sqrt(20), math.sqrt(20)], rtol=1e-14)

    def test_random_50(self):
        rng = np.random.default_rng(SEED)
        A = rng.normal(size=(50, 50))
        A = A + A.T
        dec = eigensolve_symmetric(A)
        check_decomposition(A, dec)
        assert np.linalg.norm(dec.reconstruct() - A) <= 1e-10 * np.linalg.norm(A)
        # cross-check against LAPACK only for the eigenvalues
        np.testing.assert_allclose(dec.eigenvalues, np.linalg.eigvalsh(A), atol=1e-11 * np.linalg.norm(A))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 12), st.integers(0, 2**32 - 1))
    def test_random_property(self, n, seed):
        rng = np.random.default_rng(seed)
        A = rng.normal(size=(n, n))
        A = A + A.T
        check_decomposition(A, eigensolve_symmetric(A))

    def test_degenerate(self):
        Q, _ = np.linalg.qr(np.random.default_rng(SEED).normal(size=(6, 6)))
        A = Q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0, -3.0]) @ Q.T
        A = 0.5 * (A + A.T)
        dec = eigensolve_symmetric(A)
        check_decomposition(A, dec)
        np.testing.assert_allclose(dec.eigenvalues, [-3, 1, 1, 1, 2, 2], atol=1e-12)

    def test_deterministic(self):
        A = hamiltonian_matrix(ModelParams(1.0, 1.0, 1.0, 0.5, n_max=10))
        d1, d2 = eigensolve_symmetric(A), eigensolve_symmetric(A)
        np.testing.assert_array_equal(d1.eigenvalues, d2.eigenvalues)
        np.testing.assert_array_equal(d1.eigenvectors, d2.eigenvectors)

    @pytest.mark.parametrize("bad", [np.ones((2, 3)), np.array([[0.0, 1.0], [2.0, 0.0]]), np.ones(3)])
    def test_argument_errors(self, bad):
        with pytest.raises(ValueError):
            eigensolve_symmetric(bad)

    def test_nonconvergence_reported(self):
        A = np.random.default_rng(SEED).normal(size=(20, 20))
        with pytest.raises(numeric.ConvergenceError):
            eigensolve_symmetric(A + A.T, max_sweeps=1)


class TestOracleSpectrum:
    def test_decoupled_ladders(self):
        p = ModelParams(0.7, 1.3, 0.4, 0.0, n_max=6)
        spec = oracle_spectrum(p)
        ladders = [n * 1.3 + e for n in range(7) for e in (0.7 + 0.4, -0.4, -0.4, 0.4 - 0.7)]
        np.testing.assert_allclose(spec.eigenvalues, np.sort(ladders), atol=1e-14)

    def test_completeness_and_trace(self):
        p = ModelParams(4.0, 4.0, 4.0, 2.0, n_max=40)
        spec = oracle_spectrum(p)
        H = hamiltonian_matrix(p)
        assert len(spec.eigenvalues) == 164
        assert abs(spec.eigenvalues.sum() - np.trace(H)) <= 1e-9 * np.linalg.norm(H)
        check_decomposition(H, spec.decomposition)

    def test_every_state_labeled(self):
        spec = oracle_spectrum(ModelParams(4.0, 4.0, 4.0, 2.0, n_max=40))
        assert "edge" not in {s.block for s in spec.states}
        assert len(spec.block_energies("W5")) == 3

    def test_singlet_chain(self):
        p = ModelParams(4.0, 4.0, 4.0, 2.0, n_max=40)
        spec = oracle_spectrum(p)
        for n in range(41):
            (E,) = spec.block_energies(f"S{n}")
            assert abs(E - (n * p.omega - p.J)) <= 1e-12

    def test_degenerate_groups(self):
        assert numeric.degenerate_groups([0.0, 1e-12, 1.0, 2.0, 2.0]) == [[0, 1], [2], [3, 4]]


class TestEvolution:
    P = ModelParams(4.0, 4.0, 4.0, 2.0, n_max=12)

    def test_identity_at_zero(self):
        psi = random_state(12, np.random.default_rng(SEED))
        np.testing.assert_allclose(evolve(psi, self.P, 0.0), psi, atol=1e-13)

    def test_eigenstate_only_gains_phase(self):
        dec = numeric.decompose(self.P)
        v = dec.eigenvectors[:, 7].astype(complex)
        out = evolve(v, self.P, 3.7)
        np.testing.assert_allclose(np.abs(out) ** 2, np.abs(v) ** 2, atol=1e-12)
        np.testing.assert_allclose(out, np.exp(-1j * dec.eigenvalues[7] * 3.7) * v, atol=1e-11)

    def test_against_matrix_exponential(self):
        from scipy.linalg import expm

        psi = random_state(12, np.random.default_rng(SEED + 1))
        H = hamiltonian_matrix(self.P)
        np.testing.assert_allclose(evolve(psi, self.P, 0.37), expm(-1j * 0.37 * H) @ psi, atol=1e-10)

    def test_trapping_superposition(self):
        psi = np.zeros(self.P.dim, dtype=complex)
        psi[ket_index(0, "psi-")] = psi[ket_index(0, "psi+")] = 1 / math.sqrt(2)
        for t in np.linspace(0, 100 / self.P.g, 17):
            assert abs(singlet_population(evolve(psi, self.P, t)) - 0.5) <= 1e-9

    @pytest.mark.parametrize("t", [1.0, 1e2, 1e4])
    def test_unitarity(self, t):
        psi = random_state(12, np.random.default_rng(SEED + 2))
        assert abs(np.linalg.norm(evolve(psi, self.P, t)) - 1.0) <= 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            evolve(np.ones(self.P.dim), self.P, 1.0)

    def test_rejects_negative_time(self):
        psi = random_state(12, np.random.default_rng(SEED))
        with pytest.raises(ValueError):
            evolve(psi, self.P, -1.0)


class TestSingletPopulation:
    def basis_state(self, photon, spin, n_max=3):
        psi = np.zeros(4 * (n_max + 1))
        psi[ket_index(photon, spin)] = 1.0
        return psi

    def test_pure_singlet(self):
        assert singlet_population(self.basis_state(0, "psi-")) == 1.0

    def test_triplet(self):
        assert singlet_population(self.basis_state(0, "uu")) == 0.0

    def test_product_ket_up_down(self):
        # |ud> = (psi+ + psi-)/sqrt(2)
        psi = (self.basis_state(0, "psi+") + self.basis_state(0, "psi-")) / math.sqrt(2)
        assert singlet_population(psi) == pytest.approx(0.5, abs=1e-15)
