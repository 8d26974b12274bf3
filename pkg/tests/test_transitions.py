import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dressed_cqed import analytic, transitions
from dressed_cqed.model import ModelParams, ket_index, product_to_coupled
from dressed_cqed.numeric import oracle_spectrum
from dressed_cqed.transitions import (
    BathModel,
    SpectralDensity,
    damping_ratio,
    golden_rule_ratio,
    rabi_splitting,
    selection_rules,
    transition_amplitude,
)

REF = ModelParams(4.0, 4.0, 4.0, 2.0, n_max=12)


def brute_lowering(g1, g2, n_max):
    """g1 sigma-1 + g2 sigma-2 on the full space, built in the product basis."""
    sm = np.array([[0.0, 0.0], [1.0, 0.0]])
    spin = g1 * np.kron(sm, np.eye(2)) + g2 * np.kron(np.eye(2), sm)
    full = np.kron(np.eye(n_max + 1), spin)
    U = product_to_coupled(n_max)
    return U.T @ full @ U


def basis(photon, spin, n_max=REF.n_max):
    v = np.zeros(4 * (n_max + 1))
    v[ket_index(photon, spin)] = 1.0
    return v


class TestAmplitudes:
    def test_collective_lowering_keeps_singlet_dark(self):
        assert transition_amplitude(basis(0, "psi-"), basis(0, "psi+"), "S-") == 0.0
        assert transition_amplitude(basis(0, "psi-"), basis(0, "dd"), "S-") == 0.0

    def test_single_qubit_lowering_from_singlet(self):
        amp = transition_amplitude(basis(0, "psi-"), basis(0, "dd"), "sigma-1")
        assert amp == pytest.approx(1 / math.sqrt(2), rel=1e-15)
        amp2 = transition_amplitude(basis(0, "psi-"), basis(0, "dd"), "sigma-2")
        assert amp2 == pytest.approx(-1 / math.sqrt(2), rel=1e-15)

    def test_w1_lower_state_to_ground(self):
        w1 = analytic.w1_eigensystem(REF)
        w0 = analytic.w0_state(REF)
        half = w1.theta / 2
        # S-|psi+> = sqrt(2)|dd>; only the |0,psi+> component contributes
        assert transition_amplitude(w1.minus, w0, "S-") == pytest.approx(math.sqrt(2) * math.cos(half), rel=1e-14)
        assert transition_amplitude(w1.plus, w0, "S-") == pytest.approx(math.sqrt(2) * math.sin(half), rel=1e-14)

    def test_against_oracle_eigenvectors(self):
        spec = oracle_spectrum(REF)
        w1_states = sorted((s for s in spec.states if s.block == "W1"), key=lambda s: s.energy)
        (w0,) = [s for s in spec.states if s.block == "W0"]
        M = brute_lowering(1.0, 1.0, REF.n_max)
        ana = analytic.w1_eigensystem(REF)
        for oracle_state, ana_state in zip(w1_states, ana.states):
            brute = w0.vector @ M @ oracle_state.vector
            exact = transition_amplitude(ana_state, analytic.w0_state(REF), "S-")
            assert abs(abs(brute) - abs(exact)) <= 1e-9

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(["sigma-1", "sigma-2", "S-", "A-"]))
    def test_hermiticity(self, seed, op):
        rng = np.random.default_rng(seed)
        a, b = rng.normal(size=(2, REF.dim))
        raised = op.replace("-", "+")
        assert transition_amplitude(a, b, op) == pytest.approx(transition_amplitude(b, a, raised), rel=1e-12, abs=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(-2, 2), st.floats(-2, 2))
    def test_matches_brute_force(self, seed, g1, g2):
        rng = np.random.default_rng(seed)
        a, b = rng.normal(size=(2, REF.dim))
        fast = transition_amplitude(a, b, transitions.bath_lowering(g1, g2))
        assert fast == pytest.approx(b @ brute_lowering(g1, g2, REF.n_max) @ a, rel=1e-12, abs=1e-12)

    def test_basis_mismatch(self):
        with pytest.raises(ValueError):
            transition_amplitude(np.ones(8), np.ones(12), "S-")


def low_states(params, n_top):
    """Analytic states on blocks whose photon content stays at or below ``n_top + 1``."""
    return [s for s in analytic.all_states(params) if (s.n <= n_top)]


class TestSelectionRules:
    def test_symmetric_dark_state(self):
        states = low_states(REF, 10)
        records = selection_rules(states, 1.0, 1.0)
        cross = [r for r in records if r.crosses_sectors]
        assert cross
        assert not any(r.allowed for r in cross)
        assert max(abs(r.amplitude) for r in cross) <= 1e-12

    def test_asymmetric_opens_singlet(self):
        s0 = analytic.singlet_state(REF, 0)
        w0 = analytic.w0_state(REF)
        (rec,) = [r for r in selection_rules([s0, w0], 1.0, 0.0) if r.source is s0]
        assert rec.allowed
        assert rec.amplitude == pytest.approx(1 / math.sqrt(2), rel=1e-15)

    def test_within_triplet_allowed(self):
        p = REF
        phi1m = analytic.wn_eigensystem(p, 1)["-"]
        phi0m = analytic.w1_eigensystem(p).minus
        (rec,) = [r for r in selection_rules([phi1m, phi0m]) if r.source is phi1m]
        assert rec.allowed
        M = brute_lowering(1.0, 1.0, p.n_max)
        assert rec.amplitude == pytest.approx(phi0m.vector() @ M @ phi1m.vector(), rel=1e-12)

    def test_oracle_and_analytic_agree(self):
        spec = oracle_spectrum(REF)
        M = brute_lowering(1.0, 0.3, REF.n_max)
        s0 = [s for s in spec.states if s.block == "S0"][0]
        w0 = [s for s in spec.states if s.block == "W0"][0]
        brute = abs(w0.vector @ M @ s0.vector)
        exact = abs(transition_amplitude(analytic.singlet_state(REF, 0), analytic.w0_state(REF), transitions.bath_lowering(1.0, 0.3)))
        assert abs(brute - exact) <= 1e-9


class TestRabi:
    def test_strong_coupling(self):
        assert rabi_splitting(ModelParams(4, 4, 4.0, 2.0)) == pytest.approx(0.4721359549995794, rel=1e-14)

    def test_weak_coupling(self):
        assert rabi_splitting(ModelParams(4, 4, 4.0, 0.2)) * 1e3 == pytest.approx(4.99687890015732, rel=1e-12)

    def test_zero(self):
        assert rabi_splitting(ModelParams(4, 4, 4.0, 0.0)) == 0.0

    def test_monotone_and_bounded(self):
        gs = np.linspace(0.001, 1.0, 200)
        vals = [rabi_splitting(ModelParams(4, 4, 4.0, g)) for g in gs]
        assert np.all(np.diff(vals) > 0)
        assert all(v <= g**2 / 8.0 for v, g in zip(vals, gs))

    def test_equals_excited_level_gap(self):
        # |0,psi-> at -J and phi_0^(-) at -sqrt(J^2+g^2), both decaying to |0,dd>
        p = REF
        gap = analytic.singlet_level(p, 0) - analytic.w1_eigensystem(p).minus.energy
        assert rabi_splitting(p) == pytest.approx(gap, rel=1e-14)


class TestDamping:
    P = ModelParams(12.0, 12.0, 4.0, 2.0, n_max=12)

    def test_reference_value(self):
        r = damping_ratio(self.P, BathModel.uniform(1.0, 0.0))
        assert r.value == pytest.approx(0.05278640450004206, rel=1e-13)
        assert r.omega1 == pytest.approx(12 - 4 - math.sqrt(20), rel=1e-14)
        assert r.omega2 == 12.0

    def test_zero_coupling_extinguishes_line_one(self):
        p = ModelParams(12.0, 12.0, 4.0, 0.0, n_max=4)
        assert damping_ratio(p, BathModel.uniform(1.0, 0.0)).value == 0.0

    def test_symmetric_is_forbidden(self):
        r = damping_ratio(self.P, BathModel.uniform(0.7, 0.7))
        assert r.forbidden
        assert "forbidden" in r.reason

    def test_empty_density_is_forbidden(self):
        bath = BathModel(1.0, 0.0, SpectralDensity("flat", 1.0), SpectralDensity("flat", 0.0))
        assert damping_ratio(self.P, bath).forbidden

    def test_ohmic_negative_frequency(self):
        p = ModelParams(4.0, 4.0, 4.0, 2.0, n_max=4)  # w1 = 4 - 4 - sqrt(20) < 0
        with pytest.raises(ValueError):
            damping_ratio(p, BathModel.uniform(1.0, 0.0, "ohmic"))

    @pytest.mark.parametrize("lam", [0.1, 3.0, 17.0])
    def test_common_scale_invariance(self, lam):
        base = damping_ratio(self.P, BathModel.uniform(1.0, 0.4)).value
        scaled = damping_ratio(self.P, BathModel.uniform(lam, 0.4 * lam)).value
        assert scaled == pytest.approx(base, rel=1e-13)

    def test_frequency_dependent_couplings(self):
        bath = BathModel(lambda w: 1.0 + 0.01 * w, lambda w: 0.5, SpectralDensity(), SpectralDensity())
        r = damping_ratio(self.P, bath)
        w1, w2 = r.omega1, r.omega2
        expected = (math.sin(math.atan(0.5) / 2) * (1.5 + 0.01 * w1) / (0.5 + 0.01 * w2)) ** 2
        assert r.value == pytest.approx(expected, rel=1e-13)

    def test_golden_rule_with_oracle_states(self):
        bath = BathModel.uniform(1.0, 0.0)
        formula = damping_ratio(self.P, bath).value
        upper = golden_rule_ratio(self.P, bath, branch="+")
        lower = golden_rule_ratio(self.P, bath, branch="-")
        # the formula's sin(theta/2) is the |0,psi+> weight of the upper W1 state
        assert upper.value == pytest.approx(formula, rel=1e-9)
        assert lower.value == pytest.approx(math.cos(math.atan(0.5) / 2) ** 2, rel=1e-9)
        assert golden_rule_ratio(self.P, bath, "-", oracle=False).value == pytest.approx(lower.value, rel=1e-12)

    def test_golden_rule_symmetric_forbidden(self):
        assert golden_rule_ratio(self.P, BathModel.uniform(1.0, 1.0)).forbidden
