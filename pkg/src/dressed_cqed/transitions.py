"""Bath-induced transitions between dressed states.

The bath couples to each qubit through its own ladder operator,
``H_p = sum_k (g1 sigma+1 + g2 sigma+2) a_k + h.c.``. Emission into the bath
is governed by ``g1 sigma-1 + g2 sigma-2 = G+/2 S- + G-/2 (sigma-1 - sigma-2)``
with ``G+- = g1 +- g2``; the resonator photon number is left untouched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import analytic
from .analytic import DressedState
from .model import ModelParams, embed_spin, spin_operator

ALLOWED_TOL = 1e-12

Coupling = Union[float, Callable[[float], float]]


@dataclass(frozen=True)
class SpectralDensity:
    """``rho(w) = scale`` (flat) or ``rho(w) = scale * w`` (ohmic), for ``w >= 0``."""

    shape: str = "flat"
    scale: float = 1.0

    def __post_init__(self):
        if self.shape not in ("flat", "ohmic"):
            raise ValueError(f"unknown spectral density shape {self.shape!r}")
        if self.scale < 0:
            raise ValueError("spectral density scale must be non-negative")

    def __call__(self, w: float) -> float:
        if w < 0:
            raise ValueError(f"spectral density evaluated at negative frequency {w}")
        return self.scale if self.shape == "flat" else self.scale * w


@dataclass(frozen=True)
class BathModel:
    g1: Coupling = 1.0
    g2: Coupling = 1.0
    rho1: SpectralDensity = SpectralDensity()
    rho2: SpectralDensity = SpectralDensity()

    @classmethod
    def uniform(cls, g1: Coupling, g2: Coupling, shape: str = "flat", scale: float = 1.0) -> "BathModel":
        rho = SpectralDensity(shape, scale)
        return cls(g1, g2, rho, rho)

    def couplings(self, w: float) -> tuple[float, float]:
        g1 = self.g1(w) if callable(self.g1) else self.g1
        g2 = self.g2(w) if callable(self.g2) else self.g2
        return float(g1), float(g2)

    def G_plus(self, w: float) -> float:
        g1, g2 = self.couplings(w)
        return g1 + g2

    def G_minus(self, w: float) -> float:
        g1, g2 = self.couplings(w)
        return g1 - g2

    def symmetric_at(self, w: float) -> bool:
        return self.G_minus(w) == 0.0


# -- matrix elements ---------------------------------------------------------


def _as_vector(state) -> np.ndarray:
    if isinstance(state, DressedState):
        return state.vector()
    if hasattr(state, "vector"):
        return np.asarray(state.vector)
    return np.asarray(state)


def bath_lowering(g1: float, g2: float) -> np.ndarray:
    """``g1 sigma-1 + g2 sigma-2`` on the 4-dim spin space (coupled basis)."""
    return g1 * spin_operator("sigma-1") + g2 * spin_operator("sigma-2")


def _matrix_element(v_from: np.ndarray, v_to: np.ndarray, op4: np.ndarray) -> complex:
    if v_from.shape != v_to.shape or v_from.size % 4:
        raise ValueError(f"basis mismatch: {v_from.shape} vs {v_to.shape}")
    # kron(I_fock, op4) acting on a vector reshaped to (photon, spin)
    moved = (v_from.reshape(-1, 4) @ op4.T).ravel()
    return np.vdot(v_to, moved)


def transition_amplitude(from_state, to_state, op: str | np.ndarray) -> float:
    """``<to| O |from>`` for a spin operator ``O`` (label or 4x4 matrix)."""
    op4 = spin_operator(op) if isinstance(op, str) else np.asarray(op)
    amp = _matrix_element(_as_vector(from_state), _as_vector(to_state), op4)
    if abs(amp.imag) > 1e-14 * max(1.0, abs(amp)):
        return complex(amp)
    return float(amp.real)


@dataclass(frozen=True)
class TransitionRecord:
    source: object
    target: object
    operator: str
    amplitude: float

    @property
    def allowed(self) -> bool:
        return abs(self.amplitude) > ALLOWED_TOL

    @property
    def crosses_sectors(self) -> bool:
        return _sector(self.source) != _sector(self.target)


def _sector(state) -> str:
    if isinstance(state, DressedState):
        return state.sector
    return "singlet" if str(getattr(state, "block", "")).startswith("S") else "triplet"


def selection_rules(states, g1: float = 1.0, g2: float = 1.0) -> list[TransitionRecord]:
    """Emission amplitudes ``<to|g1 sigma-1 + g2 sigma-2|from>`` over all ordered pairs.

    ``states`` may mix analytic ``DressedState`` objects and oracle states.
    With ``g1 == g2`` the operator is collective and every singlet/triplet
    element vanishes identically.
    """
    label = "S-" if g1 == g2 else "bath"
    op4 = bath_lowering(g1, g2)
    vecs = [_as_vector(s) for s in states]
    records = []
    for i, src in enumerate(states):
        for j, dst in enumerate(states):
            if i == j:
                continue
            amp = _matrix_element(vecs[i], vecs[j], op4)
            records.append(TransitionRecord(src, dst, label, float(amp.real)))
    return records


def dressed_operator(states, op: str | np.ndarray) -> np.ndarray:
    """Matrix of ``op`` between the given states, ``M[i, j] = <i|op|j>``."""
    op4 = spin_operator(op) if isinstance(op, str) else np.asarray(op)
    V = np.column_stack([_as_vector(s) for s in states])
    n_max = V.shape[0] // 4 - 1
    return V.T @ embed_spin(op4, n_max) @ V


# -- line splitting and widths ----------------------------------------------


def rabi_splitting(params: ModelParams) -> float:
    """Separation ``sqrt(J^2 + g^2) - J`` of the two emission peaks into ``|0,dd>``."""
    J, g = params.J, params.g
    R = math.hypot(J, g)
    return g * g / (R + J) if J > 0 else R - J


@dataclass(frozen=True)
class DampingRatio:
    """Outcome of a line-width ratio; ``value`` is ``None`` when forbidden."""

    value: float | None
    omega1: float
    omega2: float
    reason: str = ""

    @property
    def forbidden(self) -> bool:
        return self.value is None


def emission_frequencies(params: ModelParams, omega_ref: float | None = None) -> tuple[float, float]:
    """``w_l = w - (2 - l)(J + sqrt(J^2 + g^2))`` for ``l = 1, 2``."""
    w = params.omega if omega_ref is None else omega_ref
    shift = params.J + math.hypot(params.J, params.g)
    return w - shift, w


def damping_ratio(params: ModelParams, bath: BathModel, omega_ref: float | None = None) -> DampingRatio:
    """``gamma1/gamma2 = [sin(theta/2) G+(w1) rho1(w1) / (G-(w2) rho2(w2))]^2``.

    gamma1 is ``phi_0^(-) -> |0,dd>``, gamma2 is ``|0,psi-> -> |0,dd>``.
    A vanishing denominator means transition 2 is dark; that is reported as
    a forbidden outcome instead of an infinite ratio.
    """
    w1, w2 = emission_frequencies(params, omega_ref)
    theta = analytic.mixing_angle(params.J, params.g)
    g_minus = bath.G_minus(w2)
    if g_minus == 0.0:
        return DampingRatio(None, w1, w2, "transition 2 forbidden: symmetric coupling (G- = 0)")
    r2 = bath.rho2(w2)
    if r2 == 0.0:
        return DampingRatio(None, w1, w2, "transition 2 forbidden: rho2(w2) = 0")
    r1 = bath.rho1(w1)
    value = (math.sin(theta / 2.0) * bath.G_plus(w1) * r1 / (g_minus * r2)) ** 2
    return DampingRatio(value, w1, w2)


def golden_rule_rate(initial, final, bath: BathModel, density: SpectralDensity, energy_gap: float) -> float:
    """``2 pi |<f| g1 sigma-1 + g2 sigma-2 |i>|^2 rho(w)`` at the emitted frequency."""
    g1, g2 = bath.couplings(energy_gap)
    amp = transition_amplitude(initial, final, bath_lowering(g1, g2))
    return 2.0 * math.pi * abs(amp) ** 2 * density(energy_gap)


def golden_rule_ratio(params: ModelParams, bath: BathModel, branch: str = "-", oracle: bool = True) -> DampingRatio:
    """First-order rate ratio from explicit dressed eigenvectors.

    ``branch`` picks which W1 state decays in path 1. Each rate uses the
    actual energy gap to ``|0,dd>``. With ``oracle=True`` the eigenvectors come
    from brute-force diagonalization instead of the closed forms.
    """
    if branch not in ("-", "+"):
        raise ValueError("branch must be '-' or '+'")
    if oracle:
        from .numeric import oracle_spectrum

        spec = oracle_spectrum(params)
        w1_states = sorted((s for s in spec.states if s.block == "W1"), key=lambda s: s.energy)
        (w0,) = [s for s in spec.states if s.block == "W0"]
        (s0,) = [s for s in spec.states if s.block == "S0"]
        upper = w1_states[0] if branch == "-" else w1_states[1]
    else:
        w1 = analytic.w1_eigensystem(params)
        upper = w1.minus if branch == "-" else w1.plus
        w0 = analytic.w0_state(params)
        s0 = analytic.singlet_state(params, 0)
    gap1 = upper.energy - w0.energy
    gap2 = s0.energy - w0.energy
    rate2 = golden_rule_rate(s0, w0, bath, bath.rho2, gap2)
    if rate2 == 0.0:
        return DampingRatio(None, gap1, gap2, "transition 2 forbidden: zero golden-rule rate")
    rate1 = golden_rule_rate(upper, w0, bath, bath.rho1, gap1)
    return DampingRatio(rate1 / rate2, gap1, gap2)
