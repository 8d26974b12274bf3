"""Closed-form dressed spectrum, criticality structure and sweeps.

Labels follow the usual dressed-state notation: ``phi_n^(alpha)`` with
``alpha`` in ``s, 0, +, -``.

* ``phi_n^(s) = |n, psi->`` lives in block ``S<n>``.
* ``phi_0^(0) = |0, dd>`` is block ``W0``; ``phi_0^(+-)`` span ``W1``.
* For ``n >= 1``, ``phi_n^(0, +, -)`` span ``W<n+1>``.

Closed forms hold on resonance (``omega_a == omega``). Off resonance the
2x2/3x3 blocks are diagonalized directly and branches are assigned in
ascending energy order (``-``, ``0``, ``+``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import (
    COUPLED_SPINS,
    DD,
    PSI_MINUS,
    BasisKet,
    ModelParams,
    hamiltonian_matrix,
    ket_index,
    triplet_block_kets,
)

BRANCHES = ("s", "0", "+", "-")


@dataclass(frozen=True)
class DressedState:
    sector: str  # "singlet" or "triplet"
    n: int
    branch: str
    energy: float
    kets: tuple[BasisKet, ...]
    coefficients: np.ndarray
    n_max: int

    @property
    def block(self) -> str:
        if self.sector == "singlet":
            return f"S{self.n}"
        if self.n == 0 and self.branch == "0":
            return "W0"
        return f"W{self.n + 1}"

    @property
    def label(self) -> str:
        return f"phi_{self.n}^({self.branch})"

    @property
    def amplitudes(self) -> list[tuple[BasisKet, float]]:
        return list(zip(self.kets, self.coefficients.tolist()))

    def vector(self) -> np.ndarray:
        v = np.zeros(4 * (self.n_max + 1))
        v[[k.index for k in self.kets]] = self.coefficients
        return v


def _kets(pairs) -> tuple[BasisKet, ...]:
    return tuple(BasisKet(p, COUPLED_SPINS[s]) for p, s in pairs)


def _require_photon(params: ModelParams, photon: int, what: str) -> None:
    if photon > params.n_max:
        raise IndexError(f"{what} needs photon number {photon} > n_max={params.n_max}")


def N(n: int, J: float, g: float) -> float:
    """Dressed splitting ``sqrt(J^2 + (2n+1) g^2)``."""
    return math.sqrt(J * J + (2 * n + 1) * g * g)


def _n_minus_plus_j(n: int, J: float, g: float) -> tuple[float, float]:
    """``(N_n - J, N_n + J)`` without cancellation when ``g << |J|``."""
    Nn = N(n, J, g)
    x = (2 * n + 1) * g * g
    if J >= 0:
        return x / (Nn + J), Nn + J
    return Nn - J, x / (Nn - J)


# -- ground state of the bare Ising pair -------------------------------------


@dataclass(frozen=True)
class IsingPhase:
    ground: tuple[str, ...]  # spin labels of the (possibly degenerate) ground manifold
    boundary: bool
    energy_over_J: float


def hq_phase(xi_a: float) -> IsingPhase:
    """Ground manifold of the bare qubit pair versus ``omega_a / J`` (``J > 0``).

    Energies over J: ``uu`` = 1 + xi_a, ``psi+-`` = -1, ``dd`` = 1 - xi_a.
    """
    if not math.isfinite(xi_a):
        raise ValueError("xi_a must be finite")
    levels = {"uu": 1.0 + xi_a, "psi+": -1.0, "psi-": -1.0, "dd": 1.0 - xi_a}
    e0 = min(levels.values())
    ground = tuple(k for k, v in levels.items() if v == e0)
    return IsingPhase(ground, boundary=abs(xi_a) == 2.0, energy_over_J=e0)


# -- exact block solutions ---------------------------------------------------


def singlet_level(params: ModelParams, n: int) -> float:
    if not 0 <= n <= params.n_max:
        raise IndexError(f"n={n} outside 0..{params.n_max}")
    return n * params.omega - params.J


def singlet_state(params: ModelParams, n: int) -> DressedState:
    E = singlet_level(params, n)
    return DressedState("singlet", n, "s", E, _kets([(n, PSI_MINUS)]), np.array([1.0]), params.n_max)


def w0_level(params: ModelParams) -> float:
    return params.J - params.omega_a


def w0_state(params: ModelParams) -> DressedState:
    return DressedState("triplet", 0, "0", w0_level(params), _kets([(0, DD)]), np.array([1.0]), params.n_max)


def mixing_angle(J: float, g: float) -> float:
    """``theta`` in [0, pi) with ``cos = J/R``, ``sin = g/R``, ``R = sqrt(J^2+g^2)``."""
    return math.atan2(g, J) % math.pi


@dataclass(frozen=True)
class W1System:
    minus: DressedState
    plus: DressedState
    theta: float

    @property
    def states(self):
        return (self.minus, self.plus)


def _block_submatrix(params: ModelParams, pairs) -> np.ndarray:
    idx = [ket_index(p, s) for p, s in pairs]
    return hamiltonian_matrix(params)[np.ix_(idx, idx)]


def w1_eigensystem(params: ModelParams) -> W1System:
    """Eigenpairs of ``W1 = {|0,psi+>, |1,dd>}``.

    On resonance the block is ``[[-J, g], [g, J]]`` with eigenvalues
    ``-+sqrt(J^2+g^2)``; the lower state is ``cos(t/2)|0,psi+> - sin(t/2)|1,dd>``
    and the upper ``sin(t/2)|0,psi+> + cos(t/2)|1,dd>``.
    """
    _require_photon(params, 1, "W1")
    pairs = triplet_block_kets(1)
    kets = _kets(pairs)
    J, g = params.J, params.g
    theta = mixing_angle(J, g)
    if params.resonant:
        R = math.hypot(J, g)
        if R == 0.0:
            c, s = 1.0, 0.0
        else:
            r_minus_j, r_plus_j = _n_minus_plus_j(0, J, g)
            c = math.sqrt(r_plus_j / (2.0 * R))
            s = math.sqrt(r_minus_j / (2.0 * R))
        lower = (-R, np.array([c, -s]))
        upper = (R, np.array([s, c]))
    else:
        evals, evecs = np.linalg.eigh(_block_submatrix(params, pairs))
        lower = (float(evals[0]), _fix_sign(evecs[:, 0]))
        upper = (float(evals[1]), _fix_sign(evecs[:, 1]))
    minus = DressedState("triplet", 0, "-", lower[0], kets, lower[1], params.n_max)
    plus = DressedState("triplet", 0, "+", upper[0], kets, upper[1], params.n_max)
    return W1System(minus, plus, theta)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # first non-negligible component positive, for reproducible output
    k = int(np.argmax(np.abs(v) > 1e-12))
    return v if v[k] >= 0 else -v


def wn_eigensystem(params: ModelParams, n: int) -> dict[str, DressedState]:
    """Three eigenpairs of ``W<n+1> = {|n-1,uu>, |n,psi+>, |n+1,dd>}``, ``n >= 1``.

    Resonant closed form: ``E^(0) = n w + J``, ``E^(+-) = n w +- N_n`` with
    ``N_n = sqrt(J^2 + (2n+1) g^2)``.
    """
    if n < 1:
        raise ValueError("wn_eigensystem needs n >= 1; use w0/w1 for the lower blocks")
    _require_photon(params, n + 1, f"W{n + 1}")
    pairs = triplet_block_kets(n + 1)
    kets = _kets(pairs)
    J, g, w = params.J, params.g, params.omega
    out = {}
    if params.resonant and g > 0:
        Nn = N(n, J, g)
        n_mj, n_pj = _n_minus_plus_j(n, J, g)
        out["0"] = (n * w + J, np.array([math.sqrt((n + 1) / (2 * n + 1)), 0.0, -math.sqrt(n / (2 * n + 1))]))
        for sign, br, n_sj, n_other in ((1, "+", n_mj, n_pj), (-1, "-", n_pj, n_mj)):
            # g^2 / Omega_{n+-} = (N -+ J)(N +- J) / ((2n+1) N (N -+ J)) = (N +- J) / ((2n+1) N)
            ratio = n_other / ((2 * n + 1) * Nn)
            vec = np.array([
                math.sqrt(n * ratio / 2),
                sign * math.sqrt(n_sj / (2 * Nn)),
                math.sqrt((n + 1) * ratio / 2),
            ])
            out[br] = (n * w + sign * Nn, vec)
    elif params.resonant:
        # g = 0: |n,psi+> decouples and the uu/dd pair is degenerate at n w + J
        zero = np.array([math.sqrt((n + 1) / (2 * n + 1)), 0.0, -math.sqrt(n / (2 * n + 1))])
        partner = np.array([math.sqrt(n / (2 * n + 1)), 0.0, math.sqrt((n + 1) / (2 * n + 1))])
        bare = np.array([0.0, -1.0, 0.0])
        out["0"] = (n * w + J, zero)
        pair = sorted([(n * w + J, partner), (n * w - J, bare)], key=lambda t: t[0])
        out["-"], out["+"] = pair
    else:
        evals, evecs = np.linalg.eigh(_block_submatrix(params, pairs))
        for i, br in enumerate(("-", "0", "+")):
            out[br] = (float(evals[i]), _fix_sign(evecs[:, i]))
    return {
        br: DressedState("triplet", n, br, E, kets, vec, params.n_max) for br, (E, vec) in out.items()
    }


def minus_level(params: ModelParams, n: int) -> float:
    """``E_n^(-)``; for ``n = 0`` the lower W1 level."""
    if n == 0:
        return w1_eigensystem(params).minus.energy
    return wn_eigensystem(params, n)["-"].energy


def all_states(params: ModelParams) -> list[DressedState]:
    """Every analytic eigenstate on untruncated blocks."""
    states = [singlet_state(params, n) for n in range(params.n_max + 1)]
    states.append(w0_state(params))
    states.extend(w1_eigensystem(params).states)
    for n in range(1, params.n_max):
        states.extend(wn_eigensystem(params, n).values())
    return states


# -- weak coupling -----------------------------------------------------------


def level_shift(J: float, g: float, n: int) -> float:
    """Second-order shift ``delta(n) = (2n+1) g^2 / (2J)`` of ``N_n`` about ``J``."""
    if J == 0:
        raise ZeroDivisionError("level shift is singular at J = 0")
    return (2 * n + 1) * g * g / (2.0 * J)


def printed_level_shift(J: float, g: float, n: int) -> float:
    """``(n + 1/2) g^2 / (2J)``: half the Taylor coefficient, kept for comparison."""
    if J == 0:
        raise ZeroDivisionError("level shift is singular at J = 0")
    return (n + 0.5) * g * g / (2.0 * J)


def perturbative_levels(params: ModelParams, n: int) -> tuple[float, float]:
    """Weak-coupling ``(E_n^(+), E_n^(-)) = n w +- (J + delta(n))``."""
    d = level_shift(params.J, params.g, n)
    return n * params.omega + (params.J + d), n * params.omega - (params.J + d)


# -- criticality -------------------------------------------------------------


def _check_J(J: float) -> None:
    if J == 0:
        raise ZeroDivisionError("critical points are undefined at J = 0")


def xi0(params: ModelParams) -> float:
    """Intrinsic critical point ``g^2 / J^2``."""
    _check_J(params.J)
    return (params.g / params.J) ** 2


def xi1(params: ModelParams) -> float:
    """Generic critical point ``1 + sqrt(1 + xi0)`` where ``E_0^(0) = E_0^(-)``."""
    return 1.0 + math.sqrt(1.0 + xi0(params))


@dataclass(frozen=True)
class CrossingPoint:
    n: int
    xi_star: float
    energy_over_J: float
    bisection_xi: float = float("nan")


def crossing_xi(g_over_j: float, n: int) -> float:
    """Closed-form crossing of ``E_n^(-)`` and ``E_{n+1}^(-)`` on the resonant line."""
    if n < 0:
        raise ValueError("n must be >= 0")
    # N_{n+1} - N_n rationalized, exact in the g -> 0 limit
    return 2.0 * g_over_j**2 / (N(n + 1, 1.0, g_over_j) + N(n, 1.0, g_over_j))


def _bisect(f, lo: float, hi: float, xtol: float = 1e-15, maxiter: int = 200) -> float:
    flo = f(lo)
    if flo == 0:
        return lo
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or hi - lo <= xtol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def crossing_point(g_over_j: float, n: int) -> CrossingPoint:
    """Crossing of neighbouring lower branches, closed form plus bisection check.

    With ``J = 1`` the gap ``E_{n+1}^(-) - E_n^(-) = xi - (N_{n+1} - N_n)`` is
    increasing in ``xi``; it is bracketed on ``[0, 1 + g^2]`` and bisected.
    """
    xs = crossing_xi(g_over_j, n)
    Nn = N(n, 1.0, g_over_j)
    Nn1 = N(n + 1, 1.0, g_over_j)

    def gap(xi):
        return ((n + 1) * xi - Nn1) - (n * xi - Nn)

    if g_over_j == 0:
        xb = 0.0
    else:
        xb = _bisect(gap, 0.0, 1.0 + g_over_j**2)
    return CrossingPoint(n=n, xi_star=xs, energy_over_J=n * xs - Nn, bisection_xi=xb)


@dataclass(frozen=True)
class RegionInfo:
    region: str  # "I", "II", "III"
    ground: DressedState | None
    lower_branch_over_J: tuple[float, ...] = field(default=())
    unbounded_below: bool = False


def classify_region(xi: float, params: ModelParams) -> RegionInfo:
    """Region of ``xi = omega/J`` on the resonant line through ``params``.

    ``params`` supplies ``J``, ``g`` and ``n_max``; ``omega = omega_a = xi J``.
    In region I the lower branch ``E_n^(-)`` is evaluated for
    ``n = 0 .. n_max-1`` and reported; no ground state is returned.
    """
    if not xi > 0:
        raise ValueError("xi must be positive")
    p = ModelParams.resonant_line(xi, params.g / params.J, J=params.J, n_max=params.n_max)
    branch = tuple(minus_level(p, n) / p.J for n in range(p.n_max))
    x0, x1 = xi0(p), xi1(p)
    if xi <= x0:
        decreasing = all(b < a for a, b in zip(branch, branch[1:]))
        return RegionInfo("I", None, branch, decreasing)
    if xi <= x1:
        return RegionInfo("II", w1_eigensystem(p).minus, branch)
    return RegionInfo("III", w0_state(p), branch)


# -- sweeps ------------------------------------------------------------------


def branch_energy_over_J(xi: np.ndarray, g_over_j: float, n: int, branch: str) -> np.ndarray:
    """Resonant-line ``E_n^(branch)/J`` evaluated on a grid of ``xi = omega/J``."""
    xi = np.asarray(xi, dtype=float)
    if branch == "s":
        return n * xi - 1.0
    if branch == "0":
        return 1.0 - xi if n == 0 else n * xi + 1.0
    if branch in ("+", "-"):
        sign = 1.0 if branch == "+" else -1.0
        return n * xi + sign * N(n, 1.0, g_over_j)
    raise ValueError(f"unknown branch {branch!r}")


@dataclass(frozen=True)
class SpectrumTable:
    xi_grid: np.ndarray
    rows: dict[tuple[int, str], np.ndarray]
    g_over_j: float
    resonant: bool = True

    def records(self):
        """``(xi, branch, n, E/J)`` sorted by ``(xi, n, branch)``."""
        keys = sorted(self.rows, key=lambda k: (k[0], k[1]))
        for i, x in enumerate(self.xi_grid):
            for n, br in keys:
                yield float(x), br, n, float(self.rows[(n, br)][i])


def spectrum_sweep(g_over_j: float, xi_grid, n_levels: int = 2, branches=BRANCHES) -> SpectrumTable:
    """Branch energies over ``xi`` for ``n = 0 .. n_levels`` on the resonant line."""
    xi = np.asarray(xi_grid, dtype=float)
    if xi.size == 0:
        raise ValueError("empty xi grid")
    if np.any(xi <= 0) or np.any(np.diff(xi) <= 0):
        raise ValueError("xi grid must be positive and strictly increasing")
    rows = {}
    for n in range(n_levels + 1):
        for br in branches:
            rows[(n, br)] = branch_energy_over_J(xi, g_over_j, n, br)
    return SpectrumTable(xi, rows, g_over_j)
