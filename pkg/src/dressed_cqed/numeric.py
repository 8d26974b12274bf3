"""Brute-force oracle: cyclic Jacobi diagonalization and unitary evolution.

Nothing here uses the block structure of the Hamiltonian; blocks are only
recovered afterwards by projecting eigenvectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import PSI_MINUS, ModelParams, block_partition, hamiltonian_matrix


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def _rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    """Annihilate ``A[p, q]`` in place (Rutishauser's formulation)."""
    apq = A[p, q]
    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    row_p = A[p, :].copy()
    row_q = A[q, :].copy()
    A[p, :] = c * row_p - s * row_q
    A[q, :] = s * row_p + c * row_q
    col_p = A[:, p].copy()
    col_q = A[:, q].copy()
    A[:, p] = c * col_p - s * col_q
    A[:, q] = s * col_p + c * col_q
    A[p, q] = A[q, p] = 0.0

    vp = V[:, p].copy()
    vq = V[:, q].copy()
    V[:, p] = c * vp - s * vq
    V[:, q] = s * vp + c * vq


def eigensolve_symmetric(
    matrix, tol: float = 1e-12, max_sweeps: int = 100
) -> EigenDecomposition:
    """Diagonalize a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit ``(p, q)`` in row-major order of the strict upper triangle and
    stop once every off-diagonal magnitude is at most ``tol * ||A||_F``.
    Entries already below that threshold are skipped, so exactly decoupled
    blocks are never mixed.
    """
    A = np.array(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    scale = np.linalg.norm(A)
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-14 * max(scale, 1.0)):
        raise ValueError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    threshold = tol * scale

    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        off = np.abs(np.triu(A, 1))
        if n < 2 or off.max() <= threshold:
            sweeps -= 1
            break
        for p, q in zip(*np.nonzero(off > threshold)):
            # entries change during the sweep; recheck before rotating
            if abs(A[p, q]) > threshold:
                _rotate(A, V, int(p), int(q))
    else:
        if np.abs(np.triu(A, 1)).max() > threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    evals = np.diag(A).copy()
    order = np.argsort(evals, kind="stable")
    return EigenDecomposition(evals[order], V[:, order], sweeps)


@lru_cache(maxsize=16)
def decompose(params: ModelParams) -> EigenDecomposition:
    """Cached oracle decomposition of the full truncated Hamiltonian."""
    return eigensolve_symmetric(hamiltonian_matrix(params))


# -- labeled oracle spectrum -------------------------------------------------


@dataclass(frozen=True)
class OracleState:
    energy: float
    vector: np.ndarray
    block: str  # block name, or "edge" when no block captures the state


@dataclass(frozen=True)
class OracleSpectrum:
    params: ModelParams
    decomposition: EigenDecomposition
    states: tuple[OracleState, ...]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.decomposition.eigenvalues

    def block_energies(self, name: str) -> np.ndarray:
        return np.sort([s.energy for s in self.states if s.block == name])

    def by_block(self) -> dict[str, list[OracleState]]:
        out: dict[str, list[OracleState]] = {}
        for s in self.states:
            out.setdefault(s.block, []).append(s)
        return out


def oracle_spectrum(params: ModelParams, capture: float = 1e-8) -> OracleSpectrum:
    """Full spectrum with each eigenvector assigned to its invariant block.

    A state is assigned to the block whose projector holds at least
    ``1 - capture`` of its norm; otherwise it is labeled ``"edge"``.
    Truncated blocks keep their own names (``W<k>``) but are flagged by the
    partition, not here.
    """
    dec = decompose(params)
    part = block_partition(params.n_max)
    V = dec.eigenvectors
    states = []
    weights = np.zeros((len(part.blocks), V.shape[1]))
    for i, b in enumerate(part.blocks):
        weights[i] = np.sum(V[list(b.indices), :] ** 2, axis=0)
    best = np.argmax(weights, axis=0)
    for j in range(V.shape[1]):
        i = best[j]
        name = part.blocks[i].name if weights[i, j] >= 1.0 - capture else "edge"
        states.append(OracleState(float(dec.eigenvalues[j]), V[:, j], name))
    return OracleSpectrum(params, dec, tuple(states))


def degenerate_groups(values, rtol: float = 1e-9) -> list[list[int]]:
    """Group indices of sorted ``values`` lying within ``rtol`` (relative) of a neighbour."""
    values = np.asarray(values)
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups:
            prev = values[groups[-1][-1]]
            if abs(v - prev) <= rtol * max(1.0, abs(v), abs(prev)):
                groups[-1].append(i)
                continue
        groups.append([i])
    return groups


def eigenspace_weight(vector: np.ndarray, energy: float, dec: EigenDecomposition, rtol: float = 1e-9) -> float:
    """Squared norm of ``vector`` projected onto the oracle eigenspace at ``energy``."""
    E = dec.eigenvalues
    sel = np.abs(E - energy) <= rtol * max(1.0, abs(energy))
    if not sel.any():
        return 0.0
    amps = dec.eigenvectors[:, sel].T @ vector
    return float(np.sum(np.abs(amps) ** 2))


# -- time evolution ----------------------------------------------------------


def normalized(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return psi / np.linalg.norm(psi)


def evolve(psi0, params: ModelParams, t: float, decomposition: EigenDecomposition | None = None, atol: float = 1e-12) -> np.ndarray:
    """Propagate ``psi0`` by ``exp(-i H t)`` through the oracle eigenbasis."""
    psi0 = np.asarray(psi0, dtype=complex)
    dec = decomposition if decomposition is not None else decompose(params)
    V = dec.eigenvectors
    if psi0.shape != (V.shape[0],):
        raise ValueError(f"state has shape {psi0.shape}, basis has {V.shape[0]} kets")
    if abs(np.linalg.norm(psi0) - 1.0) > atol:
        raise ValueError("initial state is not normalized")
    if t < 0:
        raise ValueError("t must be non-negative")
    coeffs = V.T @ psi0
    return V @ (np.exp(-1j * dec.eigenvalues * t) * coeffs)


def singlet_population(psi) -> float:
    """Total weight on the singlet kets ``|n, psi->``."""
    psi = np.asarray(psi)
    return float(np.sum(np.abs(psi[PSI_MINUS::4]) ** 2))


def random_state(n_max: int, rng: np.random.Generator) -> np.ndarray:
    dim = 4 * (n_max + 1)
    return normalized(rng.normal(size=dim) + 1j * rng.normal(size=dim))
