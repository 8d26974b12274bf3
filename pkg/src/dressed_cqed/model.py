"""Two Ising-coupled charge qubits in a single-mode resonator.

Basis conventions
-----------------
A basis ket is ``|n, spin>`` with photon number ``n`` and a two-qubit spin
label. Its linear index is ``4 * n + spin_index``. Two spin sets are used:

* coupled: ``(uu, psi+, psi-, dd)``, with ``psi+- = (ud +- du)/sqrt(2)``
* product: ``(uu, ud, du, dd)``, i.e. ``kron(qubit1, qubit2)`` with ``u`` first

All model frequencies are in GHz with hbar = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import constants

COUPLED_SPINS = ("uu", "psi+", "psi-", "dd")
PRODUCT_SPINS = ("uu", "ud", "du", "dd")

UU, PSI_PLUS, PSI_MINUS, DD = range(4)

_S = 1.0 / math.sqrt(2.0)
# columns are the coupled kets written in the product basis
COUPLED_TO_PRODUCT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _S, _S, 0.0],
        [0.0, _S, -_S, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)

# conversion from joules to GHz (cyclic frequency E/h)
JOULE_TO_GHZ = 1.0 / (constants.h * 1e9)
FLUX_QUANTUM = constants.h / (2.0 * constants.e)


@dataclass(frozen=True)
class ModelParams:
    """Model frequencies and Fock truncation.

    ``omega_a`` qubit splitting, ``omega`` resonator frequency, ``J`` Ising
    coupling, ``g`` qubit-field coupling (all GHz); ``n_max`` is the largest
    photon number kept.
    """

    omega_a: float
    omega: float
    J: float
    g: float
    n_max: int = 40

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")
        if int(self.n_max) != self.n_max or self.n_max < 2:
            raise ValueError(f"n_max must be an integer >= 2, got {self.n_max}")
        for name in ("omega_a", "omega", "J", "g"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def resonant(self) -> bool:
        return self.omega_a == self.omega

    @property
    def dim(self) -> int:
        return 4 * (self.n_max + 1)

    @classmethod
    def resonant_line(cls, xi: float, g_over_j: float, J: float = 1.0, n_max: int = 40):
        """Parameters on the resonant line ``omega = omega_a = xi * J``."""
        return cls(omega_a=xi * J, omega=xi * J, J=J, g=g_over_j * J, n_max=n_max)


@dataclass(frozen=True)
class BasisKet:
    photon: int
    spin: str
    coupled: bool = True

    @property
    def spin_index(self) -> int:
        labels = COUPLED_SPINS if self.coupled else PRODUCT_SPINS
        return labels.index(self.spin)

    @property
    def index(self) -> int:
        return 4 * self.photon + self.spin_index

    @classmethod
    def from_index(cls, index: int, coupled: bool = True) -> "BasisKet":
        labels = COUPLED_SPINS if coupled else PRODUCT_SPINS
        photon, s = divmod(int(index), 4)
        return cls(photon, labels[s], coupled)

    def __str__(self):
        return f"|{self.photon},{self.spin}>"


def ket_index(photon: int, spin: str | int) -> int:
    """Coupled-basis linear index of ``|photon, spin>``."""
    s = COUPLED_SPINS.index(spin) if isinstance(spin, str) else int(spin)
    return 4 * photon + s


def build_basis(n_max: int, coupled: bool = True) -> list[BasisKet]:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    labels = COUPLED_SPINS if coupled else PRODUCT_SPINS
    return [BasisKet(n, s, coupled) for n in range(n_max + 1) for s in labels]


def ising_energies(omega_a: float, J: float) -> np.ndarray:
    """Eigenvalues of the bare qubit part on ``(uu, psi+, psi-, dd)``."""
    return np.array([J + omega_a, -J, -J, J - omega_a], dtype=float)


def hamiltonian_matrix(params: ModelParams) -> np.ndarray:
    """Full truncated Hamiltonian in the coupled basis.

    Only ``|n,psi+> <-> |n-1,uu>`` (``g sqrt(n)``) and
    ``|n,psi+> <-> |n+1,dd>`` (``g sqrt(n+1)``) are off-diagonal; the singlet
    chain is diagonal.
    """
    return _hamiltonian_cached(params).copy()


@lru_cache(maxsize=64)
def _hamiltonian_cached(params: ModelParams) -> np.ndarray:
    n_max = params.n_max
    photons = np.repeat(np.arange(n_max + 1), 4)
    spin_e = np.tile(ising_energies(params.omega_a, params.J), n_max + 1)
    H = np.diag((photons * params.omega + spin_e).astype(float))
    g = params.g
    for n in range(n_max + 1):
        p = ket_index(n, PSI_PLUS)
        if n >= 1:
            q = ket_index(n - 1, UU)
            H[p, q] = H[q, p] = g * math.sqrt(n)
        if n + 1 <= n_max:
            q = ket_index(n + 1, DD)
            H[p, q] = H[q, p] = g * math.sqrt(n + 1)
    H.flags.writeable = False
    return H


# -- product-basis construction from Pauli operators -------------------------

SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])  # |u><d|
SIGMA_MINUS = SIGMA_PLUS.T
I2 = np.eye(2)


def spin_operator(name: str, coupled: bool = True) -> np.ndarray:
    """Two-qubit operator on the 4-dim spin space.

    ``name`` is one of ``sigma+1``, ``sigma-1``, ``sigma+2``, ``sigma-2``,
    ``sigmaz1``, ``sigmaz2``, ``S+``, ``S-`` (collective) or ``A-``
    (``sigma-1 - sigma-2``).
    """
    single = {
        "sigma+1": np.kron(SIGMA_PLUS, I2),
        "sigma-1": np.kron(SIGMA_MINUS, I2),
        "sigma+2": np.kron(I2, SIGMA_PLUS),
        "sigma-2": np.kron(I2, SIGMA_MINUS),
        "sigmaz1": np.kron(SIGMA_Z, I2),
        "sigmaz2": np.kron(I2, SIGMA_Z),
    }
    single["S+"] = single["sigma+1"] + single["sigma+2"]
    single["S-"] = single["sigma-1"] + single["sigma-2"]
    single["A-"] = single["sigma-1"] - single["sigma-2"]
    single["A+"] = single["sigma+1"] - single["sigma+2"]
    try:
        op = single[name]
    except KeyError:
        raise ValueError(f"unknown spin operator {name!r}") from None
    if coupled:
        op = COUPLED_TO_PRODUCT.T @ op @ COUPLED_TO_PRODUCT
    return op


def total_spin_squared(coupled: bool = True) -> np.ndarray:
    """``S.S`` with ``S = (sigma1 + sigma2)/2`` on the spin space."""
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    out = np.zeros((4, 4), dtype=complex)
    for s in (sx, sy, SIGMA_Z):
        tot = 0.5 * (np.kron(s, I2) + np.kron(I2, s))
        out += tot @ tot
    out = out.real
    if coupled:
        out = COUPLED_TO_PRODUCT.T @ out @ COUPLED_TO_PRODUCT
    return out


def embed_spin(op: np.ndarray, n_max: int) -> np.ndarray:
    """Lift a 4x4 spin operator to the truncated space (photon untouched)."""
    return np.kron(np.eye(n_max + 1), op)


def annihilation(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1)


def hamiltonian_product_basis(params: ModelParams) -> np.ndarray:
    """The same Hamiltonian assembled from Pauli/ladder operators, product basis."""
    n_max = params.n_max
    a = annihilation(n_max)
    num = a.T @ a
    sz1, sz2 = np.kron(SIGMA_Z, I2), np.kron(I2, SIGMA_Z)
    sp = np.kron(SIGMA_PLUS, I2) + np.kron(I2, SIGMA_PLUS)
    h_q = 0.5 * params.omega_a * (sz1 + sz2) + params.J * sz1 @ sz2
    If = np.eye(n_max + 1)
    coupling = np.kron(a, sp)
    H = (
        np.kron(If, h_q)
        + params.omega * np.kron(num, np.eye(4))
        + params.g / math.sqrt(2.0) * (coupling + coupling.T)
    )
    return H


def product_to_coupled(n_max: int) -> np.ndarray:
    """Orthogonal ``U`` with ``H_coupled = U.T @ H_product @ U``."""
    return np.kron(np.eye(n_max + 1), COUPLED_TO_PRODUCT)


# -- invariant subspaces -----------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One invariant group of coupled-basis indices.

    ``name`` is ``"S<n>"`` for the singlet ket ``|n,psi->`` or ``"W<k>"`` for a
    triplet block. ``truncated`` blocks lost kets to the Fock cutoff.
    """

    name: str
    indices: tuple[int, ...]
    truncated: bool = False

    @property
    def sector(self) -> str:
        return "singlet" if self.name.startswith("S") else "triplet"

    @property
    def k(self) -> int:
        return int(self.name[1:])


@dataclass(frozen=True)
class BlockPartition:
    n_max: int
    singlet_chain: tuple[Block, ...]
    triplet_blocks: tuple[Block, ...]
    truncated_blocks: tuple[Block, ...] = field(default=())

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.singlet_chain + self.triplet_blocks + self.truncated_blocks

    @property
    def complete_blocks(self) -> tuple[Block, ...]:
        return self.singlet_chain + self.triplet_blocks

    def block(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(name)

    def labels(self) -> np.ndarray:
        """Block name for every basis index."""
        out = np.empty(4 * (self.n_max + 1), dtype=object)
        for b in self.blocks:
            out[list(b.indices)] = b.name
        return out


def triplet_block_kets(k: int) -> list[tuple[int, int]]:
    """Untruncated ``(photon, spin)`` content of ``W<k>``."""
    if k == 0:
        return [(0, DD)]
    if k == 1:
        return [(0, PSI_PLUS), (1, DD)]
    n = k - 1
    return [(n - 1, UU), (n, PSI_PLUS), (n + 1, DD)]


def block_partition(n_max: int) -> BlockPartition:
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    singlets = tuple(Block(f"S{n}", (ket_index(n, PSI_MINUS),)) for n in range(n_max + 1))
    complete, partial = [], []
    # W<k> with k up to n_max + 2 touches every triplet ket with photon <= n_max
    for k in range(n_max + 3):
        kets = triplet_block_kets(k)
        inside = tuple(ket_index(p, s) for p, s in kets if p <= n_max)
        if len(inside) == len(kets):
            complete.append(Block(f"W{k}", inside))
        elif inside:
            partial.append(Block(f"W{k}", inside, truncated=True))
    return BlockPartition(n_max, singlets, tuple(complete), tuple(partial))


# -- device mapping ----------------------------------------------------------


@dataclass(frozen=True)
class DeviceParams:
    """Circuit parameters in SI units; ``E_J`` in GHz."""

    C_m: float
    C_Sigma: float
    C_g: float
    V_g: float
    E_J: float
    S: float
    d: float
    L: float
    l: float  # noqa: E741
    c: float
    n0: int = 1

    def __post_init__(self):
        if self.C_m < 0:
            raise ValueError("C_m must be non-negative")
        if not self.C_Sigma > self.C_m:
            raise ValueError("C_Sigma must exceed C_m (J diverges otherwise)")
        for name in ("S", "d", "L", "l", "c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.n0) != self.n0 or self.n0 < 1:
            raise ValueError("n0 must be an integer >= 1")


def device_to_model(
    dev: DeviceParams, n_max: int = 40, flux_quantum: float = FLUX_QUANTUM
) -> tuple[ModelParams, float]:
    """Map circuit parameters to ``(ModelParams, E_c)``, frequencies in GHz.

    The gate term is the dimensionless gate charge ``n_g = C_g V_g / 2e``.
    ``flux_quantum`` defaults to ``h/2e``; pass ``hbar/2e`` for the other
    convention.
    """
    e = constants.e
    denom = dev.C_Sigma**2 - dev.C_m**2
    J = e**2 * dev.C_m / (2.0 * denom) * JOULE_TO_GHZ
    E_c = 2.0 * e**2 * dev.C_Sigma / denom * JOULE_TO_GHZ
    n_g = dev.C_g * dev.V_g / (2.0 * e)
    omega_a = 2.0 * E_c * (n_g - 0.5)
    omega_rad = dev.n0 * math.pi / (dev.L * math.sqrt(dev.l * dev.c))
    omega = omega_rad / (2.0 * math.pi * 1e9)
    g = dev.S * dev.E_J * math.sqrt(constants.hbar * dev.l * omega_rad) / (
        flux_quantum * dev.d * math.sqrt(dev.L)
    )
    return ModelParams(omega_a=omega_a, omega=omega, J=J, g=g, n_max=n_max), E_c
