"""Exact ground-state energies within a fixed particle-number sector.

The benchmark for every error curve: project the qubit Hamiltonian onto
the basis of all bitstrings with the target Hamming weight, then solve the
dense real-symmetric eigenproblem.  Paper-scale sectors top out near
3000x3000, well inside dense-solver territory.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.linalg

from mrucc.fermion import FermionSum, FermionTerm, jordan_wigner
from mrucc.pauli import PauliSum, commutator, truncate

__all__ = [
    "SectorBasis",
    "sector_dimension",
    "sector_basis",
    "build_sector_matrix",
    "fci_ground_energy",
]

#: Largest sector dimension the dense eigensolver will accept.
DENSE_SECTOR_CAP = 5000

_PHASES = np.array([1.0, 1.0j, -1.0, -1.0j])


def sector_dimension(n_qubits: int, n_electrons: int) -> int:
    """Number of determinants with ``n_electrons`` particles on ``n_qubits``."""
    if not 0 <= n_electrons <= n_qubits:
        raise ValueError(
            f"electron count {n_electrons} outside [0, {n_qubits}]"
        )
    return comb(n_qubits, n_electrons)


@dataclass(frozen=True)
class SectorBasis:
    """All Hamming-weight-``n_electrons`` bitstrings, ascending as integers."""

    n_qubits: int
    n_electrons: int
    states: np.ndarray

    def index_of(self, state: int) -> int:
        i = int(np.searchsorted(self.states, state))
        if i >= len(self.states) or self.states[i] != state:
            raise ValueError(f"state {state:b} not in the sector")
        return i


def sector_basis(n_qubits: int, n_electrons: int) -> SectorBasis:
    dim = sector_dimension(n_qubits, n_electrons)
    idx = np.arange(1 << n_qubits, dtype=np.uint64)
    states = idx[np.bitwise_count(idx) == n_electrons]
    assert len(states) == dim
    states.flags.writeable = False
    return SectorBasis(n_qubits=n_qubits, n_electrons=n_electrons, states=states)


def _total_number(n_qubits: int) -> PauliSum:
    total = FermionSum(
        n_qubits,
        tuple(FermionTerm(1.0, ((p, True), (p, False))) for p in range(n_qubits)),
    )
    return jordan_wigner(total)


def build_sector_matrix(hamiltonian: PauliSum, basis: SectorBasis) -> np.ndarray:
    """Dense sector projection M[a,b] = <s_a|H|s_b>.

    The Hamiltonian must commute with the total number operator; that is
    checked up front, after which each Pauli term's out-of-sector
    contributions are guaranteed to cancel in the sum and are dropped.

    Raises:
        ValueError: Hamiltonian couples particle-number sectors beyond
            1e-10, or the projected matrix is not real-symmetric.
    """
    if hamiltonian.n_qubits != basis.n_qubits:
        raise ValueError("register size mismatch")
    leak = truncate(commutator(hamiltonian, _total_number(basis.n_qubits)), 1e-10)
    if len(leak) > 0:
        raise ValueError(
            "Hamiltonian leaks across particle-number sectors "
            f"(commutator with the number operator has {len(leak)} terms)"
        )
    states = basis.states
    dim = len(states)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim)
    in_sector_weight = np.uint64(basis.n_electrons)
    phase_y = _PHASES[np.bitwise_count(hamiltonian.x_masks & hamiltonian.z_masks) % 4]
    for x, z, w in zip(
        hamiltonian.x_masks, hamiltonian.z_masks, hamiltonian.coeffs * phase_y
    ):
        rows_states = states ^ x
        keep = np.bitwise_count(rows_states) == in_sector_weight
        rows = np.searchsorted(states, rows_states[keep])
        signs = 1.0 - 2.0 * (np.bitwise_count(z & states[keep]) & 1)
        mat[rows, cols[keep]] += w * signs
    if np.max(np.abs(mat.imag), initial=0.0) > 1e-12:
        raise ValueError("sector matrix has imaginary parts above 1e-12")
    real = mat.real
    if np.max(np.abs(real - real.T), initial=0.0) > 1e-10:
        raise ValueError("sector matrix is not symmetric within 1e-10")
    return 0.5 * (real + real.T)


def fci_ground_energy(
    hamiltonian: PauliSum,
    n_electrons: int,
    dense_cap: int = DENSE_SECTOR_CAP,
) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue in the particle-number sector and its eigenvector.

    Returns ``(energy, psi)`` with ``psi`` embedded as a full ``2^n``
    statevector so it can be compared directly with prepared states.

    Raises:
        ValueError: sector dimension above ``dense_cap``.
        RuntimeError: eigensolver residual above 1e-8.
    """
    basis = sector_basis(hamiltonian.n_qubits, n_electrons)
    if len(basis.states) > dense_cap:
        raise ValueError(
            f"sector dimension {len(basis.states)} exceeds dense cap {dense_cap}"
        )
    mat = build_sector_matrix(hamiltonian, basis)
    w, v = scipy.linalg.eigh(mat, subset_by_index=(0, 0))
    energy = float(w[0])
    vec = v[:, 0]
    residual = np.linalg.norm(mat @ vec - energy * vec)
    if residual > 1e-8:
        raise RuntimeError(f"eigensolver residual {residual:.3e} above 1e-8")
    psi = np.zeros(1 << hamiltonian.n_qubits, dtype=np.complex128)
    psi[basis.states] = vec
    return energy, psi
