"""Restricted closed-shell Hartree-Fock with DIIS acceleration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = ["ScfResult", "restricted_hartree_fock"]


@dataclass(frozen=True)
class ScfResult:
    energy: float
    mo_coefficients: np.ndarray
    orbital_energies: np.ndarray
    converged: bool
    iterations: int


def restricted_hartree_fock(
    s: np.ndarray,
    h_core: np.ndarray,
    eri: np.ndarray,
    n_electrons: int,
    e_nuclear: float,
    max_iterations: int = 200,
    conv_tol: float = 1e-11,
    diis_size: int = 8,
) -> ScfResult:
    """Solve the closed-shell SCF equations.

    Args:
        s: overlap matrix.
        h_core: kinetic plus nuclear attraction.
        eri: chemist-convention (ij|kl) tensor.
        n_electrons: must be even (closed shell).
        e_nuclear: nuclear repulsion added to the electronic energy.

    The iteration runs Roothaan steps with DIIS extrapolation on the
    orthogonalized FDS-SDF residual, converging both the energy change and
    the residual norm below ``conv_tol``.
    """
    if n_electrons % 2 != 0:
        raise ValueError("restricted HF needs an even electron count")
    n_occ = n_electrons // 2
    x = scipy.linalg.fractional_matrix_power(s, -0.5).real

    def solve_fock(f):
        fp = x.T @ f @ x
        eps, cp = np.linalg.eigh(fp)
        c = x @ cp
        return eps, c

    eps, c = solve_fock(h_core)
    density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
    energy = 0.0
    fock_history: list[np.ndarray] = []
    error_history: list[np.ndarray] = []
    converged = False
    iteration = 0

    for iteration in range(1, max_iterations + 1):
        coulomb = np.einsum("pqrs,rs->pq", eri, density)
        exchange = np.einsum("prqs,rs->pq", eri, density)
        fock = h_core + coulomb - 0.5 * exchange
        new_energy = 0.5 * np.sum(density * (h_core + fock)) + e_nuclear

        residual = x.T @ (fock @ density @ s - s @ density @ fock) @ x
        fock_history.append(fock)
        error_history.append(residual)
        if len(fock_history) > diis_size:
            fock_history.pop(0)
            error_history.pop(0)

        if (
            abs(new_energy - energy) < conv_tol
            and np.max(np.abs(residual)) < sqrt_tol(conv_tol)
        ):
            energy = new_energy
            converged = True
            break
        energy = new_energy

        fock_eff = _diis_extrapolate(fock_history, error_history)
        eps, c = solve_fock(fock_eff)
        density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T

    return ScfResult(
        energy=float(energy),
        mo_coefficients=c,
        orbital_energies=eps,
        converged=converged,
        iterations=iteration,
    )


def sqrt_tol(tol: float) -> float:
    return max(1e-9, tol**0.5 * 1e-3)


def _diis_extrapolate(focks: list[np.ndarray], errors: list[np.ndarray]) -> np.ndarray:
    m = len(focks)
    if m < 2:
        return focks[-1]
    b = -np.ones((m + 1, m + 1))
    b[m, m] = 0.0
    for i in range(m):
        for j in range(m):
            b[i, j] = np.sum(errors[i] * errors[j])
    rhs = np.zeros(m + 1)
    rhs[m] = -1.0
    try:
        weights = np.linalg.solve(b, rhs)[:m]
    except np.linalg.LinAlgError:
        return focks[-1]
    return sum(w * f for w, f in zip(weights, focks))
