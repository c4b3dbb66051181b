"""Dense statevector engine.

States are plain complex128 numpy arrays of length ``2^n``; basis index bit
``q`` gives the occupation of qubit ``q`` (qubit 0 is the least significant
bit).  Everything here works by bit manipulation on basis indices; no
operator is ever materialized as a matrix.

The module provides basis-state preparation, particle-number-conserving
pair rotations, Pauli-sum application and expectation values, an exact
operator-exponential oracle, and reverse-sweep (adjoint) circuit gradients.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from mrucc.pauli import PauliSum, is_antihermitian, is_hermitian

__all__ = [
    "hf_state",
    "register_size",
    "apply_pnc",
    "apply_pauli_sum",
    "expectation",
    "apply_exponential",
    "stage1_gradient",
    "CompiledPauliSum",
]

_PHASES = np.array([1.0, 1.0j, -1.0, -1.0j])


def register_size(state: np.ndarray) -> int:
    """Number of qubits of a statevector (length must be a power of two)."""
    n = int(len(state)).bit_length() - 1
    if 1 << n != len(state):
        raise ValueError(f"statevector length {len(state)} is not a power of two")
    return n


def hf_state(n_qubits: int, occupied) -> np.ndarray:
    """Basis state with bits set exactly on the occupied qubits.

    Args:
        n_qubits: register size.
        occupied: iterable of qubit indices in ``[0, n_qubits)``.
    """
    index = 0
    for q in occupied:
        q = int(q)
        if not 0 <= q < n_qubits:
            raise ValueError(f"occupied qubit {q} outside register of {n_qubits}")
        index |= 1 << q
    psi = np.zeros(1 << n_qubits, dtype=np.complex128)
    psi[index] = 1.0
    return psi


@lru_cache(maxsize=None)
def _pnc_indices(n_qubits: int, qa: int, qb: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (qa,qb)=(0,1) and their (1,0) partners, cached per gate."""
    if qa == qb or not (0 <= qa < n_qubits and 0 <= qb < n_qubits):
        raise ValueError(f"invalid qubit pair ({qa}, {qb}) on {n_qubits} qubits")
    idx = np.arange(1 << n_qubits)
    j01 = idx[((idx >> qa) & 1 == 0) & ((idx >> qb) & 1 == 1)]
    j10 = j01 ^ ((1 << qa) | (1 << qb))
    j01.flags.writeable = False
    j10.flags.writeable = False
    return j01, j10


def _rotate_pairs(psi: np.ndarray, theta: float, j01: np.ndarray, j10: np.ndarray) -> None:
    """In-place Givens rotation of the (01)/(10) amplitude pairs."""
    c, s = np.cos(theta), np.sin(theta)
    a01 = psi[j01]
    a10 = psi[j10]
    psi[j01] = c * a01 - s * a10
    psi[j10] = s * a01 + c * a10


def apply_pnc(state: np.ndarray, qa: int, qb: int, theta: float) -> np.ndarray:
    """Particle-number-conserving pair rotation on qubits (qa, qb).

    Maps ``|01> -> cos(theta)|01> + sin(theta)|10>`` and
    ``|10> -> -sin(theta)|01> + cos(theta)|10>`` on every amplitude pair
    whose (qa, qb) bits are (0,1)/(1,0); the (0,0) and (1,1) blocks are
    untouched, so Hamming weight is preserved exactly.
    """
    n = register_size(state)
    j01, j10 = _pnc_indices(n, qa, qb)
    out = state.astype(np.complex128, copy=True)
    _rotate_pairs(out, theta, j01, j10)
    return out


@lru_cache(maxsize=8)
def _basis_indices(dim: int) -> np.ndarray:
    idx = np.arange(dim, dtype=np.uint64)
    idx.flags.writeable = False
    return idx


def apply_pauli_sum(state: np.ndarray, op) -> np.ndarray:
    """Apply a PauliSum (or a compiled one) to a state, returning a new array.

    Per label ``P = i^y X^x Z^z`` the action on the basis is
    ``(P psi)[j] = i^y * (-1)^popcount(z & (j^x)) * psi[j^x]``.
    """
    if isinstance(op, CompiledPauliSum):
        return op.apply(state)
    n = register_size(state)
    if op.n_qubits != n:
        raise ValueError(f"operator on {op.n_qubits} qubits applied to {n}-qubit state")
    idx = _basis_indices(len(state))
    out = np.zeros_like(state, dtype=np.complex128)
    phase_y = _PHASES[np.bitwise_count(op.x_masks & op.z_masks) % 4]
    for x, z, w in zip(op.x_masks, op.z_masks, op.coeffs * phase_y):
        src = idx ^ x
        signs = 1.0 - 2.0 * (np.bitwise_count(z & src) & 1)
        out += w * signs * state[src]
    return out


class CompiledPauliSum:
    """A PauliSum preprocessed for repeated application to states.

    Terms sharing an X mask combine into one complex diagonal, so one
    application costs one gather per distinct X mask instead of one per
    term.  Worth compiling only for operators applied many times (the
    stage-1 Hamiltonian); the result is numerically identical to the
    per-term path.
    """

    __slots__ = ("n_qubits", "hermitian", "_x_list", "_diags")

    def __init__(self, op: PauliSum, chunk: int = 128):
        self.n_qubits = op.n_qubits
        self.hermitian = is_hermitian(op)
        dim = 1 << op.n_qubits
        xs, zs = op.x_masks, op.z_masks
        if len(xs) == 0:
            self._x_list = xs
            self._diags = np.zeros((0, dim), dtype=np.complex128)
            return
        weights = op.coeffs * _PHASES[np.bitwise_count(xs & zs) % 4]
        # keys are x-major sorted, so equal-x terms form contiguous runs
        starts = np.concatenate(
            [[0], np.nonzero(np.diff(xs))[0] + 1, [len(xs)]]
        ).astype(np.int64)
        self._x_list = xs[starts[:-1]].copy()
        m = _basis_indices(dim)
        self._diags = np.zeros((len(self._x_list), dim), dtype=np.complex128)
        for i, (s, e) in enumerate(zip(starts[:-1], starts[1:])):
            for lo in range(s, e, chunk):
                hi = min(e, lo + chunk)
                signs = 1.0 - 2.0 * (
                    np.bitwise_count(zs[lo:hi, None] & m[None, :]) & 1
                )
                self._diags[i] += weights[lo:hi] @ signs

    def __len__(self) -> int:
        return len(self._x_list)

    def apply(self, state: np.ndarray) -> np.ndarray:
        if register_size(state) != self.n_qubits:
            raise ValueError("register size mismatch")
        idx = _basis_indices(len(state))
        out = np.zeros_like(state, dtype=np.complex128)
        for x, d in zip(self._x_list, self._diags):
            src = idx ^ x
            out += d[src] * state[src]
        return out


def expectation(state: np.ndarray, op) -> float:
    """Real expectation value ``<psi|op|psi>`` of a Hermitian operator.

    Raises:
        ValueError: operator not Hermitian within 1e-10, or the quadratic
            form has a residual imaginary part above 1e-9.
    """
    if isinstance(op, CompiledPauliSum):
        if not op.hermitian:
            raise ValueError("expectation requires a Hermitian operator")
    elif not is_hermitian(op, tol=1e-10):
        raise ValueError("expectation requires a Hermitian operator")
    val = np.vdot(state, apply_pauli_sum(state, op))
    if abs(val.imag) > 1e-9:
        raise ValueError(f"expectation has imaginary residue {val.imag:.3e}")
    return float(val.real)


def apply_exponential(
    state: np.ndarray,
    gen: PauliSum,
    tol: float = 1e-12,
    max_order: int = 200,
) -> np.ndarray:
    """Exact ``exp(gen)|psi>`` for an anti-Hermitian generator.

    Scaling-and-applying: the generator is split into ``2^m`` slices with
    1-norm at most 1/2 each, and each slice is applied by a Taylor series
    run until the term norm falls below the (slice-shared) tolerance.  The
    output norm must match the input norm within 1e-9, which the
    anti-Hermiticity guarantees when the series has converged.

    Raises:
        ValueError: generator not anti-Hermitian within 1e-10.
        RuntimeError: series not converged within ``max_order``, or norm
            drift beyond 1e-9.
    """
    if not is_antihermitian(gen, tol=1e-10):
        raise ValueError("exponential generator must be anti-Hermitian")
    if tol <= 0:
        raise ValueError("tol must be positive")
    phi = state.astype(np.complex128, copy=True)
    s = gen.norm1()
    if len(gen) == 0 or s == 0.0:
        return phi
    reps = 1 << max(0, int(np.ceil(np.log2(2.0 * s))))
    scaled = gen * (1.0 / reps)
    slice_tol = tol / reps
    norm_in = np.linalg.norm(phi)
    for _ in range(reps):
        term = phi
        acc = phi.copy()
        for k in range(1, max_order + 1):
            term = apply_pauli_sum(term, scaled) * (1.0 / k)
            acc += term
            # scaled 1-norm <= 1/2, so the dropped tail is < the last term
            if np.linalg.norm(term) < 0.5 * slice_tol:
                break
        else:
            raise RuntimeError("exponential series did not converge")
        phi = acc
    drift = abs(np.linalg.norm(phi) - norm_in)
    if drift > 1e-9:
        raise RuntimeError(f"exponential lost unitarity: norm drift {drift:.3e}")
    return phi


def _energy_and_gradient(
    hamiltonian,
    layout,
    theta: np.ndarray,
    reference: np.ndarray,
) -> tuple[float, np.ndarray]:
    """Energy and adjoint gradient from one forward/backward sweep."""
    gates = list(layout.gates)
    if len(theta) != len(gates):
        raise ValueError(f"{len(theta)} parameters for {len(gates)} gates")
    n = register_size(reference)
    if layout.n_qubits != n:
        raise ValueError("layout register does not match reference state")

    psi = reference.astype(np.complex128, copy=True)
    pair_idx = [_pnc_indices(n, qa, qb) for qa, qb in gates]
    for t, (j01, j10) in zip(theta, pair_idx):
        _rotate_pairs(psi, t, j01, j10)

    lam = apply_pauli_sum(psi, hamiltonian)
    energy = float(np.vdot(psi, lam).real)
    phi = psi
    grad = np.empty(len(gates), dtype=np.float64)
    for k in range(len(gates) - 1, -1, -1):
        j01, j10 = pair_idx[k]
        # d/dtheta of the pair rotation equals the rotation followed by the
        # generator J = [[0,-1],[1,0]] on each (01),(10) block, so the
        # component is 2 Re <lam| J |phi> before peeling the gate off
        grad[k] = 2.0 * np.real(
            np.vdot(lam[j10], phi[j01]) - np.vdot(lam[j01], phi[j10])
        )
        t = -theta[k]
        _rotate_pairs(phi, t, j01, j10)
        _rotate_pairs(lam, t, j01, j10)
    return energy, grad


def stage1_gradient(
    hamiltonian,
    layout,
    theta: np.ndarray,
    reference: np.ndarray,
) -> np.ndarray:
    """Analytic gradient of ``E(theta) = <psi(theta)|H|psi(theta)>``.

    One forward pass builds the prepared state; one reverse sweep peels the
    gates off both the state and ``H|psi>`` simultaneously, reading each
    component from the pair-rotation generator.  Total cost is one operator
    application plus two gate applications per parameter.

    Args:
        hamiltonian: PauliSum or CompiledPauliSum.
        layout: any object with ``n_qubits`` and ``gates`` (ordered qubit
            pairs); parameter k belongs to gate k.
        theta: parameter vector, one angle per gate.
        reference: starting state the circuit acts on.
    """
    return _energy_and_gradient(hamiltonian, layout, theta, reference)[1]
