"""Two-stage variational driver.

Stage 1 optimizes the pair-rotation circuit against the raw Hamiltonian
with Adam and the adjoint gradient.  Stage 2 minimizes the cluster-amplitude
energy of the commutator-transformed Hamiltonian in one of three modes:

- ``linear``: fixed first-order model E(c) = <H> - sum_k c_k <[A_k, H]>.
  The model is linear in c and hence unbounded below, so a stopping rule
  (iteration cap, trust radius, or reference-energy threshold) is mandatory.
- ``iterative``: one bounded Adam step per iteration, re-expanding
  H <- H - [A(dc), H] after each, so the first-order model stays local.
- ``exact``: the exponential wave operator evaluated exactly; slow but
  bounded, used as the oracle for the other two.

Every mode also reports ``energy_exact``, the exact-mode energy at the
returned amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ansatz import AnsatzLayout, cnot_count, prepare_state
from .fermion import ClusterPool
from .pauli import (
    DEFAULT_TRUNCATION,
    PauliSum,
    commutator,
    is_antihermitian,
    is_hermitian,
    truncate,
)
from .statevector import (
    CompiledPauliSum,
    _energy_and_gradient,
    apply_exponential,
    apply_pauli_sum,
    expectation,
)

__all__ = [
    "AdamConfig",
    "StopRule",
    "Stage1Result",
    "Stage2Result",
    "adam_minimize",
    "run_stage1",
    "bch_gradient",
    "compute_commutators",
    "exact_energy",
    "run_stage2",
    "run_record",
    "STAGE2_LEARNING_RATE",
    "TERM_CAP",
]

#: Learning rate used when run_stage2 builds its own config.
STAGE2_LEARNING_RATE = 0.01

#: Plateau window for the optimizer's |dE| stop.
ENERGY_WINDOW = 10

#: Default cap on the term count of the re-expanded Hamiltonian.
TERM_CAP = 10**6


@dataclass(frozen=True)
class AdamConfig:
    """Adam hyperparameters and loop limits."""

    learning_rate: float = 0.05
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    max_iterations: int = 1000
    gradient_tol: float = 1e-6
    energy_tol: float = 1e-9
    seed: int = 7

    def __post_init__(self):
        if not (0.0 < self.beta1 < 1.0 and 0.0 < self.beta2 < 1.0):
            raise ValueError("beta1 and beta2 must lie strictly inside (0, 1)")
        if self.learning_rate <= 0.0 or self.epsilon <= 0.0:
            raise ValueError("learning_rate and epsilon must be positive")
        if self.gradient_tol <= 0.0 or self.energy_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")


@dataclass(frozen=True)
class StopRule:
    """Stage-2 stopping rule.

    In ``linear`` mode at least one of ``max_iterations``, ``trust_radius``,
    or ``reference_energy`` must be set.  In ``iterative`` mode each Adam
    step is clipped to ``step_radius`` and the loop stops once the energy
    spread over ``energy_window`` successive steps falls below
    ``energy_tol``.  ``exact`` mode stops on the optimizer's own criteria.
    """

    max_iterations: int | None = None
    trust_radius: float | None = None
    reference_energy: float | None = None
    reference_threshold: float = 1e-5
    step_radius: float = 0.05
    energy_tol: float = 1e-7
    energy_window: int = 20

    def __post_init__(self):
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be positive when set")
        if self.trust_radius is not None and self.trust_radius <= 0.0:
            raise ValueError("trust_radius must be positive when set")
        if self.reference_threshold <= 0.0:
            raise ValueError("reference_threshold must be positive")
        if self.step_radius <= 0.0:
            raise ValueError("step_radius must be positive")
        if self.energy_tol <= 0.0 or self.energy_window < 1:
            raise ValueError("energy window parameters must be positive")

    @property
    def bounded(self) -> bool:
        """Whether any rule caps an otherwise unbounded descent."""
        return (
            self.max_iterations is not None
            or self.trust_radius is not None
            or self.reference_energy is not None
        )


@dataclass(frozen=True)
class Stage1Result:
    """Outcome of the circuit-parameter optimization."""

    theta_star: np.ndarray
    energy: float
    iteration_history: tuple[tuple[int, float, float], ...]
    state: np.ndarray
    stop_reason: str


@dataclass(frozen=True)
class Stage2Result:
    """Outcome of the cluster-amplitude minimization."""

    c_star: np.ndarray
    energy_bch: float
    energy_exact: float
    mode: str
    history: tuple[tuple[int, float, float], ...]
    stop_reason: str


class _Adam:
    """Bias-corrected Adam update rule; ``step`` returns the displacement."""

    def __init__(self, cfg: AdamConfig, dim: int):
        self.cfg = cfg
        self.m = np.zeros(dim)
        self.v = np.zeros(dim)
        self.t = 0

    def step(self, grad: np.ndarray) -> np.ndarray:
        cfg = self.cfg
        self.t += 1
        self.m = cfg.beta1 * self.m + (1.0 - cfg.beta1) * grad
        self.v = cfg.beta2 * self.v + (1.0 - cfg.beta2) * grad * grad
        m_hat = self.m / (1.0 - cfg.beta1**self.t)
        v_hat = self.v / (1.0 - cfg.beta2**self.t)
        return -cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.epsilon)


def _adam(objective, gradient, x0, cfg, value_and_grad=None):
    """Core loop shared by the public entry points.

    Returns ``(best_x, history, stop_reason)`` where history entries are
    ``(iteration, energy, gradient_norm)``.  The returned point is the best
    seen, not necessarily the last iterate.
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    opt = _Adam(cfg, x.size)
    history: list[tuple[int, float, float]] = []
    recent: list[float] = []
    best_x = x.copy()
    best_f = np.inf
    reason = "max_iterations"
    for it in range(cfg.max_iterations + 1):
        if value_and_grad is not None:
            f, g = value_and_grad(x)
        else:
            f = float(objective(x))
            g = np.asarray(gradient(x), dtype=np.float64)
        if not np.isfinite(f) or not np.all(np.isfinite(g)):
            raise ValueError("non-finite objective or gradient")
        g_norm = float(np.linalg.norm(g))
        history.append((it, float(f), g_norm))
        if f < best_f:
            best_f = float(f)
            best_x = x.copy()
        recent.append(float(f))
        if len(recent) > ENERGY_WINDOW + 1:
            recent.pop(0)
        if g_norm < cfg.gradient_tol:
            reason = "gradient_tol"
            break
        if len(recent) == ENERGY_WINDOW + 1 and max(recent) - min(recent) < cfg.energy_tol:
            reason = "energy_window"
            break
        if it == cfg.max_iterations:
            break
        x = x + opt.step(g)
    return best_x, history, reason


def adam_minimize(objective, gradient, x0, cfg: AdamConfig):
    """Minimize a smooth function with Adam.

    Stops on the iteration cap, on gradient norm below
    ``cfg.gradient_tol``, or when the energy spread over a 10-step window
    falls below ``cfg.energy_tol``.  Deterministic for fixed inputs.

    Returns:
        ``(x_star, history)`` with the best-seen point and the per-iteration
        ``(iteration, value, gradient_norm)`` log.
    """
    x_star, history, _ = _adam(objective, gradient, x0, cfg)
    return x_star, history


def run_stage1(
    hamiltonian,
    layout: AnsatzLayout,
    reference: np.ndarray,
    cfg: AdamConfig | None = None,
) -> Stage1Result:
    """Minimize ``<psi(theta)|H|psi(theta)>`` over the circuit parameters.

    Initial angles are drawn uniform(-0.1, 0.1) from ``cfg.seed``; theta = 0
    is skipped because the reference determinant is a stationary point for
    mean-field orbitals.  The result carries the best-seen parameters and
    the state and energy re-evaluated there.

    Args:
        hamiltonian: Hermitian PauliSum or CompiledPauliSum.
        layout: pair-rotation circuit.
        reference: starting determinant state.
        cfg: optimizer settings; defaults to ``AdamConfig()``.
    """
    if cfg is None:
        cfg = AdamConfig()
    if isinstance(hamiltonian, CompiledPauliSum):
        ham = hamiltonian
    else:
        ham = CompiledPauliSum(hamiltonian)
    if not ham.hermitian:
        raise ValueError("stage-1 Hamiltonian must be Hermitian")

    rng = np.random.default_rng(cfg.seed)
    theta0 = rng.uniform(-0.1, 0.1, size=layout.n_parameters)

    def value_and_grad(theta):
        return _energy_and_gradient(ham, layout, theta, reference)

    theta_star, history, reason = _adam(None, None, theta0, cfg, value_and_grad)
    state = prepare_state(layout, theta_star, reference)
    energy = expectation(state, ham)
    return Stage1Result(theta_star, energy, tuple(history), state, reason)


def _check_stage2_inputs(hamiltonian, psi, pool):
    if not isinstance(hamiltonian, PauliSum):
        raise TypeError("stage 2 needs the symbolic PauliSum Hamiltonian")
    if not is_hermitian(hamiltonian):
        raise ValueError("stage-2 Hamiltonian must be Hermitian")
    if pool.n_spin_orbitals != hamiltonian.n_qubits:
        raise ValueError(
            f"pool register {pool.n_spin_orbitals} does not match "
            f"Hamiltonian register {hamiltonian.n_qubits}"
        )
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValueError("stage-2 state must be normalized")


def bch_gradient(hamiltonian, psi: np.ndarray, pool: ClusterPool) -> np.ndarray:
    """Commutator expectations g_k = <psi|[A_k, H]|psi>.

    Anti-Hermiticity of A_k collapses the commutator expectation to
    2 Re <psi|A_k|H psi>, so H|psi> is applied once and each generator once.
    """
    h_psi = apply_pauli_sum(psi, hamiltonian)
    return np.array(
        [
            2.0 * float(np.vdot(psi, apply_pauli_sum(h_psi, g.pauli_form)).real)
            for g in pool
        ]
    )


def compute_commutators(
    pool: ClusterPool,
    hamiltonian: PauliSum,
    threshold: float = DEFAULT_TRUNCATION,
) -> tuple[PauliSum, ...]:
    """Hermitian commutators C_k = [A_k, H] for every pool generator."""
    if pool.n_spin_orbitals != hamiltonian.n_qubits:
        raise ValueError(
            f"pool register {pool.n_spin_orbitals} does not match "
            f"Hamiltonian register {hamiltonian.n_qubits}"
        )
    out = []
    for g in pool:
        if not is_antihermitian(g.pauli_form):
            raise ValueError(f"generator {g.id} is not anti-Hermitian")
        out.append(truncate(commutator(g.pauli_form, hamiltonian), threshold))
    return tuple(out)


def exact_energy(
    hamiltonian,
    psi: np.ndarray,
    pool: ClusterPool,
    amplitudes,
    tol: float = 1e-12,
) -> float:
    """``<e^{A(c)} psi|H|e^{A(c)} psi>`` through the exact exponential."""
    gen = pool.combine(np.asarray(amplitudes, dtype=np.float64))
    phi = apply_exponential(psi, gen, tol=tol)
    return expectation(phi, hamiltonian)


def _cap_terms(op: PauliSum, cap: int) -> PauliSum:
    """Keep the ``cap`` largest-magnitude terms."""
    if len(op) <= cap:
        return op
    order = np.argpartition(np.abs(op.coeffs), len(op) - cap)[len(op) - cap:]
    order.sort()
    return PauliSum(op.n_qubits, op._keys[order], op.coeffs[order], _merged=True)


def _run_linear(hamiltonian, psi, pool, cfg, stop):
    if not stop.bounded:
        raise ValueError(
            "linear mode is unbounded below; the stopping rule must set "
            "max_iterations, trust_radius, or reference_energy"
        )
    compiled = CompiledPauliSum(hamiltonian)
    h_psi = compiled.apply(psi)
    e0 = float(np.vdot(psi, h_psi).real)
    g = np.array(
        [
            2.0 * float(np.vdot(psi, apply_pauli_sum(h_psi, gen.pauli_form)).real)
            for gen in pool
        ]
    )
    g_norm = float(np.linalg.norm(g))

    c = np.zeros(len(pool))
    energy = e0
    history = [(0, energy, g_norm)]
    reason = "max_iterations"
    limit = cfg.max_iterations
    if stop.max_iterations is not None:
        limit = min(limit, stop.max_iterations)

    if (
        stop.reference_energy is not None
        and energy - stop.reference_energy < stop.reference_threshold
    ):
        return c, energy, tuple(history), "reference_threshold"

    opt = _Adam(cfg, c.size)
    for it in range(1, limit + 1):
        if g_norm < cfg.gradient_tol:
            reason = "gradient_tol"
            break
        delta = opt.step(-g)
        c_next = c + delta
        if stop.trust_radius is not None:
            r = stop.trust_radius
            if np.linalg.norm(c_next) > r:
                # scale the step to land on the trust sphere exactly
                a = float(delta @ delta)
                b = 2.0 * float(c @ delta)
                d = float(c @ c) - r * r
                s = (-b + np.sqrt(b * b - 4.0 * a * d)) / (2.0 * a)
                c = c + s * delta
                energy = e0 - float(c @ g)
                history.append((it, energy, g_norm))
                reason = "trust_radius"
                break
        e_next = e0 - float(c_next @ g)
        if (
            stop.reference_energy is not None
            and e_next - stop.reference_energy < stop.reference_threshold
        ):
            # the model is linear, so the step scale that lands exactly at
            # reference + threshold/2 is available in closed form
            target = stop.reference_energy + 0.5 * stop.reference_threshold
            descent = float(delta @ g)
            s = (energy - target) / descent
            c = c + s * delta
            energy = e0 - float(c @ g)
            history.append((it, energy, g_norm))
            reason = "reference_threshold"
            break
        c = c_next
        energy = e_next
        history.append((it, energy, g_norm))
    return c, energy, tuple(history), reason


def _run_iterative(hamiltonian, psi, pool, cfg, stop, truncation, term_cap):
    h = hamiltonian
    c = np.zeros(len(pool))
    opt = _Adam(cfg, c.size)
    history: list[tuple[int, float, float]] = []
    recent: list[float] = []
    reason = "max_iterations"
    for it in range(cfg.max_iterations + 1):
        h_psi = apply_pauli_sum(psi, h)
        energy = float(np.vdot(psi, h_psi).real)
        g = np.array(
            [
                2.0 * float(np.vdot(psi, apply_pauli_sum(h_psi, gen.pauli_form)).real)
                for gen in pool
            ]
        )
        g_norm = float(np.linalg.norm(g))
        history.append((it, energy, g_norm))
        recent.append(energy)
        if len(recent) > stop.energy_window + 1:
            recent.pop(0)
        if g_norm < cfg.gradient_tol:
            reason = "gradient_tol"
            break
        if (
            len(recent) == stop.energy_window + 1
            and max(recent) - min(recent) < stop.energy_tol
        ):
            reason = "energy_window"
            break
        if it == cfg.max_iterations:
            break
        delta = opt.step(-g)
        norm = float(np.linalg.norm(delta))
        if norm > stop.step_radius:
            delta *= stop.step_radius / norm
        h = truncate(h - commutator(pool.combine(delta), h), truncation)
        h = _cap_terms(h, term_cap)
        c = c + delta
    return c, history[-1][1], tuple(history), reason


def _run_exact(hamiltonian, psi, pool, cfg, fd_step=1e-5):
    compiled = CompiledPauliSum(hamiltonian)

    def objective(c):
        gen = pool.combine(c)
        phi = apply_exponential(psi, gen)
        return float(np.vdot(phi, compiled.apply(phi)).real)

    def gradient(c):
        g = np.empty(c.size)
        for k in range(c.size):
            probe = c.copy()
            probe[k] = c[k] + fd_step
            up = objective(probe)
            probe[k] = c[k] - fd_step
            down = objective(probe)
            g[k] = (up - down) / (2.0 * fd_step)
        return g

    c0 = np.zeros(len(pool))
    c_star, history, reason = _adam(objective, gradient, c0, cfg)
    return c_star, objective(c_star), tuple(history), reason


def run_stage2(
    hamiltonian: PauliSum,
    psi: np.ndarray,
    pool: ClusterPool,
    mode: str = "iterative",
    cfg: AdamConfig | None = None,
    stop: StopRule | None = None,
    *,
    truncation: float = DEFAULT_TRUNCATION,
    term_cap: int = TERM_CAP,
) -> Stage2Result:
    """Minimize the cluster-amplitude energy from the stage-1 state.

    Args:
        hamiltonian: symbolic Hermitian Hamiltonian.
        psi: normalized stage-1 state.
        pool: excitation generators defining A(c).
        mode: ``linear``, ``iterative``, or ``exact``.
        cfg: optimizer settings; defaults to ``AdamConfig`` with the
            stage-2 learning rate.
        stop: stage-2 stopping rule; mandatory content in ``linear`` mode.
        truncation: coefficient threshold for the re-expanded Hamiltonian.
        term_cap: largest-magnitude term count kept after each re-expansion.

    Returns:
        Stage2Result; ``energy_exact`` is always the exact-mode energy at
        the returned amplitudes, whichever mode produced them.
    """
    _check_stage2_inputs(hamiltonian, psi, pool)
    if cfg is None:
        cfg = AdamConfig(learning_rate=STAGE2_LEARNING_RATE)
    if stop is None:
        stop = StopRule()

    if mode == "linear":
        c, energy, history, reason = _run_linear(hamiltonian, psi, pool, cfg, stop)
    elif mode == "iterative":
        c, energy, history, reason = _run_iterative(
            hamiltonian, psi, pool, cfg, stop, truncation, term_cap
        )
    elif mode == "exact":
        c, energy, history, reason = _run_exact(hamiltonian, psi, pool, cfg)
    else:
        raise ValueError(f"unknown stage-2 mode {mode!r}")

    e_exact = exact_energy(hamiltonian, psi, pool, c)
    return Stage2Result(c, energy, e_exact, mode, history, reason)


def run_record(
    *,
    bond_length: float,
    e_hf: float,
    e_fci: float,
    stage1: Stage1Result,
    stage2: Stage2Result,
    layout: AnsatzLayout,
    cfg: AdamConfig,
) -> dict:
    """JSON-compatible summary of one two-stage run."""
    return {
        "bond_length": float(bond_length),
        "config": {
            "learning_rate": cfg.learning_rate,
            "beta1": cfg.beta1,
            "beta2": cfg.beta2,
            "epsilon": cfg.epsilon,
            "max_iterations": cfg.max_iterations,
            "gradient_tol": cfg.gradient_tol,
            "energy_tol": cfg.energy_tol,
        },
        "seed": cfg.seed,
        "mode": stage2.mode,
        "stop_reason": stage2.stop_reason,
        "energies": {
            "hf": float(e_hf),
            "mr": stage1.energy,
            "mruccsd": stage2.energy_bch,
            "exact": stage2.energy_exact,
            "fci": float(e_fci),
        },
        "errors": {
            "hf": float(e_hf - e_fci),
            "mr": stage1.energy - e_fci,
            "mruccsd": stage2.energy_bch - e_fci,
        },
        "resources": {
            "qubits": layout.n_qubits,
            "parameters": layout.n_parameters,
            "cnots": cnot_count(layout),
        },
        "stage1_energies": [e for _, e, _ in stage1.iteration_history],
        "stage2_energies": [e for _, e, _ in stage2.history],
    }
