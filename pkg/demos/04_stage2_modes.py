"""The three stage-2 energy paths on one H4 geometry.

Starting from a deliberately shallow stage-1 state, minimizes the cluster
amplitudes three ways and compares what each reports:

- linear:    first-order model with the exact-reference stopping rule;
- iterative: bounded steps with Hamiltonian re-expansion after each one;
- exact:     direct exponential evaluation (slow oracle).

The model value, the re-evaluated exact energy, and the diagonalization
benchmark are printed side by side.  The re-expansion in iterative mode
multiplies the Hamiltonian by the generators every step, so its term
growth is bounded here with an explicit truncation and term cap; on
larger molecules those bounds are what keep the mode affordable.

Run:  python3 demos/04_stage2_modes.py   (a minute or two)
"""

import time
from pathlib import Path

from mrucc import (
    AdamConfig,
    StopRule,
    build_layout,
    build_hamiltonian,
    build_uccsd_pool,
    fci_ground_energy,
    hf_state,
    jordan_wigner,
    parse_fcidump,
    run_stage1,
    run_stage2,
    spin_expand,
)

FIXTURE = (
    Path(__file__).resolve().parent.parent / "fixtures" / "H4" / "H4_R1.0000.fcidump"
)


def main():
    spin = spin_expand(parse_fcidump(str(FIXTURE)))
    hamiltonian = jordan_wigner(build_hamiltonian(spin))
    occupied = spin.default_occupation()
    reference = hf_state(spin.n_spin_orbitals, occupied)
    e_fci, _ = fci_ground_energy(hamiltonian, spin.n_electrons)

    layout = build_layout(spin.n_spin_orbitals, "(adjacent,next_nearest)x2")
    stage1 = run_stage1(
        hamiltonian, layout, reference, AdamConfig(max_iterations=300)
    )
    print(f"stage-1 energy error: {stage1.energy - e_fci:.3e} Ha")

    pool = build_uccsd_pool(spin.n_spin_orbitals, occupied)
    print(f"cluster pool: {len(pool)} generators\n")
    print(f"{'mode':10} {'model - FCI':>14} {'exact - FCI':>14} {'stop':>20} {'time':>7}")

    for mode, iterations, stop in [
        ("linear", 100000, StopRule(reference_energy=e_fci, reference_threshold=1e-5)),
        ("iterative", 150, StopRule()),
        ("exact", 60, StopRule(max_iterations=60)),
    ]:
        cfg = AdamConfig(learning_rate=0.01, max_iterations=iterations)
        start = time.perf_counter()
        result = run_stage2(
            hamiltonian,
            stage1.state,
            pool,
            mode,
            cfg,
            stop,
            truncation=1e-8,
            term_cap=20000,
        )
        elapsed = time.perf_counter() - start
        print(
            f"{mode:10} {result.energy_bch - e_fci:14.3e} "
            f"{result.energy_exact - e_fci:14.3e} {result.stop_reason:>20} "
            f"{elapsed:6.1f}s"
        )


if __name__ == "__main__":
    main()
