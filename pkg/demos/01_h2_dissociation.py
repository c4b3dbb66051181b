"""Walk the full two-stage pipeline over the bundled H2 bond-length scan.

For each geometry: parse the integral file, build the qubit Hamiltonian,
optimize the particle-number-conserving circuit (stage 1), then minimize
the first-order transformed energy over the cluster amplitudes (stage 2),
and compare everything against exact diagonalization.

Run:  python3 demos/01_h2_dissociation.py
"""

from pathlib import Path

from mrucc import (
    AdamConfig,
    StopRule,
    build_layout,
    build_hamiltonian,
    build_uccsd_pool,
    fci_ground_energy,
    hf_energy,
    hf_state,
    jordan_wigner,
    parse_fcidump,
    run_stage1,
    run_stage2,
    spin_expand,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "H2"


def main():
    print(f"{'R':>5} {'E_HF':>12} {'E_MR':>12} {'E_MRUCCSD':>12} {'E_FCI':>12}")
    for line in (FIXTURES / "manifest.txt").read_text().splitlines():
        r, name = line.split()
        spin = spin_expand(parse_fcidump(str(FIXTURES / name)))
        hamiltonian = jordan_wigner(build_hamiltonian(spin))
        occupied = spin.default_occupation()
        reference = hf_state(spin.n_spin_orbitals, occupied)

        e_hf = hf_energy(spin, occupied)
        e_fci, _ = fci_ground_energy(hamiltonian, spin.n_electrons)

        layout = build_layout(spin.n_spin_orbitals, "(adjacent,next_nearest)x3")
        stage1 = run_stage1(
            hamiltonian, layout, reference, AdamConfig(max_iterations=2000)
        )

        pool = build_uccsd_pool(spin.n_spin_orbitals, occupied)
        stage2 = run_stage2(
            hamiltonian,
            stage1.state,
            pool,
            mode="linear",
            cfg=AdamConfig(learning_rate=0.01, max_iterations=100000),
            stop=StopRule(reference_energy=e_fci),
        )
        print(
            f"{float(r):5.2f} {e_hf:12.8f} {stage1.energy:12.8f} "
            f"{stage2.energy_bch:12.8f} {e_fci:12.8f}"
        )


if __name__ == "__main__":
    main()
