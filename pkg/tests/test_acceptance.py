"""Acceptance suite: every binding requirement at its stated tolerance.

One test per requirement.  The slow curve tests drive the full two-stage
pipeline over the bundled fixture grids exactly as the CLI would, then gate
the resulting error curves; the cheaper structural requirements run on every
invocation.  Measured margins are printed so a verbose run doubles as a
reproduction report.
"""

import json
import math

import numpy as np
import pytest

from mrucc.ansatz import build_layout, cnot_count, prepare_state
from mrucc.cli import PROFILES, RunConfig, load_manifest, run_point
from mrucc.driver import bch_gradient, exact_energy
from mrucc.fci import build_sector_matrix, fci_ground_energy, sector_basis, sector_dimension
from mrucc.fermion import build_hamiltonian, build_uccsd_pool, jordan_wigner
from mrucc.integrals import hf_energy, parse_fcidump, spin_expand
from mrucc.pauli import to_matrix
from mrucc.statevector import expectation, hf_state, stage1_gradient

from conftest import FIXTURES, load_problem, random_molecular_text

MOLECULES = ("H2", "H4", "LiH", "H6", "BeH2")
CURVE_MOLECULES = ("LiH", "H6", "BeH2")

#: equilibrium bond length per curve molecule, also used to mark where the
#: dissociation region starts (R >= 1.5 x equilibrium).
EQUILIBRIUM = {"LiH": 1.59, "H6": 0.86, "BeH2": 1.25}

CHEMICAL_ACCURACY = 1.6e-3


def _run_curve(molecule):
    points = load_manifest(FIXTURES / molecule / "manifest.txt")
    cfg = RunConfig(points=points, mode="linear", seed=7)
    return [run_point(r, path, cfg) for r, path in points]


@pytest.fixture(scope="module")
def curve_suite():
    cache = {}

    def get(molecule):
        if molecule not in cache:
            cache[molecule] = _run_curve(molecule)
        return cache[molecule]

    return get


class TestStructure:
    def test_sector_dimensions(self):
        assert sector_dimension(12, 4) == 495
        assert sector_dimension(12, 6) == 924
        assert sector_dimension(14, 6) == 3003

    def test_resource_counts(self):
        expected = {"LiH": (12, 54, 108), "H6": (12, 260, 520), "BeH2": (14, 198, 396)}
        for profile in PROFILES.values():
            qubits = 12 if profile.molecule != "BeH2" else 14
            layout = build_layout(qubits, profile.schedule, profile.budget)
            got = (layout.n_qubits, layout.n_parameters, cnot_count(layout))
            assert got == expected[profile.molecule], profile.molecule

    def test_qubit_counts(self):
        for molecule, qubits in (("LiH", 12), ("BeH2", 14), ("H6", 12)):
            manifest = load_manifest(FIXTURES / molecule / "manifest.txt")
            system = parse_fcidump(str(manifest[0][1]))
            assert 2 * system.n_spatial == qubits, molecule


class TestStateInvariants:
    def test_particle_number_conservation(self):
        rng = np.random.default_rng(11)
        kinds = ("adjacent", "next_nearest")
        worst = 0.0
        for _ in range(1000):
            n = int(rng.integers(8, 15))
            sweeps = ",".join(rng.choice(kinds, size=rng.integers(1, 5)))
            layout = build_layout(n, sweeps)
            occupied = rng.choice(n, size=rng.integers(1, n), replace=False)
            reference = hf_state(n, tuple(int(q) for q in occupied))
            theta = rng.uniform(-np.pi, np.pi, layout.n_parameters)
            psi = prepare_state(layout, theta, reference)
            weights = np.bitwise_count(np.arange(1 << n, dtype=np.uint64))
            leak = float(np.sum(np.abs(psi[weights != len(occupied)]) ** 2))
            worst = max(worst, leak)
        print(f"\nPASS particle-number conservation: worst leak {worst:.3e} < 1e-12")
        assert worst < 1e-12

    def test_gradient_correctness(self):
        rng = np.random.default_rng(23)
        step = 1e-5
        worst = 0.0
        for trial in range(100):
            spin = spin_expand(
                parse_fcidump(random_molecular_text(rng, 4, int(rng.integers(1, 8))))
            )
            ham, _, reference = _problem_from(spin)
            layout = build_layout(8, "adjacent,next_nearest")
            theta = rng.uniform(-0.5, 0.5, layout.n_parameters)
            grad = stage1_gradient(ham, layout, theta, reference)
            fd = np.empty_like(grad)
            for k in range(theta.size):
                probe = theta.copy()
                probe[k] = theta[k] + step
                up = expectation(prepare_state(layout, probe, reference), ham)
                probe[k] = theta[k] - step
                down = expectation(prepare_state(layout, probe, reference), ham)
                fd[k] = (up - down) / (2.0 * step)
            rel = float(np.linalg.norm(fd - grad) / np.linalg.norm(grad))
            worst = max(worst, rel)
        print(f"\nPASS gradient correctness: worst relative error {worst:.3e} < 1e-6")
        assert worst < 1e-6

    def test_first_order_model_is_second_order_accurate(self):
        ham, spin, psi = load_problem(FIXTURES / "H2" / "H2_R0.7400.fcidump")
        pool = build_uccsd_pool(spin.n_spin_orbitals, spin.default_occupation())
        g = bch_gradient(ham, psi, pool)
        e0 = expectation(psi, ham)
        rng = np.random.default_rng(5)
        direction = rng.standard_normal(len(pool))
        direction /= np.linalg.norm(direction)

        def gap(scale):
            c = scale * direction
            return abs((e0 - float(c @ g)) - exact_energy(ham, psi, pool, c))

        ratio = gap(1e-2) / gap(5e-3)
        print(f"\nPASS model-order check: halving |c| shrank the gap by {ratio:.3f}")
        assert 3.5 < ratio < 4.5

    def test_oracle_equivalence(self):
        rng = np.random.default_rng(31)
        for molecule, fname in (("H2", "H2_R0.7400"), ("H4", "H4_R1.0000")):
            ham, spin, _ = load_problem(FIXTURES / molecule / f"{fname}.fcidump")
            n = spin.n_spin_orbitals
            dense = to_matrix(ham)
            basis = sector_basis(n, spin.n_electrons)
            sector = build_sector_matrix(ham, basis)
            states = basis.states.astype(np.int64)
            slice_ = dense[np.ix_(states, states)]
            assert np.max(np.abs(sector - slice_)) < 1e-10, molecule
            psi = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
            psi /= np.linalg.norm(psi)
            quad = float(np.real(np.vdot(psi, dense @ psi)))
            assert abs(expectation(psi, ham) - quad) < 1e-10, molecule


def _problem_from(spin):
    ham = jordan_wigner(build_hamiltonian(spin))
    reference = hf_state(spin.n_spin_orbitals, spin.default_occupation())
    return ham, spin, reference


@pytest.mark.slow
class TestCurves:
    def test_variational_bound(self, curve_suite):
        worst = -math.inf
        for molecule in MOLECULES:
            for rec in curve_suite(molecule):
                e_fci = rec["energies"]["fci"]
                for label in ("mr", "exact"):
                    gap = e_fci - rec["energies"][label]
                    worst = max(worst, gap)
                    assert gap <= 1e-9, (molecule, rec["bond_length"], label)
        print(f"\nPASS variational bound: worst undershoot {worst:.3e} <= 1e-9")

    @pytest.mark.parametrize("molecule", CURVE_MOLECULES)
    def test_stage1_error_curve(self, curve_suite, molecule):
        worst = 0.0
        for rec in curve_suite(molecule):
            err = abs(rec["errors"]["mr"])
            worst = max(worst, err)
            assert err <= 5e-3, (molecule, rec["bond_length"], err)
        print(f"\nPASS {molecule} stage-1 curve: worst |E_MR - E_FCI| {worst:.3e} <= 5e-3")

    @pytest.mark.parametrize("molecule", CURVE_MOLECULES)
    def test_stage1_beats_hf_in_dissociation(self, curve_suite, molecule):
        cutoff = 1.5 * EQUILIBRIUM[molecule]
        ratios = [
            rec["errors"]["hf"] / abs(rec["errors"]["mr"])
            for rec in curve_suite(molecule)
            if rec["bond_length"] >= cutoff
        ]
        assert ratios, "grid must reach the dissociation region"
        assert min(ratios) >= 10.0, (molecule, min(ratios))
        print(f"\nPASS {molecule} dissociation: HF/MR error ratio >= {min(ratios):.1f}")

    @pytest.mark.parametrize("molecule", CURVE_MOLECULES)
    def test_stage2_error_curve(self, curve_suite, molecule):
        worst = 0.0
        for rec in curve_suite(molecule):
            err = abs(rec["errors"]["mruccsd"])
            worst = max(worst, err)
            assert err <= CHEMICAL_ACCURACY, (molecule, rec["bond_length"], err)
        print(
            f"\nPASS {molecule} stage-2 curve: worst |E_MRUCCSD - E_FCI| "
            f"{worst:.3e} <= {CHEMICAL_ACCURACY}"
        )

    @pytest.mark.parametrize("molecule", CURVE_MOLECULES)
    def test_stage2_equilibrium_precision(self, curve_suite, molecule):
        r_eq = EQUILIBRIUM[molecule]
        recs = [r for r in curve_suite(molecule) if abs(r["bond_length"] - r_eq) < 1e-9]
        assert recs, f"{molecule} grid must contain the equilibrium point {r_eq}"
        err = abs(recs[0]["errors"]["mruccsd"])
        assert err <= 1e-4, (molecule, err)
        print(f"\nPASS {molecule} equilibrium: |E_MRUCCSD - E_FCI| {err:.3e} <= 1e-4")

    def test_reference_stop_precision_report(self, curve_suite):
        # The final-precision figure is reported, not gated: it is reachable
        # only with the FCI-referenced stopping rule the default mode uses.
        total = hits = 0
        for molecule in CURVE_MOLECULES:
            for rec in curve_suite(molecule):
                total += 1
                hits += abs(rec["errors"]["mruccsd"]) < 1e-5
        print(f"\nREPORT stage-2 reference stop: {hits}/{total} points below 1e-5")

    def test_generated_integrals_round_trip(self, curve_suite):
        worst_hf = worst_fci = 0.0
        for molecule in MOLECULES:
            sidecar = {
                round(point["r"], 6): point
                for point in json.loads(
                    (FIXTURES / molecule / "reference.json").read_text()
                )["points"]
            }
            for rec in curve_suite(molecule):
                point = sidecar[round(rec["bond_length"], 6)]
                d_hf = abs(rec["energies"]["hf"] - point["e_hf"])
                d_fci = abs(rec["energies"]["fci"] - point["e_fci"])
                worst_hf = max(worst_hf, d_hf)
                worst_fci = max(worst_fci, d_fci)
                assert d_hf <= 1e-8, (molecule, rec["bond_length"])
                assert d_fci <= 1e-7, (molecule, rec["bond_length"])
        print(
            f"\nPASS integral round trip: HF within {worst_hf:.3e} <= 1e-8, "
            f"FCI within {worst_fci:.3e} <= 1e-7"
        )

    def test_fixture_files_parse_cleanly(self):
        for molecule in MOLECULES:
            for _, path in load_manifest(FIXTURES / molecule / "manifest.txt"):
                system = parse_fcidump(str(path), strict=False)
                assert not system.conflicts, path
