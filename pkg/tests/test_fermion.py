"""Jordan-Wigner mapping and operator-construction checks.

The canonical anticommutation relations, vacuum actions, and dense-matrix
comparisons pin the representation; nothing here assumes the mapping's
internal sign conventions beyond what those algebraic identities force.
"""

import numpy as np
import pytest

from mrucc.fermion import (
    ClusterPool,
    FermionSum,
    FermionTerm,
    build_hamiltonian,
    build_uccsd_pool,
    jordan_wigner,
)
from mrucc.integrals import parse_fcidump, spin_expand
from mrucc.pauli import PauliSum, commutator, is_antihermitian, is_hermitian, to_matrix
from mrucc.statevector import apply_pauli_sum, hf_state

from conftest import random_molecular_text


def ladder(n, p, dag) -> FermionSum:
    return FermionSum.from_factors(n, 1.0, [(p, dag)])


def random_fermion_sum(rng, n, n_terms) -> FermionSum:
    terms = []
    for _ in range(n_terms):
        length = int(rng.integers(0, 5))
        factors = tuple(
            (int(rng.integers(0, n)), bool(rng.integers(0, 2))) for _ in range(length)
        )
        terms.append(
            FermionTerm(complex(rng.standard_normal(), rng.standard_normal()), factors)
        )
    return FermionSum(n, tuple(terms))


class TestJordanWigner:
    def test_single_creation_one_qubit(self):
        op = jordan_wigner(ladder(1, 0, True))
        assert op.coefficient("X") == pytest.approx(0.5)
        assert op.coefficient("Y") == pytest.approx(-0.5j)
        assert len(op) == 2

    def test_number_operator(self):
        op = jordan_wigner(ladder(1, 0, True) * ladder(1, 0, False))
        assert op.coefficient("I") == pytest.approx(0.5)
        assert op.coefficient("Z") == pytest.approx(-0.5)
        assert len(op) == 2

    def test_z_string_on_lower_qubits(self):
        op = jordan_wigner(ladder(3, 2, True))
        assert op.coefficient("ZZX") == pytest.approx(0.5)
        assert op.coefficient("ZZY") == pytest.approx(-0.5j)

    def test_canonical_anticommutation(self):
        n = 4
        for p in range(n):
            for q in range(n):
                a_p = jordan_wigner(ladder(n, p, False))
                adag_q = jordan_wigner(ladder(n, q, True))
                anti = a_p * adag_q + adag_q * a_p
                if p == q:
                    assert len(anti) == 1
                    assert anti.coefficient("I" * n) == pytest.approx(1.0)
                else:
                    assert len(anti) == 0

    def test_same_species_anticommutation(self):
        n = 3
        for p in range(n):
            for q in range(n):
                adag_p = jordan_wigner(ladder(n, p, True))
                adag_q = jordan_wigner(ladder(n, q, True))
                anti = adag_p * adag_q + adag_q * adag_p
                assert len(anti) == 0

    def test_vacuum_filling_sign_convention(self):
        # creation operators applied highest-to-lowest fill a determinant
        # with a plus sign: a_p^dag a_q^dag |vac> = +|{p,q}> for p < q
        n = 4
        vac = hf_state(n, set())
        for p in range(n):
            for q in range(p + 1, n):
                op = jordan_wigner(ladder(n, p, True) * ladder(n, q, True))
                np.testing.assert_allclose(
                    apply_pauli_sum(vac, op), hf_state(n, {p, q}), atol=1e-14
                )

    def test_adjoint_preserved(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            f = random_fermion_sum(rng, 4, 5)
            lhs = jordan_wigner(f.adjoint())
            rhs = jordan_wigner(f).adjoint()
            assert lhs.equals(rhs, tol=1e-12)

    def test_linear_in_terms(self):
        rng = np.random.default_rng(19)
        a = random_fermion_sum(rng, 3, 4)
        b = random_fermion_sum(rng, 3, 4)
        assert jordan_wigner(a + b).equals(
            jordan_wigner(a) + jordan_wigner(b), tol=1e-12
        )

    def test_empty_sum_maps_to_zero(self):
        assert len(jordan_wigner(FermionSum(3, ()))) == 0


def total_number_operator(n: int) -> FermionSum:
    total = FermionSum(n, ())
    for p in range(n):
        total = total + ladder(n, p, True) * ladder(n, p, False)
    return total


class TestBuildHamiltonian:
    def test_single_orbital_toy(self):
        text = "&FCI NORB=1,NELEC=1,MS2=1,\n/\n0.75 1 1 0 0\n-0.5 0 0 0 0\n"
        spin = spin_expand(parse_fcidump(text))
        ham = jordan_wigner(build_hamiltonian(spin))
        # e_core + eps*(n_0 + n_1) on 2 spin orbitals
        vac = hf_state(2, set())
        assert np.vdot(vac, apply_pauli_sum(vac, ham)).real == pytest.approx(-0.5)
        one = hf_state(2, {0})
        assert np.vdot(one, apply_pauli_sum(one, ham)).real == pytest.approx(0.25)

    def test_hermitian_after_jw(self, random_system):
        ham = jordan_wigner(build_hamiltonian(random_system(23, 3, 2)))
        assert is_hermitian(ham, tol=1e-10)

    def test_commutes_with_total_number(self, random_system):
        sys = random_system(29, 3, 4)
        ham = jordan_wigner(build_hamiltonian(sys))
        number = jordan_wigner(total_number_operator(sys.n_spin_orbitals))
        assert len(commutator(ham, number)) == 0

    def test_block_diagonal_across_sectors(self, random_system):
        sys = random_system(31, 2, 2)
        mat = to_matrix(jordan_wigner(build_hamiltonian(sys)))
        dim = mat.shape[0]
        for a in range(dim):
            for b in range(dim):
                if bin(a).count("1") != bin(b).count("1"):
                    assert abs(mat[a, b]) < 1e-12


def brute_force_pool_size(n_spin, occupied):
    """Independent enumeration by the spin-conservation rule."""
    spin = {p: p % 2 for p in range(n_spin)}
    holes = sorted(occupied)
    parts = [p for p in range(n_spin) if p not in occupied]
    singles = sum(1 for i in holes for m in parts if spin[m] == spin[i])
    doubles = 0
    for a in range(len(holes)):
        for b in range(a + 1, len(holes)):
            for c in range(len(parts)):
                for d in range(c + 1, len(parts)):
                    hole_spins = sorted((spin[holes[a]], spin[holes[b]]))
                    part_spins = sorted((spin[parts[c]], spin[parts[d]]))
                    if hole_spins == part_spins:
                        doubles += 1
    return singles, doubles


class TestUccsdPool:
    def test_minimal_four_orbital_pool(self):
        pool = build_uccsd_pool(4, {0, 1})
        assert pool.n_singles == 2 and pool.n_doubles == 1
        singles = [g.indices for g in pool if g.kind == "single"]
        assert set(singles) == {(2, 0), (3, 1)}
        doubles = [g.indices for g in pool if g.kind == "double"]
        assert doubles == [(2, 3, 0, 1)]

    def test_pool_generators_antihermitian(self):
        pool = build_uccsd_pool(6, {0, 1})
        assert len(pool) > 0
        for g in pool:
            assert is_antihermitian(g.pauli_form, tol=1e-12)

    def test_counts_match_brute_force(self):
        for n_spin, occ in [(8, {0, 1, 2, 3}), (10, {0, 1}), (12, {0, 1, 2, 3})]:
            pool = build_uccsd_pool(n_spin, occ)
            singles, doubles = brute_force_pool_size(n_spin, occ)
            assert pool.n_singles == singles
            assert pool.n_doubles == doubles

    def test_twelve_orbital_four_electron_pool_size(self):
        # 4 electrons in 12 spin orbitals: 16 spin-conserving singles and
        # 76 spin-conserving doubles
        pool = build_uccsd_pool(12, {0, 1, 2, 3})
        assert pool.n_singles == 16
        assert pool.n_doubles == 76
        assert len(pool) == 92

    def test_generator_ids_sequential(self):
        pool = build_uccsd_pool(6, {0, 1, 2})
        assert [g.id for g in pool] == list(range(len(pool)))

    def test_generators_preserve_particle_number(self):
        pool = build_uccsd_pool(6, {0, 1})
        number = jordan_wigner(total_number_operator(6))
        for g in pool:
            assert len(commutator(g.pauli_form, number)) == 0

    def test_combine_weights_generators(self):
        pool = build_uccsd_pool(4, {0, 1})
        c = np.array([0.5, 0.0, -0.25])
        combined = pool.combine(c)
        manual = 0.5 * pool.generators[0].pauli_form + (
            -0.25
        ) * pool.generators[2].pauli_form
        assert combined.equals(manual, tol=1e-14)
        with pytest.raises(ValueError):
            pool.combine([0.1])

    def test_empty_particle_or_hole_set_raises(self):
        with pytest.raises(ValueError):
            build_uccsd_pool(4, set())
        with pytest.raises(ValueError):
            build_uccsd_pool(4, {0, 1, 2, 3})

    def test_blocked_ordering_pool(self):
        # blocked: alphas on 0..2, betas on 3..5; occupied {0, 3} is one
        # electron of each spin in the first spatial orbital
        pool = build_uccsd_pool(6, {0, 3}, ordering="blocked")
        singles = {g.indices for g in pool if g.kind == "single"}
        assert singles == {(1, 0), (2, 0), (4, 3), (5, 3)}
