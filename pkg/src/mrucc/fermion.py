"""Second-quantized operators and the Jordan-Wigner transformation.

Builds the molecular Hamiltonian and the UCCSD excitation pool as ordered
products of ladder operators, then maps them to Pauli sums: spin orbital p
becomes qubit p, with a_p^dag -> (X_p - iY_p)/2 times a Z string on all
lower qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from mrucc.integrals import MolecularSystem, SpinIntegrals, spin_expand
from mrucc.pauli import PauliLabel, PauliSum, sum_mul

__all__ = [
    "FermionTerm",
    "FermionSum",
    "PoolGenerator",
    "ClusterPool",
    "jordan_wigner",
    "build_hamiltonian",
    "build_uccsd_pool",
]


@dataclass(frozen=True)
class FermionTerm:
    """One product of ladder operators with a coefficient.

    ``factors`` is an ordered tuple of ``(spin_orbital, is_creation)``;
    order is significant.  An empty tuple is the identity.
    """

    coefficient: complex
    factors: tuple[tuple[int, bool], ...]

    def adjoint(self) -> "FermionTerm":
        flipped = tuple((p, not dag) for p, dag in reversed(self.factors))
        return FermionTerm(np.conj(self.coefficient), flipped)


@dataclass(frozen=True)
class FermionSum:
    """Linear combination of ladder-operator products on a fixed register."""

    n_spin_orbitals: int
    terms: tuple[FermionTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            for p, _ in t.factors:
                if not 0 <= p < self.n_spin_orbitals:
                    raise ValueError(
                        f"spin orbital {p} outside register of {self.n_spin_orbitals}"
                    )

    @classmethod
    def from_factors(
        cls, n_spin_orbitals: int, coefficient: complex, factors
    ) -> "FermionSum":
        return cls(n_spin_orbitals, (FermionTerm(coefficient, tuple(factors)),))

    def __add__(self, other: "FermionSum") -> "FermionSum":
        if self.n_spin_orbitals != other.n_spin_orbitals:
            raise ValueError("register size mismatch")
        return FermionSum(self.n_spin_orbitals, self.terms + other.terms)

    def __sub__(self, other: "FermionSum") -> "FermionSum":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, FermionSum):
            if self.n_spin_orbitals != other.n_spin_orbitals:
                raise ValueError("register size mismatch")
            prods = tuple(
                FermionTerm(a.coefficient * b.coefficient, a.factors + b.factors)
                for a in self.terms
                for b in other.terms
            )
            return FermionSum(self.n_spin_orbitals, prods)
        return FermionSum(
            self.n_spin_orbitals,
            tuple(FermionTerm(t.coefficient * other, t.factors) for t in self.terms),
        )

    def __rmul__(self, scalar) -> "FermionSum":
        return self * scalar

    def adjoint(self) -> "FermionSum":
        return FermionSum(self.n_spin_orbitals, tuple(t.adjoint() for t in self.terms))


def _ladder_pauli(p: int, is_creation: bool, n_qubits: int) -> PauliSum:
    """JW image of one ladder operator: (X -+ iY)/2 with a lower Z string."""
    zstring = (1 << p) - 1
    x_label = PauliLabel(n_qubits, 1 << p, zstring)
    y_label = PauliLabel(n_qubits, 1 << p, zstring | (1 << p))
    sign = -1.0 if is_creation else 1.0
    return PauliSum.from_terms([(x_label, 0.5), (y_label, sign * 0.5j)], n_qubits)


def jordan_wigner(f: FermionSum) -> PauliSum:
    """Map a FermionSum to its PauliSum image and simplify.

    Each term's factors multiply out left to right; all terms merge in a
    single pass so repeated labels combine exactly once.
    """
    n = f.n_spin_orbitals
    keys_parts = []
    coeff_parts = []
    identity = PauliSum.identity(n)
    for term in f.terms:
        acc = identity
        for p, dag in term.factors:
            acc = sum_mul(acc, _ladder_pauli(p, dag, n), threshold=0.0)
        scaled = term.coefficient * acc
        keys_parts.append(scaled._keys)
        coeff_parts.append(scaled.coeffs)
    if not keys_parts:
        return PauliSum.zero(n)
    return PauliSum(n, np.concatenate(keys_parts), np.concatenate(coeff_parts))


def build_hamiltonian(sys: MolecularSystem | SpinIntegrals, ordering: str = "interleaved") -> FermionSum:
    """Second-quantized molecular Hamiltonian over spin orbitals.

    H = e_core + sum h(P,Q) a_P^dag a_Q
      + 1/2 sum <PQ|RS> a_P^dag a_Q^dag a_S a_R.

    Accepts spatial integrals (spin-expanded internally with the given
    ordering) or already-expanded spin integrals.
    """
    spin = sys if isinstance(sys, SpinIntegrals) else spin_expand(sys, ordering)
    n = spin.n_spin_orbitals
    terms = [FermionTerm(spin.e_core, ())]
    one = spin.one_body
    for p, q in zip(*np.nonzero(one)):
        terms.append(FermionTerm(one[p, q], ((int(p), True), (int(q), False))))
    two = spin.two_body
    for p, q, r, s in zip(*np.nonzero(two)):
        terms.append(
            FermionTerm(
                0.5 * two[p, q, r, s],
                ((int(p), True), (int(q), True), (int(s), False), (int(r), False)),
            )
        )
    return FermionSum(n, tuple(terms))


@dataclass(frozen=True)
class PoolGenerator:
    """One anti-Hermitian excitation generator T_k - T_k^dag at unit amplitude."""

    id: int
    kind: str
    indices: tuple[int, ...]
    pauli_form: PauliSum


@dataclass(frozen=True)
class ClusterPool:
    """Ordered UCCSD excitation pool for a fixed reference determinant."""

    n_spin_orbitals: int
    occupied: tuple[int, ...]
    generators: tuple[PoolGenerator, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def n_singles(self) -> int:
        return sum(1 for g in self.generators if g.kind == "single")

    @property
    def n_doubles(self) -> int:
        return sum(1 for g in self.generators if g.kind == "double")

    def combine(self, amplitudes) -> PauliSum:
        """Weighted generator sum A(c) = sum_k c_k A_k."""
        if len(amplitudes) != len(self.generators):
            raise ValueError(
                f"{len(amplitudes)} amplitudes for {len(self.generators)} generators"
            )
        total = PauliSum.zero(self.n_spin_orbitals)
        for c, g in zip(amplitudes, self.generators):
            if c != 0.0:
                total = total + float(c) * g.pauli_form
        return total


def _spin_of(p: int, n_spin_orbitals: int, ordering: str) -> int:
    if ordering == "interleaved":
        return p % 2
    if ordering == "blocked":
        return 0 if p < n_spin_orbitals // 2 else 1
    raise ValueError(f"unknown ordering {ordering!r}")


def build_uccsd_pool(
    n_spin_orbitals: int,
    occupied,
    ordering: str = "interleaved",
) -> ClusterPool:
    """Enumerate spin-conserving singles and doubles from a reference.

    Singles a_m^dag a_i need spin(m) == spin(i); doubles
    a_m^dag a_n^dag a_j a_i (m<n particles, i<j holes) need the particle
    pair's spins to match the hole pair's as multisets.  Each generator is
    T - T^dag at unit amplitude, mapped through Jordan-Wigner.

    Raises:
        ValueError: empty hole or particle set, or bad indices.
    """
    occ = sorted(set(int(i) for i in occupied))
    if any(not 0 <= i < n_spin_orbitals for i in occ):
        raise ValueError("occupied index outside the register")
    holes = occ
    particles = [p for p in range(n_spin_orbitals) if p not in set(occ)]
    if not holes or not particles:
        raise ValueError("excitation pool needs both occupied and empty orbitals")

    spin = {p: _spin_of(p, n_spin_orbitals, ordering) for p in range(n_spin_orbitals)}
    generators = []

    def add(kind, indices, excitation):
        anti = excitation - excitation.adjoint()
        generators.append(
            PoolGenerator(
                id=len(generators),
                kind=kind,
                indices=indices,
                pauli_form=jordan_wigner(anti),
            )
        )

    for i in holes:
        for m in particles:
            if spin[m] == spin[i]:
                add(
                    "single",
                    (m, i),
                    FermionSum.from_factors(
                        n_spin_orbitals, 1.0, [(m, True), (i, False)]
                    ),
                )
    for i, j in combinations(holes, 2):
        for m, n in combinations(particles, 2):
            if sorted((spin[m], spin[n])) == sorted((spin[i], spin[j])):
                add(
                    "double",
                    (m, n, i, j),
                    FermionSum.from_factors(
                        n_spin_orbitals,
                        1.0,
                        [(m, True), (n, True), (j, False), (i, False)],
                    ),
                )
    return ClusterPool(
        n_spin_orbitals=n_spin_orbitals,
        occupied=tuple(occ),
        generators=tuple(generators),
    )
