"""Two-stage multi-reference UCCSD ground-state solver on a dense statevector simulator."""

from mrucc.ansatz import (
    AnsatzLayout,
    build_layout,
    cnot_count,
    count_determinants,
    parse_schedule,
    prepare_state,
)
from mrucc.driver import (
    AdamConfig,
    Stage1Result,
    Stage2Result,
    StopRule,
    adam_minimize,
    bch_gradient,
    compute_commutators,
    exact_energy,
    run_record,
    run_stage1,
    run_stage2,
)
from mrucc.fci import (
    SectorBasis,
    build_sector_matrix,
    fci_ground_energy,
    sector_basis,
    sector_dimension,
)
from mrucc.fermion import (
    ClusterPool,
    FermionSum,
    FermionTerm,
    PoolGenerator,
    build_hamiltonian,
    build_uccsd_pool,
    jordan_wigner,
)
from mrucc.integrals import (
    MolecularSystem,
    SpinIntegrals,
    hf_energy,
    parse_fcidump,
    spin_expand,
)
from mrucc.pauli import (
    DEFAULT_TRUNCATION,
    PauliLabel,
    PauliSum,
    commutator,
    is_antihermitian,
    is_hermitian,
    label_mul,
    sum_mul,
    to_matrix,
    truncate,
)
from mrucc.statevector import (
    CompiledPauliSum,
    apply_exponential,
    apply_pauli_sum,
    apply_pnc,
    expectation,
    hf_state,
    stage1_gradient,
)

__version__ = "0.1.0"
