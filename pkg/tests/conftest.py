"""Shared fixtures: synthetic integral systems and FCIDUMP writers.

The synthetic systems have full 8-fold permutational symmetry but no other
structure, which keeps integral-handling tests independent of any real
chemistry.
"""

from pathlib import Path

import numpy as np
import pytest

from mrucc.fermion import build_hamiltonian, jordan_wigner
from mrucc.integrals import parse_fcidump, spin_expand
from mrucc.statevector import hf_state

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_problem(path):
    """Integral file -> (hamiltonian, spin integrals, reference state)."""
    spin = spin_expand(parse_fcidump(str(path)))
    ham = jordan_wigner(build_hamiltonian(spin))
    reference = hf_state(spin.n_spin_orbitals, spin.default_occupation())
    return ham, spin, reference


def symmetrize_8fold(a: np.ndarray) -> np.ndarray:
    """Average a 4-index array over the 8 real-integral permutations."""
    return (
        a
        + a.transpose(1, 0, 2, 3)
        + a.transpose(0, 1, 3, 2)
        + a.transpose(1, 0, 3, 2)
        + a.transpose(2, 3, 0, 1)
        + a.transpose(3, 2, 0, 1)
        + a.transpose(2, 3, 1, 0)
        + a.transpose(3, 2, 1, 0)
    ) / 8.0


def fcidump_text(
    n_spatial: int,
    n_electrons: int,
    e_core: float,
    h1: np.ndarray,
    h2: np.ndarray,
    ms2: int = 0,
) -> str:
    """Serialize dense spatial integrals (0-based arrays, chemist h2)."""
    lines = [f"&FCI NORB={n_spatial},NELEC={n_electrons},MS2={ms2},", "/"]
    for p in range(1, n_spatial + 1):
        for q in range(1, p + 1):
            for r in range(1, p + 1):
                s_top = q if r == p else r
                for s in range(1, s_top + 1):
                    v = h2[p - 1, q - 1, r - 1, s - 1]
                    if abs(v) > 1e-14:
                        lines.append(f"{v:23.16e} {p:3d} {q:3d} {r:3d} {s:3d}")
    for p in range(1, n_spatial + 1):
        for q in range(1, p + 1):
            if abs(h1[p - 1, q - 1]) > 1e-14:
                lines.append(f"{h1[p - 1, q - 1]:23.16e} {p:3d} {q:3d}   0   0")
    lines.append(f"{e_core:23.16e}   0   0   0   0")
    return "\n".join(lines) + "\n"


def random_molecular_text(rng, n_spatial: int, n_electrons: int) -> str:
    h1 = rng.standard_normal((n_spatial,) * 2)
    h1 = 0.5 * (h1 + h1.T)
    h2 = symmetrize_8fold(rng.standard_normal((n_spatial,) * 4))
    e_core = float(rng.standard_normal())
    return fcidump_text(n_spatial, n_electrons, e_core, h1, h2)


@pytest.fixture
def random_system():
    def make(seed: int, n_spatial: int, n_electrons: int):
        rng = np.random.default_rng(seed)
        return parse_fcidump(random_molecular_text(rng, n_spatial, n_electrons))

    return make
