"""Scan driver: integrals -> SCF -> MO FCIDUMP + reference energies."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from intgen.basis import ELEMENTS, build_basis
from intgen.detfci import determinant_fci
from intgen.fcidump import mo_transform, write_fcidump
from intgen.integrals import (
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)
from intgen.molecules import MOLECULES, build_geometry
from intgen.scf import restricted_hartree_fock

__all__ = ["ScanSpec", "PointResult", "compute_point", "generate"]


@dataclass(frozen=True)
class ScanSpec:
    molecule: str
    bond_lengths: tuple[float, ...]
    output_dir: Path
    basis: str = "sto-3g"
    with_fci: bool = True

    def __post_init__(self):
        if self.molecule not in MOLECULES:
            raise ValueError(f"unknown molecule {self.molecule!r}")
        if self.basis.lower() != "sto-3g":
            raise ValueError("only the sto-3g basis is available")
        lengths = tuple(self.bond_lengths)
        if not lengths:
            raise ValueError("empty bond-length grid")
        if any(r <= 0 for r in lengths):
            raise ValueError("bond lengths must be positive")
        if any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise ValueError("bond lengths must be strictly increasing")


@dataclass(frozen=True)
class PointResult:
    r: float
    filename: str
    e_hf: float
    e_fci: float | None
    converged: bool
    fci_dimension: int | None = None


def compute_point(molecule: str, r_angstrom: float, with_fci: bool = True):
    """All electronic-structure quantities for one geometry.

    Returns (h_mo, eri_mo, e_nuclear, scf_result, e_fci, fci_dim); the FCI
    fields are None when ``with_fci`` is false or SCF failed.
    """
    atoms = build_geometry(molecule, r_angstrom)
    basis = build_basis(atoms)
    charges = [(float(ELEMENTS[sym]), np.asarray(xyz)) for sym, xyz in atoms]
    s = overlap_matrix(basis)
    h_core = kinetic_matrix(basis) + nuclear_matrix(basis, charges)
    eri = eri_tensor(basis)
    e_nuc = nuclear_repulsion(charges)
    n_electrons = MOLECULES[molecule]["n_electrons"]
    scf = restricted_hartree_fock(s, h_core, eri, n_electrons, e_nuc)
    h_mo, eri_mo = mo_transform(h_core, eri, scf.mo_coefficients)
    e_fci = fci_dim = None
    if with_fci and scf.converged:
        e_fci, fci_dim = determinant_fci(h_mo, eri_mo, n_electrons, e_nuc)
    return h_mo, eri_mo, e_nuc, scf, e_fci, fci_dim


def generate(spec: ScanSpec) -> list[PointResult]:
    """Write one FCIDUMP per grid point plus manifest and reference sidecar.

    SCF failures are flagged in the sidecar and skipped in the manifest;
    the scan continues.
    """
    out = Path(spec.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    n_electrons = MOLECULES[spec.molecule]["n_electrons"]
    results: list[PointResult] = []
    for r in spec.bond_lengths:
        filename = f"{spec.molecule}_R{r:.4f}.fcidump"
        h_mo, eri_mo, e_nuc, scf, e_fci, fci_dim = compute_point(
            spec.molecule, r, with_fci=spec.with_fci
        )
        if scf.converged:
            write_fcidump(out / filename, h_mo, eri_mo, n_electrons, e_nuc)
        results.append(
            PointResult(
                r=r,
                filename=filename,
                e_hf=scf.energy,
                e_fci=e_fci,
                converged=scf.converged,
                fci_dimension=fci_dim,
            )
        )

    manifest_lines = [
        f"{p.r:.4f} {p.filename}" for p in results if p.converged
    ]
    (out / "manifest.txt").write_text("\n".join(manifest_lines) + "\n")
    sidecar = {
        "molecule": spec.molecule,
        "basis": spec.basis,
        "n_electrons": n_electrons,
        "points": [
            {
                "r": p.r,
                "file": p.filename,
                "e_hf": p.e_hf,
                "e_fci": p.e_fci,
                "fci_dimension": p.fci_dimension,
                "converged": p.converged,
            }
            for p in results
        ],
    }
    (out / "reference.json").write_text(json.dumps(sidecar, indent=2) + "\n")
    return results
