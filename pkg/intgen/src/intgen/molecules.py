"""Geometry builders for the benchmark molecules.

Conventions: diatomics along z at separation R; BeH2 linear symmetric
H-Be-H with both Be-H distances R; H chains linear with uniform spacing R.
Bond lengths are taken in angstrom and converted to bohr here.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ANGSTROM_TO_BOHR", "MOLECULES", "build_geometry"]

ANGSTROM_TO_BOHR = 1.8897259886


def _chain(symbols: list[str], spacing_bohr: float):
    return [
        (sym, (0.0, 0.0, i * spacing_bohr)) for i, sym in enumerate(symbols)
    ]


def build_geometry(molecule: str, r_angstrom: float):
    """Atom list (symbol, xyz in bohr) for a named molecule at bond length R."""
    if r_angstrom <= 0:
        raise ValueError("bond length must be positive")
    r = r_angstrom * ANGSTROM_TO_BOHR
    if molecule == "H2":
        return _chain(["H", "H"], r)
    if molecule == "H4":
        return _chain(["H"] * 4, r)
    if molecule == "H6":
        return _chain(["H"] * 6, r)
    if molecule == "LiH":
        return _chain(["Li", "H"], r)
    if molecule == "BeH2":
        return [
            ("H", (0.0, 0.0, -r)),
            ("Be", (0.0, 0.0, 0.0)),
            ("H", (0.0, 0.0, r)),
        ]
    raise ValueError(f"unknown molecule {molecule!r}")


#: electron counts and spatial-orbital counts per molecule (STO-3G)
MOLECULES = {
    "H2": {"n_electrons": 2, "n_orbitals": 2},
    "H4": {"n_electrons": 4, "n_orbitals": 4},
    "H6": {"n_electrons": 6, "n_orbitals": 6},
    "LiH": {"n_electrons": 4, "n_orbitals": 6},
    "BeH2": {"n_electrons": 6, "n_orbitals": 7},
}
