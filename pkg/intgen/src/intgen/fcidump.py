"""MO-basis integral transformation and FCIDUMP serialization."""

from __future__ import annotations

import numpy as np

__all__ = ["mo_transform", "write_fcidump"]


def mo_transform(
    h_core: np.ndarray, eri: np.ndarray, c: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Rotate AO integrals into the MO basis given coefficient matrix c."""
    h_mo = c.T @ h_core @ c
    eri_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", eri, c, c, c, c, optimize=True)
    return h_mo, eri_mo


def write_fcidump(
    path,
    h_mo: np.ndarray,
    eri_mo: np.ndarray,
    n_electrons: int,
    e_core: float,
    ms2: int = 0,
    threshold: float = 1e-12,
) -> None:
    """Write canonical-MO integrals in FCIDUMP format.

    Two-electron values are chemist-notation (ij|kl), written once per
    8-fold symmetry class; indices are 1-based; values below ``threshold``
    are omitted.
    """
    n = h_mo.shape[0]
    lines = [f"&FCI NORB={n:d},NELEC={n_electrons:d},MS2={ms2:d},", " ISYM=1,", "/"]
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(1, i + 1):
                for l in range(1, k + 1):
                    kl = k * (k + 1) // 2 + l
                    if kl > ij:
                        continue
                    v = eri_mo[i - 1, j - 1, k - 1, l - 1]
                    if abs(v) > threshold:
                        lines.append(f"{v:23.16E} {i:4d} {j:4d} {k:4d} {l:4d}")
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            v = h_mo[i - 1, j - 1]
            if abs(v) > threshold:
                lines.append(f"{v:23.16E} {i:4d} {j:4d} {0:4d} {0:4d}")
    lines.append(f"{e_core:23.16E} {0:4d} {0:4d} {0:4d} {0:4d}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
