"""Determinant full CI over molecular orbitals via the Slater-Condon rules.

Independent reference for the generated integrals: determinants are
bitmasks over spin orbitals (spatial p -> bits 2p, 2p+1), matrix elements
follow from excitation degree and alignment phases, and the ground state
comes from a dense symmetric eigensolve.  Nothing here shares code with
any qubit-space machinery.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np
import scipy.linalg

__all__ = ["determinant_fci"]


def _spin_orbital_integrals(h_mo: np.ndarray, eri_mo: np.ndarray):
    """Expand spatial MO integrals to spin orbitals.

    Returns (h, g) with g[P,Q,R,S] = <PQ||RS> antisymmetrized physicist
    notation; spatial p maps to spin orbitals 2p and 2p+1.
    """
    n = h_mo.shape[0]
    ns = 2 * n
    h = np.zeros((ns, ns))
    h[0::2, 0::2] = h_mo
    h[1::2, 1::2] = h_mo
    # <PQ|RS> = (pr|qs) with spin deltas on (P,R) and (Q,S)
    coulomb = np.zeros((ns, ns, ns, ns))
    phys = eri_mo.transpose(0, 2, 1, 3)
    for s1 in (0, 1):
        for s2 in (0, 1):
            coulomb[np.ix_(*(np.arange(n) * 2 + s for s in (s1, s2, s1, s2)))] = phys
    g = coulomb - coulomb.transpose(0, 1, 3, 2)
    return h, g


def _alignment(mask_i: int, mask_j: int):
    """Orbitals removed/added going I -> J, with the transposition sign."""
    removed = _bits(mask_i & ~mask_j)
    added = _bits(mask_j & ~mask_i)
    sign = 1
    mask = mask_i
    for r, a in zip(removed, added):
        lo, hi = (r, a) if r < a else (a, r)
        between = mask & ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
        if between.bit_count() % 2:
            sign = -sign
        mask ^= (1 << r) | (1 << a)
    return removed, added, sign


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def determinant_fci(
    h_mo: np.ndarray,
    eri_mo: np.ndarray,
    n_electrons: int,
    e_core: float,
    ms2: int = 0,
) -> tuple[float, int]:
    """Ground-state FCI energy in the fixed (N_alpha, N_beta) sector.

    Args:
        h_mo: one-electron integrals in the MO basis.
        eri_mo: chemist-convention (pq|rs) MO integrals.
        n_electrons: total electron count.
        e_core: nuclear repulsion (added to the electronic eigenvalue).
        ms2: twice the spin projection; fixes the alpha/beta split.

    Returns:
        (energy, dimension) where dimension = C(n,Na)*C(n,Nb).
    """
    n = h_mo.shape[0]
    n_alpha = (n_electrons + ms2) // 2
    n_beta = n_electrons - n_alpha
    if n_alpha < 0 or n_beta < 0 or n_alpha > n or n_beta > n:
        raise ValueError("invalid electron/spin counts for the orbital space")
    h, g = _spin_orbital_integrals(h_mo, eri_mo)

    alpha_strings = [
        sum(1 << (2 * p) for p in occ) for occ in combinations(range(n), n_alpha)
    ]
    beta_strings = [
        sum(1 << (2 * p + 1) for p in occ) for occ in combinations(range(n), n_beta)
    ]
    dets = [a | b for a in alpha_strings for b in beta_strings]
    dim = len(dets)
    assert dim == comb(n, n_alpha) * comb(n, n_beta)

    occ_lists = [_bits(d) for d in dets]
    mat = np.zeros((dim, dim))
    for i in range(dim):
        occ_i = occ_lists[i]
        # diagonal
        e = sum(h[p, p] for p in occ_i)
        e += 0.5 * sum(g[p, q, p, q] for p in occ_i for q in occ_i)
        mat[i, i] = e
        for j in range(i + 1, dim):
            xor = dets[i] ^ dets[j]
            degree = xor.bit_count()
            if degree > 4:
                continue
            removed, added, sign = _alignment(dets[i], dets[j])
            if degree == 2:
                (r,), (a,) = removed, added
                common = dets[i] & dets[j]
                val = h[r, a] + sum(g[r, q, a, q] for q in _bits(common))
            else:
                (r1, r2), (a1, a2) = removed, added
                val = g[r1, r2, a1, a2]
            mat[i, j] = mat[j, i] = sign * val

    w, v = scipy.linalg.eigh(mat, subset_by_index=(0, 0))
    return float(w[0] + e_core), dim
