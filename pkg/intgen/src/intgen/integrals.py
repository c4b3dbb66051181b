"""Gaussian integrals over contracted Cartesian functions.

McMurchie-Davidson scheme: Cartesian overlap distributions expand in
Hermite Gaussians (the E coefficients), Coulomb-type integrals then reduce
to Hermite Coulomb integrals (the R tensor) built on the Boys function.
Only s and p angular momenta ever arise here, so the recursions stay
shallow; plain recursion with no caching is fast enough for these systems.
"""

from __future__ import annotations

from math import exp, pi, sqrt

import numpy as np
from scipy.special import hyp1f1

from intgen.basis import BasisFunction

__all__ = [
    "boys",
    "overlap_matrix",
    "kinetic_matrix",
    "nuclear_matrix",
    "eri_tensor",
    "nuclear_repulsion",
]


def boys(n: int, x: float) -> float:
    """Boys function F_n(x) via the confluent hypergeometric identity."""
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def _hermite_e(i: int, j: int, t: int, q: float, a: float, b: float) -> float:
    """Hermite expansion coefficient E_t^{ij} for exponents a, b and A-B = q."""
    p = a + b
    mu = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return exp(-mu * q * q)
    if i > 0:
        return (
            _hermite_e(i - 1, j, t - 1, q, a, b) / (2.0 * p)
            - (b / p) * q * _hermite_e(i - 1, j, t, q, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, q, a, b)
        )
    return (
        _hermite_e(i, j - 1, t - 1, q, a, b) / (2.0 * p)
        + (a / p) * q * _hermite_e(i, j - 1, t, q, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, q, a, b)
    )


def _hermite_coulomb(t: int, u: int, v: int, n: int, p: float, pc: np.ndarray) -> float:
    """Hermite Coulomb integral R^n_{tuv} at composite exponent p."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * float(pc @ pc))
    if t > 0:
        return (t - 1) * _hermite_coulomb(
            t - 2, u, v, n + 1, p, pc
        ) + pc[0] * _hermite_coulomb(t - 1, u, v, n + 1, p, pc)
    if u > 0:
        return (u - 1) * _hermite_coulomb(
            t, u - 2, v, n + 1, p, pc
        ) + pc[1] * _hermite_coulomb(t, u - 1, v, n + 1, p, pc)
    return (v - 1) * _hermite_coulomb(
        t, u, v - 2, n + 1, p, pc
    ) + pc[2] * _hermite_coulomb(t, u, v - 1, n + 1, p, pc)


def _overlap_1d(i: int, j: int, q: float, a: float, b: float) -> float:
    return _hermite_e(i, j, 0, q, a, b) * sqrt(pi / (a + b))


def _overlap_prim(a, pa, A, b, pb, B) -> float:
    return (
        _overlap_1d(pa[0], pb[0], A[0] - B[0], a, b)
        * _overlap_1d(pa[1], pb[1], A[1] - B[1], a, b)
        * _overlap_1d(pa[2], pb[2], A[2] - B[2], a, b)
    )


def _kinetic_1d(i: int, j: int, q: float, a: float, b: float) -> float:
    term = b * (2 * j + 1) * _overlap_1d(i, j, q, a, b)
    term -= 2.0 * b * b * _overlap_1d(i, j + 2, q, a, b)
    if j >= 2:
        term -= 0.5 * j * (j - 1) * _overlap_1d(i, j - 2, q, a, b)
    return term


def _kinetic_prim(a, pa, A, b, pb, B) -> float:
    s = [_overlap_1d(pa[d], pb[d], A[d] - B[d], a, b) for d in range(3)]
    k = [_kinetic_1d(pa[d], pb[d], A[d] - B[d], a, b) for d in range(3)]
    return k[0] * s[1] * s[2] + s[0] * k[1] * s[2] + s[0] * s[1] * k[2]


def _nuclear_prim(a, pa, A, b, pb, B, C) -> float:
    """Attraction to a unit point charge at C (sign applied by the caller)."""
    p = a + b
    P = (a * A + b * B) / p
    pc = P - C
    total = 0.0
    for t in range(pa[0] + pb[0] + 1):
        ex = _hermite_e(pa[0], pb[0], t, A[0] - B[0], a, b)
        if ex == 0.0:
            continue
        for u in range(pa[1] + pb[1] + 1):
            ey = _hermite_e(pa[1], pb[1], u, A[1] - B[1], a, b)
            if ey == 0.0:
                continue
            for v in range(pa[2] + pb[2] + 1):
                ez = _hermite_e(pa[2], pb[2], v, A[2] - B[2], a, b)
                if ez == 0.0:
                    continue
                total += ex * ey * ez * _hermite_coulomb(t, u, v, 0, p, pc)
    return 2.0 * pi / p * total


def _eri_prim(a, pa, A, b, pb, B, c, pc_pow, C, d, pd, D) -> float:
    p = a + b
    q = c + d
    omega = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    pq = P - Q
    e_bra = {}
    for t in range(pa[0] + pb[0] + 1):
        for u in range(pa[1] + pb[1] + 1):
            for v in range(pa[2] + pb[2] + 1):
                val = (
                    _hermite_e(pa[0], pb[0], t, A[0] - B[0], a, b)
                    * _hermite_e(pa[1], pb[1], u, A[1] - B[1], a, b)
                    * _hermite_e(pa[2], pb[2], v, A[2] - B[2], a, b)
                )
                if val != 0.0:
                    e_bra[(t, u, v)] = val
    total = 0.0
    for tau in range(pc_pow[0] + pd[0] + 1):
        for nu in range(pc_pow[1] + pd[1] + 1):
            for phi in range(pc_pow[2] + pd[2] + 1):
                e_ket = (
                    _hermite_e(pc_pow[0], pd[0], tau, C[0] - D[0], c, d)
                    * _hermite_e(pc_pow[1], pd[1], nu, C[1] - D[1], c, d)
                    * _hermite_e(pc_pow[2], pd[2], phi, C[2] - D[2], c, d)
                )
                if e_ket == 0.0:
                    continue
                sign = -1.0 if (tau + nu + phi) % 2 else 1.0
                for (t, u, v), e_b in e_bra.items():
                    total += (
                        e_b
                        * sign
                        * e_ket
                        * _hermite_coulomb(t + tau, u + nu, v + phi, 0, omega, pq)
                    )
    return 2.0 * pi**2.5 / (p * q * sqrt(p + q)) * total


def _contracted_pair(fn_a: BasisFunction, fn_b: BasisFunction, prim) -> float:
    A = np.asarray(fn_a.center)
    B = np.asarray(fn_b.center)
    total = 0.0
    for a, ca in zip(fn_a.exponents, fn_a.coefficients):
        for b, cb in zip(fn_b.exponents, fn_b.coefficients):
            total += ca * cb * prim(a, fn_a.powers, A, b, fn_b.powers, B)
    return total


def overlap_matrix(basis: list[BasisFunction]) -> np.ndarray:
    n = len(basis)
    s = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = _contracted_pair(basis[i], basis[j], _overlap_prim)
    return s


def kinetic_matrix(basis: list[BasisFunction]) -> np.ndarray:
    n = len(basis)
    t = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            t[i, j] = t[j, i] = _contracted_pair(basis[i], basis[j], _kinetic_prim)
    return t


def nuclear_matrix(
    basis: list[BasisFunction], charges: list[tuple[float, np.ndarray]]
) -> np.ndarray:
    """Total nuclear-attraction matrix for point charges (Z, center)."""
    n = len(basis)
    v = np.zeros((n, n))
    for z, center in charges:
        C = np.asarray(center, dtype=float)

        def attraction(a, pa, A, b, pb, B, _C=C, _z=z):
            return -_z * _nuclear_prim(a, pa, A, b, pb, B, _C)

        for i in range(n):
            for j in range(i + 1):
                val = _contracted_pair(basis[i], basis[j], attraction)
                v[i, j] += val
                if i != j:
                    v[j, i] += val
    return v


def eri_tensor(basis: list[BasisFunction]) -> np.ndarray:
    """Two-electron repulsion integrals, chemist convention (ij|kl)."""
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(i + 1):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if kl > ij:
                        continue
                    val = _contracted_eri(basis[i], basis[j], basis[k], basis[l])
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            eri[a, b, c, d] = val
                            eri[c, d, a, b] = val
    return eri


def _contracted_eri(fa, fb, fc, fd) -> float:
    A, B = np.asarray(fa.center), np.asarray(fb.center)
    C, D = np.asarray(fc.center), np.asarray(fd.center)
    total = 0.0
    for a, ca in zip(fa.exponents, fa.coefficients):
        for b, cb in zip(fb.exponents, fb.coefficients):
            for c, cc in zip(fc.exponents, fc.coefficients):
                for d, cd in zip(fd.exponents, fd.coefficients):
                    total += ca * cb * cc * cd * _eri_prim(
                        a, fa.powers, A, b, fb.powers, B, c, fc.powers, C, d, fd.powers, D
                    )
    return total


def nuclear_repulsion(atoms_z_centers: list[tuple[float, np.ndarray]]) -> float:
    e = 0.0
    for i in range(len(atoms_z_centers)):
        zi, ci = atoms_z_centers[i]
        for j in range(i):
            zj, cj = atoms_z_centers[j]
            e += zi * zj / np.linalg.norm(np.asarray(ci) - np.asarray(cj))
    return float(e)
