"""Gaussian integral oracles.

The s-only integrals have textbook closed forms; p-function integrals are
checked against center-coordinate derivatives of those closed forms, since
differentiating a primitive s Gaussian with respect to its center raises
the angular momentum: d/dAx exp(-a r_A^2) = 2a (x - Ax) exp(-a r_A^2).
"""

from math import erf, exp, pi, sqrt

import numpy as np
import pytest
from scipy.integrate import quad

from intgen.basis import build_basis
from intgen.integrals import (
    _eri_prim,
    _nuclear_prim,
    _overlap_prim,
    boys,
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)

S = (0, 0, 0)
PX = (1, 0, 0)

A = np.array([0.1, -0.2, 0.3])
B = np.array([0.4, 0.25, -0.5])
C = np.array([-0.3, 0.1, 0.2])
D = np.array([0.2, -0.4, -0.1])
EXPS = dict(a=0.8, b=1.1, c=0.6, d=1.4)


def s_overlap(a, A, b, B):
    p = a + b
    mu = a * b / p
    q2 = float(np.sum((A - B) ** 2))
    return (pi / p) ** 1.5 * exp(-mu * q2)


def s_nuclear(a, A, b, B, C):
    p = a + b
    mu = a * b / p
    q2 = float(np.sum((A - B) ** 2))
    P = (a * A + b * B) / p
    return 2.0 * pi / p * exp(-mu * q2) * boys(0, p * float(np.sum((P - C) ** 2)))


def s_eri(a, A, b, B, c, C, d, D):
    p, q = a + b, c + d
    omega = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    pref = 2.0 * pi**2.5 / (p * q * sqrt(p + q))
    bra = exp(-a * b / p * float(np.sum((A - B) ** 2)))
    ket = exp(-c * d / q * float(np.sum((C - D) ** 2)))
    return pref * bra * ket * boys(0, omega * float(np.sum((P - Q) ** 2)))


class TestBoys:
    def test_against_quadrature(self):
        for n in range(5):
            for x in (0.0, 0.1, 1.0, 5.0, 20.0):
                ref, err = quad(lambda t: t ** (2 * n) * exp(-x * t * t), 0.0, 1.0)
                assert boys(n, x) == pytest.approx(ref, abs=max(1e-13, 10 * err))

    def test_zero_argument(self):
        for n in range(6):
            assert boys(n, 0.0) == pytest.approx(1.0 / (2 * n + 1), abs=1e-14)

    def test_f0_error_function_form(self):
        for x in (0.3, 2.0, 9.0):
            assert boys(0, x) == pytest.approx(
                0.5 * sqrt(pi / x) * erf(sqrt(x)), abs=1e-13
            )

    def test_upward_recursion(self):
        x = 1.7
        for n in range(4):
            lhs = boys(n + 1, x)
            rhs = ((2 * n + 1) * boys(n, x) - exp(-x)) / (2.0 * x)
            assert lhs == pytest.approx(rhs, abs=1e-13)


class TestSClosedForms:
    def test_overlap(self):
        a, b = EXPS["a"], EXPS["b"]
        assert _overlap_prim(a, S, A, b, S, B) == pytest.approx(
            s_overlap(a, A, b, B), abs=1e-14
        )

    def test_kinetic(self):
        a, b = EXPS["a"], EXPS["b"]
        p = a + b
        mu = a * b / p
        q2 = float(np.sum((A - B) ** 2))
        ref = mu * (3.0 - 2.0 * mu * q2) * s_overlap(a, A, b, B)
        from intgen.integrals import _kinetic_prim

        assert _kinetic_prim(a, S, A, b, S, B) == pytest.approx(ref, abs=1e-13)

    def test_nuclear(self):
        a, b = EXPS["a"], EXPS["b"]
        assert _nuclear_prim(a, S, A, b, S, B, C) == pytest.approx(
            s_nuclear(a, A, b, B, C), abs=1e-13
        )

    def test_eri(self):
        a, b, c, d = (EXPS[k] for k in "abcd")
        assert _eri_prim(a, S, A, b, S, B, c, S, C, d, S, D) == pytest.approx(
            s_eri(a, A, b, B, c, C, d, D), abs=1e-13
        )


class TestPByDerivative:
    def test_px_s_overlap_analytic(self):
        a, b = EXPS["a"], EXPS["b"]
        p = a + b
        ref = (b / p) * (B[0] - A[0]) * s_overlap(a, A, b, B)
        assert _overlap_prim(a, PX, A, b, S, B) == pytest.approx(ref, abs=1e-14)

    def test_px_px_overlap_analytic(self):
        a, b = EXPS["a"], EXPS["b"]
        p = a + b
        mu = a * b / p
        q = A[0] - B[0]
        ref = (1.0 - 2.0 * mu * q * q) / (2.0 * p) * s_overlap(a, A, b, B)
        assert _overlap_prim(a, PX, A, b, PX, B) == pytest.approx(ref, abs=1e-14)

    def test_px_s_nuclear_by_difference(self):
        a, b = EXPS["a"], EXPS["b"]
        h = 1e-5
        up, down = A.copy(), A.copy()
        up[0] += h
        down[0] -= h
        fd = (s_nuclear(a, up, b, B, C) - s_nuclear(a, down, b, B, C)) / (2 * h)
        assert _nuclear_prim(a, PX, A, b, S, B, C) == pytest.approx(
            fd / (2.0 * a), abs=1e-9
        )

    def test_px_s_eri_by_difference(self):
        a, b, c, d = (EXPS[k] for k in "abcd")
        h = 1e-5
        up, down = A.copy(), A.copy()
        up[0] += h
        down[0] -= h
        fd = (
            s_eri(a, up, b, B, c, C, d, D) - s_eri(a, down, b, B, c, C, d, D)
        ) / (2 * h)
        assert _eri_prim(a, PX, A, b, S, B, c, S, C, d, S, D) == pytest.approx(
            fd / (2.0 * a), abs=1e-9
        )

    def test_s_py_nuclear_by_difference(self):
        a, b = EXPS["a"], EXPS["b"]
        h = 1e-5
        up, down = B.copy(), B.copy()
        up[1] += h
        down[1] -= h
        fd = (s_nuclear(a, A, b, up, C) - s_nuclear(a, A, b, down, C)) / (2 * h)
        assert _nuclear_prim(a, S, A, b, (0, 1, 0), B, C) == pytest.approx(
            fd / (2.0 * b), abs=1e-9
        )


class TestContracted:
    def test_normalization(self):
        atoms = [
            ("Li", (0.0, 0.0, 0.0)),
            ("Be", (0.0, 0.0, 2.0)),
            ("H", (0.0, 0.0, 4.0)),
        ]
        basis = build_basis(atoms)
        assert len(basis) == 5 + 5 + 1
        s = overlap_matrix(basis)
        assert np.allclose(np.diag(s), 1.0, atol=1e-10)
        assert np.all(np.linalg.eigvalsh(s) > 0)

    def test_matrices_symmetric(self):
        atoms = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 3.0))]
        basis = build_basis(atoms)
        charges = [(3.0, np.zeros(3)), (1.0, np.array([0.0, 0.0, 3.0]))]
        for mat in (
            overlap_matrix(basis),
            kinetic_matrix(basis),
            nuclear_matrix(basis, charges),
        ):
            assert np.allclose(mat, mat.T, atol=1e-13)

    def test_eri_permutational_symmetry(self):
        basis = build_basis([("H", (0.0, 0.0, 0.0)), ("Li", (0.0, 0.0, 2.5))])
        eri = eri_tensor(basis)
        assert np.allclose(eri, eri.transpose(1, 0, 2, 3), atol=1e-13)
        assert np.allclose(eri, eri.transpose(0, 1, 3, 2), atol=1e-13)
        assert np.allclose(eri, eri.transpose(2, 3, 0, 1), atol=1e-13)

    def test_rotational_invariance(self):
        along_z = build_basis([("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 3.0))])
        along_x = build_basis([("Li", (0.0, 0.0, 0.0)), ("H", (3.0, 0.0, 0.0))])
        for make in (overlap_matrix, kinetic_matrix):
            ez = np.sort(np.linalg.eigvalsh(make(along_z)))
            ex = np.sort(np.linalg.eigvalsh(make(along_x)))
            assert np.allclose(ez, ex, atol=1e-11)
        vz = nuclear_matrix(
            along_z, [(3.0, np.zeros(3)), (1.0, np.array([0.0, 0.0, 3.0]))]
        )
        vx = nuclear_matrix(
            along_x, [(3.0, np.zeros(3)), (1.0, np.array([3.0, 0.0, 0.0]))]
        )
        assert np.allclose(
            np.sort(np.linalg.eigvalsh(vz)), np.sort(np.linalg.eigvalsh(vx)), atol=1e-11
        )

    def test_nuclear_repulsion_pair(self):
        e = nuclear_repulsion([(1.0, np.zeros(3)), (1.0, np.array([0.0, 0.0, 2.0]))])
        assert e == pytest.approx(0.5, abs=1e-15)
