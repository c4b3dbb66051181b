"""Minimal STO-3G basis data and contracted-shell expansion.

Each Slater orbital is fit by three primitive Gaussians.  The table stores
the standard exponents and contraction coefficients for the elements used
here; hydrogen's 1s exponents are the zeta=1 fit scaled by 1.24^2.
Primitive and contracted normalization is applied when shells expand to
Cartesian basis functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

__all__ = ["BasisFunction", "build_basis", "ELEMENTS"]

# contraction coefficients are shared by all elements per shell type
_COEFF_1S = (0.15432897, 0.53532814, 0.44463454)
_COEFF_2S = (-0.09996723, 0.39951283, 0.70011547)
_COEFF_2P = (0.15591627, 0.60768372, 0.39195739)

# exponents per element: list of shells (kind, exponents)
_SHELLS = {
    "H": [("1s", (3.42525091, 0.62391373, 0.16885540))],
    "Li": [
        ("1s", (16.11957475, 2.936200663, 0.794650487)),
        ("sp", (0.6362897469, 0.1478600533, 0.0480886784)),
    ],
    "Be": [
        ("1s", (30.16787069, 5.495115306, 1.487192653)),
        ("sp", (1.314833110, 0.3055389383, 0.0993707456)),
    ],
}

ELEMENTS = {"H": 1, "Li": 3, "Be": 4}


@dataclass(frozen=True)
class BasisFunction:
    """One contracted Cartesian Gaussian.

    ``powers`` are the (l, m, n) Cartesian exponents; ``coefficients``
    already include primitive normalization and the overall contraction
    normalization.
    """

    center: tuple[float, float, float]
    powers: tuple[int, int, int]
    exponents: tuple[float, ...]
    coefficients: tuple[float, ...]


def _double_factorial(k: int) -> int:
    return 1 if k <= 0 else k * _double_factorial(k - 2)


def _primitive_norm(alpha: float, powers: tuple[int, int, int]) -> float:
    l, m, n = powers
    num = (2.0 * alpha / pi) ** 0.75 * (4.0 * alpha) ** ((l + m + n) / 2.0)
    den = sqrt(
        _double_factorial(2 * l - 1)
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
    )
    return num / den


def _contracted(center, powers, exponents, raw_coeffs) -> BasisFunction:
    coeffs = np.array(
        [c * _primitive_norm(a, powers) for a, c in zip(exponents, raw_coeffs)]
    )
    # self-overlap of the contraction, with primitive norms already in
    l, m, n = powers
    L = l + m + n
    pref = (
        pi**1.5
        * _double_factorial(2 * l - 1)
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
    )
    self_overlap = 0.0
    for a, ca in zip(exponents, coeffs):
        for b, cb in zip(exponents, coeffs):
            self_overlap += ca * cb * pref / (2.0 ** L * (a + b) ** (L + 1.5))
    coeffs = coeffs / sqrt(self_overlap)
    return BasisFunction(
        center=tuple(center),
        powers=powers,
        exponents=tuple(exponents),
        coefficients=tuple(coeffs),
    )


def build_basis(atoms: list[tuple[str, tuple[float, float, float]]]) -> list[BasisFunction]:
    """Expand STO-3G shells of each atom into contracted basis functions.

    Args:
        atoms: (element symbol, center in bohr) pairs.

    Returns:
        Basis functions ordered atom by atom, s before p within an atom.
    """
    basis: list[BasisFunction] = []
    for element, center in atoms:
        if element not in _SHELLS:
            raise ValueError(f"no STO-3G data for element {element!r}")
        for kind, exponents in _SHELLS[element]:
            if kind == "1s":
                basis.append(_contracted(center, (0, 0, 0), exponents, _COEFF_1S))
            elif kind == "sp":
                basis.append(_contracted(center, (0, 0, 0), exponents, _COEFF_2S))
                for powers in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    basis.append(_contracted(center, powers, exponents, _COEFF_2P))
            else:
                raise ValueError(f"unknown shell kind {kind!r}")
    return basis
