"""Exact symbolic algebra over n-qubit Pauli strings.

A Pauli string is encoded as a pair of bitmasks ``(x, z)`` where bit ``q``
of each mask selects the operator on qubit ``q``::

    (x_q, z_q) = (0, 0) -> I     (1, 0) -> X
                 (1, 1) -> Y     (0, 1) -> Z

Labels carry no phase; phases live in the coefficients of a
:class:`PauliSum`.  Products of labels are O(1): the masks combine by XOR
and the phase follows from popcounts, which is what makes commutator
cascades over thousands of terms cheap.

Internally a :class:`PauliSum` stores its terms as a sorted array of packed
``(x << 32) | z`` keys plus a complex coefficient array, so products and
commutators of whole sums vectorize over term pairs and merge
deterministically (order-independent).  All values are immutable after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

__all__ = [
    "DEFAULT_TRUNCATION",
    "PauliLabel",
    "PauliSum",
    "label_mul",
    "sum_mul",
    "commutator",
    "is_hermitian",
    "to_matrix",
    "truncate",
]

#: Coefficients below this magnitude are dropped after every sum-level
#: operation; commutator cascades otherwise accumulate numerically-zero terms.
DEFAULT_TRUNCATION = 1e-12

#: Dense realization refuses registers larger than this by default.
DENSE_QUBIT_CAP = 16

# Masks are packed as (x << 32) | z, so registers are capped at 32 qubits.
_MAX_QUBITS = 32

_PHASES = np.array([1.0, 1.0j, -1.0, -1.0j])

_CHAR_TO_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_XZ_TO_CHAR = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


def _check_register(n_qubits: int) -> None:
    if not 1 <= n_qubits <= _MAX_QUBITS:
        raise ValueError(f"register size must be in [1, {_MAX_QUBITS}], got {n_qubits}")


def _check_same_register(a, b) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"mismatched register sizes: {a.n_qubits} vs {b.n_qubits}"
        )


@dataclass(frozen=True)
class PauliLabel:
    """A single phase-free Pauli string on ``n_qubits`` qubits.

    Attributes:
        n_qubits: register size; qubit indices run over ``[0, n_qubits)``.
        x: X-component bitmask (bit q set iff qubit q carries X or Y).
        z: Z-component bitmask (bit q set iff qubit q carries Z or Y).
    """

    n_qubits: int
    x: int
    z: int

    def __post_init__(self):
        _check_register(self.n_qubits)
        mask = (1 << self.n_qubits) - 1
        if not (0 <= self.x <= mask and 0 <= self.z <= mask):
            raise ValueError("mask bits outside the register")

    @classmethod
    def from_string(cls, label: str) -> "PauliLabel":
        """Parse a label like ``"XIZY"``; qubit 0 is the leftmost character."""
        x = z = 0
        for q, ch in enumerate(label):
            try:
                xb, zb = _CHAR_TO_XZ[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli character {ch!r} in {label!r}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(label), x, z)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliLabel":
        return cls(n_qubits, 0, 0)

    def __str__(self) -> str:
        return "".join(
            _XZ_TO_CHAR[((self.x >> q) & 1, (self.z >> q) & 1)]
            for q in range(self.n_qubits)
        )

    @property
    def weight(self) -> int:
        """Number of non-identity qubits."""
        return (self.x | self.z).bit_count()

    @property
    def key(self) -> int:
        return (self.x << _MAX_QUBITS) | self.z


def _label_from_key(key: int, n_qubits: int) -> PauliLabel:
    return PauliLabel(n_qubits, key >> _MAX_QUBITS, key & ((1 << _MAX_QUBITS) - 1))


def label_mul(a: PauliLabel, b: PauliLabel) -> tuple[PauliLabel, complex]:
    """Multiply two labels: ``matrix(a) @ matrix(b) == phase * matrix(c)``.

    Returns:
        ``(c, phase)`` with ``phase`` one of ``{1, 1j, -1, -1j}``.
    """
    _check_same_register(a, b)
    x3, z3 = a.x ^ b.x, a.z ^ b.z
    e = (
        (a.x & a.z).bit_count()
        + (b.x & b.z).bit_count()
        - (x3 & z3).bit_count()
        + 2 * (a.z & b.x).bit_count()
    ) % 4
    return PauliLabel(a.n_qubits, x3, z3), complex(_PHASES[e])


def _labels_commute(a: PauliLabel, b: PauliLabel) -> bool:
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


class PauliSum:
    """Sparse linear combination of Pauli strings on a fixed register.

    Terms are held as a key-sorted array of packed masks plus complex
    coefficients.  Instances are immutable; all arithmetic returns new sums
    with like terms merged and coefficients below the truncation threshold
    dropped.
    """

    __slots__ = ("n_qubits", "_keys", "_coeffs")

    def __init__(
        self,
        n_qubits: int,
        keys: np.ndarray | None = None,
        coeffs: np.ndarray | None = None,
        *,
        threshold: float = DEFAULT_TRUNCATION,
        _merged: bool = False,
    ):
        _check_register(n_qubits)
        self.n_qubits = n_qubits
        if keys is None:
            keys = np.empty(0, dtype=np.uint64)
            coeffs = np.empty(0, dtype=np.complex128)
        keys = np.asarray(keys, dtype=np.uint64)
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if not _merged:
            keys, coeffs = _merge_terms(keys, coeffs, threshold)
        self._keys = keys
        self._coeffs = coeffs
        self._keys.flags.writeable = False
        self._coeffs.flags.writeable = False

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[PauliLabel | str, complex] | Iterable[tuple[PauliLabel | str, complex]],
        n_qubits: int | None = None,
    ) -> "PauliSum":
        """Build a sum from ``{label: coefficient}`` pairs.

        Labels may be :class:`PauliLabel` instances or strings like
        ``"XIZY"`` (qubit 0 leftmost).  ``n_qubits`` is inferred from the
        first label when omitted.
        """
        items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
        labels = [
            PauliLabel.from_string(lab) if isinstance(lab, str) else lab
            for lab, _ in items
        ]
        if n_qubits is None:
            if not labels:
                raise ValueError("cannot infer register size from an empty term map")
            n_qubits = labels[0].n_qubits
        keys = np.empty(len(items), dtype=np.uint64)
        coeffs = np.empty(len(items), dtype=np.complex128)
        for i, (lab, (_, c)) in enumerate(zip(labels, items)):
            if lab.n_qubits != n_qubits:
                raise ValueError("all labels must share one register size")
            keys[i] = lab.key
            coeffs[i] = c
        return cls(n_qubits, keys, coeffs)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(
            n_qubits,
            np.zeros(1, dtype=np.uint64),
            np.array([coeff], dtype=np.complex128),
        )

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits)

    # -- inspection ---------------------------------------------------

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self) -> Iterator[tuple[PauliLabel, complex]]:
        for key, c in zip(self._keys, self._coeffs):
            yield _label_from_key(int(key), self.n_qubits), complex(c)

    @property
    def x_masks(self) -> np.ndarray:
        """X bitmasks of all terms, key-sorted (read-only)."""
        return (self._keys >> np.uint64(_MAX_QUBITS)).astype(np.uint64)

    @property
    def z_masks(self) -> np.ndarray:
        """Z bitmasks of all terms, key-sorted (read-only)."""
        return (self._keys & np.uint64((1 << _MAX_QUBITS) - 1)).astype(np.uint64)

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficients of all terms, key-sorted (read-only)."""
        return self._coeffs

    def coefficient(self, label: PauliLabel | str) -> complex:
        """Coefficient of ``label`` (0 when the term is absent)."""
        if isinstance(label, str):
            label = PauliLabel.from_string(label)
        if label.n_qubits != self.n_qubits:
            raise ValueError("label register size does not match")
        key = np.uint64(label.key)
        i = np.searchsorted(self._keys, key)
        if i < len(self._keys) and self._keys[i] == key:
            return complex(self._coeffs[i])
        return 0.0

    def norm1(self) -> float:
        """Sum of coefficient magnitudes (upper bound on the spectral norm)."""
        return float(np.abs(self._coeffs).sum())

    def __repr__(self) -> str:
        if not len(self):
            return f"PauliSum(n_qubits={self.n_qubits}, 0)"
        parts = [f"({c:.6g})*{lab}" for lab, c in list(self)[:6]]
        tail = " + ..." if len(self) > 6 else ""
        return f"PauliSum(n_qubits={self.n_qubits}, {' + '.join(parts)}{tail})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if not isinstance(other, PauliSum):
            return NotImplemented
        _check_same_register(self, other)
        return PauliSum(
            self.n_qubits,
            np.concatenate([self._keys, other._keys]),
            np.concatenate([self._coeffs, other._coeffs]),
        )

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __neg__(self) -> "PauliSum":
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, PauliSum):
            return sum_mul(self, other)
        return self._scaled(other)

    def __rmul__(self, scalar) -> "PauliSum":
        return self._scaled(scalar)

    def _scaled(self, scalar) -> "PauliSum":
        scalar = complex(scalar)
        return PauliSum(self.n_qubits, self._keys, self._coeffs * scalar)

    def adjoint(self) -> "PauliSum":
        """Hermitian adjoint (labels are Hermitian, so conjugate coefficients)."""
        return PauliSum(
            self.n_qubits, self._keys, np.conj(self._coeffs), _merged=True
        )

    def equals(self, other: "PauliSum", tol: float = 0.0) -> bool:
        d = self - other
        return len(d) == 0 or bool(np.all(np.abs(d._coeffs) <= tol))

    # -- text round trip ----------------------------------------------

    def to_text(self) -> str:
        """Serialize one term per line: ``<re> <im> <label>``, qubit 0 leftmost."""
        lines = [
            f"{c.real:+.17e} {c.imag:+.17e} {lab}" for lab, c in self
        ]
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n_qubits: int | None = None) -> "PauliSum":
        """Parse the :meth:`to_text` format."""
        terms = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            re_s, im_s, lab = line.split()
            terms.append((lab, float(re_s) + 1j * float(im_s)))
        if not terms:
            if n_qubits is None:
                raise ValueError("empty text and no register size given")
            return cls.zero(n_qubits)
        return cls.from_terms(terms, n_qubits)


def _merge_terms(
    keys: np.ndarray, coeffs: np.ndarray, threshold: float
) -> tuple[np.ndarray, np.ndarray]:
    """Merge like keys and drop coefficients below threshold, key-sorted."""
    if len(keys) == 0:
        return keys, coeffs
    uniq, inverse = np.unique(keys, return_inverse=True)
    merged = np.bincount(inverse, weights=coeffs.real, minlength=len(uniq)).astype(
        np.complex128
    )
    merged += 1j * np.bincount(inverse, weights=coeffs.imag, minlength=len(uniq))
    # threshold 0 still drops exact cancellations so zero terms never persist
    keep = np.abs(merged) >= threshold if threshold > 0 else np.abs(merged) > 0
    return uniq[keep], merged[keep]


def _pairwise_products(
    a: PauliSum, b: PauliSum
) -> tuple[np.ndarray, np.ndarray]:
    """All term-pair products of a and b as (keys, coefficients), unmerged."""
    ax, az = a.x_masks[:, None], a.z_masks[:, None]
    bx, bz = b.x_masks[None, :], b.z_masks[None, :]
    x3 = ax ^ bx
    z3 = az ^ bz
    e = (
        np.bitwise_count(ax & az).astype(np.int64)
        + np.bitwise_count(bx & bz)
        - np.bitwise_count(x3 & z3)
        + 2 * np.bitwise_count(az & bx)
    ) % 4
    coeffs = a.coeffs[:, None] * b.coeffs[None, :] * _PHASES[e]
    keys = (x3 << np.uint64(_MAX_QUBITS)) | z3
    return keys.ravel(), coeffs.ravel()


def sum_mul(
    a: PauliSum, b: PauliSum, threshold: float = DEFAULT_TRUNCATION
) -> PauliSum:
    """Product of two sums: distributes label products over all term pairs."""
    _check_same_register(a, b)
    if len(a) == 0 or len(b) == 0:
        return PauliSum.zero(a.n_qubits)
    keys, coeffs = _pairwise_products(a, b)
    return PauliSum(a.n_qubits, keys, coeffs, threshold=threshold)


def commutator(
    a: PauliSum, b: PauliSum, threshold: float = DEFAULT_TRUNCATION
) -> PauliSum:
    """Commutator ``ab - ba``.

    Two Pauli labels either commute (contributing nothing) or anticommute
    (contributing twice their product), so only anticommuting pairs are
    expanded.
    """
    _check_same_register(a, b)
    if len(a) == 0 or len(b) == 0:
        return PauliSum.zero(a.n_qubits)
    ax, az = a.x_masks[:, None], a.z_masks[:, None]
    bx, bz = b.x_masks[None, :], b.z_masks[None, :]
    anti = (np.bitwise_count(ax & bz) + np.bitwise_count(az & bx)) % 2 == 1
    ai, bi = np.nonzero(anti)
    if len(ai) == 0:
        return PauliSum.zero(a.n_qubits)
    x3 = a.x_masks[ai] ^ b.x_masks[bi]
    z3 = a.z_masks[ai] ^ b.z_masks[bi]
    e = (
        np.bitwise_count(a.x_masks[ai] & a.z_masks[ai]).astype(np.int64)
        + np.bitwise_count(b.x_masks[bi] & b.z_masks[bi])
        - np.bitwise_count(x3 & z3)
        + 2 * np.bitwise_count(a.z_masks[ai] & b.x_masks[bi])
    ) % 4
    coeffs = 2.0 * a.coeffs[ai] * b.coeffs[bi] * _PHASES[e]
    keys = (x3 << np.uint64(_MAX_QUBITS)) | z3
    return PauliSum(a.n_qubits, keys, coeffs, threshold=threshold)


def is_hermitian(a: PauliSum, tol: float = 1e-10) -> bool:
    """True iff every coefficient is real to within ``tol``.

    Pauli labels are Hermitian, so hermiticity of the sum is equivalent to
    real coefficients.
    """
    if len(a) == 0:
        return True
    return bool(np.max(np.abs(a.coeffs.imag)) <= tol)


def is_antihermitian(a: PauliSum, tol: float = 1e-10) -> bool:
    """True iff every coefficient is purely imaginary to within ``tol``."""
    if len(a) == 0:
        return True
    return bool(np.max(np.abs(a.coeffs.real)) <= tol)


def to_matrix(a: PauliSum, qubit_cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense ``2^n x 2^n`` complex matrix of the sum.

    Uses the action rule ``P|b> = i^y (-1)^{popcount(z & b)} |b ^ x>`` per
    label instead of Kronecker products.  Qubit 0 is the least significant
    bit of the basis index.

    Raises:
        ValueError: register larger than ``qubit_cap``.
    """
    n = a.n_qubits
    if n > qubit_cap:
        raise ValueError(f"register too large for dense realization: {n} > {qubit_cap}")
    dim = 1 << n
    cols = np.arange(dim, dtype=np.uint64)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for x, z, c in zip(a.x_masks, a.z_masks, a.coeffs):
        rows = cols ^ x
        phase = _PHASES[np.bitwise_count(x & z) % 4] * np.where(
            np.bitwise_count(z & cols) % 2 == 1, -1.0, 1.0
        )
        mat[rows, cols] += c * phase
    return mat


def truncate(a: PauliSum, threshold: float) -> PauliSum:
    """Drop terms with coefficient magnitude below ``threshold``."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    if threshold == 0 or len(a) == 0:
        return a
    keep = np.abs(a.coeffs) >= threshold
    return PauliSum(a.n_qubits, a._keys[keep], a.coeffs[keep], _merged=True)
