"""Molecular integral ingestion and spin-orbital expansion.

Reads FCIDUMP files (Fortran-namelist header, ``value i j k l`` records,
1-based indices, chemist-notation two-electron values), completes the
8-fold permutational symmetry, expands spatial integrals to spin orbitals
in physicist notation, and evaluates the closed-form determinant energy of
a reference occupation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

__all__ = [
    "MolecularSystem",
    "SpinIntegrals",
    "parse_fcidump",
    "spin_expand",
    "hf_energy",
]

#: Duplicate records whose values differ by more than this conflict.
DUPLICATE_TOL = 1e-10


def _h1_key(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p <= q else (q, p)


def _h2_key(p: int, q: int, r: int, s: int) -> tuple[int, int, int, int]:
    """Canonical representative of the 8 equivalent (pq|rs) index tuples."""
    return min(
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    )


@dataclass(frozen=True)
class MolecularSystem:
    """Spatial-orbital integrals as read from an FCIDUMP file.

    ``h1`` maps canonical 1-based pairs to values; ``h2`` maps canonical
    1-based chemist-notation quadruples (pq|rs).  ``conflicts`` lists
    humanly readable descriptions of duplicate records that disagreed
    (only populated by lenient parsing).
    """

    n_spatial: int
    n_electrons: int
    ms2: int
    e_core: float
    h1: dict
    h2: dict
    conflicts: tuple = ()

    def __post_init__(self):
        if self.n_spatial < 1 or self.n_electrons < 1:
            raise ValueError("NORB and NELEC must be positive")
        if 2 * self.n_spatial < self.n_electrons:
            raise ValueError("more electrons than spin orbitals")

    @property
    def n_spin_orbitals(self) -> int:
        return 2 * self.n_spatial

    def h1_el(self, p: int, q: int) -> float:
        """One-electron integral h(p,q), 1-based spatial indices."""
        return self.h1.get(_h1_key(p, q), 0.0)

    def h2_el(self, p: int, q: int, r: int, s: int) -> float:
        """Two-electron integral (pq|rs) in chemist notation, 1-based."""
        return self.h2.get(_h2_key(p, q, r, s), 0.0)


def parse_fcidump(source: TextIO | str | Iterable[str], strict: bool = True) -> MolecularSystem:
    """Parse an FCIDUMP stream, file path, or text.

    Records with two zero indices populate the one-electron block, the
    all-zero record sets the core energy, and everything else is a
    two-electron value stored under 8-fold symmetry.

    Args:
        source: open text stream, literal text containing a newline, or a
            file path.
        strict: raise on duplicate records that disagree beyond 1e-10;
            when False such conflicts are recorded on the result instead
            (first value wins).

    Raises:
        ValueError: malformed header or records, out-of-range indices, or
            (strict mode) conflicting duplicates.
    """
    if isinstance(source, str):
        if "\n" in source or source.lstrip().startswith("&"):
            lines = source.splitlines()
        else:
            with open(source) as fh:
                lines = fh.read().splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = [str(ln) for ln in source]

    header, data_lines = _split_header(lines)
    norb = _header_int(header, "NORB")
    nelec = _header_int(header, "NELEC")
    ms2 = _header_int(header, "MS2", default=0)

    e_core = 0.0
    seen_core = False
    h1: dict = {}
    h2: dict = {}
    conflicts: list[str] = []

    def record(store, key, value, kind):
        nonlocal conflicts
        if key in store:
            old = store[key]
            if abs(old - value) > DUPLICATE_TOL:
                msg = f"conflicting {kind} record {key}: {old!r} vs {value!r}"
                if strict:
                    raise ValueError(msg)
                conflicts.append(msg)
        else:
            store[key] = value

    for raw in data_lines:
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 5:
            raise ValueError(f"malformed FCIDUMP record: {raw!r}")
        value = float(fields[0].replace("D", "E").replace("d", "e"))
        i, j, k, l = (int(f) for f in fields[1:])
        for idx in (i, j, k, l):
            if idx < 0 or idx > norb:
                raise ValueError(f"orbital index {idx} outside [0, {norb}]: {raw!r}")
        nonzero = [idx for idx in (i, j, k, l) if idx != 0]
        if len(nonzero) == 0:
            if seen_core and abs(e_core - value) > DUPLICATE_TOL:
                msg = f"conflicting core energy: {e_core!r} vs {value!r}"
                if strict:
                    raise ValueError(msg)
                conflicts.append(msg)
            elif not seen_core:
                e_core = value
                seen_core = True
        elif len(nonzero) == 2 and k == 0 and l == 0:
            record(h1, _h1_key(i, j), value, "one-electron")
        elif len(nonzero) == 4:
            record(h2, _h2_key(i, j, k, l), value, "two-electron")
        else:
            raise ValueError(f"unsupported index pattern in record: {raw!r}")

    return MolecularSystem(
        n_spatial=norb,
        n_electrons=nelec,
        ms2=ms2,
        e_core=e_core,
        h1=h1,
        h2=h2,
        conflicts=tuple(conflicts),
    )


def _split_header(lines: list[str]) -> tuple[str, list[str]]:
    """Split namelist header (&FCI ... / or &END) from the data records."""
    it = iter(enumerate(lines))
    for i, line in it:
        if line.strip().upper().startswith("&FCI"):
            start = i
            break
        if line.strip():
            raise ValueError(f"expected &FCI header, found {line!r}")
    else:
        raise ValueError("no &FCI header found")

    header_parts = []
    for i in range(start, len(lines)):
        line = lines[i]
        upper = line.upper()
        for terminator in ("&END", "/"):
            pos = upper.find(terminator)
            if pos >= 0:
                header_parts.append(line[:pos])
                return " ".join(header_parts), lines[i + 1 :]
        header_parts.append(line)
    raise ValueError("unterminated FCIDUMP header (no '/' or '&END')")


def _header_int(header: str, name: str, default: int | None = None) -> int:
    m = re.search(rf"{name}\s*=\s*(-?\d+)", header, flags=re.IGNORECASE)
    if m is None:
        if default is not None:
            return default
        raise ValueError(f"FCIDUMP header missing {name}")
    return int(m.group(1))


@dataclass(frozen=True)
class SpinIntegrals:
    """Dense spin-orbital integrals in physicist notation.

    ``one_body[P, Q]`` is h(P,Q); ``two_body[P, Q, R, S]`` is <PQ|RS>,
    nonzero only when spin(P)=spin(R) and spin(Q)=spin(S).  ``ordering``
    records the spin-orbital-to-qubit assignment: ``interleaved`` puts
    spatial orbital p on qubits 2p (alpha) and 2p+1 (beta); ``blocked``
    puts all alphas first.
    """

    n_spin_orbitals: int
    n_electrons: int
    ms2: int
    e_core: float
    one_body: np.ndarray
    two_body: np.ndarray
    ordering: str = "interleaved"

    def default_occupation(self) -> tuple[int, ...]:
        """Lowest-index reference determinant.

        Fills spatial orbitals in file order, doubly first, then one extra
        alpha electron if the count is odd; assumes canonical energy-sorted
        orbitals.
        """
        n_spatial = self.n_spin_orbitals // 2
        n_double, leftover = divmod(self.n_electrons, 2)
        occ = []
        for p in range(n_double):
            occ.append(_spin_orbital_index(p, 0, n_spatial, self.ordering))
            occ.append(_spin_orbital_index(p, 1, n_spatial, self.ordering))
        if leftover:
            occ.append(_spin_orbital_index(n_double, 0, n_spatial, self.ordering))
        return tuple(sorted(occ))


def _spin_orbital_index(p: int, sigma: int, n_spatial: int, ordering: str) -> int:
    if ordering == "interleaved":
        return 2 * p + sigma
    if ordering == "blocked":
        return p + sigma * n_spatial
    raise ValueError(f"unknown ordering {ordering!r}")


def spin_expand(sys: MolecularSystem, ordering: str = "interleaved") -> SpinIntegrals:
    """Expand spatial integrals to spin orbitals.

    One-body: h(P,Q) = h1(p,q) when spins match.  Two-body converts
    chemist to physicist ordering, <PQ|RS> = (pr|qs) times the spin
    deltas of the P/R and Q/S pairs.
    """
    n = sys.n_spatial
    spatial_h1 = np.zeros((n, n))
    for (p, q), v in sys.h1.items():
        spatial_h1[p - 1, q - 1] = v
        spatial_h1[q - 1, p - 1] = v
    chemist = np.zeros((n, n, n, n))
    for (p, q, r, s), v in sys.h2.items():
        for a, b, c, d in (
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ):
            chemist[a - 1, b - 1, c - 1, d - 1] = v
    # <pq|rs> = (pr|qs)
    physicist = chemist.transpose(0, 2, 1, 3)

    n_spin = 2 * n
    one_body = np.zeros((n_spin, n_spin))
    two_body = np.zeros((n_spin, n_spin, n_spin, n_spin))
    spatial = np.arange(n)
    index_of = [
        np.array([_spin_orbital_index(p, s, n, ordering) for p in spatial])
        for s in (0, 1)
    ]
    for s1 in (0, 1):
        one_body[np.ix_(index_of[s1], index_of[s1])] = spatial_h1
        for s2 in (0, 1):
            two_body[
                np.ix_(index_of[s1], index_of[s2], index_of[s1], index_of[s2])
            ] = physicist
    one_body.flags.writeable = False
    two_body.flags.writeable = False
    return SpinIntegrals(
        n_spin_orbitals=n_spin,
        n_electrons=sys.n_electrons,
        ms2=sys.ms2,
        e_core=sys.e_core,
        one_body=one_body,
        two_body=two_body,
        ordering=ordering,
    )


def hf_energy(spin: SpinIntegrals, occupied) -> float:
    """Closed-form energy of a single determinant.

    e_core + sum_i h(i,i) + 1/2 sum_{ij} (<ij|ij> - <ij|ji>) over the
    occupied spin orbitals.

    Raises:
        ValueError: occupation size differs from the electron count.
    """
    occ = sorted(int(i) for i in occupied)
    if len(set(occ)) != len(occ):
        raise ValueError("occupied set contains duplicates")
    if occ and not 0 <= occ[0] <= occ[-1] < spin.n_spin_orbitals:
        raise ValueError("occupied index outside the spin-orbital range")
    if len(occ) != spin.n_electrons:
        raise ValueError(
            f"occupation size {len(occ)} differs from NELEC {spin.n_electrons}"
        )
    occ = np.asarray(occ, dtype=int)
    energy = spin.e_core + spin.one_body[occ, occ].sum()
    coulomb = spin.two_body[np.ix_(occ, occ, occ, occ)]
    direct = np.einsum("ijij->", coulomb)
    exchange = np.einsum("ijji->", coulomb)
    return float(energy + 0.5 * (direct - exchange))
