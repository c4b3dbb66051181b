"""Pair-rotation circuit layouts and state preparation.

A layout is an ordered list of qubit pairs; each pair carries one rotation
angle.  Layouts are built from sweep schedules: ``adjacent`` couples
(0,1),(1,2),...,(n-2,n-1), ``next_nearest`` couples (0,2),(1,3),...,
(n-3,n-1).  A parameter budget truncates the concatenated sweep sequence,
which is how the per-molecule gate counts are pinned.

Schedules are accepted either as a list of sweep names or as compact text:

    (adjacent,next_nearest)x3; budget=54

where ``xN`` repeats an atom or a parenthesized group and the optional
``budget=N`` suffix caps the gate count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from mrucc.statevector import _pnc_indices, _rotate_pairs, register_size

__all__ = [
    "AnsatzLayout",
    "build_layout",
    "prepare_state",
    "cnot_count",
    "count_determinants",
    "parse_schedule",
]

SWEEP_KINDS = ("adjacent", "next_nearest")

#: Amplitudes above this magnitude count as a supported determinant.
DETERMINANT_THRESHOLD = 1e-8


@dataclass(frozen=True)
class AnsatzLayout:
    """Ordered pair-rotation circuit; parameter k drives gate k."""

    n_qubits: int
    gates: tuple[tuple[int, int], ...]
    schedule_descriptor: str = ""

    def __post_init__(self):
        for qa, qb in self.gates:
            if qa == qb or not (0 <= qa < self.n_qubits and 0 <= qb < self.n_qubits):
                raise ValueError(f"invalid gate pair ({qa}, {qb})")

    @property
    def n_parameters(self) -> int:
        return len(self.gates)

    def __add__(self, other: "AnsatzLayout") -> "AnsatzLayout":
        if self.n_qubits != other.n_qubits:
            raise ValueError("cannot concatenate layouts on different registers")
        desc = "; ".join(d for d in (self.schedule_descriptor, other.schedule_descriptor) if d)
        return AnsatzLayout(self.n_qubits, self.gates + other.gates, desc)

    def reversed(self) -> "AnsatzLayout":
        return AnsatzLayout(
            self.n_qubits, tuple(reversed(self.gates)), self.schedule_descriptor
        )


def _sweep_pairs(kind: str, n_qubits: int) -> list[tuple[int, int]]:
    if kind == "adjacent":
        return [(q, q + 1) for q in range(n_qubits - 1)]
    if kind == "next_nearest":
        return [(q, q + 2) for q in range(n_qubits - 2)]
    raise ValueError(f"unknown sweep kind {kind!r}")


_ATOM_RE = re.compile(r"([a-z_]+)(?:\s*x\s*(\d+))?$")
_GROUP_RE = re.compile(r"\(([^()]*)\)\s*x\s*(\d+)$")


def parse_schedule(text: str) -> tuple[list[str], int | None]:
    """Parse schedule text into a flat sweep list and an optional budget."""
    text = text.strip()
    budget = None
    if ";" in text:
        body, _, tail = text.partition(";")
        tail = tail.strip()
        m = re.match(r"budget\s*=\s*(\d+)$", tail)
        if m is None:
            raise ValueError(f"malformed budget clause {tail!r}")
        budget = int(m.group(1))
        text = body.strip()
    if not text:
        raise ValueError("empty schedule")

    sweeps: list[str] = []
    for piece in _split_top_level(text):
        piece = piece.strip()
        group = _GROUP_RE.match(piece)
        if group:
            inner, reps = group.group(1), int(group.group(2))
            inner_sweeps, inner_budget = parse_schedule(inner)
            if inner_budget is not None:
                raise ValueError("budget clause must be top level")
            sweeps.extend(inner_sweeps * reps)
            continue
        atom = _ATOM_RE.match(piece)
        if atom is None:
            raise ValueError(f"malformed schedule element {piece!r}")
        kind, reps = atom.group(1), int(atom.group(2) or 1)
        if kind not in SWEEP_KINDS:
            raise ValueError(f"unknown sweep kind {kind!r}")
        sweeps.extend([kind] * reps)
    return sweeps, budget


def _split_top_level(text: str) -> list[str]:
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses in schedule")
        elif ch == "," and depth == 0:
            pieces.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ValueError("unbalanced parentheses in schedule")
    pieces.append(text[start:])
    return pieces


def build_layout(n_qubits: int, schedule, budget: int | None = None) -> AnsatzLayout:
    """Concatenate sweeps into a layout, optionally capped at ``budget`` gates.

    Args:
        n_qubits: register size, at least 2.
        schedule: schedule text or an iterable of sweep kind names.
        budget: overrides any budget embedded in schedule text.

    Raises:
        ValueError: empty schedule, unknown sweep kind, budget < 1, or
            budget exceeding the schedule's total gate count.
    """
    if n_qubits < 2:
        raise ValueError("layouts need at least 2 qubits")
    if isinstance(schedule, str):
        sweeps, text_budget = parse_schedule(schedule)
        if budget is None:
            budget = text_budget
    else:
        sweeps = list(schedule)
    if not sweeps:
        raise ValueError("empty schedule")

    gates: list[tuple[int, int]] = []
    for kind in sweeps:
        gates.extend(_sweep_pairs(kind, n_qubits))
    descriptor = ",".join(sweeps)
    if budget is not None:
        if budget < 1:
            raise ValueError("budget must be at least 1")
        if budget > len(gates):
            raise ValueError(
                f"budget {budget} exceeds the schedule's {len(gates)} gates"
            )
        gates = gates[:budget]
        descriptor += f"; budget={budget}"
    return AnsatzLayout(n_qubits, tuple(gates), descriptor)


def prepare_state(
    layout: AnsatzLayout, theta: np.ndarray, reference: np.ndarray
) -> np.ndarray:
    """Apply the layout's pair rotations in sequence to the reference."""
    if len(theta) != len(layout.gates):
        raise ValueError(
            f"{len(theta)} parameters for {len(layout.gates)} gates"
        )
    n = register_size(reference)
    if layout.n_qubits != n:
        raise ValueError("layout register does not match reference state")
    psi = reference.astype(np.complex128, copy=True)
    for (qa, qb), t in zip(layout.gates, theta):
        j01, j10 = _pnc_indices(n, qa, qb)
        _rotate_pairs(psi, float(t), j01, j10)
    return psi


def cnot_count(layout: AnsatzLayout) -> int:
    """Two CNOTs per pair rotation."""
    return 2 * len(layout.gates)


def count_determinants(state: np.ndarray, threshold: float = DETERMINANT_THRESHOLD) -> int:
    """Number of basis states with amplitude magnitude above ``threshold``."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    return int(np.count_nonzero(np.abs(state) > threshold))
