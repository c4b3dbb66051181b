"""Anatomy of the particle-number-conserving ansatz.

Builds layouts from schedule strings, counts parameters and CNOTs, shows
how a random circuit spreads the reference determinant into a
multi-determinant superposition without ever leaving the particle-number
sector.

Run:  python3 demos/03_ansatz_anatomy.py
"""

import numpy as np

from mrucc import build_layout, cnot_count, count_determinants, hf_state, prepare_state


def sector_weight(state, n_electrons):
    idx = np.arange(state.size, dtype=np.uint64)
    inside = np.bitwise_count(idx) == n_electrons
    return float(np.sum(np.abs(state[inside]) ** 2))


def main():
    for schedule, budget in [
        ("adjacent", None),
        ("(adjacent,next_nearest)x3", 54),
        ("(adjacent,next_nearest)x13", 260),
    ]:
        layout = build_layout(12, schedule, budget)
        print(
            f"{schedule!r:35} budget={budget}: "
            f"{layout.n_parameters:3d} parameters, {cnot_count(layout):3d} CNOTs"
        )

    layout = build_layout(12, "(adjacent,next_nearest)x3", 54)
    reference = hf_state(12, (0, 1, 2, 3))
    rng = np.random.default_rng(7)
    theta = rng.uniform(-0.5, 0.5, layout.n_parameters)
    state = prepare_state(layout, theta, reference)

    print("\nreference determinants:", count_determinants(reference))
    print("prepared determinants: ", count_determinants(state))
    print("norm:                  ", f"{np.linalg.norm(state):.15f}")
    print("weight in the 4-electron sector:", f"{sector_weight(state, 4):.15f}")


if __name__ == "__main__":
    main()
