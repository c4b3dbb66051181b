"""Tour of the sparse Pauli-operator layer.

Shows operator construction from string labels, products and commutators
with automatic phase tracking, truncation, and dense-matrix round trips.

Run:  python3 demos/02_pauli_algebra.py
"""

import numpy as np

from mrucc import PauliSum, commutator, is_hermitian, to_matrix, truncate


def main():
    a = PauliSum.from_terms({"XI": 0.5, "ZZ": -0.25})
    b = PauliSum.from_terms({"YI": 1.0, "IZ": 2.0})
    print("A =", a)
    print("B =", b)

    prod = a * b
    print("\nA * B =", prod)

    comm = commutator(a, b)
    print("[A, B] =", comm)
    print("[A, B] is Hermitian:", is_hermitian(comm))

    dense_comm = to_matrix(a) @ to_matrix(b) - to_matrix(b) @ to_matrix(a)
    print(
        "matches dense commutator:",
        bool(np.allclose(to_matrix(comm), dense_comm)),
    )

    noisy = PauliSum.from_terms({"XX": 1.0, "YY": 1e-9})
    print("\nbefore truncation:", len(noisy), "terms")
    print("after truncation: ", len(truncate(noisy, 1e-6)), "terms")


if __name__ == "__main__":
    main()
