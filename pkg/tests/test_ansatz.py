"""Layout construction, schedule grammar, and preparation checks."""

import numpy as np
import pytest

from mrucc.ansatz import (
    AnsatzLayout,
    build_layout,
    cnot_count,
    count_determinants,
    parse_schedule,
    prepare_state,
)
from mrucc.statevector import hf_state


class TestScheduleGrammar:
    def test_single_atom(self):
        assert parse_schedule("adjacent") == (["adjacent"], None)

    def test_atom_repeat(self):
        assert parse_schedule("adjacentx2") == (["adjacent", "adjacent"], None)

    def test_group_repeat_and_budget(self):
        sweeps, budget = parse_schedule("(adjacent,next_nearest)x3; budget=54")
        assert sweeps == ["adjacent", "next_nearest"] * 3
        assert budget == 54

    def test_whitespace_tolerated(self):
        sweeps, budget = parse_schedule(" ( adjacent , next_nearest ) x 2 ; budget = 9 ")
        assert sweeps == ["adjacent", "next_nearest"] * 2
        assert budget == 9

    def test_mixed_list(self):
        sweeps, _ = parse_schedule("adjacent,(next_nearest)x2,adjacent")
        assert sweeps == ["adjacent", "next_nearest", "next_nearest", "adjacent"]

    def test_malformed_inputs_raise(self):
        for bad in ["", "bogus", "(adjacent", "adjacent)x2", "adjacent; budget=x", "(adjacent; budget=3)x2"]:
            with pytest.raises(ValueError):
                parse_schedule(bad)


class TestBuildLayout:
    def test_adjacent_on_four_qubits(self):
        layout = build_layout(4, "adjacent")
        assert layout.gates == ((0, 1), (1, 2), (2, 3))
        assert layout.n_parameters == 3

    def test_next_nearest_on_four_qubits(self):
        layout = build_layout(4, "next_nearest")
        assert layout.gates == ((0, 2), (1, 3))

    def test_one_block_on_twelve_qubits(self):
        layout = build_layout(12, "adjacent,next_nearest")
        assert layout.n_parameters == 11 + 10

    def test_budget_truncates_final_sweep(self):
        layout = build_layout(12, "(adjacent,next_nearest)x3; budget=54")
        assert layout.n_parameters == 54
        # two full 21-gate blocks, then 11 adjacent gates and one
        # next-nearest gate of the third block
        assert layout.gates[41] == (9, 11)
        assert layout.gates[42] == (0, 1)
        assert layout.gates[53] == (0, 2)

    def test_budget_argument_overrides_text(self):
        layout = build_layout(12, "(adjacent,next_nearest)x3; budget=54", budget=20)
        assert layout.n_parameters == 20

    def test_schedule_as_list(self):
        layout = build_layout(5, ["adjacent", "adjacent"])
        assert layout.n_parameters == 8

    def test_errors(self):
        with pytest.raises(ValueError):
            build_layout(12, "")
        with pytest.raises(ValueError):
            build_layout(12, "adjacent", budget=0)
        with pytest.raises(ValueError):
            build_layout(12, "adjacent", budget=12)
        with pytest.raises(ValueError):
            build_layout(1, "adjacent")

    def test_descriptor_records_generation(self):
        layout = build_layout(4, "(adjacent)x2; budget=5")
        assert "adjacent" in layout.schedule_descriptor
        assert "budget=5" in layout.schedule_descriptor

    def test_invalid_gate_pair_rejected(self):
        with pytest.raises(ValueError):
            AnsatzLayout(3, ((0, 0),))
        with pytest.raises(ValueError):
            AnsatzLayout(3, ((0, 3),))


class TestPrepareState:
    def test_zero_angles_reproduce_reference(self):
        layout = build_layout(4, "adjacent,next_nearest")
        ref = hf_state(4, {0, 1})
        out = prepare_state(layout, np.zeros(layout.n_parameters), ref)
        np.testing.assert_allclose(out, ref, atol=1e-15)

    def test_single_gate_half_pi_flips_pair(self):
        layout = AnsatzLayout(4, ((1, 2),))
        ref = hf_state(4, {2})  # pair (1,2) sees |01>
        out = prepare_state(layout, np.array([np.pi / 2]), ref)
        np.testing.assert_allclose(out, hf_state(4, {1}), atol=1e-15)

    def test_stays_in_particle_sector(self):
        rng = np.random.default_rng(3)
        layout = build_layout(6, "(adjacent,next_nearest)x2")
        theta = rng.uniform(-np.pi, np.pi, layout.n_parameters)
        out = prepare_state(layout, theta, hf_state(6, {0, 1, 2}))
        weights = np.array([bin(j).count("1") for j in range(64)])
        assert np.abs(out[weights != 3]).sum() < 1e-12
        assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-10)

    def test_reverse_layout_inverts(self):
        rng = np.random.default_rng(5)
        layout = build_layout(5, "adjacent,next_nearest,adjacent")
        theta = rng.uniform(-1, 1, layout.n_parameters)
        ref = hf_state(5, {0, 3})
        forward = prepare_state(layout, theta, ref)
        back = prepare_state(layout.reversed(), -theta[::-1], forward)
        np.testing.assert_allclose(back, ref, atol=1e-12)

    def test_size_mismatch_raises(self):
        layout = build_layout(4, "adjacent")
        with pytest.raises(ValueError):
            prepare_state(layout, np.zeros(2), hf_state(4, {0}))
        with pytest.raises(ValueError):
            prepare_state(layout, np.zeros(3), hf_state(5, {0}))


class TestResourceCounts:
    def test_two_cnots_per_gate(self):
        layout = build_layout(12, "(adjacent,next_nearest)x3; budget=54")
        assert cnot_count(layout) == 108

    def test_additive_under_concatenation(self):
        a = build_layout(6, "adjacent")
        b = build_layout(6, "next_nearest")
        assert cnot_count(a + b) == cnot_count(a) + cnot_count(b)

    def test_empty_layout(self):
        assert cnot_count(AnsatzLayout(4, ())) == 0


class TestCountDeterminants:
    def test_basis_state(self):
        assert count_determinants(hf_state(5, {0, 1}), 0.5) == 1

    def test_uniform_superposition(self):
        k = 8
        psi = np.zeros(16, dtype=complex)
        psi[:k] = 1.0 / np.sqrt(k)
        assert count_determinants(psi, 0.5 / np.sqrt(k)) == k

    def test_sector_bound(self):
        rng = np.random.default_rng(7)
        layout = build_layout(6, "(adjacent,next_nearest)x3")
        theta = rng.uniform(-np.pi, np.pi, layout.n_parameters)
        out = prepare_state(layout, theta, hf_state(6, {0, 1}))
        from math import comb

        assert count_determinants(out) <= comb(6, 2)

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValueError):
            count_determinants(hf_state(2, {0}), -1.0)
