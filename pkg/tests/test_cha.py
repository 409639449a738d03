from __future__ import annotations

import random

import pytest

from bpps.bounds import k_lower, zeta_lp_dag
from bpps.cha import (
    BPP_EXACT,
    BPP_HEURISTIC,
    TERM_STEP1,
    TERM_STEP2,
    TERM_STEP3_MERGED,
    TERM_STEP3_UNMERGED,
    cha,
    k_upper,
)
from bpps.core import (
    Instance,
    InvalidInstanceError,
    TrivialInstanceError,
    check_feasible,
    solution_cost,
)
from bpps.gen import worst_case
from conftest import random_instance


class TestChaOnFig1:
    def test_trace_high_bin_cost(self, fig1):
        solution, trace = cha(fig1, BPP_EXACT)
        assert trace.beta == (4, 1)
        assert trace.single_bin_classes == {2}
        assert trace.delta == 1
        assert trace.termination == TERM_STEP3_UNMERGED
        assert trace.psi_bar == 11 + 10 * 5 == 61
        assert check_feasible(fig1, solution).ok
        assert solution_cost(fig1, solution).total == 61
        assert 2 * zeta_lp_dag(fig1) > 61

    def test_trace_low_bin_cost(self, fig1_r1):
        solution, trace = cha(fig1_r1, BPP_EXACT)
        assert trace.termination == TERM_STEP3_UNMERGED
        assert trace.psi_bar == 16
        assert solution_cost(fig1_r1, solution).total == 16


class TestTerminations:
    def test_step1_when_every_class_needs_two_bins(self):
        # Unit items with residual capacity 1 force one bin per item.
        inst = worst_case("prop2", n=3, r=5, f1=2)
        solution, trace = cha(inst, BPP_EXACT)
        assert trace.termination == TERM_STEP1
        assert trace.single_bin_classes == frozenset()
        assert trace.beta == (3,)
        assert trace.psi_bar == 3 * 2 + 3 * 5
        assert solution_cost(inst, solution).total == trace.psi_bar

    def test_step2_when_blocks_need_two_bins(self):
        # Three one-bin classes whose blocks (weight 3) pair up in cap-6 bins.
        inst = Instance(
            weights=(2, 2, 2),
            capacity=6,
            class_of=(1, 2, 3),
            setup_weights=(1, 1, 1),
            setup_costs=(1, 1, 1),
            bin_cost=2,
        )
        solution, trace = cha(inst, BPP_EXACT)
        assert trace.termination == TERM_STEP2
        assert trace.beta == (1, 1, 1)
        assert trace.delta == 2
        assert trace.psi_bar == 3 * 1 + 2 * 2
        assert solution_cost(inst, solution).total == trace.psi_bar

    def test_step3_merged_block_joins_a_bin(self):
        # Class 1 needs two bins with slack; class 2's block fits the slack.
        inst = Instance(
            weights=(4, 4, 4, 1),
            capacity=10,
            class_of=(1, 1, 1, 2),
            setup_weights=(0, 1),
            setup_costs=(3, 2),
            bin_cost=5,
        )
        solution, trace = cha(inst, BPP_EXACT)
        assert trace.termination == TERM_STEP3_MERGED
        assert trace.beta == (2, 1)
        assert trace.merge_class == 1
        assert trace.psi_bar == (2 * 3 + 1 * 2) + 5 * 2
        assert solution_cost(inst, solution).total == trace.psi_bar
        assert solution.bin_count == 2

    def test_trivial_case_raises(self):
        inst = Instance(
            weights=(1, 1),
            capacity=10,
            class_of=(1, 2),
            setup_weights=(1, 1),
            setup_costs=(0, 0),
            bin_cost=1,
        )
        with pytest.raises(InvalidInstanceError):
            cha(inst, BPP_EXACT)
        with pytest.raises(TrivialInstanceError):
            cha(inst, BPP_EXACT, override_validation=True)


class TestProperties:
    def test_feasible_and_formula_cost_randomized(self):
        rng = random.Random(41)
        for _ in range(150):
            inst = random_instance(rng)
            for mode in (BPP_EXACT, BPP_HEURISTIC):
                solution, trace = cha(inst, mode)
                assert check_feasible(inst, solution).ok
                assert solution_cost(inst, solution).total == trace.psi_bar

    def test_half_guarantee_exact_mode(self):
        rng = random.Random(43)
        for _ in range(150):
            inst = random_instance(rng)
            _, trace = cha(inst, BPP_EXACT)
            assert 2 * zeta_lp_dag(inst) > trace.psi_bar

    def test_heuristic_mode_never_below_exact(self):
        rng = random.Random(47)
        for _ in range(100):
            inst = random_instance(rng)
            assert k_upper(inst, BPP_HEURISTIC) >= k_upper(inst, BPP_EXACT)
            assert k_upper(inst, BPP_EXACT) >= k_lower(inst)


class TestKUpper:
    def test_fig1(self, fig1):
        assert k_upper(fig1, BPP_EXACT) == 5
        assert k_upper(fig1, BPP_HEURISTIC) == 5

    def test_prop2_family_needs_one_bin_per_item(self):
        for n in (2, 5, 9):
            inst = worst_case("prop2", n=n)
            assert k_upper(inst, BPP_EXACT) == n

    def test_single_class_single_bin(self):
        inst = Instance((2, 2), 10, (1, 1), (3,), (0,), 1)
        assert k_upper(inst, BPP_EXACT, override_validation=True) == 1
