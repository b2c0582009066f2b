import itertools
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcompose.composition import (
    FULL,
    CostProfile,
    classical_avg_cost,
    majority_vs_purifier_table,
    profile_from_json,
    profile_to_json,
    quantum_naive_cost,
    quantum_walk_cost,
    run_composed_dj_h,
    run_dj,
)
from qcompose.errors import (
    BadDimension,
    BadParameter,
    InvalidProfile,
    ParseError,
    PromiseViolation,
)
from qcompose.promise import ComposedInstance, HInput, structured_counterexample

UNIFORM_1_100 = CostProfile(
    Q=2, subroutine_times=(1.0, 100.0), L=0.0,
    weights=((0.5, 0.5), (0.5, 0.5)))


def random_profile(rng):
    q = int(rng.integers(1, 6))
    n = int(rng.integers(1, 6))
    times = rng.uniform(0.0, 50.0, size=n)
    raw = rng.uniform(0.01, 1.0, size=(q, n))
    weights = raw / raw.sum(axis=1, keepdims=True)
    return CostProfile(
        Q=q,
        subroutine_times=tuple(float(t) for t in times),
        L=float(rng.uniform(0.0, 10.0)),
        weights=tuple(tuple(float(x) for x in row) for row in weights))


class TestCostProfile:
    def test_example_costs(self):
        assert classical_avg_cost(UNIFORM_1_100) == 101.0
        assert quantum_naive_cost(UNIFORM_1_100) == 200.0
        assert quantum_walk_cost(UNIFORM_1_100) == 101.0

    @pytest.mark.parametrize("kwargs", [
        dict(Q=0, subroutine_times=(1.0,), L=0.0, weights=()),
        dict(Q="2", subroutine_times=(1.0,), L=0.0, weights=((1.0,), (1.0,))),
        dict(Q=1, subroutine_times=(), L=0.0, weights=((),)),
        dict(Q=1, subroutine_times=(-1.0,), L=0.0, weights=((1.0,),)),
        dict(Q=1, subroutine_times=(1.0,), L=-2.0, weights=((1.0,),)),
        dict(Q=2, subroutine_times=(1.0,), L=0.0, weights=((1.0,),)),
        dict(Q=1, subroutine_times=(1.0, 2.0), L=0.0, weights=((1.0,),)),
        dict(Q=1, subroutine_times=(1.0,), L=0.0, weights=((0.5,),)),
        dict(Q=1, subroutine_times=(1.0,), L=0.0, weights=((-0.2, 1.2),)),
        dict(Q=1, subroutine_times=("x",), L=0.0, weights=((1.0,),)),
    ])
    def test_invalid_profiles(self, kwargs):
        with pytest.raises(InvalidProfile):
            CostProfile(**kwargs)

    def test_walk_equals_classical_exactly(self, rng):
        for _ in range(200):
            prof = random_profile(rng)
            assert quantum_walk_cost(prof) == classical_avg_cost(prof)
            assert quantum_naive_cost(prof) >= quantum_walk_cost(prof)

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_naive_dominates(self, seed):
        prof = random_profile(np.random.default_rng(seed))
        assert quantum_naive_cost(prof) >= quantum_walk_cost(prof)


class TestProfileJson:
    def test_round_trip(self, rng):
        prof = random_profile(rng)
        assert profile_from_json(profile_to_json(prof)) == prof

    @pytest.mark.parametrize("text", [
        "nope{",
        "[1, 2]",
        '{"Q": 1}',
        '{"Q": 1, "subroutine_times": 3, "L": 0, "weights": []}',
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            profile_from_json(text)

    def test_semantic_errors_stay_typed(self):
        text = json.dumps({"Q": 1, "subroutine_times": [1.0], "L": 0.0,
                           "weights": [[0.5]]})
        with pytest.raises(InvalidProfile):
            profile_from_json(text)


class TestRunDj:
    @pytest.mark.parametrize("m", [2, 4, 8, 16])
    def test_constant_accepts(self, m):
        assert run_dj("0" * m) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("bits", ["01", "0101", "1100", "00001111"])
    def test_balanced_rejects(self, bits):
        assert run_dj(bits) <= 1e-12

    def test_rejects_non_power_of_two(self):
        with pytest.raises(BadDimension):
            run_dj("000000")  # valid promise input, unusable arity


class TestComposedRun:
    def test_stop_one_frozen_values(self):
        res = run_composed_dj_h(structured_counterexample(4), 1)
        # exit probabilities (3/4, 1, 1/2, 3/4) with signs (-,+,-,+)
        expect_amp = (1 - math.sqrt(0.5)) / 4
        assert res.accept_amplitude == pytest.approx(expect_amp, abs=1e-12)
        assert res.accept_probability == pytest.approx(expect_amp ** 2,
                                                       abs=1e-12)
        assert res.exited_mass == 0.75

    def test_stop_two_frozen_values(self):
        res = run_composed_dj_h(structured_counterexample(4), 2)
        assert res.accept_amplitude == pytest.approx(
            (1 - math.sqrt(5 / 6)) / 4, abs=1e-12)

    def test_full_run_cancels(self):
        res = run_composed_dj_h(structured_counterexample(4), FULL)
        assert res.accept_probability == 0.0
        assert res.exited_mass == 1.0

    def test_amplitude_decreases_to_zero(self):
        inst = structured_counterexample(8)
        amps = [abs(run_composed_dj_h(inst, t).accept_amplitude)
                for t in range(1, 6)]
        assert all(a >= b - 1e-15 for a, b in zip(amps, amps[1:]))
        assert amps[-1] <= 1e-12

    def test_exited_mass_monotone(self):
        inst = structured_counterexample(12)
        masses = [run_composed_dj_h(inst, t).exited_mass for t in range(1, 8)]
        assert masses == sorted(masses)

    def test_rejects_bad_stop_time(self):
        inst = structured_counterexample(4)
        with pytest.raises(BadParameter):
            run_composed_dj_h(inst, 0)
        with pytest.raises(BadParameter):
            run_composed_dj_h(inst, 1.5)

    def test_rejects_non_power_of_two_arity(self):
        one = HInput("0000", "1111")
        zero = HInput("1111", "0000")
        inst = ComposedInstance((one, zero, one, zero, one, zero))
        with pytest.raises(BadDimension):
            run_composed_dj_h(inst, FULL)

    def test_all_ones_blocks_are_not_a_valid_instance(self):
        # the induced outer string 1111 falls outside the outer promise
        block = HInput("0000", "1111")
        with pytest.raises(PromiseViolation):
            ComposedInstance((block,) * 4)

    def test_global_sign_flip_squares_away(self):
        # if every branch carried sign -1 the accept probability would still
        # be 1: check the equivalent state-level identity directly
        from qcompose.states import (
            apply_phase_oracle, basis_probability, basis_state,
            hadamard_transform)
        state = hadamard_transform(basis_state(4, 0))
        state = hadamard_transform(apply_phase_oracle(state, "1111"))
        assert basis_probability(state, 0) == pytest.approx(1.0, abs=1e-12)

    def test_full_matches_outer_run_on_random_instances(self, rng):
        def random_block(m, value):
            weight = int(rng.integers((m + 1) // 2, m + 1))
            ones = set(int(j) for j in rng.permutation(m)[:weight])
            bits = "".join("1" if j in ones else "0" for j in range(m))
            zero = "0" * m
            return HInput(zero, bits) if value else HInput(bits, zero)

        patterns = ["0000"] + [
            "".join("1" if j in ones else "0" for j in range(4))
            for ones in itertools.combinations(range(4), 2)]
        for trial in range(100):
            pattern = patterns[trial % len(patterns)]
            m = int(rng.integers(4, 9))
            inst = ComposedInstance(
                tuple(random_block(m, int(b)) for b in pattern))
            assert inst.induced_bits == pattern
            full = run_composed_dj_h(inst, FULL)
            assert full.accept_probability == pytest.approx(
                run_dj(pattern), abs=1e-12)


class TestMajorityVsPurifier:
    def test_rows_sorted_by_delta_descending(self):
        rows = majority_vs_purifier_table(
            Fraction(1, 3), [Fraction(1, 2 ** 10), Fraction(1, 8)])
        assert [r["delta"] for r in rows] == [0.125, 2.0 ** -10]

    def test_majority_grows_purifier_does_not(self):
        deltas = [Fraction(1, 2 ** e) for e in (5, 10, 20, 40)]
        rows = majority_vs_purifier_table(Fraction(1, 3), deltas)
        ks = [r["majority_k"] for r in rows]
        assert ks == sorted(ks) and len(set(ks)) == len(ks)
        assert all(r["purifier_overhead"] <= 2.0 for r in rows)
        assert all(r["majority_error"] <= r["delta"] for r in rows)
        assert all(r["perturbation"] <= r["delta"] for r in rows)

    def test_frozen_repetition_counts(self):
        deltas = [Fraction(1, 2 ** e) for e in (5, 10, 20, 40)]
        rows = majority_vs_purifier_table(Fraction(1, 3), deltas)
        assert [r["majority_k"] for r in rows] == [29, 81, 193, 423]
        assert [r["purifier_D"] for r in rows] == [5, 10, 20, 40]

    def test_rejects_bad_inputs(self):
        with pytest.raises(BadParameter):
            majority_vs_purifier_table(0.7, [0.1])
        with pytest.raises(BadParameter):
            majority_vs_purifier_table(1 / 3, [])
        with pytest.raises(BadParameter):
            majority_vs_purifier_table(1 / 3, [0.6])
