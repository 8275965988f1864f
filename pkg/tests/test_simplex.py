import math

import numpy as np
import pytest

from catlab.simplex import (CapError, ProbVec, Seed, direct_sum, sort_desc,
                            tensor, tensor_power, trace_distance)

STATE_A = (0.65, 0.2, 0.15)
STATE_B = (0.5, 0.4, 0.1)


def pv(*entries):
    return ProbVec(np.array(entries, dtype=float))


class TestProbVec:
    def test_clamps_tiny_negatives(self):
        v = pv(1.0, -1e-13, 1e-13)
        assert v.entries[1] == 0.0

    def test_rejects_real_negatives(self):
        with pytest.raises(ValueError, match="negative"):
            pv(1.0, -1e-6)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError, match="sum"):
            pv(0.6, 0.6)

    def test_machine_sum_is_exactly_one(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            x = rng.exponential(size=7)
            v = ProbVec(x / x.sum())
            assert math.fsum(v.entries) == 1.0

    def test_immutable(self):
        v = pv(0.5, 0.5)
        with pytest.raises(ValueError):
            v.entries[0] = 1.0


class TestSeed:
    def test_reproducible(self):
        a = Seed(42, 7).rng().random(5)
        b = Seed(42, 7).rng().random(5)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = Seed(42, 0).rng().random(5)
        b = Seed(42, 1).rng().random(5)
        assert not np.array_equal(a, b)

    def test_child_deterministic(self):
        assert Seed(1, 2).child(3, 4) == Seed(1, 2).child(3, 4)
        assert Seed(1, 2).child(3) != Seed(1, 2).child(4)


class TestTensor:
    def test_identity_factor(self):
        out = tensor(pv(1.0), pv(0.3, 0.7))
        assert np.allclose(out.entries, [0.3, 0.7])

    def test_uniform_times_uniform(self):
        out = tensor(pv(0.5, 0.5), pv(0.5, 0.5))
        assert np.allclose(out.entries, [0.25] * 4)

    def test_square_of_skewed_state(self):
        out = tensor(pv(*STATE_A), pv(*STATE_A))
        assert out.dim == 9
        assert out.entries.max() == pytest.approx(0.4225, abs=1e-15)

    def test_cap(self):
        with pytest.raises(CapError):
            tensor(ProbVec.uniform(1000), ProbVec.uniform(1000), cap=10_000)

    def test_associative(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a, b, c = (ProbVec(x / x.sum()) for x in rng.exponential(size=(3, 4)))
            left = tensor(tensor(a, b), c)
            right = tensor(a, tensor(b, c))
            assert np.allclose(left.entries, right.entries, atol=1e-12)


class TestDirectSum:
    def test_single_block(self):
        out = direct_sum([(1.0, pv(0.3, 0.7))])
        assert np.allclose(out.entries, [0.3, 0.7])

    def test_two_point_masses(self):
        out = direct_sum([(0.5, pv(1.0)), (0.5, pv(1.0))])
        assert np.allclose(out.entries, [0.5, 0.5])

    def test_hand_concatenation(self):
        out = direct_sum([(0.5, pv(*STATE_B)), (0.5, pv(*STATE_A))])
        assert np.allclose(out.entries, [0.25, 0.2, 0.05, 0.325, 0.1, 0.075])

    def test_weight_sum_checked(self):
        with pytest.raises(ValueError, match="weights"):
            direct_sum([(0.7, pv(1.0)), (0.7, pv(1.0))])

    def test_sorted_sum_invariant_under_block_permutation(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            blocks = [(w, ProbVec(x / x.sum()))
                      for w, x in zip([0.2, 0.3, 0.5], rng.exponential(size=(3, 3)))]
            a = sort_desc(direct_sum(blocks))
            b = sort_desc(direct_sum([blocks[2], blocks[0], blocks[1]]))
            assert np.allclose(a.entries, b.entries, atol=1e-12)


class TestTraceDistance:
    def test_identical(self):
        assert trace_distance(pv(*STATE_A), pv(*STATE_A)) == 0.0

    def test_disjoint(self):
        assert trace_distance(pv(1.0, 0.0), pv(0.0, 1.0)) == 1.0

    def test_half_absolute_sum(self):
        a, b = pv(*STATE_A), pv(*STATE_B)
        expected = sum(abs(x - y) for x, y in zip(STATE_A, STATE_B)) / 2
        assert trace_distance(a, b) == pytest.approx(expected, abs=1e-15)
        assert expected == pytest.approx(0.2, abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            trace_distance(pv(1.0), pv(0.5, 0.5))

    def test_metric_properties(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a, b, c = (ProbVec(x / x.sum()) for x in rng.exponential(size=(3, 5)))
            assert trace_distance(a, b) == trace_distance(b, a)
            assert trace_distance(a, a) <= 1e-12
            assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12

    def test_invariant_under_common_tensor_factor(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            a, b = (ProbVec(x / x.sum()) for x in rng.exponential(size=(2, 4)))
            x = rng.exponential(size=3)
            c = ProbVec(x / x.sum())
            assert trace_distance(tensor(a, c), tensor(b, c)) == pytest.approx(
                trace_distance(a, b), abs=1e-12)


class TestSortDesc:
    def test_simple(self):
        assert np.array_equal(sort_desc(pv(0.1, 0.9)).entries, [0.9, 0.1])

    def test_uniform_unchanged(self):
        u = ProbVec.uniform(4)
        assert np.array_equal(sort_desc(u).entries, u.entries)

    def test_permutation_of_skewed_state(self):
        out = sort_desc(pv(0.2, 0.65, 0.15))
        assert np.array_equal(out.entries, np.array(STATE_A))

    def test_tensor_power_helper(self):
        out = tensor_power(pv(0.5, 0.5), 3)
        assert out.dim == 8
        assert np.allclose(out.entries, 1 / 8)
