"""
Tests for the scalar q-primitives: q-logarithm, power sums, q-expectation.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import ArgumentError, DomainError
from qmath import (LIMIT_THRESHOLD, QParameter, as_q, power_sum, q_expectation,
                   q_log, q_log_with_zero, q_power)

_positive = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False, allow_infinity=False)
_q = st.floats(min_value=0.0, max_value=3.0, allow_nan=False, allow_infinity=False)


class TestQParameter:

    def test_rejects_negative_and_nan(self):
        with pytest.raises(DomainError):
            QParameter(-0.1)
        with pytest.raises(DomainError):
            QParameter(float("nan"))
        with pytest.raises(DomainError):
            QParameter(math.inf)

    def test_limit_threshold_routes_to_one(self):
        assert QParameter(1.0 + LIMIT_THRESHOLD / 2).is_one
        assert not QParameter(1.0 + 1e-6).is_one

    def test_as_q_passes_instances_through(self):
        q = QParameter(2)
        assert as_q(q) is q
        assert as_q(2).q == 2.0
        assert str(as_q(0.5)) == "0.5"


class TestQLog:

    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 2.0, 3.5])
    def test_log_of_one_is_zero(self, q):
        assert q_log(1.0, q) == 0.0

    def test_natural_log_branch(self):
        assert q_log(math.e, 1) == pytest.approx(1.0, abs=1e-15)

    def test_q_zero_at_two(self):
        assert q_log(2.0, 0) == pytest.approx(1.0, abs=1e-15)

    def test_nonpositive_argument(self):
        with pytest.raises(DomainError):
            q_log(0.0, 0.5)
        with pytest.raises(DomainError):
            q_log(np.array([1.0, -2.0]), 2)

    def test_array_in_array_out(self):
        values = q_log(np.array([1.0, 2.0, 4.0]), 2.0)
        assert isinstance(values, np.ndarray)
        np.testing.assert_allclose(values, [0.0, 0.5, 0.75], atol=1e-15)

    @given(x=_positive, y=_positive, q=_q)
    def test_product_rule(self, x, y, q):
        """ln_q(xy) = ln_q(x) + x^(1-q) ln_q(y)."""
        first, second = q_log(x, q), x ** (1.0 - q) * q_log(y, q)
        # relative to the size of the terms, which may cancel
        scale = abs(first) + abs(second) + 1.0
        assert abs(q_log(x * y, q) - (first + second)) <= 1e-12 * scale

    @given(x=_positive, q=_q)
    def test_reciprocal_rule(self, x, q):
        """ln_q(1/x) = -x^(q-1) ln_q(x)."""
        assert q_log(1.0 / x, q) == pytest.approx(-x ** (q - 1.0) * q_log(x, q), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("x", [0.05, 0.3, 1.7, 42.0])
    def test_continuous_at_one(self, x):
        for q in (1.0 - 1e-6, 1.0 + 1e-6):
            assert abs(q_log(x, q) - math.log(x)) <= 1e-5


class TestQLogWithZero:

    def test_finite_limit_below_one(self):
        np.testing.assert_allclose(q_log_with_zero([0.0], 0.5), [-2.0])

    def test_infinite_at_and_above_one(self):
        assert q_log_with_zero([0.0], 1.0)[0] == -math.inf
        assert q_log_with_zero([0.0], 2.0)[0] == -math.inf

    def test_positive_entries_match_q_log(self):
        np.testing.assert_allclose(q_log_with_zero([0.0, 2.0], 0.0), [-1.0, 1.0])


class TestPowerSum:

    def test_examples(self):
        assert power_sum([0.5, 0.5], 2) == pytest.approx(0.5)
        assert power_sum([0.2, 0.3, 0.5], 1) == pytest.approx(1.0)
        assert power_sum([0.3, 0.0, 0.7], 0) == 2.0

    def test_zero_to_the_zero_is_zero(self):
        np.testing.assert_array_equal(q_power([0.0, 0.4], 0.0), [0.0, 1.0])

    def test_rejects_negative_entries(self):
        with pytest.raises(DomainError):
            power_sum([0.5, -0.1], 2)

    def test_nonincreasing_in_q(self):
        rng = np.random.default_rng(42)
        grid = np.linspace(0.0, 4.0, 41)
        for _ in range(200):
            p = rng.dirichlet(np.ones(int(rng.integers(2, 8))))
            sums = np.array([power_sum(p, q) for q in grid])
            assert np.all(np.diff(sums) <= 1e-12)


class TestQExpectation:

    def test_not_normalized_for_q_two(self):
        assert q_expectation([1, 1], [0.5, 0.5], 2) == pytest.approx(0.5)

    def test_ordinary_mean_at_one(self):
        values, weights = [2.0, -1.0, 5.0], [0.2, 0.3, 0.5]
        assert q_expectation(values, weights, 1) == pytest.approx(np.dot(values, weights))

    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 3.0])
    def test_degenerate_weights(self, q):
        assert q_expectation([3, 7], [1, 0], q) == 3.0

    def test_zero_weight_hides_infinite_value(self):
        assert q_expectation([1.0, math.inf], [1.0, 0.0], 2) == 1.0

    def test_length_mismatch(self):
        with pytest.raises(ArgumentError):
            q_expectation([1, 2, 3], [0.5, 0.5], 1)


@settings(max_examples=200)
@given(q=_q)
def test_q_power_of_one_is_one(q):
    assert q_power([1.0], q)[0] == 1.0
