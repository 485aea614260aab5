"""
Scalar nonextensive primitives: the q-logarithm, power sums and the q-expectation.

All functions take the entropic index either as a QParameter or as a plain
number; plain numbers are validated through as_q().
"""
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from errors import ArgumentError, DomainError

# |q - 1| below this routes to the exact q = 1 (logarithmic) branches
LIMIT_THRESHOLD = 1e-9


@dataclass(frozen=True)
class QParameter:
    """
    Validated entropic index q >= 0.
    """
    q: float

    def __post_init__(self):
        value = float(self.q)
        if not math.isfinite(value) or value < 0.0:
            raise DomainError(f"entropic index must be a finite q >= 0, got {self.q!r}")
        object.__setattr__(self, "q", value)

    @property
    def is_one(self) -> bool:
        """True when q is close enough to 1 to take the Shannon branch."""
        return abs(self.q - 1.0) < LIMIT_THRESHOLD

    def __float__(self) -> float:
        return self.q

    def __str__(self) -> str:
        return f"{self.q:g}"


QLike = Union[QParameter, float, int]


def as_q(q: QLike) -> QParameter:
    """Coerce a number into a QParameter (QParameter instances pass through)."""
    if isinstance(q, QParameter):
        return q
    return QParameter(q)


def _nonnegative(values, what: str = "measure") -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1:
        array = array.ravel()
    if np.any(np.isnan(array)) or np.any(array < 0.0):
        raise DomainError(f"{what} entries must be nonnegative")
    return array


def q_power(x, q: QLike) -> np.ndarray:
    """
    Elementwise x**q for nonnegative x with the convention 0**q := 0, q = 0 included.

    This is the power used for weights in q-expectations and for the power sums,
    so that q = 0 counts support points.
    """
    qp = as_q(q)
    array = np.asarray(x, dtype=float)
    result = np.zeros_like(array)
    positive = array > 0.0
    result[positive] = array[positive] ** qp.q
    return result


def q_log(x, q: QLike):
    """
    q-logarithm ln_q(x) = (x^(1-q) - 1) / (1 - q), natural log on the q = 1 branch.

    Args:
        x: positive real or array of positive reals
        q: entropic index

    Returns:
        float for scalar input, numpy array otherwise

    Raises:
        DomainError: if any x <= 0
    """
    qp = as_q(q)
    array = np.asarray(x, dtype=float)
    if np.any(~(array > 0.0)):
        raise DomainError("q_log is defined for x > 0 only")
    log_x = np.log(array)
    if qp.is_one:
        result = log_x
    else:
        one_minus_q = 1.0 - qp.q
        # expm1 keeps precision when (1-q)·ln x is small
        result = np.expm1(one_minus_q * log_x) / one_minus_q
    if np.ndim(result) == 0:
        return float(result)
    return result


def q_log_with_zero(x, q: QLike) -> np.ndarray:
    """
    q-logarithm extended to x = 0 by its limit: -1/(1-q) for q < 1, -inf for q >= 1.

    Only the Tsallis relative entropy relies on this extension.
    """
    qp = as_q(q)
    array = _nonnegative(x, "q_log argument")
    result = np.empty_like(array)
    zero = array == 0.0
    if np.any(~zero):
        result[~zero] = q_log(array[~zero], qp)
    if np.any(zero):
        if qp.q < 1.0 and not qp.is_one:
            result[zero] = -1.0 / (1.0 - qp.q)
        else:
            result[zero] = -np.inf
    return result


def power_sum(m, q: QLike) -> float:
    """
    Sum of m_i**q over a nonnegative vector, with 0**0 := 0.

    For a simplex point and q = 1 this is 1; for q = 0 it counts the nonzero entries.
    """
    entries = _nonnegative(m)
    return float(np.sum(q_power(entries, q)))


def q_expectation(values: Sequence[float], weights, q: QLike) -> float:
    """
    Unnormalized q-expectation E_q[X] = sum_x x * P(x)**q.

    For q = 1 this is the ordinary expectation; for q != 1, E_q[1] != 1 in general.

    Raises:
        ArgumentError: if values and weights differ in length
    """
    value_array = np.asarray(values, dtype=float).ravel()
    weight_array = _nonnegative(weights, "weight")
    if value_array.shape != weight_array.shape:
        raise ArgumentError(
            f"q_expectation needs equal lengths, got {value_array.size} values "
            f"and {weight_array.size} weights"
        )
    qp = as_q(q)
    powered = weight_array if qp.is_one else q_power(weight_array, qp)
    # zero-weight terms vanish even when the value is infinite
    mask = powered > 0.0
    return float(np.dot(value_array[mask], powered[mask]))
