"""
Entropy functionals: the generic nonextensive entropy S_{q,phi}, Shannon,
Tsallis (normalized and denormalized), Renyi, phi-entropies, and the joint,
conditional and mutual Tsallis entropies of a JointDistribution.

Constant k is fixed to 1 and all logarithms are natural (nats).
"""
import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np
from scipy.special import logsumexp, xlogy

from errors import DomainError, InvalidPhiError
from logging_config import get_logger
from measures import (JointDistribution, ProbabilityLike, ProbabilityVector,
                      UnnormalizedMeasure, as_probability, product)
from qmath import QLike, as_q, power_sum, q_expectation

logger = get_logger(__name__)


@dataclass(frozen=True)
class PhiFunction:
    """
    The phi(q) normalizer of S_{q,phi}.

    Validity is checked pointwise: phi(1) = 0 at construction and
    sign(phi(q)) = sign(q - 1) at every evaluated q. Differentiability and
    phi'(1) = 1 are expected of callers but not checked.
    """
    func: Callable[[float], float]
    name: str = "phi"

    def __post_init__(self):
        at_one = float(self.func(1.0))
        if abs(at_one) > 1e-12:
            raise InvalidPhiError(f"{self.name}: phi(1) must be 0, got {at_one!r}")

    def __call__(self, q: QLike) -> float:
        qp = as_q(q)
        value = float(self.func(qp.q))
        if np.sign(value) != np.sign(qp.q - 1.0):
            raise InvalidPhiError(
                f"{self.name}: phi({qp.q:g}) = {value!r} must have the sign of q - 1")
        return value


def _tsallis_phi(q: float) -> float:
    return q - 1.0


def _daroczy_phi(q: float) -> float:
    return (1.0 - 2.0 ** (1.0 - q)) / math.log(2.0)


TSALLIS_PHI = PhiFunction(_tsallis_phi, "tsallis")
DAROCZY_PHI = PhiFunction(_daroczy_phi, "daroczy")


def _measure_entries(x: Union[ProbabilityVector, UnnormalizedMeasure, np.ndarray]) -> np.ndarray:
    if isinstance(x, (ProbabilityVector, UnnormalizedMeasure)):
        return x.entries
    array = np.asarray(x, dtype=float).ravel()
    if np.any(~np.isfinite(array)) or np.any(array < 0.0):
        raise DomainError("measure entries must be finite and nonnegative")
    return array


def tsallis_terms(y: np.ndarray, q: QLike) -> np.ndarray:
    """
    Per-entry phi_q(y) = (y - y^q)/(q - 1), or -y ln y at q = 1, with phi_q(0) = 0.
    """
    qp = as_q(q)
    if qp.is_one:
        return -xlogy(y, y)
    terms = np.zeros_like(y)
    positive = y > 0.0
    yp = y[positive]
    # y - y^q = -y * expm1((q-1) ln y), stable as q -> 1
    terms[positive] = -yp * np.expm1((qp.q - 1.0) * np.log(yp)) / (qp.q - 1.0)
    return terms


def shannon_entropy(p: ProbabilityLike) -> float:
    """H(p) = -sum p_i ln p_i in nats, with 0 ln 0 = 0."""
    entries = as_probability(p).entries
    return float(-np.sum(xlogy(entries, entries)))


def nonextensive_entropy(p: ProbabilityLike, q: QLike, phi: PhiFunction = TSALLIS_PHI) -> float:
    """
    S_{q,phi}(p) = (1 - sum p_i^q) / phi(q); q = 1 returns the Shannon limit.

    Raises:
        InvalidPhiError: if phi(q) is zero or has the wrong sign at q != 1
    """
    p = as_probability(p)
    qp = as_q(q)
    if qp.is_one:
        return shannon_entropy(p)
    return (1.0 - power_sum(p, qp)) / phi(qp)


def tsallis_entropy(x: Union[ProbabilityVector, UnnormalizedMeasure, np.ndarray], q: QLike) -> float:
    """
    Tsallis entropy S_q = sum_i phi_q(x_i).

    Accepts simplex points and unnormalized measures; on the simplex this equals
    (1 - sum p_i^q)/(q - 1), and -sum p_i ln p_i at q = 1.
    """
    return float(np.sum(tsallis_terms(_measure_entries(x), q)))


def tsallis_entropy_rows(stack: np.ndarray, q: QLike) -> np.ndarray:
    """S_q along the last axis of a stack of nonnegative measures, e.g. (count, n) -> (count,)."""
    return tsallis_terms(np.asarray(stack, dtype=float), q).sum(axis=-1)


def renyi_entropy(p: ProbabilityLike, q: QLike) -> float:
    """
    Renyi entropy R_q(p) = ln(sum p_i^q) / (1 - q); Shannon at q = 1.

    Defined for every q >= 0 but concave only for q in [0, 1); callers relying
    on concavity (e.g. the Jensen-Renyi divergence) lose that guarantee for q > 1.
    """
    entries = as_probability(p).entries
    qp = as_q(q)
    if qp.is_one:
        return shannon_entropy(entries)
    positive = entries[entries > 0.0]
    log_power_sum = logsumexp(qp.q * np.log(positive))
    return float(log_power_sum / (1.0 - qp.q))


def phi_entropy(x, varphi: Callable[[float], float],
                domain: Tuple[float, float] = (0.0, 1.0)) -> float:
    """
    phi-entropy H_varphi(x) = -sum_i varphi(x_i) for a convex scalar varphi.

    Args:
        x: vector with entries in the closed interval `domain`
        varphi: scalar function, applied entrywise
        domain: interval [a, b] on which varphi is defined

    Raises:
        DomainError: if an entry falls outside `domain`
    """
    entries = np.asarray(x, dtype=float).ravel()
    low, high = domain
    if np.any(entries < low) or np.any(entries > high) or np.any(np.isnan(entries)):
        raise DomainError(f"phi_entropy: entries must lie in [{low:g}, {high:g}]")
    values = np.vectorize(varphi, otypes=[float])(entries)
    return float(-np.sum(values))


def shannon_varphi(y: float) -> float:
    """varphi(y) = y ln y; its phi-entropy is the Shannon entropy."""
    return float(xlogy(y, y))


def tsallis_varphi(q: QLike) -> Callable[[float], float]:
    """varphi(y) = (y^q - y)/(q - 1); its phi-entropy is the Tsallis entropy."""
    qp = as_q(q)

    def varphi(y: float) -> float:
        return float(-tsallis_terms(np.array([y], dtype=float), qp)[0])

    return varphi


def tsallis_joint_entropy(j: JointDistribution, q: QLike) -> float:
    """S_q(X, Y): the Tsallis entropy of the flattened joint table."""
    return tsallis_entropy(j.flat(), q)


def tsallis_conditional_entropy(j: JointDistribution, q: QLike) -> float:
    """S_q(X|Y) = sum_y pi_y^q S_q(X|y), the q-expectation of the row entropies."""
    row_entropies = [tsallis_entropy(row, q) for row in j.conditionals]
    return q_expectation(row_entropies, j.prior.entries, q)


def tsallis_mutual_entropy(j: JointDistribution, q: QLike) -> float:
    """I_q(X; Y) = S_q(X) - S_q(X|Y)."""
    return tsallis_entropy(j.marginal_x(), q) - tsallis_conditional_entropy(j, q)


def tsallis_mutual_entropy_alt(j: JointDistribution, q: QLike) -> float:
    """
    Alternative mutual entropy D_q(p_{X,Y} || p_X (x) p_Y); agrees with I_q only at q = 1.
    """
    # divergence imports this module through the functionals package
    from divergence import tsallis_relative_entropy

    independent = product(j.marginal_y(), j.marginal_x())
    return tsallis_relative_entropy(j.flat(), independent, q)
