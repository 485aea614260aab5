"""
Relative entropies and the Jensen-difference family built on them:
KLD, Tsallis and Renyi divergences, Jensen differences (JSD, JRD, JTD),
Jensen q-differences and the Jensen-Tsallis q-difference (JTqD) with its
closed forms at q = 0, 1, 2.
"""
import math
from typing import Sequence, Union

import numpy as np
from scipy.special import logsumexp, rel_entr

from check_report import CheckReport, ViolationTracker
from entropy import tsallis_entropy_rows
from errors import ArgumentError
from functionals import (EntropyFunctional, RenyiFunctional, ShannonFunctional,
                         TsallisFunctional)
from logging_config import get_logger
from measures import (ProbabilityLike, ProbabilityVector, UnnormalizedMeasure,
                      as_probability, mixture)
from qmath import QLike, as_q, q_expectation, q_log_with_zero, q_power

logger = get_logger(__name__)

# Zero test used by the Boolean difference on ingested (floating) data
BOOLEAN_ZERO_TOLERANCE = 1e-12

ArgumentLike = Union[ProbabilityLike, UnnormalizedMeasure]


def _pair(p: ProbabilityLike, r: ProbabilityLike):
    p = as_probability(p)
    r = as_probability(r)
    if p.n != r.n:
        raise ArgumentError(f"supports differ in size: {p.n} vs {r.n}")
    return p.entries, r.entries


def kld(p: ProbabilityLike, r: ProbabilityLike) -> float:
    """
    Kullback-Leibler divergence sum p_i ln(p_i/r_i); +inf when p_i > 0 = r_i.
    """
    p_entries, r_entries = _pair(p, r)
    return float(np.sum(rel_entr(p_entries, r_entries)))


def tsallis_relative_entropy(p: ProbabilityLike, r: ProbabilityLike, q: QLike) -> float:
    """
    Tsallis relative entropy D_q(p||r) = -sum_x p(x) ln_q(r(x)/p(x)).

    Terms with p(x) = 0 contribute 0. A zero r(x) under p(x) > 0 gives a finite
    term p(x)/(1-q) for q < 1 and +inf for q >= 1. q = 1 is the KLD.
    """
    p_entries, r_entries = _pair(p, r)
    qp = as_q(q)
    if qp.is_one:
        return kld(p_entries, r_entries)
    support = p_entries > 0.0
    ratios = r_entries[support] / p_entries[support]
    terms = -p_entries[support] * q_log_with_zero(ratios, qp)
    return float(np.sum(terms))


def renyi_divergence(p: ProbabilityLike, r: ProbabilityLike, q: QLike) -> float:
    """
    Renyi divergence ln(sum p_i^q r_i^(1-q)) / (q - 1); KLD at q = 1.

    Degenerate sums follow the limits: +inf when q > 1 and r vanishes on the
    support of p, or when q < 1 and the supports are disjoint.
    """
    p_entries, r_entries = _pair(p, r)
    qp = as_q(q)
    if qp.is_one:
        return kld(p_entries, r_entries)
    support = p_entries > 0.0
    p_s, r_s = p_entries[support], r_entries[support]
    if qp.q > 1.0 and np.any(r_s == 0.0):
        return math.inf
    both = r_s > 0.0
    if not np.any(both):
        return math.inf
    log_sum = logsumexp(qp.q * np.log(p_s[both]) + (1.0 - qp.q) * np.log(r_s[both]))
    return float(log_sum / (qp.q - 1.0))


def _mean_argument(weights: ProbabilityVector, args: Sequence[ArgumentLike]):
    """Weighted mean of the arguments: a simplex point unless some argument is unnormalized."""
    if any(isinstance(a, UnnormalizedMeasure) for a in args):
        stack = [np.asarray(a, dtype=float).ravel() for a in args]
        if len({row.size for row in stack}) != 1:
            raise ArgumentError("arguments have different support sizes")
        if len(stack) != weights.n:
            raise ArgumentError(f"{weights.n} weights given for {len(stack)} arguments")
        return UnnormalizedMeasure(weights.entries @ np.vstack(stack)), list(args)
    dists = [as_probability(a) for a in args]
    return mixture(weights, dists), dists


def jensen_q_difference(psi: EntropyFunctional, weights: ProbabilityLike,
                        args: Sequence[ArgumentLike], q: QLike) -> float:
    """
    Jensen q-difference T^pi_{q,Psi} = Psi(E[X]) - E_q[Psi(X)], with
    E_q[Psi(X)] = sum_j pi_j^q Psi(x_j).

    Accepts any functional; nonnegativity guarantees depend on Psi and q.
    """
    weights = as_probability(weights)
    mean, items = _mean_argument(weights, args)
    values = [psi(item) for item in items]
    return psi(mean) - q_expectation(values, weights.entries, q)


def jensen_difference(psi: EntropyFunctional, weights: ProbabilityLike,
                      args: Sequence[ArgumentLike]) -> float:
    """Jensen difference Psi(sum pi_j x_j) - sum pi_j Psi(x_j)."""
    return jensen_q_difference(psi, weights, args, 1.0)


def jsd(weights: ProbabilityLike, args: Sequence[ProbabilityLike]) -> float:
    """Jensen-Shannon divergence: the Jensen difference of the Shannon entropy."""
    return jensen_difference(ShannonFunctional(), weights, args)


def jrd(weights: ProbabilityLike, args: Sequence[ProbabilityLike], q: QLike) -> float:
    """
    Jensen-Renyi divergence; nonnegative for q in [0, 1) where R_q is concave.
    """
    qp = as_q(q)
    if qp.q >= 1.0:
        logger.debug(f"jrd at q={qp}: Renyi entropy not concave, value may be negative")
    return jensen_difference(RenyiFunctional(qp), weights, args)


def jtd(weights: ProbabilityLike, args: Sequence[ProbabilityLike], q: QLike) -> float:
    """Jensen-Tsallis divergence: the (ordinary) Jensen difference of S_q."""
    return jensen_difference(TsallisFunctional(q), weights, args)


def jtqd(weights: ProbabilityLike, args: Sequence[ProbabilityLike], q: QLike) -> float:
    """
    Jensen-Tsallis q-difference T^pi_q = S_q(sum pi_j p_j) - sum pi_j^q S_q(p_j).

    Equals the Tsallis mutual entropy I_q(X; Y) of the joint law with prior pi
    and rows p_j. Always finite; negative values are possible for q < 1.
    """
    qp = as_q(q)
    return jensen_q_difference(TsallisFunctional(qp), weights, args, qp)


def boolean_difference(p1: ProbabilityLike, p2: ProbabilityLike,
                       tolerance: float = 0.0) -> float:
    """
    T_0(p1, p2) = 1 - #{i : p1_i > tol and p2_i > tol}.

    Use tolerance=0 for constructed distributions and BOOLEAN_ZERO_TOLERANCE
    for ingested floating data.
    """
    a, b = _pair(p1, p2)
    shared = np.count_nonzero((a > tolerance) & (b > tolerance))
    return float(1 - shared)


def linear_difference(p1: ProbabilityLike, p2: ProbabilityLike) -> float:
    """T_2(p1, p2) = 1/2 - <p1, p2>/2."""
    a, b = _pair(p1, p2)
    return float(0.5 - 0.5 * np.dot(a, b))


def jsd2(p1: ProbabilityLike, p2: ProbabilityLike) -> float:
    """T_1(p1, p2): the two-distribution JSD with equal weights."""
    return jsd(ProbabilityVector.uniform(2), [p1, p2])


def js_distance(p1: ProbabilityLike, p2: ProbabilityLike) -> float:
    """Square root of the equal-weight JSD (a metric)."""
    return math.sqrt(max(jsd2(p1, p2), 0.0))


def jtqd2(p1: ProbabilityLike, p2: ProbabilityLike, q: QLike, fast_path: bool = True) -> float:
    """
    JTqD of two distributions with equal weights, T_q(p1, p2).

    With fast_path, q = 0, 1 and 2 use the Boolean difference, the JSD and the
    linear difference respectively.
    """
    qp = as_q(q)
    _pair(p1, p2)
    if fast_path:
        if qp.q == 0.0:
            return boolean_difference(p1, p2)
        if qp.is_one:
            return jsd2(p1, p2)
        if qp.q == 2.0:
            return linear_difference(p1, p2)
    return jtqd(ProbabilityVector.uniform(2), [p1, p2], qp)


def jtqd_rows(weights: np.ndarray, dists: np.ndarray, q: QLike) -> np.ndarray:
    """
    JTqD of many instances at once.

    Args:
        weights: (count, m) array, one weight vector per instance
        dists: (count, m, n) array, the m distributions of each instance
        q: entropic index

    Rows are taken as simplex points without further validation.
    """
    qp = as_q(q)
    weights = np.asarray(weights, dtype=float)
    dists = np.asarray(dists, dtype=float)
    if weights.ndim != 2 or dists.ndim != 3 or dists.shape[:2] != weights.shape:
        raise ArgumentError(
            f"need weights (count, m) and dists (count, m, n), got {weights.shape} and {dists.shape}")
    mixed = np.einsum("km,kmn->kn", weights, dists)
    expected = np.sum(q_power(weights, qp) * tsallis_entropy_rows(dists, qp), axis=1)
    return tsallis_entropy_rows(mixed, qp) - expected


def jtqd2_rows(p1: np.ndarray, p2: np.ndarray, q: QLike, fast_path: bool = True) -> np.ndarray:
    """
    Row-wise T_q(p1[k], p2[k]) with equal weights for (count, n) stacks of simplex points.

    With fast_path, q = 0 counts shared support points, q = 1 uses the
    KLD form (D(p1 || m) + D(p2 || m)) / 2 and q = 2 the linear difference.
    """
    qp = as_q(q)
    a = np.atleast_2d(np.asarray(p1, dtype=float))
    b = np.atleast_2d(np.asarray(p2, dtype=float))
    if a.shape != b.shape:
        raise ArgumentError(f"stacks differ in shape: {a.shape} vs {b.shape}")
    if fast_path:
        if qp.q == 0.0:
            return 1.0 - np.count_nonzero((a > 0.0) & (b > 0.0), axis=1)
        if qp.is_one:
            center = 0.5 * (a + b)
            return 0.5 * (rel_entr(a, center).sum(axis=1) + rel_entr(b, center).sum(axis=1))
        if qp.q == 2.0:
            return 0.5 - 0.5 * np.einsum("kn,kn->k", a, b)
    weights = np.full((a.shape[0], 2), 0.5)
    return jtqd_rows(weights, np.stack([a, b], axis=1), qp)


def js_distance_rows(p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """Row-wise square root of the equal-weight JSD."""
    return np.sqrt(np.maximum(jtqd2_rows(p1, p2, 1.0, fast_path=False), 0.0))


def expected_kld(weights: ProbabilityLike, args: Sequence[ProbabilityLike],
                 reference: ProbabilityLike) -> float:
    """E_pi[D(P || reference)]; zero-weight arguments are skipped."""
    weights = as_probability(weights)
    if len(args) != weights.n:
        raise ArgumentError(f"{weights.n} weights given for {len(args)} arguments")
    total = 0.0
    for weight, arg in zip(weights.entries, args):
        if weight > 0.0:
            total += weight * kld(arg, reference)
    return total


def bregman_minimizer_check(weights: ProbabilityLike, args: Sequence[ProbabilityLike],
                            candidates: Sequence[ProbabilityLike],
                            tolerance: float = 1e-12) -> CheckReport:
    """
    Check that the mixture E[P] minimizes E_pi[D(P || Q)] against every candidate Q.

    Violations are reported, never raised.
    """
    weights = as_probability(weights)
    center = mixture(weights, args)
    baseline = expected_kld(weights, args, center)
    tracker = ViolationTracker("bregman_minimizer", tolerance)
    for candidate in candidates:
        other = expected_kld(weights, args, candidate)
        tracker.observe(baseline - other, weights=weights, args=list(args),
                        candidate=candidate, minimum=baseline, value=other)
    return tracker.report()


def pairwise_weights(weights: ProbabilityLike, i: int, j: int) -> ProbabilityVector:
    """Weights of inputs i and j renormalized to a pair; uniform when both are zero."""
    weights = as_probability(weights)
    pair = np.array([weights.entries[i], weights.entries[j]])
    if pair.sum() <= 0.0:
        return ProbabilityVector.uniform(2)
    return ProbabilityVector(pair / pair.sum())

