"""
Numerical certification of the q-convexity results, the JTqD bounds and
convexity regimes, the Suyari axioms, the JSD identities and the minimizer
behaviour. Every check draws its inputs from a seeded SamplingPlan and
returns a CheckReport carrying the worst violation and a replayable witness.
"""
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from check_report import CheckReport, ViolationTracker
from divergence import (bregman_minimizer_check, expected_kld, js_distance, js_distance_rows,
                        jsd, jtqd, jtqd2, jtqd2_rows, jtqd_rows)
from entropy import (renyi_entropy, shannon_entropy, tsallis_conditional_entropy,
                     tsallis_entropy, tsallis_entropy_rows, tsallis_joint_entropy,
                     tsallis_mutual_entropy)
from errors import ArgumentError
from logging_config import get_logger
from measures import ProbabilityVector, joint_from_conditional, mixture, product
from minimizer import grid_minimize_binary, minimize_jtqd_first_arg
from qmath import QLike, as_q, q_power
from sampling import (SamplingPlan, draw_size, draw_sizes, sample_distributions,
                      sample_instance, sample_interior, sample_simplex, sample_simplex_batch)

logger = get_logger(__name__)

VectorFunction = Callable[[np.ndarray], float]

# Entropic indices in (1, 2) where the minimizer moves toward the vertex at argmax p2
VERTEX_SIDE_Q = (1.25, 1.5, 1.75)

# Step of the central second differences used by the per-argument convexity check
SECOND_DIFFERENCE_STEP = 1e-4

# Separate generator streams keep checks independent of the order they run in
_STREAMS = {
    "q_jensen": 1, "q_convexity_monotonicity": 2, "jtqd_bounds": 3,
    "joint_convexity": 4, "argument_convexity": 5, "suyari_axioms": 6,
    "fast_paths": 7, "mutual_entropy_identity": 8, "chain_rule": 9,
    "pseudoadditivity": 10, "q_limit_continuity": 11, "jsd_identity": 12,
    "bregman_minimizer": 13, "js_triangle": 14, "minimizer": 15,
}


def _lambda(rng: np.random.Generator, trial: int) -> float:
    """Mixing coefficient; every tenth trial hits an endpoint."""
    if trial % 10 == 0:
        return float((trial // 10) % 2)
    return float(rng.random())


def _lambdas(rng: np.random.Generator, trials: np.ndarray) -> np.ndarray:
    """_lambda for a vector of trial numbers."""
    lam = rng.random(trials.size)
    endpoints = trials % 10 == 0
    lam[endpoints] = (trials[endpoints] // 10) % 2
    return lam


def _grouped_trials(*labels: np.ndarray):
    """
    Yield (key, trial numbers) for every distinct combination of per-trial
    labels (e.g. sizes and q index), keys in sorted order.
    """
    table = np.column_stack(labels)
    keys, inverse = np.unique(table, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    for group, key in enumerate(keys):
        yield tuple(int(v) for v in key), np.flatnonzero(inverse == group)


def _instance_batch(rng: np.random.Generator, count: int, m: int, n: int,
                    boundary_fraction: float):
    """`count` instances of (pi, p_1..p_m) as (count, m) and (count, m, n) arrays."""
    weights = sample_simplex_batch(rng, count, m, boundary_fraction)
    dists = sample_simplex_batch(rng, count * m, n, boundary_fraction).reshape(count, m, n)
    return weights, dists


def _q_weighted_sum(weights: np.ndarray, values: Sequence[float], q: QLike) -> float:
    powered = q_power(weights, q)
    return float(sum(w * v for w, v in zip(powered, values) if w > 0.0))


def check_q_jensen(f: VectorFunction, q: QLike, plan: SamplingPlan,
                   tolerance: float = 1e-12, name: str = "q_jensen") -> CheckReport:
    """
    q-Jensen inequality f(sum pi_i x_i) <= sum pi_i^q f(x_i) for points on the simplex.

    Args:
        f: function of a simplex point (numpy vector)
        q: the q of the q-convexity being tested
        plan: sampling plan; m_range sizes pi, n_range sizes the points
    """
    qp = as_q(q)
    rng = plan.rng(_STREAMS["q_jensen"])
    tracker = ViolationTracker(f"{name}[q={qp}]", tolerance, plan.seed)
    for _ in range(plan.trials):
        m = draw_size(rng, plan.m_range)
        n = draw_size(rng, plan.n_range)
        weights = sample_simplex(rng, m, plan.boundary_fraction)
        points = [sample_simplex(rng, n, plan.boundary_fraction) for _ in range(m)]
        combined = weights @ np.vstack(points)
        lhs = f(combined)
        rhs = _q_weighted_sum(weights, [f(x) for x in points], qp)
        tracker.observe(lhs - rhs, weights=weights, points=points, q=qp.q)
    return tracker.report()


def check_q_convexity_monotonicity(f: VectorFunction, q: float, q_prime: float,
                                   plan: SamplingPlan, tolerance: float = 1e-12) -> CheckReport:
    """
    Two-point form of: for f >= 0 and q >= q' >= 0, q-convexity of f implies
    q'-convexity, and q'-convexity of -f implies q-convexity of -f.

    Each implication is tested on the samples where its premise holds.
    A negative value of f ends the check with a failed precondition report.
    """
    if not q >= q_prime >= 0.0:
        raise ArgumentError(f"need q >= q' >= 0, got q={q}, q'={q_prime}")
    rng = plan.rng(_STREAMS["q_convexity_monotonicity"])
    tracker = ViolationTracker(f"q_convexity_monotonicity[q={q:g},q'={q_prime:g}]",
                               tolerance, plan.seed)
    skipped = 0
    for trial in range(plan.trials):
        n = draw_size(rng, plan.n_range)
        x = sample_simplex(rng, n, plan.boundary_fraction)
        y = sample_simplex(rng, n, plan.boundary_fraction)
        lam = _lambda(rng, trial)
        fx, fy = f(x), f(y)
        f_mix = f(lam * x + (1.0 - lam) * y)
        if min(fx, fy, f_mix) < 0.0:
            tracker.observe(math.inf, x=x, y=y, lam=lam)
            tracker.note("precondition violated: f < 0 on the sampled domain")
            return tracker.report()
        weights = np.array([lam, 1.0 - lam])
        l_q = q_power(weights, q)
        l_qp = q_power(weights, q_prime)
        tested = False
        # f q-convex here  =>  f q'-convex here
        if f_mix <= l_q[0] * fx + l_q[1] * fy + tolerance:
            tracker.observe(f_mix - (l_qp[0] * fx + l_qp[1] * fy),
                            implication="f", x=x, y=y, lam=lam)
            tested = True
        # -f q'-convex here  =>  -f q-convex here
        if -f_mix <= -(l_qp[0] * fx + l_qp[1] * fy) + tolerance:
            tracker.observe(-f_mix + (l_q[0] * fx + l_q[1] * fy),
                            implication="-f", x=x, y=y, lam=lam)
            tested = True
        if not tested:
            skipped += 1
    if skipped:
        tracker.note(f"{skipped} samples satisfied neither premise")
    return tracker.report()


def check_jtqd_bounds(plan: SamplingPlan, tolerance: float = 1e-12) -> CheckReport:
    """
    JTqD bounds: T <= S_q(pi) for all q, T >= 0 for q >= 1 and
    T >= S_q(pi)(1 - n^(1-q)) for q in [0, 1], plus the equality cases at
    disjoint degenerate, identical degenerate and all-uniform arguments.

    Trial t uses q = q_grid[t mod len(q_grid)]. Trials sharing (q, m, n) are
    evaluated as one batch; the scalar jtqd is cross-checked on the first
    instance of every batch.
    """
    rng = plan.rng(_STREAMS["jtqd_bounds"])
    tracker = ViolationTracker("jtqd_bounds", tolerance, plan.seed)
    grid = plan.q_grid
    trials = np.arange(plan.trials)
    sizes_m = draw_sizes(rng, plan.m_range, plan.trials)
    sizes_n = draw_sizes(rng, plan.n_range, plan.trials)
    for (q_index, m, n), members in _grouped_trials(trials % len(grid), sizes_m, sizes_n):
        q = grid[q_index]
        weights, dists = _instance_batch(rng, members.size, m, n, plan.boundary_fraction)
        value = jtqd_rows(weights, dists, q)
        s_pi = tsallis_entropy_rows(weights, q)

        def witness(k: int, bound: str) -> Dict[str, object]:
            return dict(bound=bound, q=q, weights=weights[k], dists=dists[k], value=value[k])

        upper = value - s_pi
        upper[0] = max(upper[0], abs(jtqd(weights[0], list(dists[0]), q) - value[0]))
        tracker.observe_batch(upper, lambda k: witness(k, "upper"))
        if q >= 1.0:
            tracker.observe_batch(-value, lambda k: witness(k, "nonnegative"))
        if q <= 1.0:
            tracker.observe_batch(s_pi * (1.0 - n ** (1.0 - q)) - value,
                                  lambda k: witness(k, "lower"))

    for q in grid:
        for m, n in ((1, 1), (2, 2), (2, 3), (3, 3), (3, 5)):
            weights = ProbabilityVector(sample_simplex(rng, m, 0.0))
            s_pi = tsallis_entropy(weights, q)
            disjoint = [ProbabilityVector.degenerate(n, t) for t in range(m)]
            tracker.observe(abs(jtqd(weights, disjoint, q) - s_pi),
                            equality="disjoint_degenerate", q=q, weights=weights, n=n)
            if q >= 1.0:
                identical = [ProbabilityVector.degenerate(n, 0)] * m
                tracker.observe(abs(jtqd(weights, identical, q)),
                                equality="identical_degenerate", q=q, weights=weights, n=n)
            if q <= 1.0:
                uniform = [ProbabilityVector.uniform(n)] * m
                tracker.observe(abs(jtqd(weights, uniform, q) - s_pi * (1.0 - n ** (1.0 - q))),
                                equality="all_uniform", q=q, weights=weights, n=n)
    return tracker.report()


def check_joint_convexity(q: QLike, plan: SamplingPlan, tolerance: float = 1e-12) -> CheckReport:
    """
    Joint convexity of the JTqD for q in [0, 1]:
    T(lam a + (1-lam) b) <= lam T(a) + (1-lam) T(b) for argument lists a, b.
    """
    qp = as_q(q)
    if qp.q > 1.0:
        raise ArgumentError(f"joint convexity is only claimed for q in [0, 1], got {qp}")
    rng = plan.rng(_STREAMS["joint_convexity"])
    tracker = ViolationTracker(f"joint_convexity[q={qp}]", tolerance, plan.seed)
    sizes_m = draw_sizes(rng, plan.m_range, plan.trials)
    sizes_n = draw_sizes(rng, plan.n_range, plan.trials)
    for (m, n), members in _grouped_trials(sizes_m, sizes_n):
        weights, a = _instance_batch(rng, members.size, m, n, plan.boundary_fraction)
        b = sample_simplex_batch(rng, members.size * m, n, plan.boundary_fraction).reshape(a.shape)
        lam = _lambdas(rng, members)
        mixed = lam[:, np.newaxis, np.newaxis] * a + (1.0 - lam)[:, np.newaxis, np.newaxis] * b
        lhs = jtqd_rows(weights, mixed, qp)
        rhs = lam * jtqd_rows(weights, a, qp) + (1.0 - lam) * jtqd_rows(weights, b, qp)
        tracker.observe_batch(lhs - rhs, lambda k: dict(weights=weights[k], a=a[k], b=b[k],
                                                        lam=lam[k]))
    return tracker.report()


def check_argument_convexity(q: QLike, plan: SamplingPlan,
                             step: float = SECOND_DIFFERENCE_STEP,
                             tolerance: float = 1e-10) -> CheckReport:
    """
    Per-argument shape of the JTqD: convex in each argument for q <= 2,
    concave for q >= 2, affine (both) at q = 2.

    Uses unscaled central second differences T(p + h d) - 2 T(p) + T(p - h d)
    along d = e_i - e_j at interior points.
    """
    qp = as_q(q)
    rng = plan.rng(_STREAMS["argument_convexity"])
    tracker = ViolationTracker(f"argument_convexity[q={qp}]", tolerance, plan.seed)
    low_n = max(2, plan.n_range[0])
    for _ in range(plan.trials):
        m = draw_size(rng, plan.m_range)
        n = draw_size(rng, (low_n, max(low_n, plan.n_range[1])))
        weights = ProbabilityVector(sample_interior(rng, m))
        args = [sample_interior(rng, n) for _ in range(m)]
        k = int(rng.integers(m))
        i, j = rng.choice(n, size=2, replace=False)
        direction = np.zeros(n)
        direction[i], direction[j] = 1.0, -1.0

        def value(shift: float) -> float:
            moved = list(args)
            moved[k] = args[k] + shift * direction
            return jtqd(weights, [ProbabilityVector(p) for p in moved], qp)

        second = value(step) - 2.0 * value(0.0) + value(-step)
        if qp.q == 2.0:
            violation = abs(second)
        elif qp.q < 2.0:
            violation = -second
        else:
            violation = second
        tracker.observe(violation, weights=weights, args=args, argument=k,
                        direction=direction, second_difference=second)
    return tracker.report()


def check_suyari_axioms(q: QLike, plan: SamplingPlan, tolerance: float = 1e-10) -> CheckReport:
    """
    Suyari axioms for the Tsallis entropy at fixed q:
    A1 continuity (perturbation differences shrink to 0), A2 maximality at the
    uniform distribution, A3 generalized additivity over two-level partitions,
    A4 expandability (for Shannon and Renyi as well).
    """
    qp = as_q(q)
    rng = plan.rng(_STREAMS["suyari_axioms"])
    tracker = ViolationTracker(f"suyari_axioms[q={qp}]", tolerance, plan.seed)
    for _ in range(plan.trials):
        n = draw_size(rng, plan.n_range)

        # A1: multiplicative perturbations of an interior point
        p = sample_interior(rng, n)
        s_p = tsallis_entropy(p, qp)
        noise = rng.uniform(-1.0, 1.0, size=n)
        gaps = []
        for eps in (1e-2, 1e-4, 1e-6, 1e-8):
            moved = p * (1.0 + eps * noise)
            gaps.append(abs(tsallis_entropy(moved / moved.sum(), qp) - s_p))
        growth = max(later - earlier for earlier, later in zip(gaps, gaps[1:]))
        tracker.observe(max(growth, gaps[-1] - 1e-6), axiom="A1", p=p, noise=noise, gaps=gaps)

        # A2
        p = ProbabilityVector(sample_simplex(rng, n, plan.boundary_fraction))
        tracker.observe(tsallis_entropy(p, qp) - tsallis_entropy(ProbabilityVector.uniform(n), qp),
                        axiom="A2", p=p)

        # A3: blocks of sizes drawn from m_range
        sizes = [draw_size(rng, plan.m_range) for _ in range(n)]
        refined = sample_simplex(rng, sum(sizes), plan.boundary_fraction)
        bounds = np.cumsum([0] + sizes)
        blocks = [refined[bounds[i]:bounds[i + 1]] for i in range(n)]
        coarse = np.array([block.sum() for block in blocks])
        within = [tsallis_entropy(block / block.sum(), qp) if block.sum() > 0.0 else 0.0
                  for block in blocks]
        rhs = tsallis_entropy(coarse, qp) + _q_weighted_sum(coarse, within, qp)
        tracker.observe(abs(tsallis_entropy(refined, qp) - rhs), axiom="A3",
                        refined=refined, sizes=sizes)

        # A4
        expanded = ProbabilityVector(np.append(p.entries, 0.0))
        gap = max(abs(tsallis_entropy(expanded, qp) - tsallis_entropy(p, qp)),
                  abs(shannon_entropy(expanded) - shannon_entropy(p)),
                  abs(renyi_entropy(expanded, qp) - renyi_entropy(p, qp)))
        tracker.observe(gap, axiom="A4", p=p)
    return tracker.report()


def check_fast_paths(plan: SamplingPlan, tolerance: float = 1e-12) -> CheckReport:
    """
    Closed forms at q = 0, 1, 2 agree with the generic two-argument JTqD.

    Trial t uses q = (0, 1, 2)[t mod 3]. The row-wise forms are compared on
    every pair; jtqd2 itself is compared on the first pair of each batch.
    """
    rng = plan.rng(_STREAMS["fast_paths"])
    tracker = ViolationTracker("fast_paths", tolerance, plan.seed)
    q_values = (0.0, 1.0, 2.0)
    sizes = draw_sizes(rng, plan.n_range, plan.trials)
    for (q_index, n), members in _grouped_trials(np.arange(plan.trials) % 3, sizes):
        q = q_values[q_index]
        p1 = sample_simplex_batch(rng, members.size, n, plan.boundary_fraction)
        p2 = sample_simplex_batch(rng, members.size, n, plan.boundary_fraction)
        generic = jtqd2_rows(p1, p2, q, fast_path=False)
        gaps = np.abs(jtqd2_rows(p1, p2, q) - generic)
        gaps[0] = max(gaps[0], abs(jtqd2(p1[0], p2[0], q) - generic[0]))
        tracker.observe_batch(gaps, lambda k: dict(q=q, p1=p1[k], p2=p2[k]))
    return tracker.report()


def check_mutual_entropy_identity(plan: SamplingPlan, tolerance: float = 1e-10) -> CheckReport:
    """
    JTqD(pi, rows) equals S_q(X) - S_q(X|Y) of the induced joint law.

    Every sampled joint is checked at q = 0, 0.25, ..., 3.
    """
    rng = plan.rng(_STREAMS["mutual_entropy_identity"])
    tracker = ViolationTracker("mutual_entropy_identity", tolerance, plan.seed)
    q_values = np.arange(0.0, 3.0 + 1e-9, 0.25)
    for _ in range(plan.trials):
        weights, rows = sample_instance(rng, plan)
        joint = joint_from_conditional(weights, rows)
        for q in q_values:
            q = float(q)
            tracker.observe(abs(jtqd(weights, rows, q) - tsallis_mutual_entropy(joint, q)),
                            q=q, joint=joint)
    return tracker.report()


def check_chain_rule(plan: SamplingPlan, tolerance: float = 1e-10) -> CheckReport:
    """S_q(X, Y) = S_q(Y) + S_q(X|Y) = S_q(X) + S_q(Y|X)."""
    rng = plan.rng(_STREAMS["chain_rule"])
    tracker = ViolationTracker("chain_rule", tolerance, plan.seed)
    for trial in range(plan.trials):
        q = plan.q_grid[trial % len(plan.q_grid)]
        weights, rows = sample_instance(rng, plan)
        joint = joint_from_conditional(weights, rows)
        swapped = joint.swapped()
        total = tsallis_joint_entropy(joint, q)
        via_y = tsallis_entropy(joint.marginal_y(), q) + tsallis_conditional_entropy(joint, q)
        via_x = tsallis_entropy(joint.marginal_x(), q) + tsallis_conditional_entropy(swapped, q)
        tracker.observe(max(abs(total - via_y), abs(total - via_x)), q=q, joint=joint)
    return tracker.report()


def check_pseudoadditivity(plan: SamplingPlan, tolerance: float = 1e-10) -> CheckReport:
    """S_q(p (x) r) = S_q(p) + S_q(r) + (1 - q) S_q(p) S_q(r)."""
    rng = plan.rng(_STREAMS["pseudoadditivity"])
    tracker = ViolationTracker("pseudoadditivity", tolerance, plan.seed)
    for trial in range(plan.trials):
        q = plan.q_grid[trial % len(plan.q_grid)]
        p = ProbabilityVector(sample_simplex(rng, draw_size(rng, plan.n_range), plan.boundary_fraction))
        r = ProbabilityVector(sample_simplex(rng, draw_size(rng, plan.n_range), plan.boundary_fraction))
        s_p, s_r = tsallis_entropy(p, q), tsallis_entropy(r, q)
        expected = s_p + s_r + (1.0 - q) * s_p * s_r
        tracker.observe(abs(tsallis_entropy(product(p, r), q) - expected), q=q, p=p, r=r)
    return tracker.report()


def check_q_limit_continuity(plan: SamplingPlan, offset: float = 1e-6,
                             bound: float = 1e-5) -> CheckReport:
    """|S_{1 +- offset}(p) - H(p)| <= bound; reported as the excess over the bound."""
    rng = plan.rng(_STREAMS["q_limit_continuity"])
    tracker = ViolationTracker("q_limit_continuity", 0.0, plan.seed)
    for _ in range(plan.trials):
        p = ProbabilityVector(sample_simplex(rng, draw_size(rng, plan.n_range), plan.boundary_fraction))
        h = shannon_entropy(p)
        gap = max(abs(tsallis_entropy(p, 1.0 + offset) - h),
                  abs(tsallis_entropy(p, 1.0 - offset) - h))
        tracker.observe(gap - bound, p=p, gap=gap)
    return tracker.report()


def check_jsd_identity(plan: SamplingPlan, tolerance: float = 1e-12) -> CheckReport:
    """The JSD equals the expected KLD to the mixture, E_pi[D(P || E[P])]."""
    rng = plan.rng(_STREAMS["jsd_identity"])
    tracker = ViolationTracker("jsd_identity", tolerance, plan.seed)
    for _ in range(plan.trials):
        weights, dists = sample_instance(rng, plan)
        center = mixture(weights, dists)
        tracker.observe(abs(jsd(weights, dists) - expected_kld(weights, dists, center)),
                        weights=weights, dists=dists)
    return tracker.report()


def check_bregman_minimizer(plan: SamplingPlan, candidates_per_instance: int = 100,
                            tolerance: float = 1e-12) -> CheckReport:
    """
    The mixture minimizes the expected KLD: one instance per ten trials, each
    against `candidates_per_instance` random candidates plus the mixture itself.
    """
    rng = plan.rng(_STREAMS["bregman_minimizer"])
    tracker = ViolationTracker("bregman_minimizer", tolerance, plan.seed)
    for _ in range(max(1, plan.trials // 10)):
        weights, dists = sample_instance(rng, plan)
        n = dists[0].n
        candidates = [mixture(weights, dists)]
        candidates += sample_distributions(rng, candidates_per_instance, n, plan.boundary_fraction)
        report = bregman_minimizer_check(weights, dists, candidates, tolerance)
        tracker.samples += report.samples - 1
        tracker.observe(report.worst_violation, **report.witness)
    return tracker.report()


def check_js_triangle(plan: SamplingPlan, tolerance: float = 1e-12) -> CheckReport:
    """sqrt(JS) satisfies the triangle inequality on random triples."""
    rng = plan.rng(_STREAMS["js_triangle"])
    tracker = ViolationTracker("js_triangle", tolerance, plan.seed)
    sizes = draw_sizes(rng, plan.n_range, plan.trials)
    for (n,), members in _grouped_trials(sizes):
        a, b, c = (sample_simplex_batch(rng, members.size, n, plan.boundary_fraction)
                   for _ in range(3))
        excess = js_distance_rows(a, c) - js_distance_rows(a, b) - js_distance_rows(b, c)
        # compared squared: sqrt amplifies rounding near 0
        scalar_gap = abs(js_distance(a[0], c[0]) ** 2 - js_distance_rows(a[:1], c[:1])[0] ** 2)
        excess[0] = max(excess[0], scalar_gap)
        tracker.observe_batch(excess, lambda k: dict(a=a[k], b=b[k], c=c[k]))
    return tracker.report()


def _total_variation(p: np.ndarray, r: np.ndarray) -> float:
    return 0.5 * float(np.abs(p - r).sum())


def _moves_toward(found: np.ndarray, p2: np.ndarray, anchor: np.ndarray,
                  oracle: np.ndarray) -> float:
    """Grid mismatch of a minimizer strictly closer to `anchor` than p2; 1.0 otherwise."""
    if _total_variation(found, anchor) < _total_variation(p2, anchor):
        return float(np.abs(found - oracle).max())
    return 1.0


def check_minimizer(plan: SamplingPlan, tolerance: float = 1e-4,
                    grid_resolution: float = 1e-5) -> CheckReport:
    """
    Behaviour of argmin_{p1} T_q(p1, p2) on two outcomes: the vertex at
    argmax p2 for q = 2; for q in (1, 2) a point strictly closer to that vertex
    than p2; for q = 0.5 a point strictly closer to uniform than p2. Both moving
    cases must match a dense grid search. For q = 1 the minimizer is p2 itself,
    on supports of any size.
    """
    rng = plan.rng(_STREAMS["minimizer"])
    tracker = ViolationTracker("minimizer", tolerance, plan.seed)
    cases = max(1, min(plan.trials, 20))

    binary = [np.array([0.2, 0.8])]
    for _ in range(cases - 1):
        t = rng.uniform(0.02, 0.45)
        binary.append(np.array([t, 1.0 - t]) if rng.random() < 0.5 else np.array([1.0 - t, t]))

    uniform = np.full(2, 0.5)
    for p2 in binary:
        target = ProbabilityVector(p2)
        vertex = ProbabilityVector.degenerate(2, int(np.argmax(p2)))
        found = minimize_jtqd_first_arg(target, 2.0)
        exact = np.array_equal(found.entries, vertex.entries)
        tracker.observe(0.0 if exact else 1.0, q=2.0, p2=p2, minimizer=found)

        for q in VERTEX_SIDE_Q:
            found = minimize_jtqd_first_arg(target, q)
            oracle = grid_minimize_binary(target, q, grid_resolution)
            tracker.observe(_moves_toward(found.entries, p2, vertex.entries, oracle.entries),
                            q=q, p2=p2, minimizer=found, oracle=oracle)

        found = minimize_jtqd_first_arg(target, 0.5)
        oracle = grid_minimize_binary(target, 0.5, grid_resolution)
        tracker.observe(_moves_toward(found.entries, p2, uniform, oracle.entries),
                        q=0.5, p2=p2, minimizer=found, oracle=oracle)

    for _ in range(cases):
        n = draw_size(rng, (max(2, plan.n_range[0]), max(2, plan.n_range[1])))
        target = ProbabilityVector(sample_simplex(rng, n, plan.boundary_fraction))
        found = minimize_jtqd_first_arg(target, 1.0)
        tracker.observe(float(np.abs(found.entries - target.entries).max()),
                        q=1.0, p2=target, minimizer=found)
    return tracker.report()


def _negative_tsallis(q: float) -> VectorFunction:
    return lambda x: -tsallis_entropy(x, q)


def _squared_norm(x: np.ndarray) -> float:
    return float(np.dot(x, x))


def _suite(plan: SamplingPlan) -> Dict[str, Callable[[], List[CheckReport]]]:
    """Check name to runner mapping; order is the reporting order."""
    grid = plan.q_grid
    return {
        "q_jensen": lambda: [check_q_jensen(_negative_tsallis(q), q, plan, name="q_jensen_neg_tsallis")
                             for q in grid if q >= 1.0]
        + [check_q_jensen(_squared_norm, 0.5, plan, name="q_jensen_squared_norm")],
        "q_convexity_monotonicity": lambda: [
            check_q_convexity_monotonicity(_squared_norm, 1.0, 0.5, plan),
            check_q_convexity_monotonicity(lambda x: tsallis_entropy(x, 2.0), 2.0, 1.0, plan),
        ],
        "bounds": lambda: [check_jtqd_bounds(plan)],
        "joint_convexity": lambda: [check_joint_convexity(q, plan) for q in grid if q <= 1.0],
        "argument_convexity": lambda: [check_argument_convexity(q, plan) for q in grid],
        "suyari_axioms": lambda: [check_suyari_axioms(q, plan) for q in grid],
        "fast_paths": lambda: [check_fast_paths(plan)],
        "mutual_entropy_identity": lambda: [check_mutual_entropy_identity(plan)],
        "chain_rule": lambda: [check_chain_rule(plan)],
        "pseudoadditivity": lambda: [check_pseudoadditivity(plan)],
        "q_limit_continuity": lambda: [check_q_limit_continuity(plan)],
        "jsd_identity": lambda: [check_jsd_identity(plan)],
        "bregman_minimizer": lambda: [check_bregman_minimizer(plan)],
        "js_triangle": lambda: [check_js_triangle(plan)],
        "minimizer": lambda: [check_minimizer(plan)],
    }


def suite_names() -> List[str]:
    return list(_suite(SamplingPlan()).keys())


def run_suite(plan: SamplingPlan, only: Optional[Sequence[str]] = None) -> List[CheckReport]:
    """
    Run the full check suite (or the named subset) and return reports in suite order.

    Raises:
        ArgumentError: if `only` names an unknown check
    """
    suite = _suite(plan)
    selected = list(suite) if not only else list(only)
    unknown = [name for name in selected if name not in suite]
    if unknown:
        raise ArgumentError(f"unknown check(s) {unknown}; choose from {list(suite)}")
    reports: List[CheckReport] = []
    for name in suite:
        if name not in selected:
            continue
        logger.info(f"Running check {name}")
        for report in suite[name]():
            if report.passed:
                logger.info(f"✓ {report.to_record()}")
            else:
                logger.error(f"✗ {report.to_record()}")
            reports.append(report)
    return reports
