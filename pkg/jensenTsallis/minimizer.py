"""
Minimization of T_q(p1, p2) over the first argument on the probability simplex.

Projected gradient descent with exact Euclidean projection, followed by a
comparison against every vertex, p2 and the uniform distribution.
"""
from typing import List

import numpy as np

from entropy import tsallis_entropy_rows
from errors import OptimizerConvergenceError
from logging_config import get_logger
from measures import ProbabilityLike, ProbabilityVector, as_probability
from qmath import QLike, as_q

logger = get_logger(__name__)

# Candidates must beat an earlier one by more than this to replace it
TIE_TOLERANCE = 1e-14
# Floor used when evaluating gradients at zero coordinates
GRADIENT_FLOOR = 1e-15


def project_simplex(v: np.ndarray, z: float = 1.0) -> np.ndarray:
    """
    Euclidean projection of v onto {y >= 0, sum(y) = z}.
    """
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - z
    ind = np.arange(v.size) + 1
    cond = u - cssv / ind > 0
    rho = np.count_nonzero(cond)
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def jtqd2_objective(x: np.ndarray, p2: np.ndarray, q: QLike) -> np.ndarray:
    """
    T_q(x, p2) with weights (1/2, 1/2), vectorized over the rows of x.
    """
    qp = as_q(q)
    x = np.atleast_2d(x)
    half_q = 0.5 ** qp.q
    mixed = 0.5 * (x + p2)
    return tsallis_entropy_rows(mixed, qp) - half_q * (tsallis_entropy_rows(x, qp)
                                                       + tsallis_entropy_rows(p2, qp))


def _tsallis_gradient(x: np.ndarray, q: QLike) -> np.ndarray:
    qp = as_q(q)
    y = np.maximum(x, GRADIENT_FLOOR)
    if qp.is_one:
        return -np.log(y) - 1.0
    return (1.0 - qp.q * y ** (qp.q - 1.0)) / (qp.q - 1.0)


def _objective_gradient(x: np.ndarray, p2: np.ndarray, q: QLike) -> np.ndarray:
    qp = as_q(q)
    mixed = 0.5 * (x + p2)
    return 0.5 * _tsallis_gradient(mixed, qp) - 0.5 ** qp.q * _tsallis_gradient(x, qp)


def _descend(start: np.ndarray, p2: np.ndarray, q: QLike, iterations: int, tolerance: float):
    """Projected gradient with backtracking; returns (point, converged, iterations used)."""
    qp = as_q(q)
    x = start.copy()
    initial_step = 0.1 / qp.q
    f_x = float(jtqd2_objective(x, p2, qp)[0])
    for iteration in range(1, iterations + 1):
        gradient = _objective_gradient(x, p2, qp)
        step = initial_step
        while True:
            y = project_simplex(x - step * gradient)
            f_y = float(jtqd2_objective(y, p2, qp)[0])
            displacement = y - x
            bound = f_x + gradient @ displacement + displacement @ displacement / (2.0 * step)
            if f_y <= bound or step < 1e-12:
                break
            step *= 0.5
        change = float(np.abs(displacement).sum())
        if f_y <= f_x:
            x, f_x = y, f_y
        if change < tolerance:
            return x, True, iteration
    return x, False, iterations


def minimize_jtqd_first_arg(p2: ProbabilityLike, q: QLike, iterations: int = 500,
                            tolerance: float = 1e-9) -> ProbabilityVector:
    """
    argmin over p1 in the simplex of T_q(p1, p2).

    The descent result competes with all vertices, p2 and the uniform
    distribution; earlier candidates win ties, so exact vertices are returned
    whenever they are optimal. The global optimum is guaranteed for q in [0, 2]
    where T_q is convex in p1; for q > 2 a local optimum may be returned.

    Args:
        p2: fixed second argument
        q: entropic index
        iterations: descent iteration budget
        tolerance: L1 step size below which descent stops

    Returns:
        the minimizer, labelled like p2

    Raises:
        OptimizerConvergenceError: q > 2 and the descent did not settle
            within `iterations`; the error carries the best point found
    """
    p2 = as_probability(p2)
    qp = as_q(q)
    n = p2.n
    target = p2.entries

    candidates: List[np.ndarray] = [ProbabilityVector.degenerate(n, i).entries for i in range(n)]
    candidates.append(target)
    candidates.append(ProbabilityVector.uniform(n).entries)

    converged = True
    if qp.q > 0.0:
        # interior start for q < 1, where the gradient is unbounded on faces
        start = target if qp.q >= 1.0 else 0.5 * (target + 1.0 / n)
        point, converged, used = _descend(start, target, qp, iterations, tolerance)
        logger.debug(f"Descent at q={qp} stopped after {used} iterations (converged={converged})")
        candidates.append(point)

    values = jtqd2_objective(np.vstack(candidates), target, qp)
    best = 0
    for index in range(1, len(candidates)):
        if values[index] < values[best] - TIE_TOLERANCE:
            best = index
    result = ProbabilityVector(candidates[best], labels=p2.labels)

    if not converged:
        if qp.q > 2.0:
            raise OptimizerConvergenceError(
                f"descent did not converge within {iterations} iterations at q={qp}",
                best=result, objective=float(values[best]))
        logger.warning(f"Descent at q={qp} used all {iterations} iterations; returning best candidate")
    return result


def grid_minimize_binary(p2: ProbabilityLike, q: QLike, resolution: float = 1e-5) -> ProbabilityVector:
    """
    Dense grid search of T_q((t, 1-t), p2) over t in [0, 1] for two outcomes.

    Independent of the descent; used to cross-check minimize_jtqd_first_arg.
    """
    p2 = as_probability(p2)
    if p2.n != 2:
        raise ValueError("grid search is only available for two outcomes")
    steps = int(round(1.0 / resolution))
    t = np.linspace(0.0, 1.0, steps + 1)
    grid = np.column_stack([t, 1.0 - t])
    values = jtqd2_objective(grid, p2.entries, q)
    return ProbabilityVector(grid[int(np.argmin(values))], labels=p2.labels)
