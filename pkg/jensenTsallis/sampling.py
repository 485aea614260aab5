"""
Seeded sampling of simplex points for the numerical checks.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from errors import ArgumentError
from measures import ProbabilityVector

DEFAULT_Q_GRID = (0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0)


@dataclass(frozen=True)
class SamplingPlan:
    """
    How a check draws its inputs. Equal plans give identical samples.
    """
    seed: int = 20080915
    trials: int = 1000
    n_range: Tuple[int, int] = (2, 6)
    m_range: Tuple[int, int] = (2, 4)
    q_grid: Tuple[float, ...] = DEFAULT_Q_GRID
    boundary_fraction: float = 0.25

    def __post_init__(self):
        if self.trials < 1:
            raise ArgumentError(f"trials must be >= 1, got {self.trials}")
        for label, (low, high) in (("n_range", self.n_range), ("m_range", self.m_range)):
            if low < 1 or high < low:
                raise ArgumentError(f"{label} must satisfy 1 <= low <= high, got {(low, high)}")
        if any(q < 0 for q in self.q_grid):
            raise ArgumentError("q_grid values must be >= 0")
        object.__setattr__(self, "n_range", tuple(self.n_range))
        object.__setattr__(self, "m_range", tuple(self.m_range))
        object.__setattr__(self, "q_grid", tuple(float(q) for q in self.q_grid))

    def rng(self, stream: int = 0) -> np.random.Generator:
        """A fresh generator; distinct streams keep checks independent of each other."""
        return np.random.default_rng([self.seed, stream])

    def with_overrides(self, **changes: Any) -> "SamplingPlan":
        values: Dict[str, Any] = {
            "seed": self.seed, "trials": self.trials, "n_range": self.n_range,
            "m_range": self.m_range, "q_grid": self.q_grid,
            "boundary_fraction": self.boundary_fraction,
        }
        values.update(changes)
        return SamplingPlan(**values)


def draw_size(rng: np.random.Generator, size_range: Tuple[int, int]) -> int:
    low, high = size_range
    return int(rng.integers(low, high + 1))


def sample_simplex(rng: np.random.Generator, n: int, boundary_fraction: float = 0.25) -> np.ndarray:
    """
    One point of the (n-1)-simplex from a symmetric Dirichlet(1).

    With probability `boundary_fraction` a random subset of coordinates is zeroed
    (at least one survives) so that faces and vertices get sampled as well.
    """
    point = rng.dirichlet(np.ones(n))
    if n > 1 and rng.random() < boundary_fraction:
        keep = int(rng.integers(1, n + 1))
        survivors = rng.choice(n, size=keep, replace=False)
        sparse = np.zeros(n)
        sparse[survivors] = point[survivors]
        if sparse.sum() <= 0.0:
            sparse[survivors[0]] = 1.0
        point = sparse / sparse.sum()
    return point


def draw_sizes(rng: np.random.Generator, size_range: Tuple[int, int], count: int) -> np.ndarray:
    """`count` independent draws of draw_size at once."""
    low, high = size_range
    return rng.integers(low, high + 1, size=count)


def sample_simplex_batch(rng: np.random.Generator, count: int, n: int,
                         boundary_fraction: float = 0.25) -> np.ndarray:
    """
    `count` simplex points as the rows of a (count, n) array, distributed like
    sample_simplex: Dirichlet(1) rows, a `boundary_fraction` of them moved to a
    random face that keeps at least one coordinate.
    """
    points = rng.dirichlet(np.ones(n), size=count)
    if n > 1 and count:
        on_face = rng.random(count) < boundary_fraction
        keep = rng.integers(1, n + 1, size=count)
        # ranks of uniform keys give a random subset of `keep` coordinates per row
        ranks = rng.random((count, n)).argsort(axis=1).argsort(axis=1)
        survives = (ranks < keep[:, np.newaxis]) | ~on_face[:, np.newaxis]
        points = np.where(survives, points, 0.0)
        points = points / points.sum(axis=1, keepdims=True)
    return points


def sample_interior(rng: np.random.Generator, n: int, margin: float = 0.1) -> np.ndarray:
    """Dirichlet(1) point shrunk towards uniform so every entry is >= margin / n."""
    return (1.0 - margin) * rng.dirichlet(np.ones(n)) + margin / n


def sample_distributions(rng: np.random.Generator, m: int, n: int,
                         boundary_fraction: float = 0.25) -> List[ProbabilityVector]:
    return [ProbabilityVector(sample_simplex(rng, n, boundary_fraction)) for _ in range(m)]


def sample_instance(rng: np.random.Generator, plan: SamplingPlan):
    """A weight vector pi over m inputs and m distributions over n outcomes."""
    m = draw_size(rng, plan.m_range)
    n = draw_size(rng, plan.n_range)
    weights = ProbabilityVector(sample_simplex(rng, m, plan.boundary_fraction))
    dists = sample_distributions(rng, m, n, plan.boundary_fraction)
    return weights, dists
