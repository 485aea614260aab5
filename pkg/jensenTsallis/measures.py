"""
Data structures for points on the probability simplex, unnormalized measures
and joint distributions, plus the constructions between them.
All values are immutable after construction.
"""
import csv
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import ArgumentError, DomainError, HistogramParseError
from logging_config import get_logger

logger = get_logger(__name__)

# Accepted deviation of sum(entries) from 1 before silent renormalization
NORMALIZATION_TOLERANCE = 1e-9


def _frozen_array(values, what: str) -> np.ndarray:
    array = np.array(values, dtype=float).ravel()
    if array.size == 0:
        raise ArgumentError(f"{what} needs at least one entry")
    if np.any(~np.isfinite(array)) or np.any(array < 0.0):
        raise DomainError(f"{what} entries must be finite and nonnegative")
    array.flags.writeable = False
    return array


def _checked_labels(labels: Optional[Sequence[str]], size: int) -> Optional[Tuple[str, ...]]:
    if labels is None:
        return None
    labels = tuple(str(label) for label in labels)
    if len(labels) != size:
        raise ArgumentError(f"got {len(labels)} labels for {size} entries")
    return labels


@dataclass(frozen=True, eq=False)
class UnnormalizedMeasure:
    """
    Nonnegative vector in R_+^n (counts or masses), no sum constraint.
    """
    entries: np.ndarray
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        array = _frozen_array(self.entries, "measure")
        object.__setattr__(self, "entries", array)
        object.__setattr__(self, "labels", _checked_labels(self.labels, array.size))

    @property
    def n(self) -> int:
        return int(self.entries.size)

    @property
    def total(self) -> float:
        return float(math.fsum(self.entries))

    def normalized(self) -> "ProbabilityVector":
        """Divide by the total mass; fails for the zero measure."""
        total = self.total
        if total <= 0.0:
            raise DomainError("cannot normalize a measure with zero total mass")
        return ProbabilityVector(self.entries / total, labels=self.labels)

    def __len__(self) -> int:
        return self.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.labels) if self.labels else None,
                "entries": self.entries.tolist()}


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """
    Point on the simplex: nonnegative entries summing to 1 (within 1e-9),
    stored renormalized to sum exactly 1 in working precision.
    """
    entries: np.ndarray
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        array = np.array(_frozen_array(self.entries, "probability vector"))
        total = math.fsum(array)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ArgumentError(f"probability vector sums to {total!r}, not 1")
        if total != 1.0:
            array = array / total
        array.flags.writeable = False
        object.__setattr__(self, "entries", array)
        object.__setattr__(self, "labels", _checked_labels(self.labels, array.size))

    @classmethod
    def uniform(cls, n: int) -> "ProbabilityVector":
        if n < 1:
            raise ArgumentError("uniform distribution needs n >= 1")
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def degenerate(cls, n: int, index: int) -> "ProbabilityVector":
        """Simplex vertex delta_index, built exactly (one 1.0, the rest 0.0)."""
        if not 0 <= index < n:
            raise ArgumentError(f"vertex index {index} outside 0..{n - 1}")
        entries = np.zeros(n)
        entries[index] = 1.0
        return cls(entries)

    @property
    def n(self) -> int:
        return int(self.entries.size)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.entries)

    def __len__(self) -> int:
        return self.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __repr__(self) -> str:
        return f"ProbabilityVector({np.array2string(self.entries, separator=', ')})"

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.labels) if self.labels else None,
                "entries": self.entries.tolist()}


ProbabilityLike = Union[ProbabilityVector, Sequence[float], np.ndarray]


def as_probability(p: ProbabilityLike) -> ProbabilityVector:
    """Coerce array-likes into a ProbabilityVector (instances pass through)."""
    if isinstance(p, ProbabilityVector):
        return p
    if isinstance(p, UnnormalizedMeasure):
        return ProbabilityVector(p.entries, labels=p.labels)
    return ProbabilityVector(p)


def _stack(dists: Sequence[ProbabilityLike]) -> np.ndarray:
    rows = [as_probability(d).entries for d in dists]
    if not rows:
        raise ArgumentError("at least one distribution is required")
    sizes = {row.size for row in rows}
    if len(sizes) != 1:
        raise ArgumentError(f"distributions have different support sizes {sorted(sizes)}")
    return np.vstack(rows)


def _weighted_table(weights: ProbabilityVector, stack: np.ndarray) -> np.ndarray:
    if stack.shape[0] != weights.n:
        raise ArgumentError(
            f"{weights.n} weights given for {stack.shape[0]} distributions"
        )
    return weights.entries[:, np.newaxis] * stack


def mixture(weights: ProbabilityLike, dists: Sequence[ProbabilityLike]) -> ProbabilityVector:
    """
    Convex combination sum_j weights_j * dists_j (the mean E[P] of a random distribution).

    Raises:
        ArgumentError: on a weight/distribution count or support-size mismatch
    """
    weights = as_probability(weights)
    table = _weighted_table(weights, _stack(dists))
    return ProbabilityVector(table.sum(axis=0))


def product(p: ProbabilityLike, r: ProbabilityLike) -> ProbabilityVector:
    """Independent product p (x) r, flattened row-major: entry (i, j) = p_i * r_j."""
    p = as_probability(p)
    r = as_probability(r)
    labels = None
    if p.labels and r.labels:
        labels = [f"{a}|{b}" for a in p.labels for b in r.labels]
    return ProbabilityVector(np.outer(p.entries, r.entries).ravel(), labels=labels)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """
    Prior pi over Y (size m) with one conditional row p(.|y) over X (size n) per y.
    """
    prior: ProbabilityVector
    conditionals: Tuple[ProbabilityVector, ...]

    def __post_init__(self):
        prior = as_probability(self.prior)
        rows = tuple(as_probability(row) for row in self.conditionals)
        stack = _stack(rows)
        if stack.shape[0] != prior.n:
            raise ArgumentError(
                f"prior has {prior.n} entries but {stack.shape[0]} conditional rows were given"
            )
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "conditionals", rows)

    @property
    def m(self) -> int:
        return self.prior.n

    @property
    def n(self) -> int:
        return self.conditionals[0].n

    @property
    def table(self) -> np.ndarray:
        """m x n array of p(x, y) = pi_y * p(x|y); rows index y."""
        return _weighted_table(self.prior, _stack(self.conditionals))

    def flat(self) -> ProbabilityVector:
        """The (X, Y) table as a simplex point over m*n cells."""
        return ProbabilityVector(self.table.ravel())

    def marginal_x(self) -> ProbabilityVector:
        return ProbabilityVector(self.table.sum(axis=0))

    def marginal_y(self) -> ProbabilityVector:
        return self.prior

    def swapped(self) -> "JointDistribution":
        """
        Same joint law with the roles of X and Y exchanged (prior p_X, rows p(y|x)).

        Rows for outcomes x with p(x) = 0 are set to the prior; they carry no mass.
        """
        table = self.table
        p_x = self.marginal_x()
        rows = []
        for x in range(self.n):
            column = table[:, x]
            if p_x.entries[x] > 0.0:
                rows.append(ProbabilityVector(column / column.sum()))
            else:
                rows.append(self.prior)
        return JointDistribution(p_x, tuple(rows))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prior": self.prior.entries.tolist(),
            "conditionals": [row.entries.tolist() for row in self.conditionals],
        }


def joint_from_conditional(prior: ProbabilityLike,
                           conditionals: Sequence[ProbabilityLike]) -> JointDistribution:
    """
    Build the joint law of (X, Y) from a prior over Y and the rows p(.|y).

    Raises:
        ArgumentError: if the row count differs from the prior size or rows differ in size
    """
    return JointDistribution(as_probability(prior), tuple(as_probability(c) for c in conditionals))


def _source_lines(source: Union[str, Iterable[str]]) -> Iterable[str]:
    if isinstance(source, str):
        return source.splitlines()
    return source


def ingest_histogram(source: Union[str, Iterable[str]],
                     name: str = "<stream>",
                     sort_labels: bool = False) -> UnnormalizedMeasure:
    """
    Parse `label,count` records into an UnnormalizedMeasure.

    Lines starting with '#' are comments and blank lines are ignored.
    Labels keep first-seen order unless sort_labels is set; duplicate labels accumulate.

    Args:
        source: text (a whole document) or an iterable of lines, e.g. an open file
        name: source name used in error messages
        sort_labels: sort labels lexicographically instead of first-seen order

    Raises:
        HistogramParseError: on a malformed row or a negative count, naming the line
    """
    counts: Dict[str, float] = {}
    for line_number, raw_line in enumerate(_source_lines(source), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        fields = next(csv.reader([line]))
        if len(fields) != 2:
            raise HistogramParseError(
                f"expected 'label,count', got {len(fields)} field(s)", name, line_number)
        label, count_text = fields[0].strip(), fields[1].strip()
        if not label:
            raise HistogramParseError("empty label", name, line_number)
        try:
            count = float(count_text)
        except ValueError:
            raise HistogramParseError(f"count {count_text!r} is not a number", name, line_number)
        if not math.isfinite(count):
            raise HistogramParseError(f"count {count_text!r} is not finite", name, line_number)
        if count < 0.0:
            raise HistogramParseError(f"negative count {count_text}", name, line_number)
        counts[label] = counts.get(label, 0.0) + count

    if not counts:
        raise HistogramParseError("no histogram records found", name)

    labels: List[str] = sorted(counts) if sort_labels else list(counts)
    logger.debug(f"Read {len(labels)} labels from {name}")
    return UnnormalizedMeasure(np.array([counts[label] for label in labels]), labels=labels)


def load_histogram(path: str, sort_labels: bool = False) -> UnnormalizedMeasure:
    """Read a UTF-8 histogram file; unreadable files raise HistogramParseError."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return ingest_histogram(handle, name=path, sort_labels=sort_labels)
    except (OSError, UnicodeDecodeError) as e:
        raise HistogramParseError(f"cannot read file: {e}", path)


def align_histograms(measures: Sequence[UnnormalizedMeasure],
                     sort_labels: bool = False) -> List[UnnormalizedMeasure]:
    """
    Re-index measures over the union of their labels; missing labels get count 0.
    """
    union: Dict[str, None] = {}
    for measure in measures:
        for label in measure.labels or ():
            union.setdefault(label, None)
    labels = sorted(union) if sort_labels else list(union)
    aligned = []
    for measure in measures:
        lookup = dict(zip(measure.labels or (), measure.entries))
        aligned.append(UnnormalizedMeasure(
            np.array([lookup.get(label, 0.0) for label in labels]), labels=labels))
    return aligned
