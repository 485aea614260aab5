"""
Run configuration: YAML defaults overlaid with command-line flags.
"""
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import yaml

from errors import UsageError
from logging_config import get_logger
from sampling import DEFAULT_Q_GRID, SamplingPlan

logger = get_logger(__name__)

DEFAULT_SETTINGS_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "settings.yaml")

COMMANDS = ("entropy", "divergence", "sweep", "verify", "minimize")
OUTPUT_FORMATS = ("csv", "structured")

# Measures accepted by --measure, per command; the first entry of each list is the default
COMMAND_MEASURES = {
    "entropy": ["shannon", "tsallis", "renyi"],
    "divergence": ["jtqd", "kld", "d_q", "renyi_div", "jsd", "jrd", "jtd"],
    "sweep": ["jtqd", "jsd", "jrd", "jtd"],
}

# Number of input histograms each command accepts: (minimum, maximum or None)
COMMAND_INPUTS = {
    "entropy": (1, None),
    "divergence": (2, None),
    "sweep": (2, None),
    "verify": (0, 0),
    "minimize": (1, 1),
}

WEIGHT_TOLERANCE = 1e-9


def load_settings(settings_file: str = DEFAULT_SETTINGS_FILE, required: bool = False) -> Dict[str, Any]:
    """
    Load defaults from a YAML settings file.

    Returns an empty dict (built-in defaults apply) when the file is missing or
    invalid, unless `required` is set.

    Raises:
        UsageError: `required` and the file is missing, unreadable, not YAML
            or not a mapping
    """
    try:
        with open(settings_file, 'r') as f:
            settings = yaml.safe_load(f) or {}
        if not isinstance(settings, dict):
            raise ValueError(f"expected a mapping, got {type(settings).__name__}")
        return settings
    except (OSError, yaml.YAMLError, ValueError) as e:
        if required:
            raise UsageError(f"cannot use settings file {settings_file}: {e}") from e
        logger.error(f"Failed to load settings from {settings_file}: {str(e)}")
        return {}


def parse_q_list(text: str) -> Tuple[float, ...]:
    """'0,0.5,1' -> (0.0, 0.5, 1.0)."""
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            values.append(float(item))
        except ValueError:
            raise UsageError(f"--q: {item!r} is not a number")
    return tuple(values)


def parse_q_grid(text: str) -> Tuple[float, ...]:
    """
    'a:b:step' -> a, a+step, ... up to and including b.

    An interval with b < a yields an empty grid.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--q-grid expects a:b:step, got {text!r}")
    try:
        start, stop, step = (float(part) for part in parts)
    except ValueError:
        raise UsageError(f"--q-grid expects numbers, got {text!r}")
    if not step > 0.0:
        raise UsageError(f"--q-grid step must be positive, got {step:g}")
    if stop < start:
        return ()
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    # rounding keeps grid points like 0.1*3 printable as 0.3
    return tuple(round(start + k * step, 12) for k in range(count))


def parse_weights(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise UsageError(f"--weights expects comma separated numbers, got {text!r}")


def parse_names(text: Optional[str]) -> Tuple[str, ...]:
    if not text:
        return ()
    return tuple(item.strip() for item in text.split(",") if item.strip())


@dataclass
class RunConfig:
    """
    Everything one CLI invocation needs. Built by build_run_config() and
    checked with validate() before any command runs.
    """
    command: str
    inputs: List[str] = field(default_factory=list)
    q_values: Tuple[float, ...] = (0.0, 0.5, 1.0, 1.5, 2.0)
    weights: Optional[Tuple[float, ...]] = None
    measures: Tuple[str, ...] = ()
    output_format: str = "csv"
    output_file: Optional[str] = None
    sort_labels: bool = False
    only: Tuple[str, ...] = ()
    seed: int = 20080915
    trials: int = 1000
    n_range: Tuple[int, int] = (2, 6)
    m_range: Tuple[int, int] = (2, 4)
    verify_q_grid: Tuple[float, ...] = DEFAULT_Q_GRID
    boundary_fraction: float = 0.25
    iterations: int = 500
    optimizer_tolerance: float = 1e-9

    def validate(self) -> "RunConfig":
        """
        Enforce the configuration invariants.

        Raises:
            UsageError: on any inconsistent or out-of-range setting
        """
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"--format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")

        low, high = COMMAND_INPUTS[self.command]
        count = len(self.inputs)
        if count < low or (high is not None and count > high):
            expected = f"exactly {low}" if low == high else f"at least {low}"
            raise UsageError(f"{self.command} needs {expected} input histogram(s), got {count}")

        if self.command != "verify":
            if not self.q_values:
                raise UsageError("the q grid is empty")
            if any(not math.isfinite(q) or q < 0.0 for q in self.q_values):
                raise UsageError(f"q values must be finite and >= 0, got {list(self.q_values)}")

        allowed = COMMAND_MEASURES.get(self.command, [])
        unknown = [name for name in self.measures if name not in allowed]
        if unknown:
            raise UsageError(f"{self.command} does not support measure(s) {unknown}; choose from {allowed}")

        if self.weights is not None:
            if self.command not in ("divergence", "sweep"):
                raise UsageError(f"--weights has no meaning for {self.command}")
            if len(self.weights) != count:
                raise UsageError(f"{len(self.weights)} weights given for {count} inputs")
            array = np.asarray(self.weights, dtype=float)
            if np.any(~np.isfinite(array)) or np.any(array < 0.0):
                raise UsageError("weights must be finite and nonnegative")
            if abs(math.fsum(array) - 1.0) > WEIGHT_TOLERANCE:
                raise UsageError(f"weights must sum to 1, got {math.fsum(array)!r}")

        if self.trials < 1:
            raise UsageError(f"--trials must be >= 1, got {self.trials}")
        if self.iterations < 1:
            raise UsageError(f"minimize iterations must be >= 1, got {self.iterations}")
        return self

    @property
    def selected_measures(self) -> Tuple[str, ...]:
        """Requested measures, or the command's default."""
        if self.measures:
            return self.measures
        defaults = COMMAND_MEASURES.get(self.command, [])
        if self.command == "entropy":
            return tuple(defaults)
        return tuple(defaults[:1])

    def sampling_plan(self) -> SamplingPlan:
        return SamplingPlan(
            seed=self.seed,
            trials=self.trials,
            n_range=self.n_range,
            m_range=self.m_range,
            q_grid=self.verify_q_grid,
            boundary_fraction=self.boundary_fraction,
        )


def build_run_config(args: Any, settings: Dict[str, Any]) -> RunConfig:
    """
    Merge parsed command-line arguments over the YAML settings.

    Args:
        args: argparse namespace from StartAnalysis
        settings: dict from load_settings()
    """
    analysis = settings.get('analysis') or {}
    verify = settings.get('verify') or {}
    minimize = settings.get('minimize') or {}

    if getattr(args, 'q', None) is not None:
        q_values = parse_q_list(args.q)
    elif getattr(args, 'q_grid', None) is not None:
        q_values = parse_q_grid(args.q_grid)
    else:
        q_values = tuple(float(q) for q in analysis.get('q_grid', (0.0, 0.5, 1.0, 1.5, 2.0)))

    weights = parse_weights(args.weights) if getattr(args, 'weights', None) else None

    def pick(flag: Optional[Any], section: Dict[str, Any], key: str, default: Any) -> Any:
        return flag if flag is not None else section.get(key, default)

    try:
        config = RunConfig(
            command=args.command,
            inputs=list(getattr(args, 'inputs', None) or []),
            q_values=q_values,
            weights=weights,
            measures=parse_names(getattr(args, 'measure', None)),
            output_format=pick(args.format, analysis, 'format', "csv"),
            output_file=args.output,
            sort_labels=bool(args.sort_labels or analysis.get('sort_labels', False)),
            only=parse_names(getattr(args, 'only', None)),
            seed=int(pick(args.seed, verify, 'seed', 20080915)),
            trials=int(pick(args.trials, verify, 'trials', 1000)),
            n_range=tuple(int(v) for v in verify.get('n_range', (2, 6))),
            m_range=tuple(int(v) for v in verify.get('m_range', (2, 4))),
            verify_q_grid=tuple(float(q) for q in verify.get('q_grid', DEFAULT_Q_GRID)),
            boundary_fraction=float(verify.get('boundary_fraction', 0.25)),
            iterations=int(minimize.get('iterations', 500)),
            optimizer_tolerance=float(minimize.get('tolerance', 1e-9)),
        )
    except (TypeError, ValueError) as e:
        raise UsageError(f"invalid setting: {e}")
    return config.validate()
