"""
Abstract base class for generalized entropies Psi used by Jensen differences.
"""
from abc import ABC, abstractmethod
import sys
import os

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from logging_config import get_logger


class EntropyFunctional(ABC):
    """
    A deterministic map from a measure (or simplex point) to a real number.

    Concavity is not enforced; wrappers that rely on it document the range
    of q where it holds.
    """

    def __init__(self, name: str):
        self.name = name
        self.logger = get_logger(__name__)

    @abstractmethod
    def evaluate(self, x) -> float:
        """Value of the functional at x."""
        pass

    def __call__(self, x) -> float:
        return self.evaluate(x)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"
