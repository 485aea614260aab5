"""
Shannon entropy as a Jensen-difference functional.
"""
from .BaseFunctional import EntropyFunctional
from entropy import shannon_entropy


class ShannonFunctional(EntropyFunctional):
    """Psi = H, the Shannon entropy (its Jensen difference is the JSD)."""

    def __init__(self):
        super().__init__("shannon")

    def evaluate(self, x) -> float:
        return shannon_entropy(x)
