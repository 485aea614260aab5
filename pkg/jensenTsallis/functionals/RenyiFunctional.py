"""
Renyi q-entropy as a Jensen-difference functional.
"""
from .BaseFunctional import EntropyFunctional
from entropy import renyi_entropy
from qmath import QLike, as_q


class RenyiFunctional(EntropyFunctional):
    """Psi = R_q; concave only for q in [0, 1)."""

    def __init__(self, q: QLike):
        self.q = as_q(q)
        super().__init__(f"renyi[q={self.q}]")
        if self.q.q > 1.0 and not self.q.is_one:
            self.logger.debug(f"Renyi entropy is not concave at q={self.q}")

    def evaluate(self, x) -> float:
        return renyi_entropy(x, self.q)
