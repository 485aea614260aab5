"""
Tsallis q-entropy as a Jensen-difference functional.
"""
from .BaseFunctional import EntropyFunctional
from entropy import tsallis_entropy
from qmath import QLike, as_q


class TsallisFunctional(EntropyFunctional):
    """Psi = S_q; concave for every q >= 0, accepts unnormalized measures too."""

    def __init__(self, q: QLike):
        self.q = as_q(q)
        super().__init__(f"tsallis[q={self.q}]")

    def evaluate(self, x) -> float:
        return tsallis_entropy(x, self.q)
