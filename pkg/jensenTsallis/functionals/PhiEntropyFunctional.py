"""
phi-entropies and arbitrary callables as Jensen-difference functionals.
"""
from typing import Callable, Tuple

from .BaseFunctional import EntropyFunctional
from entropy import phi_entropy


class PhiEntropyFunctional(EntropyFunctional):
    """Psi(x) = -sum_i varphi(x_i) for a convex scalar varphi on `domain`."""

    def __init__(self, varphi: Callable[[float], float], name: str = "phi",
                 domain: Tuple[float, float] = (0.0, 1.0)):
        super().__init__(name)
        self.varphi = varphi
        self.domain = domain

    def evaluate(self, x) -> float:
        return phi_entropy(x, self.varphi, self.domain)


class CallableFunctional(EntropyFunctional):
    """Wraps any deterministic function of a vector, concave or not."""

    def __init__(self, func: Callable[..., float], name: str = "callable"):
        super().__init__(name)
        self.func = func

    def evaluate(self, x) -> float:
        return float(self.func(x))
