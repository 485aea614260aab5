# Entropy functionals plugged into Jensen differences
from typing import Optional

from .BaseFunctional import EntropyFunctional
from .ShannonFunctional import ShannonFunctional
from .TsallisFunctional import TsallisFunctional
from .RenyiFunctional import RenyiFunctional
from .PhiEntropyFunctional import PhiEntropyFunctional, CallableFunctional

# Functional name to class mapping; q-indexed classes take q as their argument
FUNCTIONAL_CLASSES = {
    'shannon': ShannonFunctional,
    'tsallis': TsallisFunctional,
    'renyi': RenyiFunctional,
}


def create_functional(name: str, q: Optional[float] = None) -> EntropyFunctional:
    """Instantiate a registered functional by name."""
    functional_class = FUNCTIONAL_CLASSES.get(name)
    if functional_class is None:
        raise KeyError(f"unknown entropy functional {name!r}")
    if functional_class is ShannonFunctional:
        return functional_class()
    if q is None:
        raise ValueError(f"functional {name!r} needs an entropic index q")
    return functional_class(q)


__all__ = [
    'EntropyFunctional',
    'ShannonFunctional',
    'TsallisFunctional',
    'RenyiFunctional',
    'PhiEntropyFunctional',
    'CallableFunctional',
    'FUNCTIONAL_CLASSES',
    'create_functional',
]
