"""Maximum directed linear arrangement: oracles, forest solver, special classes and reductions."""

from .core import Digraph, WeightedGraph, arrangement_value, signature, levels
from .errors import InputError, MaxDLAError, SizeLimitError, VerificationError

__all__ = [
    "Digraph",
    "WeightedGraph",
    "arrangement_value",
    "signature",
    "levels",
    "InputError",
    "MaxDLAError",
    "SizeLimitError",
    "VerificationError",
]
