"""Split double cosets, Sylow wreath products, Gassmann pairs and 2-adic checks."""

from .errors import MalformedInputError, PreadmissibleError, PreconditionError, ResourceLimitError
from .groups import PermGroup, Subgroup, generate
from .perm import CycleType, Permutation, format_cycles, parse_cycles

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Permutation",
    "CycleType",
    "parse_cycles",
    "format_cycles",
    "PermGroup",
    "Subgroup",
    "generate",
    "PreadmissibleError",
    "MalformedInputError",
    "PreconditionError",
    "ResourceLimitError",
]
