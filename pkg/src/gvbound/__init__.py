"""Rate bounds for constrained channels via pair counting.

The package computes Gilbert-Varshamov, sphere-packing, and crude rate
bounds for two constrained spaces: binary words under sticky insertions
(fixed run density) and DNA strands under a synthesis-cycle budget.  The
common machinery is exact pair counting by dynamic programming and
coefficient asymptotics of the pair generating functions through smooth
critical points.

Channel-specific functionality lives in the sticky and synthesis
submodules; curves and cli drive curve sweeps and the command
line; verify holds the self-check suites.
"""

from . import acsv, curves, sticky, synthesis, verify
from .acsv import (
    CriticalPoint,
    SparseMultivariatePolynomial,
    critical_system_residual,
    growth_exponent,
    solve_critical_point,
)
from .errors import (
    DimensionMismatchError,
    DomainError,
    GVBoundError,
    MemoryBudgetError,
    NoRootFoundError,
    NoSignChangeError,
    NonConvergenceError,
    SizeLimitError,
)
from .numeric import (
    BracketedRoot,
    RealPolynomial,
    binomial_exact,
    entropy,
    find_root_bisection,
    smallest_positive_root,
)

__version__ = "0.1.0"

__all__ = [
    "acsv",
    "curves",
    "sticky",
    "synthesis",
    "verify",
    "CriticalPoint",
    "SparseMultivariatePolynomial",
    "critical_system_residual",
    "growth_exponent",
    "solve_critical_point",
    "GVBoundError",
    "DomainError",
    "DimensionMismatchError",
    "NoSignChangeError",
    "NoRootFoundError",
    "NonConvergenceError",
    "SizeLimitError",
    "MemoryBudgetError",
    "BracketedRoot",
    "RealPolynomial",
    "binomial_exact",
    "entropy",
    "find_root_bisection",
    "smallest_positive_root",
    "__version__",
]
