"""polycf: evaluate, transform, verify, and rediscover polynomial continued
fractions for constants such as pi^2 and zeta(3).

The package is organized around exact arithmetic (`exactmath`), the CF object
model (`cf_core`), series/CF transformations (`transforms`), numerical
analysis and recognition (`analysis`), certified reference constants
(`constants`), special sequences (`sequences`), the family registry
(`families`), linear-identity solvers (`conjecture`), and the parallel
search (`search`).  `cli` exposes everything as subcommands.
"""

__version__ = "0.1.0"

from . import errors
from .exactmath import HPReal, LinFactorForm, PolyQ, Rational, hp_to_decimal, parse_poly

__all__ = [
    "errors",
    "HPReal",
    "LinFactorForm",
    "PolyQ",
    "Rational",
    "hp_to_decimal",
    "parse_poly",
    "__version__",
]
