"""Mathieu and Lamé eigenvalue asymptotics in the electric, magnetic and dyonic regions.

Exact series come from two independent routes, instanton counting and an
all-orders WKB reduction; a monodromy integrator checks them numerically.
"""

from . import errors, instanton, modular, oracle, spectra, wkb
from .ratfunc import RatFunc, sym
from .series import PuiseuxSeries, series_compose, series_pow, series_reverse
from .spectra import (
    EigenvalueExpansion, convert_A_B, decoupling_limit, lame_A_expansion, lame_B_electric,
    langmann_compare, mathieu_expansion, region_advise,
)
from .oracle import monodromy_floquet, verify_expansion

__version__ = "0.1.0"
