"""WKB route: differential ring, minimal operators, contour series, assembly."""

from .ring import CHARTS, EllipticIntegrand
from .operators import (
    Certificate, DiffOperator, chart_shift, inverse_mirror_operator, mathieu_limit,
    minimal_operator, mirror_operator, reduce_order, strip_total_derivatives,
    structure_check, wkb_recursion,
)
from .contour import ContourSeries, mirror_contour, p0_contour_series
from .assembly import (
    FloquetSeries, apply_operator, eigenvalue_from_floquet, electric_A_bands, floquet_series,
)
