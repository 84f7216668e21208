"""Ford, Dirichlet and DF domains of zonal Fuchsian groups, with exact arithmetic."""

from .exactnum import QuadRat, parse_quadrat
from .halfplane import INF, AntiMoebiusMap, HPoint, MoebiusMap, Semicircle, VerticalLine
from .domains import (FundamentalDomain, Signature, UnverifiedDomain, area, cusp_classes,
                      dirichlet_domain, ford_domain, reduce, signature, vertex_cycles)
from .symmetry import (df_check, double_dirichlet_check, double_reflection_group,
                       extract_reflection_group, polygon_from_signature)

__version__ = "0.1.0"
