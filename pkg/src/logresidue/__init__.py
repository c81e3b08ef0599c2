"""Exact symbolic calculus for logarithmic residue densities of generalised Laplacians."""

from .scalars import Scalar, PiScalar
from .clifford import MatrixW, CliffordElem, cl_str, cl_tr
from .symbols import (
    XPoly,
    HomSymbol,
    ClassicalSymbol,
    LogSymbol,
    star,
    star_bracket,
    ad_xi2,
    log_bracket,
    parametrix,
    neumann_log,
)
from .residue import sphere_moment, sphere_volume, residue_density
from .logexpand import (
    lie_monomial,
    log_via_ch,
    log_via_taylor,
    log_via_seeley,
    log_symbol,
    res_log,
    zeta0,
)
from .geometry import (
    CurvatureTensor,
    GaugeField,
    scalar_curvature,
    dgamma_from_R,
    dirac_squared_symbol,
    twisted_flat_symbol,
    pontryagin_density,
    chern_density,
    index_pure_dirac4,
    index_flat_twisted,
    viancT_reduced_dim4,
    sres_dgamma_sq,
    sres_dgamma_cross,
    flat_subtop_sres,
    dirac_symbol,
    RouteDisagreement,
    random_curvature,
    random_gauge,
    random_laplacian_lower,
    cayley_orthogonal,
    rotate_curvature,
    rotate_gauge,
)

__version__ = "0.1.0"
