"""Hankel transforms of integer order via B-spline wavelet expansions.

The input function is expanded in a semi-orthogonal spline wavelet basis on
[0, R]; each basis atom has a closed-form transform built from generalized
hypergeometric evaluations, so the transform becomes a coefficient-weighted
series.  An independent panel-quadrature oracle validates the series path.
"""

from .expansion import (
    ExpansionCoefficients,
    FunctionSpec,
    GramConditionError,
    gram_coefficients,
    haar_coefficients,
    reconstruct,
)
from .hankel_kernel import (
    BasisTransform,
    MonomialIntegralQuery,
    Z_SWITCH,
    atom_hankel,
    eq4_direct,
    haar_closed_form,
    haar_scaling_closed_form,
    monomial_hankel,
)
from .oracle import (
    QuadratureConfig,
    QuadratureError,
    gaussian_exact,
    quadrature_hankel,
    quadrature_hankel_fn,
)
from .pipeline import (
    Diagnostics,
    TransformRequest,
    TransformResult,
    transform,
    transform_with_oracle,
)
from .specfun import (
    Hyp1F2Params,
    PrecisionLossError,
    bessel_j,
    gamma_fn,
    hyp0f1,
    hyp1f2,
)
from .splines import (
    PiecewisePoly,
    WaveletIndex,
    bernstein_coeffs,
    bspline_eval,
    scaling_piecewise,
    wavelet_coeffs,
    wavelet_piecewise,
)

__version__ = "0.1.0"
