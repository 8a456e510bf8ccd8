"""Natural logarithm and delta calculus on finite time scales."""

from tslog.calculus import (
    DEFAULT_CONFIG,
    DerivativeResult,
    IntegrationConfig,
    ScaleFn,
    adaptive_simpson,
    delta_derivative,
    delta_integral,
    delta_second_derivative,
    integrate,
    left_derivative,
)
from tslog.convexity import (
    ConvexityVerdict,
    check_by_derivative,
    check_by_second_derivative,
    check_definition,
    check_slope_form,
)
from tslog.core import (
    PointClass,
    Segment,
    TimeScale,
    classify,
    contains,
    enumerate_range,
    from_points,
    image_under_monotone,
    mu,
    rho,
    scale_div,
    scale_mul,
    sigma,
)
from tslog.errors import NotInScaleError, PreconditionError, QuadratureError, TimeScaleError
from tslog.families import ScaleSpec, build
from tslog.kernels import BACKEND
from tslog.logarithm import (
    ClosedForm,
    Residual,
    chain_rule_residual,
    closed_form_for,
    harmonic,
    log_closed_form,
    log_fn,
    log_table,
    log_ts,
    power_sum_residual,
    product_identity_residual,
    quotient_identity_residual,
    reciprocal_identity_residual,
    sigma_recurrence_residual,
    sweep,
)

__version__ = "0.1.0"
