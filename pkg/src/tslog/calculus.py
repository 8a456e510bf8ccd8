"""Delta derivative and delta integral on a TimeScale.

Scattered parts are handled exactly (forward quotients, ``f(t) * mu(t)``
sums); dense parts use adaptive Simpson quadrature and one-sided
Richardson-extrapolated difference quotients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from tslog import kernels
from tslog.core import TimeScale
from tslog.errors import PreconditionError, QuadratureError

EXACT_SCATTERED = "exact-scattered"
EXACT_CALLBACK = "exact-callback"
EXTRAPOLATED = "extrapolated-limit"


@dataclass(frozen=True)
class ScaleFn:
    """A real function evaluable on the points of a time scale.

    ``exact_derivative`` is used verbatim at right-dense points. When
    ``increment(s, t)`` is given it must return ``f(t) - f(s)``; difference
    quotients use it instead of subtracting two evaluations, which matters
    when ``f`` is itself an integral.
    """

    eval: Callable[[float], float]
    exact_derivative: Callable[[float], float] | None = None
    increment: Callable[[float, float], float] | None = None
    name: str = ""

    def __call__(self, t: float) -> float:
        return self.eval(t)

    def diff(self, s: float, t: float) -> float:
        if self.increment is not None:
            return self.increment(s, t)
        return self.eval(t) - self.eval(s)


def as_scale_fn(f) -> ScaleFn:
    return f if isinstance(f, ScaleFn) else ScaleFn(f)


@dataclass(frozen=True)
class IntegrationConfig:
    """Numerical knobs for dense segments.

    Attributes:
        quad_tol: Absolute adaptive-Simpson tolerance per dense segment.
        max_depth: Bisection depth cap for the quadrature.
        deriv_h0: Initial step of dense-point difference quotients.
        richardson_levels: Extrapolation levels for dense-point derivatives.
    """

    quad_tol: float = 1e-10
    max_depth: int = 40
    deriv_h0: float = 1e-2
    richardson_levels: int = 3

    def __post_init__(self):
        if not self.quad_tol > 0:
            raise ValueError(f"quad_tol must be positive, got {self.quad_tol!r}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth!r}")
        if not self.deriv_h0 > 0:
            raise ValueError(f"deriv_h0 must be positive, got {self.deriv_h0!r}")
        if self.richardson_levels < 1:
            raise ValueError("richardson_levels must be >= 1")


DEFAULT_CONFIG = IntegrationConfig()


@dataclass(frozen=True)
class DerivativeResult:
    value: float
    err_estimate: float
    method: str

    def __float__(self) -> float:
        return self.value


# -- quadrature -----------------------------------------------------------------


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, max_depth: int = 40):
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson's rule.

    Returns:
        ``(value, error_estimate)``.

    Raises:
        QuadratureError: if a subinterval at ``max_depth`` still misses its
            share of the tolerance.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        v, e = adaptive_simpson(f, b, a, tol, max_depth)
        return -v, e

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    parts = []
    errs = []

    def recurse(lo, hi, flo, fmid, fhi, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            parts.append(left + right + delta / 15.0)
            errs.append(abs(delta) / 15.0)
            return
        if depth >= max_depth:
            raise QuadratureError(lo, hi, abs(delta) / 15.0, tol)
        recurse(lo, mid, flo, flm, fmid, left, tol / 2.0, depth + 1)
        recurse(mid, hi, fmid, frm, fhi, right, tol / 2.0, depth + 1)

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 1)
    return math.fsum(parts), math.fsum(errs)


# -- integral -------------------------------------------------------------------


def integrate(f, T: TimeScale, a: float, b: float, cfg: IntegrationConfig = DEFAULT_CONFIG):
    """Cauchy delta integral with its accumulated quadrature error estimate.

    Returns:
        ``(value, error_estimate)``; the estimate is 0 on purely scattered ranges.
    """
    f = as_scale_fn(f)
    a, b = T.snap(a), T.snap(b)
    if a == b:
        return 0.0, 0.0
    if a > b:
        v, e = integrate(f, T, b, a, cfg)
        return -v, e
    values, weights = [], []
    err = 0.0
    for seg in T.enumerate_range(a, b):
        if not seg.is_point:
            v, e = adaptive_simpson(f.eval, seg.lo, seg.hi, cfg.quad_tol, cfg.max_depth)
            values.append(v)
            weights.append(1.0)
            err += e
        # the right end of every piece contributes f * mu if it jumps forward
        if seg.hi < b:
            m = T.sigma(seg.hi) - seg.hi
            if m > 0:
                values.append(float(f.eval(seg.hi)))
                weights.append(m)
    for v in values:
        if not math.isfinite(v):
            raise ArithmeticError(f"integrand is not finite on [{a!r}, {b!r}]")
    return kernels.weighted_sum(values, weights), err


def delta_integral(f, T: TimeScale, a: float, b: float, cfg: IntegrationConfig = DEFAULT_CONFIG) -> float:
    """``∫_a^b f(t) Δt`` over ``T``; ``a`` and ``b`` must be points of ``T``.

    >>> from tslog.core import from_points
    >>> delta_integral(lambda t: 1 / t, from_points(range(1, 11)), 1, 4)
    1.8333333333333333
    """
    return integrate(f, T, a, b, cfg)[0]


# -- derivatives ----------------------------------------------------------------


def _richardson(quotient, h: float, levels: int):
    """Extrapolate ``quotient(h / 2**k)`` assuming an error series in powers of h."""
    rows = []
    for k in range(levels + 1):
        row = [quotient(h / 2**k)]
        for j in range(1, k + 1):
            p = 2.0**j
            row.append((p * row[j - 1] - rows[-1][j - 1]) / (p - 1.0))
        rows.append(row)
    best = rows[-1][-1]
    err = max(abs(best - rows[-1][-2]), abs(best - rows[-2][-1]))
    return best, err


def delta_derivative(f, T: TimeScale, t: float, cfg: IntegrationConfig = DEFAULT_CONFIG) -> DerivativeResult:
    """Delta derivative ``f^Δ(t)``.

    Right-scattered points give the exact forward quotient. Right-dense points
    use ``f.exact_derivative`` when present, otherwise a forward quotient
    confined to the dense component and Richardson-extrapolated.
    """
    f = as_scale_fn(f)
    s = T.snap(t)
    if s == T.max:
        raise PreconditionError(f"delta derivative is undefined at the maximum {s!r}")
    sig = T.sigma(s)
    if sig > s:
        return DerivativeResult(f.diff(s, sig) / (sig - s), 0.0, EXACT_SCATTERED)
    if f.exact_derivative is not None:
        return DerivativeResult(float(f.exact_derivative(s)), 0.0, EXACT_CALLBACK)
    hi = T.component_of(s)[1]
    h = min(cfg.deriv_h0, 0.5 * (hi - s))
    value, err = _richardson(lambda k: f.diff(s, s + k) / k, h, cfg.richardson_levels)
    return DerivativeResult(value, err, EXTRAPOLATED)


def left_derivative(f, T: TimeScale, t: float, cfg: IntegrationConfig = DEFAULT_CONFIG) -> DerivativeResult:
    """One-sided limit ``f'(t-)`` at a left-dense point, from inside its component."""
    f = as_scale_fn(f)
    s = T.snap(t)
    lo = T.component_of(s)[0]
    if not lo < s:
        raise PreconditionError(f"{s!r} is not left-dense")
    if f.exact_derivative is not None:
        return DerivativeResult(float(f.exact_derivative(s)), 0.0, EXACT_CALLBACK)
    h = min(cfg.deriv_h0, 0.5 * (s - lo))
    value, err = _richardson(lambda k: f.diff(s - k, s) / k, h, cfg.richardson_levels)
    return DerivativeResult(value, err, EXTRAPOLATED)


def delta_second_derivative(f, T: TimeScale, t: float, cfg: IntegrationConfig = DEFAULT_CONFIG) -> DerivativeResult:
    """``f^{Δ²}(t)``, the delta derivative of ``s -> f^Δ(s)``; needs ``t`` in ``T^{κ²}``."""
    f = as_scale_fn(f)
    s = T.snap(t)
    if s == T.max or T.sigma(s) == T.max:
        raise PreconditionError(f"{s!r} is not in T^κ² (second derivative needs two forward points)")

    def first(u):
        return delta_derivative(f, T, u, cfg)

    sig = T.sigma(s)
    if sig > s:
        d0, d1 = first(s), first(sig)
        m = sig - s
        err = (d0.err_estimate + d1.err_estimate) / m
        return DerivativeResult((d1.value - d0.value) / m, err, EXACT_SCATTERED if err == 0 else EXTRAPOLATED)

    hi = T.component_of(s)[1]
    h = min(cfg.deriv_h0, 0.5 * (hi - s))
    base = first(s)
    inner = [base.err_estimate]

    def quotient(k):
        d = first(s + k)
        inner.append(d.err_estimate)
        return (d.value - base.value) / k

    value, err = _richardson(quotient, h, cfg.richardson_levels)
    h_min = h / 2**cfg.richardson_levels
    return DerivativeResult(value, err + 2.0 * max(inner) / h_min, EXTRAPOLATED)
