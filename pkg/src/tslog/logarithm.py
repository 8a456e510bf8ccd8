"""The natural logarithm of a time scale and verifiers for its identities.

``L_T(t)`` is the delta integral of ``1/τ`` from 1 to ``t`` over ``T``.
Every identity verifier returns a :class:`Residual` rather than a bare
boolean so callers can report how close both sides came.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from tslog.calculus import (
    DEFAULT_CONFIG,
    IntegrationConfig,
    ScaleFn,
    as_scale_fn,
    delta_derivative,
    delta_integral,
    integrate,
)
from tslog.core import TimeScale, image_under_monotone, scale_div, scale_mul
from tslog.errors import NotInScaleError, PreconditionError
from tslog.families import ScaleSpec, build

SCATTERED_TOL = 1e-12
MIXED_TOL = 1e-8

RECIPROCAL = ScaleFn(lambda t: 1.0 / t, exact_derivative=lambda t: -1.0 / (t * t), name="1/t")

_EULER_GAMMA = 0.57721566490153286061


def default_tol(T: TimeScale) -> float:
    """Residual tolerance for ``T``; ``TSLOG_DEFAULT_TOL`` overrides it."""
    env = os.environ.get("TSLOG_DEFAULT_TOL")
    if env:
        return float(env)
    return SCATTERED_TOL if T.is_scattered else MIXED_TOL


@dataclass(frozen=True)
class Residual:
    """Verdict of one identity check: ``passed`` iff ``residual <= tol_used``."""

    lhs: float
    rhs: float
    residual: float
    tol_used: float
    passed: bool
    kind: str = ""
    params: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, lhs: float, rhs: float, tol: float, kind: str = "", **params) -> Residual:
        r = abs(lhs - rhs)
        return cls(lhs, rhs, r, tol, r <= tol, kind, params)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tol": self.tol_used,
            "pass": self.passed,
        }


# -- closed forms ---------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def harmonic(n: int) -> float:
    """``H_n = 1 + 1/2 + ... + 1/n`` (``H_0 = 0``), correctly rounded up to n = 64.

    Larger ``n`` use the digamma asymptotic series ``H_n = ψ(n+1) + γ``.
    """
    if n < 0:
        raise ValueError("harmonic numbers need n >= 0")
    if n <= 64:
        return float(sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0)))
    inv2 = 1.0 / (n * n)
    tail = inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 * (1 / 252 - inv2 * (1 / 240 - inv2 / 132))))
    return math.log(n) + _EULER_GAMMA + 0.5 / n - tail


@dataclass(frozen=True)
class ClosedForm:
    """Known formula for ``L_T`` on a named family."""

    family: str  # "R", "qGeometric", "N", "hZ" or "none"
    param: float | None = None

    def __call__(self, t: float) -> float:
        if self.family == "R":
            return math.log(t)
        if self.family == "qGeometric":
            q = self.param
            return (q - 1.0) * math.log(t) / math.log(q)
        if self.family == "N":
            return harmonic(round(t) - 1)
        if self.family == "hZ":
            h = self.param
            k0, m = round(1.0 / h), round(t / h)
            return harmonic(m - 1) - harmonic(k0 - 1)
        raise ValueError("no closed form for this scale")


def closed_form_for(spec: ScaleSpec | None) -> ClosedForm:
    """The closed form applying to scales built from ``spec`` (family "none" if any)."""
    if spec is None:
        return ClosedForm("none")
    T = build(spec)
    if not T.contains(1.0):
        return ClosedForm("none")
    if spec.kind == "R":
        return ClosedForm("R")
    if spec.kind in ("qN0", "qZ"):
        return ClosedForm("qGeometric", spec.q)
    if spec.kind in ("N", "Z"):
        return ClosedForm("N")
    if spec.kind == "hZ":
        k0 = 1.0 / spec.h
        if abs(k0 - round(k0)) <= 1e-9 * k0:
            return ClosedForm("hZ", spec.h)
    return ClosedForm("none")


def log_closed_form(spec: ScaleSpec, t: float) -> float | None:
    """Closed-form ``L_T(t)`` for the family of ``spec``, or None when none applies.

    Raises:
        NotInScaleError: if ``t`` is not a point of the materialized family.
    """
    T = build(spec)
    s = T.snap(t)
    if not s > 0:
        raise PreconditionError(f"the logarithm needs t > 0, got {t!r}")
    form = closed_form_for(spec)
    if form.family == "none":
        return None
    return form(s)


# -- the logarithm --------------------------------------------------------------


def _check_anchor(T: TimeScale):
    if not T.contains(1.0):
        raise PreconditionError("the logarithm needs 1 to be a point of the time scale")


def log_ts(T: TimeScale, t: float, cfg: IntegrationConfig = DEFAULT_CONFIG, method: str = "auto") -> float:
    """Natural logarithm ``L_T(t)``.

    ``method="integral"`` always integrates; ``"closed"`` requires a closed
    form; ``"auto"`` uses the closed form of the scale's family when there is
    one and integrates otherwise.
    """
    _check_anchor(T)
    s = T.snap(t)
    if not s > 0:
        raise PreconditionError(f"the logarithm needs t > 0, got {t!r}")
    if method not in ("auto", "integral", "closed"):
        raise ValueError(f"unknown method {method!r}")
    if method != "integral":
        form = closed_form_for(T.origin)
        if form.family != "none":
            return form(s)
        if method == "closed":
            raise PreconditionError("no closed form applies to this time scale")
    return delta_integral(RECIPROCAL, T, T.snap(1.0), s, cfg)


def log_fn(T: TimeScale, cfg: IntegrationConfig = DEFAULT_CONFIG) -> ScaleFn:
    """``L_T`` as a ScaleFn whose increments are integrated directly."""
    _check_anchor(T)
    return ScaleFn(
        lambda t: log_ts(T, t, cfg, method="integral"),
        increment=lambda s, t: delta_integral(RECIPROCAL, T, s, t, cfg),
        name="log",
    )


def log_table(T: TimeScale, cfg: IntegrationConfig = DEFAULT_CONFIG, grid_n: int = 33, method: str = "auto") -> list:
    """``(t, L_T(t))`` at every scattered point and ``grid_n`` samples per dense component.

    Values are accumulated outward from 1 piece by piece.
    """
    _check_anchor(T)
    one = T.snap(1.0)
    pts = sorted({p for p in T.test_points(grid_n) if p > 0} | {one})
    use_closed = method != "integral" and closed_form_for(T.origin).family != "none"
    if use_closed:
        form = closed_form_for(T.origin)
        return [(p, form(p)) for p in pts]
    i0 = pts.index(one)
    vals = [0.0] * len(pts)
    for i in range(i0 + 1, len(pts)):
        vals[i] = vals[i - 1] + delta_integral(RECIPROCAL, T, pts[i - 1], pts[i], cfg)
    for i in range(i0 - 1, -1, -1):
        vals[i] = vals[i + 1] - delta_integral(RECIPROCAL, T, pts[i], pts[i + 1], cfg)
    return list(zip(pts, vals))


# -- identity verifiers ---------------------------------------------------------


def _positive_point(T: TimeScale, t: float, name: str) -> float:
    if not t > 0:
        raise PreconditionError(f"{name} must be positive, got {t!r}")
    try:
        return T.snap(t)
    except NotInScaleError:
        raise PreconditionError(f"{name} = {t!r} is not a point of the time scale") from None


def _L(T, t, cfg):
    return log_ts(T, t, cfg, method="integral")


def sigma_recurrence_residual(T: TimeScale, t: float, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float | None = None) -> Residual:
    """``L(σ(t))`` against ``L(t) + μ(t)/t``."""
    _check_anchor(T)
    s = _positive_point(T, t, "t")
    if s == T.max:
        raise PreconditionError("t must not be the maximum of the time scale")
    sig = T.sigma(s)
    tol = default_tol(T) if tol is None else tol
    return Residual.compare(_L(T, sig, cfg), _L(T, s, cfg) + (sig - s) / s, tol, "sigma", t=s)


def product_identity_residual(T: TimeScale, a: float, b: float, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float | None = None) -> Residual:
    """``L_T(ab)`` against ``L_T(a) + L_{T/a}(b)``."""
    _check_anchor(T)
    a = _positive_point(T, a, "a")
    if not b > 0:
        raise PreconditionError(f"b must be positive, got {b!r}")
    ab = _positive_point(T, a * b, "a*b")
    Ta = scale_div(T, a)
    if not Ta.contains(b):
        raise RuntimeError(f"internal inconsistency: {b!r} not in T/{a!r} although a*b is in T")
    b = Ta.snap(b)
    tol = default_tol(T) if tol is None else tol
    return Residual.compare(_L(T, ab, cfg), _L(T, a, cfg) + _L(Ta, b, cfg), tol, "product", a=a, b=b)


def power_sum_residual(T: TimeScale, a: float, n: int, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float | None = None) -> Residual:
    """``L_T(a^n)`` against ``sum_{k<n} L_{T/a^k}(a)``."""
    _check_anchor(T)
    if not a > 0:
        raise PreconditionError(f"a must be positive, got {a!r}")
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n!r}")
    powers = [_positive_point(T, a**k, f"a^{k}") for k in range(n + 1)]
    terms = []
    for k in range(n):
        Tk = scale_div(T, powers[k])
        if not Tk.contains(a):
            raise RuntimeError(f"internal inconsistency: {a!r} not in T/a^{k}")
        terms.append(_L(Tk, Tk.snap(a), cfg))
    tol = default_tol(T) if tol is None else tol
    return Residual.compare(_L(T, powers[n], cfg), math.fsum(terms), tol, "power", a=a, n=n)


def quotient_identity_residual(T: TimeScale, x: float, y: float, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float | None = None) -> Residual:
    """``L_T(x/y)`` against ``L_T(x) - L_{(yT)/x}(y)``.

    The scale ``(yT)/x`` is formed as ``T/(x/y)``: the same set, one rounding
    per point instead of two.
    """
    _check_anchor(T)
    x = _positive_point(T, x, "x")
    if not y > 0:
        raise PreconditionError(f"y must be positive, got {y!r}")
    z = _positive_point(T, x / y, "x/y")
    Tz = scale_div(T, z)
    if not Tz.contains(y):
        raise RuntimeError(f"internal inconsistency: {y!r} not in (yT)/x")
    tol = default_tol(T) if tol is None else tol
    return Residual.compare(_L(T, z, cfg), _L(T, x, cfg) - _L(Tz, Tz.snap(y), cfg), tol, "quotient", x=x, y=y)


def reciprocal_identity_residual(T: TimeScale, y: float, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float | None = None) -> Residual:
    """``L_T(1/y)`` against ``-L_{yT}(y)``, with ``yT`` built by multiplication."""
    _check_anchor(T)
    if not y > 0:
        raise PreconditionError(f"y must be positive, got {y!r}")
    z = _positive_point(T, 1.0 / y, "1/y")
    yT = scale_mul(y, T)
    if not yT.contains(y):
        raise RuntimeError(f"internal inconsistency: {y!r} not in yT")
    tol = default_tol(T) if tol is None else tol
    return Residual.compare(_L(T, z, cfg), -_L(yT, yT.snap(y), cfg), tol, "reciprocal", y=y)


def chain_rule_residual(
    p,
    T: TimeScale,
    t: float,
    cfg: IntegrationConfig = DEFAULT_CONFIG,
    p_delta=None,
    tol: float | None = None,
) -> Residual:
    """``(L_{p(T)} ∘ p)^Δ(t)`` against ``p^Δ(t) / p(t)``.

    ``p`` must be strictly increasing and positive on ``T`` and hit 1
    somewhere, so that ``L_{p(T)}`` is anchored. ``p_delta`` overrides the
    computed delta derivative of ``p`` when given.
    """
    p = as_scale_fn(p)
    s = T.snap(t)
    if s == T.max:
        raise PreconditionError("t must not be the maximum of the time scale")
    Tp = image_under_monotone(p, T)
    if not Tp.min > 0:
        raise PreconditionError("p must be positive on the time scale")
    if not Tp.contains(1.0):
        raise PreconditionError("p(T) must contain 1 (p(t0) = 1 for some t0 in T)")
    one = Tp.snap(1.0)

    def composite(u):
        return delta_integral(RECIPROCAL, Tp, one, Tp.snap(p(u)), cfg)

    def composite_increment(u, v):
        return delta_integral(RECIPROCAL, Tp, Tp.snap(p(u)), Tp.snap(p(v)), cfg)

    lhs = delta_derivative(ScaleFn(composite, increment=composite_increment), T, s, cfg)
    if p_delta is not None:
        pd_value, pd_err = float(p_delta(s)), 0.0
    else:
        pd = delta_derivative(p, T, s, cfg)
        pd_value, pd_err = pd.value, pd.err_estimate
    ps = p(s)
    tol = (default_tol(T) if tol is None else tol) + lhs.err_estimate + pd_err / ps
    return Residual.compare(lhs.value, pd_value / ps, tol, "chain", t=s)


# -- sweeps ---------------------------------------------------------------------


def admissible_points(T: TimeScale, grid_n: int = 33) -> list:
    """Positive test points of ``T``: all scattered points plus dense-component grids."""
    return [p for p in T.test_points(grid_n) if p > 0]


def sweep(kind: str, T: TimeScale, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float | None = None, grid_n: int = 33, p=None, max_n: int = 64) -> list:
    """Run one identity verifier over every admissible parameter combination."""
    pts = admissible_points(T, grid_n)
    top = T.max
    out = []
    if kind == "product":
        for a in pts:
            for t in pts:
                out.append(product_identity_residual(T, a, t / a, cfg, tol))
    elif kind == "quotient":
        for x in pts:
            for z in pts:
                out.append(quotient_identity_residual(T, x, x / z, cfg, tol))
    elif kind == "power":
        for a in pts:
            if a == 1.0:
                continue
            n = 0
            while n < max_n and T.contains(a ** (n + 1)):
                n += 1
            for m in range(1, n + 1):
                out.append(power_sum_residual(T, a, m, cfg, tol))
    elif kind == "sigma":
        out = [sigma_recurrence_residual(T, t, cfg, tol) for t in pts if t != top]
    elif kind == "chain":
        if p is None:
            raise PreconditionError("the chain-rule sweep needs a function p")
        out = [chain_rule_residual(p, T, t, cfg, tol=tol) for t in pts if t != top]
    else:
        raise ValueError(f"unknown identity kind {kind!r}")
    return out
