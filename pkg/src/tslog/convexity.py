"""Convexity and concavity of functions on ``I ∩ T``.

``check_definition`` and ``check_slope_form`` evaluate the three-point
inequality over every ordered triple ``t1 < t < t2`` of the test set
(scattered points plus a grid on each dense component); they are the
authoritative checks. ``check_by_derivative`` and
``check_by_second_derivative`` are sufficient criteria only: a negative
answer from them says nothing about convexity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from tslog import kernels
from tslog.calculus import (
    DEFAULT_CONFIG,
    IntegrationConfig,
    as_scale_fn,
    delta_derivative,
    delta_second_derivative,
    left_derivative,
)
from tslog.core import TimeScale
from tslog.errors import PreconditionError, TimeScaleError

DEFAULT_GRID_N = 33
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ConvexityVerdict:
    """Outcome of a convexity test.

    ``convex_violation`` and ``concave_violation`` are the worst amounts by
    which the respective inequality failed (0 when it always held).
    ``max_violation`` summarizes the verdict: the largest violation among the
    properties reported true, or the smaller of the two when neither holds.
    For the definition-based checks ``witness`` is the triple ``(t1, t, t2)``
    breaking convexity (or concavity, if only that fails); for the derivative
    criteria it is the run of test points where the criterion failed.
    """

    convex: bool
    concave: bool
    witness: tuple | None
    max_violation: float
    convex_violation: float = 0.0
    concave_violation: float = 0.0
    method: str = "definition"
    n_points: int = 0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "convex": self.convex,
            "concave": self.concave,
            "witness": list(self.witness) if self.witness is not None else None,
            "max_violation": self.max_violation,
            "convex_violation": self.convex_violation,
            "concave_violation": self.concave_violation,
            "n_points": self.n_points,
            "note": self.note,
        }


def _verdict(convex, concave, cv, ccv, witness, method, n, note=""):
    if convex and concave:
        mv = max(cv, ccv)
    elif convex:
        mv = cv
    elif concave:
        mv = ccv
    else:
        mv = min(cv, ccv)
    return ConvexityVerdict(convex, concave, witness, mv, cv, ccv, method, n, note)


def _interval(T: TimeScale, I):
    if I is None:
        return T.min, T.max
    lo, hi = (float(x) for x in I)
    if lo > hi:
        raise PreconditionError(f"interval needs lo <= hi, got {I!r}")
    return lo, hi


def _test_set(T: TimeScale, I, grid_n: int):
    lo, hi = _interval(T, I)
    pts = T.test_points(grid_n, lo, hi)
    if not pts:
        raise TimeScaleError(f"I ∩ T is empty for I = [{lo!r}, {hi!r}]")
    return pts


def _expression_tolerance(ts, fs, tol):
    span = ts[-1] - ts[0]
    scale = max(abs(v) for v in fs) * span
    return tol * (scale if scale > 0 else 1.0)


def _triple_check(f, T, I, grid_n, tol, kernel, method):
    f = as_scale_fn(f)
    ts = _test_set(T, I, grid_n)
    if len(ts) <= 2:
        return _verdict(True, True, 0.0, 0.0, None, method, len(ts))
    fs = [float(f(t)) for t in ts]
    if not all(math.isfinite(v) for v in fs):
        raise ArithmeticError("f is not finite on the test set")
    lo, lo_idx, hi, hi_idx = kernel(ts, fs)
    band = _expression_tolerance(ts, fs, tol)
    convex, concave = lo >= -band, hi <= band
    witness = None
    if not convex:
        witness = tuple(ts[i] for i in lo_idx)
    elif not concave:
        witness = tuple(ts[i] for i in hi_idx)
    return _verdict(convex, concave, max(0.0, -lo), max(0.0, hi), witness, method, len(ts))


def check_definition(f, T: TimeScale, I=None, grid_n: int = DEFAULT_GRID_N, tol: float = DEFAULT_TOL) -> ConvexityVerdict:
    """Test ``(t2-t) f(t1) + (t1-t2) f(t) + (t-t1) f(t2) >= 0`` over all triples.

    ``tol`` is relative: it is multiplied by ``max|f| * (max t - min t)`` on
    the test set, the natural size of the expression.
    """
    return _triple_check(f, T, I, grid_n, tol, kernels.triple_extrema, "definition")


def check_slope_form(f, T: TimeScale, I=None, grid_n: int = DEFAULT_GRID_N, tol: float = DEFAULT_TOL) -> ConvexityVerdict:
    """Test that the chord slope left of ``t`` never exceeds the one right of it.

    The slope gap of each triple is weighted by ``(t - t1) * (t2 - t)`` so
    violations are measured in the same units, and against the same band, as
    :func:`check_definition`.
    """
    return _triple_check(f, T, I, grid_n, tol, kernels.slope_extrema, "slope")


def _derivative_chain(f, T, pts, cfg):
    """Delta-derivative values in order, with left limits where ``f^Δ`` may jump."""
    chain = []
    for s in pts:
        pc = T.classify(s)
        if pc.left_dense and pc.right_scattered:
            d = left_derivative(f, T, s, cfg)
            chain.append((s, d.value, d.err_estimate))
        d = delta_derivative(f, T, s, cfg)
        chain.append((s, d.value, d.err_estimate))
    return chain


def _monotone_verdict(chain, tol):
    scale = max((abs(v) for _, v, _ in chain), default=0.0)
    base = tol * (scale if scale > 0 else 1.0)
    worst_down = worst_up = 0.0
    down_at = up_at = None
    for i, ((s, u, eu), (t, v, ev)) in enumerate(zip(chain, chain[1:])):
        band = base + eu + ev
        drop, rise = u - v - band, v - u - band
        if drop > worst_down:
            worst_down, down_at = drop, i
        if rise > worst_up:
            worst_up, up_at = rise, i
    return worst_down, down_at, worst_up, up_at


def check_by_derivative(f, T: TimeScale, I=None, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> ConvexityVerdict:
    """Sufficient test: ``f^Δ`` nondecreasing (convex) or nonincreasing (concave).

    Derivatives are taken on ``I ∩ T`` itself and compared between
    consecutive test points. At a left-dense, right-scattered point the left
    limit of ``f^Δ`` is inserted before its value there, so jumps count.
    """
    f = as_scale_fn(f)
    lo, hi = _interval(T, I)
    pts = _test_set(T, I, grid_n)
    if len(pts) <= 2:
        return _verdict(True, True, 0.0, 0.0, None, "derivative", len(pts))
    TI = T.restrict(lo, hi)
    chain = _derivative_chain(f, TI, [s for s in pts if s != TI.max], cfg)
    down, down_at, up, up_at = _monotone_verdict(chain, tol)
    convex, concave = down_at is None, up_at is None
    witness = None
    bad = down_at if not convex else up_at
    if bad is not None:
        witness = (chain[bad][0], chain[bad + 1][0])
    return _verdict(convex, concave, down, up, witness, "derivative", len(pts))


def check_by_second_derivative(f, T: TimeScale, I=None, cfg: IntegrationConfig = DEFAULT_CONFIG, tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> ConvexityVerdict:
    """Sufficient test: sign of ``f^{Δ²}`` on ``(I ∩ T)^{κ²}``.

    ``f^{Δ²}`` only exists where ``f^Δ`` is continuous; if ``f^Δ`` jumps at a
    left-dense, right-scattered point the criterion is not met and neither
    property is reported.
    """
    f = as_scale_fn(f)
    lo, hi = _interval(T, I)
    pts = _test_set(T, I, grid_n)
    if len(pts) <= 2:
        return _verdict(True, True, 0.0, 0.0, None, "second", len(pts))
    TI = T.restrict(lo, hi)
    inner = [s for s in pts if s != TI.max and TI.sigma(s) != TI.max]
    for s in inner:
        pc = TI.classify(s)
        if pc.left_dense and pc.right_scattered:
            left = left_derivative(f, TI, s, cfg)
            here = delta_derivative(f, TI, s, cfg)
            size = max(abs(left.value), abs(here.value), 1.0)
            if abs(left.value - here.value) > tol * size + left.err_estimate:
                note = f"f^Δ is discontinuous at {s!r}; f^Δ² does not exist there"
                return _verdict(False, False, 0.0, 0.0, (s,), "second", len(pts), note)
    vals = [(s, delta_second_derivative(f, TI, s, cfg)) for s in inner]
    if not vals:
        return _verdict(True, True, 0.0, 0.0, None, "second", len(pts))
    scale = max(abs(d.value) for _, d in vals)
    base = tol * (scale if scale > 0 else 1.0)
    cv = max(0.0, max(-d.value - base - d.err_estimate for _, d in vals))
    ccv = max(0.0, max(d.value - base - d.err_estimate for _, d in vals))
    convex, concave = cv == 0.0, ccv == 0.0
    witness = None
    if not convex and not concave:
        # first sign change of f^Δ²
        for (s, d), (u, e) in zip(vals, vals[1:]):
            if (d.value < -base) != (e.value < -base):
                witness = (s, u)
                break
    elif not (convex and concave):
        key = (lambda sd: sd[1].value) if not convex else (lambda sd: -sd[1].value)
        i = min(range(len(vals)), key=lambda j: key(vals[j]))
        witness = tuple(vals[j][0] for j in range(max(i - 1, 0), min(i + 2, len(vals))))
    return _verdict(convex, concave, cv, ccv, witness, "second", len(pts))
