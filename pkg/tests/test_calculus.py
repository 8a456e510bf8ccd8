import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_delta_sum, random_rational_points
from tslog import (
    IntegrationConfig,
    PreconditionError,
    QuadratureError,
    ScaleFn,
    ScaleSpec,
    TimeScale,
    adaptive_simpson,
    build,
    delta_derivative,
    delta_integral,
    delta_second_derivative,
    from_points,
    integrate,
    left_derivative,
    log_fn,
)

NAT = build(ScaleSpec("N", (1, 10)))
UNIT = TimeScale([(0, 1)])
MIXED = TimeScale([(0, 1), (2, 2), (3, 4), (6, 6)])
square = ScaleFn(lambda t: t * t, lambda t: 2 * t)


# -- quadrature -------------------------------------------------------------------


def test_adaptive_simpson_polynomial_and_log():
    v, err = adaptive_simpson(lambda x: x**3 - x, 0.0, 2.0)
    assert v == pytest.approx(2.0, abs=1e-13)
    v, err = adaptive_simpson(lambda x: 1 / x, 1.0, math.e, tol=1e-12)
    assert abs(v - 1.0) <= 1e-12 and err <= 1e-12
    v, _ = adaptive_simpson(math.sin, math.pi, 0.0)
    assert v == pytest.approx(-2.0, abs=1e-10)


def test_adaptive_simpson_reports_non_convergence():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: math.sin(1 / x) if x else 0.0, 0.0, 1.0, tol=1e-14, max_depth=8)


def test_config_validation():
    with pytest.raises(ValueError):
        IntegrationConfig(quad_tol=0)
    with pytest.raises(ValueError):
        IntegrationConfig(max_depth=0)


# -- derivative -------------------------------------------------------------------


def test_derivative_of_log_on_naturals():
    d = delta_derivative(log_fn(NAT), NAT, 3)
    assert d.value == pytest.approx(1 / 3, abs=1e-15)
    assert d.method == "exact-scattered" and d.err_estimate == 0


def test_derivative_dense_with_callback():
    d = delta_derivative(square, UNIT, 0.5)
    assert d.value == 1.0 and d.method == "exact-callback" and d.err_estimate == 0


def test_derivative_dense_extrapolated():
    d = delta_derivative(lambda t: math.exp(t), UNIT, 0.3)
    assert d.method == "extrapolated-limit"
    assert abs(d.value - math.exp(0.3)) <= max(d.err_estimate, 1e-12) * 10
    assert abs(d.value - math.exp(0.3)) < 1e-8
    # close to the right edge the steps stay inside the component
    d = delta_derivative(lambda t: t**3, UNIT, 1 - 1e-4)
    assert d.value == pytest.approx(3 * (1 - 1e-4) ** 2, rel=1e-7)


def test_derivative_scattered_forward_quotient():
    d = delta_derivative(lambda t: t * t, NAT, 3)
    assert d.value == 7 == 3 + NAT.sigma(3)
    # right edge of a dense component jumps to the next point
    assert delta_derivative(lambda t: t * t, MIXED, 1).value == (4 - 1) / 1


def test_derivative_undefined_at_max():
    with pytest.raises(PreconditionError):
        delta_derivative(square, NAT, 10)


def test_left_derivative():
    assert left_derivative(lambda t: t**3, MIXED, 1).value == pytest.approx(3, abs=1e-8)
    with pytest.raises(PreconditionError):
        left_derivative(square, NAT, 3)


def test_second_derivative():
    assert delta_second_derivative(lambda t: t * t, NAT, 3).value == 2
    d = delta_second_derivative(log_fn(NAT), NAT, 3)
    assert d.value == pytest.approx(1 / 4 - 1 / 3, abs=1e-15)
    for T, t in ((NAT, 4), (UNIT, 0.4), (MIXED, 3.5), (MIXED, 1)):
        assert abs(delta_second_derivative(lambda s: s, T, t).value) < 1e-6
    d = delta_second_derivative(square, UNIT, 0.25)
    assert d.value == pytest.approx(2.0, abs=1e-8)
    with pytest.raises(PreconditionError):
        delta_second_derivative(square, NAT, 9)


# -- integral ---------------------------------------------------------------------


def test_integral_examples():
    assert delta_integral(lambda t: 1 / t, NAT, 1, 4) == pytest.approx(11 / 6, abs=1e-15)
    R = build(ScaleSpec("R", (0.5, 3)))
    assert abs(delta_integral(lambda t: 1 / t, R, 1, math.e) - 1) <= 1e-10
    for T, a in ((NAT, 5), (R, 2.2), (MIXED, 2)):
        assert delta_integral(lambda t: t**2, T, a, a) == 0.0


def test_integral_mixed_by_hand():
    # [0,1] ∪ {2} ∪ [3,4] ∪ {6}, f = t: 1/2 + 1*1 + 2*1 + (16-9)/2 + 4*2
    v, err = integrate(lambda t: t, MIXED, 0, 6)
    assert v == pytest.approx(0.5 + 1 + 2 + 3.5 + 8, abs=1e-12)
    assert err >= 0


def test_integral_endpoint_errors():
    with pytest.raises(Exception):
        delta_integral(lambda t: t, NAT, 1, 2.5)


def test_integral_nonfinite_integrand():
    with pytest.raises(ArithmeticError):
        delta_integral(lambda t: math.inf, NAT, 1, 3)


@pytest.mark.parametrize("seed", range(10))
def test_integral_matches_brute_force_sum(seed):
    rng = random.Random(seed)
    pts = [float(p) for p in random_rational_points(rng)]
    T = from_points(pts)

    def f(t):
        return 1.0 / t + t

    got = delta_integral(f, T, pts[0], pts[-1])
    want = brute_delta_sum(pts, f)
    assert abs(got - want) <= 1e-13 * abs(want)


def test_integral_exact_on_rationals():
    rng = random.Random(42)
    pts = random_rational_points(rng)
    T = from_points([float(p) for p in pts])
    want = sum((b - a) * (1 / a) for a, b in zip(pts, pts[1:]))
    assert delta_integral(lambda t: 1 / t, T, float(pts[0]), float(pts[-1])) == pytest.approx(
        float(want), rel=1e-15
    )


# -- properties -------------------------------------------------------------------

TOL = IntegrationConfig().quad_tol
positions = st.lists(st.sampled_from(MIXED.test_points(9)), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(positions, st.floats(-3, 3), st.floats(-3, 3))
def test_linearity_additivity_orientation(abc, alpha, beta):
    a, c, b = sorted(abc)
    f = math.cos
    g = lambda t: t * t  # noqa: E731
    fg = lambda t: alpha * f(t) + beta * g(t)  # noqa: E731
    lhs = delta_integral(fg, MIXED, a, b)
    rhs = alpha * delta_integral(f, MIXED, a, b) + beta * delta_integral(g, MIXED, a, b)
    assert abs(lhs - rhs) <= 2 * TOL * (1 + abs(alpha) + abs(beta))
    split = delta_integral(f, MIXED, a, c) + delta_integral(f, MIXED, c, b)
    assert abs(split - delta_integral(f, MIXED, a, b)) <= 2 * TOL
    assert delta_integral(f, MIXED, b, a) == -delta_integral(f, MIXED, a, b)


@pytest.mark.parametrize("t", [p for p in MIXED.test_points(9) if p != 6])
def test_fundamental_relation(t):
    f = math.cos
    t0 = 0.0
    F = ScaleFn(
        lambda s: delta_integral(f, MIXED, t0, s),
        increment=lambda s, u: delta_integral(f, MIXED, s, u),
    )
    d = delta_derivative(F, MIXED, t)
    if MIXED.sigma(t) > t:
        assert d.value == pytest.approx(f(t), abs=1e-15)
    else:
        assert abs(d.value - f(t)) <= d.err_estimate + TOL


def test_scattered_sum_is_exact_for_dyadics():
    pts = [Fraction(k, 8) for k in range(8, 40, 3)]
    T = from_points([float(p) for p in pts])
    want = sum((b - a) * a * a for a, b in zip(pts, pts[1:]))
    assert delta_integral(lambda t: t * t, T, 1.0, float(pts[-1])) == float(want)
