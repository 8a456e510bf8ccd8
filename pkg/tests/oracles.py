"""Independent reference computations for the test-suite.

These work on plain sorted lists of points with exact rationals and never
touch tslog, so they can check it.
"""

import random
from fractions import Fraction


def harmonic_direct(n):
    """H_n by direct summation in exact arithmetic."""
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def exact_log(points, t):
    """L(t) = sum of mu(s)/s over the points between 1 and t (signed), exactly."""
    pts = sorted(Fraction(p) for p in points)
    t = Fraction(t)
    one = Fraction(1)
    assert one in pts and t in pts
    lo, hi = min(one, t), max(one, t)
    total = Fraction(0)
    for s, nxt in zip(pts, pts[1:]):
        if lo <= s < hi:
            total += (nxt - s) / s
    return total if t >= one else -total


def brute_delta_sum(points, f):
    """sum f(t_i) * (t_{i+1} - t_i) over a sorted list of floats, naively."""
    total = 0.0
    for s, nxt in zip(points, points[1:]):
        total += f(s) * (nxt - s)
    return total


def random_rational_points(rng: random.Random, n_min=6, n_max=18, with_one=True):
    """Sorted distinct positive rationals with small denominators (1 included)."""
    pts = {Fraction(1)} if with_one else set()
    target = rng.randint(n_min, n_max)
    while len(pts) < target:
        den = rng.randint(1, 6)
        num = rng.randint(1, 12 * den)
        pts.add(Fraction(num, den))
    return sorted(pts)
