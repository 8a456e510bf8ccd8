"""Pure-Python reference kernels.

The float operation sequence mirrors ``_kernels.pyx`` exactly so both
backends return bit-identical results.
"""

BACKEND = "python"


def weighted_sum(values, weights):
    """Neumaier-compensated sum of ``values[i] * weights[i]``."""
    s = 0.0
    c = 0.0
    for v, w in zip(values, weights):
        x = v * w
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def triple_extrema(ts, fs):
    """Extremes of the three-point convexity expression over i < j < k.

    Returns ``(min, (i, j, k), max, (i, j, k))``; index triples are None when
    fewer than three points are given.
    """
    n = len(ts)
    lo = float("inf")
    hi = float("-inf")
    lo_idx = hi_idx = None
    for i in range(n - 2):
        t1 = ts[i]
        f1 = fs[i]
        for j in range(i + 1, n - 1):
            t = ts[j]
            f = fs[j]
            for k in range(j + 1, n):
                t2 = ts[k]
                e = (t2 - t) * f1 + (t1 - t2) * f + (t - t1) * fs[k]
                if e < lo:
                    lo = e
                    lo_idx = (i, j, k)
                if e > hi:
                    hi = e
                    hi_idx = (i, j, k)
    return lo, lo_idx, hi, hi_idx


def slope_extrema(ts, fs):
    """Extremes of the span-weighted slope gap over i < j < k.

    For each triple the left and right chord slopes are formed first; the gap
    ``right - left`` is then weighted by ``(t - t1) * (t2 - t)``.
    """
    n = len(ts)
    lo = float("inf")
    hi = float("-inf")
    lo_idx = hi_idx = None
    for i in range(n - 2):
        t1 = ts[i]
        f1 = fs[i]
        for j in range(i + 1, n - 1):
            t = ts[j]
            f = fs[j]
            dl = t - t1
            left = (f - f1) / dl
            for k in range(j + 1, n):
                dr = ts[k] - t
                g = ((fs[k] - f) / dr - left) * (dl * dr)
                if g < lo:
                    lo = g
                    lo_idx = (i, j, k)
                if g > hi:
                    hi = g
                    hi_idx = (i, j, k)
    return lo, lo_idx, hi, hi_idx
