"""Finite time scales: canonical components, jump operators and scale arithmetic.

A time scale is stored as a sorted tuple of disjoint closed components
``(lo, hi)``; an isolated point is the degenerate component ``lo == hi``.
Membership is decided up to a snapping tolerance ``eps * max(unit, |t|)``,
where ``unit`` is the reference magnitude of the scale (1 for freshly built
scales, rescaled along with the points by ``scale_div``/``scale_mul``).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple

from tslog.errors import NotInScaleError, PreconditionError, TimeScaleError

DEFAULT_EPS = 1e-9


class Segment(NamedTuple):
    """A piece of ``T ∩ [a, b]``: a dense interval or (lo == hi) a single point."""

    lo: float
    hi: float

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class PointClass:
    """Classification of a point by its jump operators."""

    tags: frozenset

    @property
    def right_scattered(self) -> bool:
        return "right-scattered" in self.tags

    @property
    def right_dense(self) -> bool:
        return "right-dense" in self.tags

    @property
    def left_scattered(self) -> bool:
        return "left-scattered" in self.tags

    @property
    def left_dense(self) -> bool:
        return "left-dense" in self.tags

    @property
    def isolated(self) -> bool:
        return "isolated" in self.tags

    @property
    def dense(self) -> bool:
        return "dense" in self.tags

    def __contains__(self, tag: str) -> bool:
        return tag in self.tags


@dataclass(frozen=True)
class TimeScale:
    """Canonical finite union of disjoint closed intervals.

    Construct with any iterable of ``(lo, hi)`` pairs; they are sorted and
    merged whenever they overlap, touch, or are separated by a gap within the
    snapping tolerance.

    >>> T = TimeScale([(2, 2), (0, 1), (1, 1)])
    >>> T.components
    ((0.0, 1.0), (2.0, 2.0))
    >>> T.sigma(1)
    2.0
    """

    components: tuple = ()
    eps: float = DEFAULT_EPS
    unit: float = 1.0
    origin: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not (self.eps >= 0 and math.isfinite(self.eps)):
            raise TimeScaleError(f"eps must be a finite non-negative number, got {self.eps!r}")
        if not (self.unit > 0 and math.isfinite(self.unit)):
            raise TimeScaleError(f"unit must be positive, got {self.unit!r}")
        raw = []
        for comp in self.components:
            lo, hi = (float(x) for x in comp)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise TimeScaleError(f"component bounds must be finite, got {comp!r}")
            if lo > hi:
                raise TimeScaleError(f"component has lo > hi: {comp!r}")
            if hi - lo <= self.tol(lo):
                hi = lo  # narrower than the snapping resolution
            raw.append((lo, hi))
        if not raw:
            raise TimeScaleError("a time scale needs at least one point")
        raw.sort()
        merged = [raw[0]]
        for lo, hi in raw[1:]:
            plo, phi = merged[-1]
            if lo - phi <= self.tol(phi):
                if plo == phi and lo == hi:
                    continue  # two copies of one isolated point
                merged[-1] = (plo, max(phi, hi))
            else:
                merged.append((lo, hi))
        object.__setattr__(self, "components", tuple(merged))
        object.__setattr__(self, "_los", tuple(c[0] for c in merged))

    # -- basic shape -----------------------------------------------------

    def tol(self, t: float) -> float:
        """Snapping tolerance at magnitude ``t``."""
        return self.eps * max(self.unit, abs(t))

    @property
    def min(self) -> float:
        return self.components[0][0]

    @property
    def max(self) -> float:
        return self.components[-1][1]

    @property
    def is_scattered(self) -> bool:
        """True when every component is an isolated point."""
        return all(lo == hi for lo, hi in self.components)

    @property
    def points(self) -> tuple:
        """The isolated points (degenerate components), in order."""
        return tuple(lo for lo, hi in self.components if lo == hi)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator:
        return iter(self.components)

    # -- membership ------------------------------------------------------

    def _locate(self, t: float):
        """Return ``(index, snapped_t)`` or None when ``t`` is not in the scale."""
        t = float(t)
        if not math.isfinite(t):
            return None
        i = bisect.bisect_right(self._los, t) - 1
        best = None
        for j in (i, i + 1):
            if 0 <= j < len(self.components):
                lo, hi = self.components[j]
                if lo <= t <= hi:
                    return j, t
                d = lo - t if t < lo else t - hi
                if d <= self.tol(t) and (best is None or d < best[0]):
                    best = (d, j, lo if t < lo else hi)
        if best is None:
            return None
        return best[1], best[2]

    def contains(self, t: float) -> bool:
        return self._locate(t) is not None

    __contains__ = contains

    def snap(self, t: float) -> float:
        """The scale point that ``t`` snaps to; raises NotInScaleError otherwise."""
        loc = self._locate(t)
        if loc is None:
            raise NotInScaleError(t)
        return loc[1]

    def _require(self, t):
        loc = self._locate(t)
        if loc is None:
            raise NotInScaleError(t)
        return loc

    # -- jump operators --------------------------------------------------

    def sigma(self, t: float) -> float:
        """Forward jump: the next scale point, or ``t`` itself if right-dense or maximal."""
        i, s = self._require(t)
        if s < self.components[i][1] or i == len(self.components) - 1:
            return s
        return self.components[i + 1][0]

    def rho(self, t: float) -> float:
        """Backward jump: the previous scale point, or ``t`` itself if left-dense or minimal."""
        i, s = self._require(t)
        if s > self.components[i][0] or i == 0:
            return s
        return self.components[i - 1][1]

    def mu(self, t: float) -> float:
        """Graininess ``sigma(t) - t`` (at the snapped point)."""
        s = self.snap(t)
        return self.sigma(s) - s

    def classify(self, t: float) -> PointClass:
        s = self.snap(t)
        sig, rh = self.sigma(s), self.rho(s)
        tags = set()
        if s == self.max:
            tags.add("max-point")
        elif sig > s:
            tags.add("right-scattered")
        else:
            tags.add("right-dense")
        if s == self.min:
            tags.add("min-point")
        elif rh < s:
            tags.add("left-scattered")
        else:
            tags.add("left-dense")
        if {"right-scattered", "left-scattered"} <= tags:
            tags.add("isolated")
        if {"right-dense", "left-dense"} <= tags:
            tags.add("dense")
        return PointClass(frozenset(tags))

    def component_of(self, t: float) -> tuple:
        """The component ``(lo, hi)`` holding ``t``."""
        i, _ = self._require(t)
        return self.components[i]

    # -- decomposition ---------------------------------------------------

    def enumerate_range(self, a: float, b: float) -> list:
        """Partition ``T ∩ [a, b]`` into ordered dense intervals and points."""
        _, a = self._require(a)
        _, b = self._require(b)
        if a > b:
            raise PreconditionError(f"enumerate_range needs a <= b, got {a!r} > {b!r}")
        out = []
        i = bisect.bisect_right(self._los, a) - 1
        for lo, hi in self.components[max(i, 0):]:
            if lo > b:
                break
            c, d = max(lo, a), min(hi, b)
            if c <= d:
                out.append(Segment(c, d))
        return out

    def restrict(self, lo: float, hi: float) -> TimeScale:
        """``T ∩ [lo, hi]`` as a time scale of its own."""
        comps = [(max(c, lo), min(d, hi)) for c, d in self.components if d >= lo and c <= hi]
        if not comps:
            raise TimeScaleError(f"time scale has no points in [{lo!r}, {hi!r}]")
        return TimeScale(comps, eps=self.eps, unit=self.unit)

    def test_points(self, grid_n: int = 33, lo: float | None = None, hi: float | None = None) -> list:
        """Scattered points plus ``grid_n`` evenly spaced samples per dense component."""
        lo = -math.inf if lo is None else lo
        hi = math.inf if hi is None else hi
        pts = []
        for c, d in self.components:
            c, d = max(c, lo), min(d, hi)
            if c > d:
                continue
            if c == d:
                pts.append(c)
            else:
                m = max(grid_n, 2)
                pts.extend(c + (d - c) * k / (m - 1) for k in range(m - 1))
                pts.append(d)
        return sorted(set(pts))

    # -- comparison --------------------------------------------------------

    def isclose(self, other: TimeScale) -> bool:
        """Same components up to the snapping tolerance of either scale."""
        if len(self.components) != len(other.components):
            return False
        for (a, b), (c, d) in zip(self.components, other.components):
            for x, y in ((a, c), (b, d)):
                if abs(x - y) > max(self.tol(x), other.tol(y)):
                    return False
        return True

    def to_components(self) -> list:
        return [list(c) for c in self.components]


# -- module-level operator spellings ------------------------------------------


def contains(T: TimeScale, t: float) -> bool:
    return T.contains(t)


def sigma(T: TimeScale, t: float) -> float:
    return T.sigma(t)


def rho(T: TimeScale, t: float) -> float:
    return T.rho(t)


def mu(T: TimeScale, t: float) -> float:
    return T.mu(t)


def classify(T: TimeScale, t: float) -> PointClass:
    return T.classify(t)


def enumerate_range(T: TimeScale, a: float, b: float) -> list:
    return T.enumerate_range(a, b)


def from_points(points: Iterable[float], eps: float = DEFAULT_EPS) -> TimeScale:
    """A purely scattered time scale."""
    return TimeScale([(p, p) for p in points], eps=eps)


# -- scale arithmetic ---------------------------------------------------------


def scale_div(T: TimeScale, a: float) -> TimeScale:
    """The time scale ``T/a = {t/a : t in T}`` for ``a > 0``."""
    a = float(a)
    if not a > 0:
        raise PreconditionError(f"scale_div needs a > 0, got {a!r}")
    if a == 1.0:
        return T
    return TimeScale(
        [(lo / a, hi / a) for lo, hi in T.components], eps=T.eps, unit=T.unit / a
    )


def scale_mul(y: float, T: TimeScale) -> TimeScale:
    """The time scale ``yT = {y*t : t in T}`` for ``y > 0``."""
    y = float(y)
    if not y > 0:
        raise PreconditionError(f"scale_mul needs y > 0, got {y!r}")
    if y == 1.0:
        return T
    return TimeScale(
        [(lo * y, hi * y) for lo, hi in T.components], eps=T.eps, unit=T.unit * y
    )


def image_under_monotone(
    p: Callable[[float], float],
    T: TimeScale,
    p_delta: Callable[[float], float] | None = None,
    samples: int = 65,
) -> TimeScale:
    """The time scale ``p(T)`` for a strictly increasing ``p``.

    Monotonicity is checked on every scattered point and on ``samples``
    evenly spaced points of each dense component; when ``p_delta`` is given
    it must also be non-negative on the dense samples.

    Raises:
        PreconditionError: if ``p`` is not strictly increasing on the checked points.
    """
    pts = T.test_points(samples)
    vals = [float(p(t)) for t in pts]
    for s, t, ps, pt in zip(pts, pts[1:], vals, vals[1:]):
        if not ps < pt:
            raise PreconditionError(
                f"p is not strictly increasing: p({s!r}) = {ps!r} >= p({t!r}) = {pt!r}"
            )
    if p_delta is not None:
        for lo, hi in T.components:
            if lo < hi:
                for t in T.test_points(samples, lo, hi):
                    if p_delta(t) < 0:
                        raise PreconditionError(f"p_delta({t!r}) < 0 on a dense component")
    if not all(math.isfinite(v) for v in vals):
        raise PreconditionError("p is not finite on the time scale")
    comps = [(float(p(lo)), float(p(hi))) if lo < hi else (float(p(lo)),) * 2 for lo, hi in T.components]
    return TimeScale(comps, eps=T.eps)
