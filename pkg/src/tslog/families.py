"""Named time-scale families materialized inside a bounded window."""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass

from tslog.core import DEFAULT_EPS, TimeScale
from tslog.errors import TimeScaleError

KINDS = ("R", "Z", "N", "hZ", "qN0", "qZ", "custom")

# Hard cap on materialized points; protects against windows like N ∩ [1, 1e12].
MAX_POINTS = 1_000_000


@dataclass(frozen=True)
class ScaleSpec:
    """Serializable description of a time scale.

    ``kind`` selects the family; ``h`` parameterizes ``hZ``, ``q`` the
    geometric families, and ``components`` the custom kind.
    """

    kind: str
    window: tuple
    q: float | None = None
    h: float | None = None
    components: tuple | None = None
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.kind not in KINDS:
            raise TimeScaleError(f"unknown scale kind {self.kind!r}; expected one of {KINDS}")
        try:
            lo, hi = (float(x) for x in self.window)
        except (TypeError, ValueError):
            raise TimeScaleError(f"window must be a pair of numbers, got {self.window!r}") from None
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise TimeScaleError(f"window must satisfy lo <= hi, got {self.window!r}")
        object.__setattr__(self, "window", (lo, hi))
        if self.kind in ("qN0", "qZ"):
            if self.q is None or not float(self.q) > 1:
                raise TimeScaleError(f"{self.kind} needs q > 1, got {self.q!r}")
            object.__setattr__(self, "q", float(self.q))
        if self.kind == "hZ":
            if self.h is None or not float(self.h) > 0:
                raise TimeScaleError(f"hZ needs h > 0, got {self.h!r}")
            object.__setattr__(self, "h", float(self.h))
        if self.kind == "custom":
            if not self.components:
                raise TimeScaleError("custom scales need a non-empty components list")
            try:
                comps = tuple((float(a), float(b)) for a, b in self.components)
            except (TypeError, ValueError):
                raise TimeScaleError(f"bad components {self.components!r}") from None
            object.__setattr__(self, "components", comps)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.q is not None:
            d["q"] = self.q
        if self.h is not None:
            d["h"] = self.h
        if self.components is not None:
            d["components"] = [list(c) for c in self.components]
        d["window"] = list(self.window)
        if self.eps != DEFAULT_EPS:
            d["eps"] = self.eps
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ScaleSpec:
        if not isinstance(d, dict) or "kind" not in d:
            raise TimeScaleError(f"scale spec must be an object with a 'kind', got {d!r}")
        unknown = set(d) - {"kind", "window", "q", "h", "components", "eps"}
        if unknown:
            raise TimeScaleError(f"unknown scale spec fields: {sorted(unknown)}")
        window = d.get("window")
        if window is None:
            if d["kind"] != "custom" or not d.get("components"):
                raise TimeScaleError(f"scale kind {d['kind']!r} needs a window")
            flat = [float(x) for c in d["components"] for x in c]
            window = (min(flat), max(flat))
        comps = d.get("components")
        return cls(
            kind=d["kind"],
            window=tuple(window),
            q=d.get("q"),
            h=d.get("h"),
            components=tuple(tuple(c) for c in comps) if comps is not None else None,
            eps=float(d.get("eps", DEFAULT_EPS)),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> ScaleSpec:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TimeScaleError(f"invalid scale spec JSON: {exc}") from None
        return cls.from_dict(d)


def _integer_range(lo: float, hi: float, lo_min: float | None = None):
    start = math.ceil(lo - 1e-9 * max(1.0, abs(lo)))
    if lo_min is not None:
        start = max(start, lo_min)
    stop = math.floor(hi + 1e-9 * max(1.0, abs(hi)))
    if stop - start + 1 > MAX_POINTS:
        raise TimeScaleError(f"window [{lo}, {hi}] would materialize more than {MAX_POINTS} points")
    return range(start, stop + 1)


def _geometric(q: float, lo: float, hi: float, k_min: int):
    pts = []
    k = k_min
    slack = 1 + 1e-12
    while True:
        v = q**k
        if v > hi * slack:
            break
        if v >= lo / slack and v > 0:
            pts.append(v)
        k += 1
        if len(pts) > MAX_POINTS:
            raise TimeScaleError(f"geometric window would materialize more than {MAX_POINTS} points")
    return pts


@functools.lru_cache(maxsize=256)
def build(spec: ScaleSpec) -> TimeScale:
    """Materialize ``spec`` within its window.

    >>> build(ScaleSpec("qN0", (1, 16), q=2)).points
    (1.0, 2.0, 4.0, 8.0, 16.0)

    Raises:
        TimeScaleError: if the family has no points in the window.
    """
    lo, hi = spec.window
    if spec.kind == "R":
        comps = [(lo, hi)]
    elif spec.kind == "Z":
        comps = [(float(k), float(k)) for k in _integer_range(lo, hi)]
    elif spec.kind == "N":
        comps = [(float(k), float(k)) for k in _integer_range(lo, hi, lo_min=1)]
    elif spec.kind == "hZ":
        h = spec.h
        comps = [(k * h, k * h) for k in _integer_range(lo / h, hi / h)]
    elif spec.kind == "qN0":
        comps = [(v, v) for v in _geometric(spec.q, lo, hi, 0)]
    elif spec.kind == "qZ":
        if lo < 0:
            raise TimeScaleError("qZ windows need lo >= 0 (the closure only adds the point 0)")
        if lo > 0:
            k_min = math.floor(math.log(lo) / math.log(spec.q)) - 1
            pts = _geometric(spec.q, lo, hi, k_min)
        else:
            # Powers that would snap onto 0 are dropped; 0 stays isolated.
            floor = max(10 * spec.eps, 1e-12)
            k_min = math.floor(math.log(floor) / math.log(spec.q)) + 1
            pts = [v for v in _geometric(spec.q, floor, hi, k_min) if v > floor]
            pts.insert(0, 0.0)
        comps = [(v, v) for v in pts]
    else:
        comps = [(max(a, lo), min(b, hi)) for a, b in spec.components if b >= lo and a <= hi]
    if not comps:
        raise TimeScaleError(f"{spec.kind} has no points in window [{lo}, {hi}]")
    return TimeScale(comps, eps=spec.eps, origin=spec)
