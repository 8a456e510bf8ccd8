"""Named functions for the command line, each with its exact derivative."""

import math

from tslog.calculus import ScaleFn

BUILTINS = {
    "linear": ScaleFn(lambda t: t, lambda t: 1.0, name="linear"),
    "double": ScaleFn(lambda t: 2.0 * t, lambda t: 2.0, name="double"),
    "square": ScaleFn(lambda t: t * t, lambda t: 2.0 * t, name="square"),
    "cube": ScaleFn(lambda t: t**3, lambda t: 3.0 * t * t, name="cube"),
    "constant": ScaleFn(lambda t: 1.0, lambda t: 0.0, name="constant"),
    "sqrt": ScaleFn(math.sqrt, lambda t: 0.5 / math.sqrt(t), name="sqrt"),
    "exp": ScaleFn(math.exp, math.exp, name="exp"),
    "reciprocal": ScaleFn(lambda t: 1.0 / t, lambda t: -1.0 / (t * t), name="reciprocal"),
    "abs": ScaleFn(abs, lambda t: math.copysign(1.0, t), name="abs"),
}

# "log" is resolved against the time scale at hand, see cli.
NAMES = ("log", *BUILTINS)
