"""Exception hierarchy shared by every tslog module."""


class TimeScaleError(ValueError):
    """Invalid time scale description or construction."""


class NotInScaleError(TimeScaleError):
    """A point was required to belong to a time scale but does not."""

    def __init__(self, t, where="time scale"):
        super().__init__(f"{t!r} is not a point of the {where}")
        self.t = t


class PreconditionError(ValueError):
    """Arguments violate the hypotheses of an operation."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach its tolerance within max_depth."""

    def __init__(self, a, b, err, tol):
        super().__init__(
            f"quadrature on [{a!r}, {b!r}] stalled: error estimate {err:.3g} > tol {tol:.3g}"
        )
        self.a, self.b, self.err, self.tol = a, b, err, tol
