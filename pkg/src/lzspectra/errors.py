"""Exception types shared by all modules."""


class SpectraError(Exception):
    pass


class DomainError(SpectraError, ValueError):
    """Input outside the domain of an operation."""


class PoleError(SpectraError, ZeroDivisionError):
    """Evaluation at (or numerically on top of) a pole of ``1/sin(pi mu)``."""

    def __init__(self, mu: complex, nearest: int):
        super().__init__(f"pole of 1/sin(pi*mu) at mu={mu!r} (nearest integer {nearest})")
        self.mu = mu
        self.nearest = nearest


class AccuracyError(SpectraError, ArithmeticError):
    """A truncated series could not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved {achieved:.3g})")
        self.achieved = achieved
