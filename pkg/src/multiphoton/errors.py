class InputDomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateStateError(ArithmeticError):
    """A projection produced the zero state, i.e. the detection event is impossible."""


class EstimationError(RuntimeError):
    """A numeric estimator could not bracket the quantity it measures."""
