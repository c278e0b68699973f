"""Exception types raised by graphdeco."""


class InputError(ValueError):
    """Malformed or inconsistent user input (graphs, operators, configs)."""


class IncompatibleOperatorError(InputError):
    """An operator couples two vertices that are not joined by an edge."""


class PoleError(ValueError):
    """Evaluation requested at (or numerically at) a pole of the spectral map."""


class ConvergenceError(RuntimeError):
    """The Jacobi eigensolver hit its sweep cap."""
