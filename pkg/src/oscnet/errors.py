"""Exception types, grouped by the CLI exit code they map to."""


class OscnetError(Exception):
    """Base class for all library errors."""

    exit_code = 1
    code = "error"


class InputError(OscnetError, ValueError):
    """Malformed input: schema violation, bad dimensions, bad indices."""

    exit_code = 2
    code = "input"

    def __init__(self, msg, path=None):
        self.path = path
        super().__init__(f"{path}: {msg}" if path else msg)


class PhysicalError(OscnetError, ValueError):
    """Physically invalid request, e.g. a zero or unstable normal mode."""

    exit_code = 3
    code = "physical"

    def __init__(self, msg, mode=None):
        self.mode = mode
        super().__init__(msg)


class NumericalError(OscnetError, ArithmeticError):
    """Numerical failure: eigensolver non-convergence, negative radicand."""

    exit_code = 4
    code = "numerical"
