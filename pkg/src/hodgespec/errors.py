"""Exception hierarchy.

``InputError`` subclasses signal bad user input (CLI exit code 2);
``InvariantError`` signals a failed internal consistency check (exit code 3).
"""


class HodgeSpecError(Exception):
    pass


class InputError(HodgeSpecError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariableError(InputError):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown variable {name!r} at position {position}")


class DimensionError(InputError):
    pass


class NotWeightedHomogeneousError(InputError):
    pass


class NonIsolatedError(InputError):
    pass


class DegenerateError(InputError):
    pass


class NotConvenientError(InputError):
    pass


class SpectrumFormulaError(InputError):
    pass


class SafetyBoundError(HodgeSpecError):
    """m-adic stabilization did not settle within its safety bound."""


class InvariantError(HodgeSpecError):
    """Two routes that must agree did not."""

    def __init__(self, message: str, dump: dict | None = None):
        self.dump = dump or {}
        super().__init__(message)
