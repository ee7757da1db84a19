"""Exception hierarchy.

Errors are split by who is at fault: ``InputError`` subclasses mean the caller
handed us something outside the supported domain, ``SolverError`` subclasses
mean a computation could not be certified.  The CLI maps the two families to
exit codes 2 and 3.
"""


class InstantonError(Exception):
    """Base class for every error raised by this package."""


class InputError(InstantonError, ValueError):
    pass


class SolverError(InstantonError, ArithmeticError):
    pass


class NegativeExponentInput(InputError):
    pass


class NegativeUExponent(InputError):
    pass


class NonzeroDivisorRestriction(InputError):
    """The extension class has a nonzero part on the exceptional divisor."""


class CurveMissesOrigin(InputError):
    pass


class NonIsolatedSingularity(InputError):
    pass


class NonReducedGerm(InputError):
    pass


class InfeasibleGrid(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    pass


class StabilizationFailure(SolverError):
    pass


class BoundViolation(SolverError):
    pass


class ExtensionFieldRecursionUnsupported(SolverError):
    pass


class ParityViolation(SolverError):
    pass


class TableMismatch(InstantonError):
    def __init__(self, diffs):
        super().__init__("; ".join(diffs) if diffs else "table mismatch")
        self.diffs = list(diffs)
