"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command-line
front end never needs a translation table.
"""


class SteinbergError(Exception):
    exit_code = 2


class InvalidType(SteinbergError, ValueError):
    pass


class IndexOutOfRange(SteinbergError, IndexError):
    pass


class MixedRootSystems(SteinbergError, ValueError):
    pass


class SizeGuardExceeded(SteinbergError):
    pass


class NotDominant(SteinbergError, ValueError):
    pass


class NotMinimalRepresentative(SteinbergError, ValueError):
    pass


class InvalidJ(SteinbergError, ValueError):
    pass


class CoefficientOverflow(SteinbergError, ArithmeticError):
    exit_code = 3


class InternalInconsistency(SteinbergError):
    exit_code = 4


class FormatError(SteinbergError):
    """A cache file that fails validation; it is never partially loaded."""
