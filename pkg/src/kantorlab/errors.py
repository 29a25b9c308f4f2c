"""Exception hierarchy shared by all kantorlab modules."""


class KantorLabError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(KantorLabError):
    pass


class MixedFields(KantorLabError):
    pass


class NotAvailable(KantorLabError):
    """A distinguished root (or a construction needing one) is absent in this field."""


class BadDimension(KantorLabError):
    pass


class MixedAlgebras(KantorLabError):
    pass


class PreconditionViolated(KantorLabError):
    pass


class ExcludedCase(KantorLabError):
    """The requested combination is excluded (e.g. 2-dimensional pairs in characteristic 3)."""


class TooLarge(KantorLabError):
    pass


class OrderViolation(KantorLabError):
    pass


class NotKantorCompatible(KantorLabError):
    pass


class InconsistentGrading(KantorLabError):
    pass


class NotAGrading(KantorLabError):
    pass


class NotDiagonalizable(KantorLabError):
    """Simultaneous eigenspaces of the candidate eigenvalues do not exhaust the space."""


class NotAnAutomorphism(KantorLabError):
    pass


class GeneratorNotHomogeneous(KantorLabError):
    pass


class GradingMissing(KantorLabError):
    pass


class UnknownSuite(KantorLabError):
    pass


class InvalidCombination(KantorLabError):
    pass


class ReferenceMismatch(KantorLabError):
    """A computed table entry disagrees with the embedded reference values."""
