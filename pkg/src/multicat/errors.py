"""Exception hierarchy shared by every module."""


class MulticatError(Exception):
    """Base class; ``witness`` carries the offending data when there is some."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(MulticatError):
    pass


class DanglingRef(ValidationError):
    pass


class MissingComposite(ValidationError):
    pass


class LawViolation(ValidationError):
    pass


class NotFunctorial(ValidationError):
    pass


class NotNatural(ValidationError):
    pass


class UnknownObject(MulticatError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownMorphism(MulticatError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SizeCap(MulticatError):
    pass


class NotASquare(MulticatError):
    pass


class ApexMismatch(MulticatError):
    pass


class NotStable(MulticatError):
    pass


class NotLocalRightAdjoint(MulticatError):
    pass


class NotMultiAdjoint(MulticatError):
    pass


class InternalInconsistency(MulticatError):
    """A theorem that must hold was observed to fail; points at a bug."""


class AmbientMismatch(MulticatError):
    pass


class NoMultilimit(MulticatError):
    pass


class NoTargetColimit(MulticatError):
    pass


class NoTargetLimit(MulticatError):
    pass


class NotFull(MulticatError):
    pass


class NotConnected(MulticatError):
    pass


class GlidingViolation(MulticatError):
    pass


class NotAFactorizationSystem(MulticatError):
    pass


class NoTerminal(MulticatError):
    pass


class NotASubclass(MulticatError):
    pass


class CancellationFails(MulticatError):
    pass


class ParseError(MulticatError):
    """DSL syntax error, positioned at the offending token."""

    def __init__(self, message, line, column, token=None):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.token = token


class WorkspaceError(ParseError):
    """DSL input that parses but fails validation; positioned like ParseError."""
