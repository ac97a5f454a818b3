"""Exception hierarchy.

Every error raised by the library derives from :class:`HypergraphError`, so
callers (and the CLI) can catch one type and map it to an exit code.
"""


class HypergraphError(Exception):
    """Base class for all library errors."""


class InvalidHypergraph(HypergraphError, ValueError):
    pass


class ZeroCoefficient(InvalidHypergraph):
    pass


class NonFiniteCoefficient(InvalidHypergraph):
    pass


class IsolatedVertex(InvalidHypergraph):
    pass


class DuplicateIdentifier(InvalidHypergraph):
    pass


class EmptyHyperedge(InvalidHypergraph):
    pass


class UnknownVertex(HypergraphError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownHyperedge(HypergraphError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class WouldIsolate(InvalidHypergraph):
    pass


class DeleteAll(InvalidHypergraph):
    pass


class DimensionMismatch(HypergraphError, ValueError):
    pass


class ZeroFunction(HypergraphError, ValueError):
    pass


class EigensolverFailure(HypergraphError, ArithmeticError):
    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class Disconnected(HypergraphError, ValueError):
    pass


class ConditionsNotMet(HypergraphError, ValueError):
    """A localized eigenfunction does not exist; ``condition`` names why."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class MalformedPermutation(HypergraphError, ValueError):
    pass


class NotInvolution(HypergraphError, ValueError):
    pass


class InvalidMotif(HypergraphError, ValueError):
    pass


class NotDuplicatedMotif(HypergraphError, ValueError):
    def __init__(self, message, hyperedge=None):
        super().__init__(message)
        self.hyperedge = hyperedge


class TooLarge(HypergraphError, ValueError):
    pass


class DocumentError(HypergraphError, ValueError):
    """Problem in an input document; ``location`` points at the offending field."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class DocumentSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass
