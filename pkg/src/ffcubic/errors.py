"""Exception hierarchy shared by all modules.

Every domain violation raises a subclass of :class:`DomainError`, which the
CLI maps to exit code 3.  Check failures (an identity that should hold but
does not) are reported by return values, never by exceptions.
"""


class DomainError(ValueError):
    """A precondition on mathematical input was violated."""


class NotPrime(DomainError):
    pass


class CongruenceViolation(DomainError):
    pass


class NoIrreducibleFound(DomainError):
    """Internal bug: an irreducible of the requested degree must exist."""


class ElementNotInField(DomainError):
    pass


class ZeroDenominator(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


class NotSquareFree(DomainError):
    pass


class NotCoprime(DomainError):
    pass


class DegreeTooLarge(DomainError):
    pass


class WrongParity(DomainError):
    pass


class PrefactorPole(DomainError):
    pass


class ConjugateMissing(DomainError):
    pass


class DegenerateLeadingCoefficient(DomainError):
    """Internal bug: the completed L-polynomial must have full degree."""


class PoleAtOne(DomainError):
    pass


class IsCube(DomainError):
    pass


class SampleTooLarge(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class BadSplit(DomainError):
    pass


class PartitionTooLarge(DomainError):
    pass
