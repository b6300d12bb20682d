"""Exception hierarchy.

Every validation failure raised by the library derives from
:class:`MarkovSurfError`, which is itself a :class:`ValueError`, so callers
can catch either.
"""


class MarkovSurfError(ValueError):
    pass


# exact arithmetic
class NotCoprime(MarkovSurfError):
    pass


class NegativeInput(MarkovSurfError):
    pass


class ShapeMismatch(MarkovSurfError):
    pass


# Markov tree
class NonPositiveEntry(MarkovSurfError):
    pass


class NotMarkov(MarkovSurfError):
    pass


class NotExtendable(MarkovSurfError):
    pass


class NotMarkovPair(NotExtendable):
    pass


class NotAdjacent(MarkovSurfError):
    pass


class NotSquares(MarkovSurfError):
    pass


# generator matrices and cones
class DuplicateColumn(MarkovSurfError):
    pass


class NonPrimitiveColumn(MarkovSurfError):
    pass


class NotPositivelySpanning(MarkovSurfError):
    pass


class DependentGenerators(MarkovSurfError):
    pass


class NonPrimitiveGenerator(MarkovSurfError):
    pass


# C*-surfaces
class OrderingViolation(MarkovSurfError):
    pass


class GcdViolation(MarkovSurfError):
    pass


class SlopeInequalityViolation(MarkovSurfError):
    pass


class ToricMorphismViolation(MarkovSurfError):
    pass


class DegenerateCentralFiber(MarkovSurfError):
    pass


# oracles
class NonSquareEntry(MarkovSurfError):
    pass


class ToleranceExceeded(MarkovSurfError):
    pass


class PreconditionError(MarkovSurfError):
    pass


class InvariantViolation(AssertionError):
    """A mathematical identity that must hold on every valid input failed."""


def check(cond, msg="invariant violated"):
    if not cond:
        raise InvariantViolation(msg() if callable(msg) else msg)
