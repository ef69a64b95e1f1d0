"""
Error hierarchy shared by every breadthlab app.

Each error carries the process exit code the management commands report
when it escapes a command: 1 for a mathematical failure, 2 for usage
errors and 3 when a search or enumeration budget runs out.
"""


class BreadthLabError(Exception):
    exit_code = 1


class InvalidInput(BreadthLabError):
    """An input outside the operation's preconditions."""
    exit_code = 2


# fields

class FieldMismatch(InvalidInput):
    pass


class DivisionByZero(BreadthLabError, ZeroDivisionError):
    pass


class Unsupported(BreadthLabError):
    pass


class NoNonsquare(BreadthLabError):
    pass


class DegenerateLeadingCoefficient(BreadthLabError):
    pass


class UnsupportedField(InvalidInput):
    pass


# linear algebra

class NonSquare(InvalidInput):
    pass


class NotSkewSymmetric(InvalidInput):
    pass


class OddDimension(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


# Lie algebras

class NotNilpotent(BreadthLabError):
    pass


class NotCentralIdeal(InvalidInput):
    pass


class NoExtensionTable(InvalidInput):
    pass


class AlgebraAxiomError(InvalidInput):
    """Structure constants that fail antisymmetry or Jacobi."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class BudgetExceeded(BreadthLabError):
    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Undetermined(BreadthLabError):
    pass


# Camina / rank subspaces

class HypothesisViolated(InvalidInput):
    pass


class InvalidInputCertificate(InvalidInput):
    pass


class VerificationFailed(BreadthLabError):
    pass


# normal forms

class SingularLinearPart(InvalidInput):
    pass


class WrongDimension(InvalidInput):
    pass


class CharacteristicTwo(InvalidInput):
    pass


class OddCharacteristic(InvalidInput):
    pass


class NotFourGenerated(InvalidInput):
    pass


class NotClassTwo(InvalidInput):
    pass


# groups

class EvenPrime(InvalidInput):
    pass


# campaigns

class UnknownTheorem(InvalidInput):
    pass


class InvariantViolation(BreadthLabError):
    """An internal re-verification step disagreed with the computed result."""
    pass
