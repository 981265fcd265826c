"""Exception hierarchy shared by every module of the package."""


class CentralPolyError(Exception):
    """Base class for all errors raised by centralpoly."""


# fields
class NonPrimeP(CentralPolyError, ValueError):
    pass


class ReducibleModulus(CentralPolyError, ValueError):
    pass


class DegreeMismatch(CentralPolyError, ValueError):
    pass


class FieldMismatch(CentralPolyError, TypeError):
    pass


class DivisionByZero(CentralPolyError, ZeroDivisionError):
    pass


# polynomials and linearization
class NotMultihomogeneous(CentralPolyError, ValueError):
    pass


class DegeneratePolynomial(CentralPolyError, ValueError):
    """Zero or constant input given to an identity/centrality entry point."""


class SpecMismatch(CentralPolyError, ValueError):
    pass


# matrices
class SizeMismatch(CentralPolyError, ValueError):
    pass


class UnboundVariable(CentralPolyError, KeyError):
    pass


class CharacteristicMismatch(CentralPolyError, ValueError):
    pass


# search
class CapExceeded(CentralPolyError):
    def __init__(self, needed, budget, what="evaluations"):
        super().__init__(f"{what} needed: {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class NoWitnessFound(CentralPolyError):
    """A required evaluation witness was not located within budget."""


class InputNotCentral(CentralPolyError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class TheoremViolation(CentralPolyError):
    """An outcome that the descent theorem rules out; always a hard error."""


class NoCentralComponent(TheoremViolation):
    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = list(reports)


# text input
class ParseError(CentralPolyError, ValueError):
    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.column = col


class UnknownVariable(ParseError):
    pass


class CoefficientNotInField(ParseError):
    pass
