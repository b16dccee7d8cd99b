"""Exception hierarchy.

Every error raised for bad input or an unsupported regime derives from
:class:`DomainError`, which the CLI maps to exit status 2.
"""


class DomainError(ValueError):
    """Base class for input/domain errors."""


class ParseError(DomainError):
    pass


class NonSymmetric(DomainError):
    pass


class LabelMismatch(DomainError):
    pass


class UnknownName(DomainError):
    pass


class MissingParam(DomainError):
    pass


class InvalidParam(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class EmptyInput(DomainError):
    pass


class AmbientMismatch(DomainError):
    pass


class NonIntegral(DomainError):
    pass


class B2TooSmall(DomainError):
    pass


class NonPositive(DomainError):
    pass


class NotContractible(DomainError):
    pass


class NegativeCoefficient(DomainError):
    def __init__(self, index, value):
        super().__init__(f"solved coefficient for prime {index} is negative: {value}")
        self.index = index
        self.value = value


class NotPrime(DomainError):
    pass


class PExceedsN(DomainError):
    pass


class DegreeTooSmall(DomainError):
    pass


class Indeterminate(DomainError):
    """The question falls outside every regime decided exactly."""


class InvalidRho(DomainError):
    pass


class UnknownCommand(DomainError):
    pass
