"""Exceptions raised by the design library."""


class DesignError(Exception):
    """Base class for all errors raised while building or analysing plans."""
    pass


class NotPrimeError(DesignError):
    """Field order is not a prime."""
    pass


class DimensionMismatchError(DesignError):
    """Vectors, pencils, plans or subspaces live in different spaces."""
    pass


class TooLargeError(DesignError):
    """An enumeration would exceed the configured size guard."""
    pass


class ZeroVectorError(DesignError):
    """The zero vector does not define a pencil."""
    pass


class EffectNameError(DesignError):
    """An effect name does not follow the Letter(^Exponent) grammar."""
    pass


class UnknownFactorError(EffectNameError):
    pass


class BadExponentError(EffectNameError):
    pass


class EmptyNameError(EffectNameError):
    pass


class DuplicateFactorError(EffectNameError):
    pass


class UnknownEffectNameError(EffectNameError):
    """A name used in a partition or a claim cannot be resolved to a pencil."""
    pass


class PlanFormatError(DesignError):
    """Plan file text is malformed."""
    pass


class BadHeaderError(PlanFormatError):
    pass


class RunLengthMismatchError(PlanFormatError):
    pass


class SymbolOutOfFieldError(PlanFormatError):
    pass


class BlockSizeMismatchError(PlanFormatError):
    pass


class BlockCountMismatchError(PlanFormatError):
    pass


class SubspaceSyntaxError(DesignError):
    """Subspace text is not a ';'-joined list of equal-length digit strings."""
    pass


class UnknownNameError(DesignError):
    """No catalog entry with the requested name."""
    pass
