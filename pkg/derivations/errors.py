"""
Exception hierarchy for the derivations package
"""


class DerivationsError(ValueError):
    """Base class for every error raised by this package"""


class AmbientMismatchError(DerivationsError):
    """Two polynomials (or a polynomial and a field) live over incompatible variable sets"""


class InvalidDivisorError(DerivationsError):
    """Divisor is zero, constant, or not of the required shape"""


class NotDivisibleError(DerivationsError):
    """Exact division was requested but the divisor does not divide the dividend"""


class ShapeError(DerivationsError):
    """Matrix or field list has the wrong shape"""


class InvalidBoundError(DerivationsError):
    """Summation or integration bound depends on the summation variable"""


class InvalidDimensionError(DerivationsError):
    """Ambient dimension out of range"""


class InvalidParameterError(DerivationsError):
    """Multiplicity, index or order parameter out of range"""


class InvalidInputError(DerivationsError):
    """Malformed input (non-homogeneous field, unknown variable name, bad JSON document, ...)"""


class UsageError(InvalidInputError):
    """Command line could not be parsed"""


class ConfigError(DerivationsError):
    """Environment configuration could not be parsed"""
