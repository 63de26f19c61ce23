"""
Exceptions raised by the fibword library.

Every error is a FibwordError and, because all of them reject a bad
argument, also a ValueError.
"""


class FibwordError(ValueError):
    """Base class for library errors."""
    default_code = 'error'

    def __init__(self, detail: str = '', code: str = None):
        super().__init__(detail)
        self.detail = detail
        self.code = code or self.default_code


class AlphabetMismatchError(FibwordError):
    default_code = 'alphabet_mismatch'


class UnderflowError(FibwordError):
    default_code = 'underflow'


class NoAbaPrefixError(FibwordError):
    default_code = 'no_aba_prefix'


class InsufficientContextError(FibwordError):
    default_code = 'insufficient_context'


class OracleSizeError(FibwordError):
    default_code = 'oracle_size'


class NotFibonacciPrefixError(FibwordError):
    default_code = 'not_fibonacci_prefix'


class PairingError(FibwordError):
    default_code = 'pairing'


class IllegalDigramError(FibwordError):
    default_code = 'illegal_digram'


class ResidueError(FibwordError):
    default_code = 'residue'


class PrimitivityError(FibwordError):
    default_code = 'not_primitive'


class BracketError(FibwordError):
    default_code = 'bracket'


class FitError(FibwordError):
    default_code = 'fit'


class DimensionDomainError(FibwordError):
    default_code = 'dimension_domain'


class EmptyCanvasError(FibwordError):
    default_code = 'empty_canvas'


class UnknownRuleError(FibwordError):
    default_code = 'unknown_rule'
