"""
Error hierarchy for citer
Every error knows the CLI exit code it maps to: 2 for bad input, 3 for
numerical or precondition failures.
"""

from typing import Any, Dict


class CiterError(Exception):
    """Base class for all errors raised by the engine"""

    exit_code: int = 4

    def to_dict(self) -> Dict[str, Any]:
        """JSON error object written to stderr by the CLI"""
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
        }


class InputError(CiterError, ValueError):
    """Malformed or unsupported input"""

    exit_code = 2


class NumericError(CiterError, ArithmeticError):
    """A computation could not be carried out to the requested accuracy"""

    exit_code = 3


# Input errors

class SpecError(InputError):
    """JSON series or path specification is malformed"""


class InvalidRational(InputError):
    pass


class TrivialCharacterError(InputError):
    pass


class InvalidCharacter(InputError):
    """Character table fails multiplicativity or support checks"""


class NotPrime(InputError):
    pass


class UnsupportedField(InputError):
    pass


class DiscontinuousConcat(InputError):
    pass


# Numeric and precondition errors

class PoleError(NumericError):
    pass


class ZeroBaseError(NumericError):
    pass


class NoConvergence(NumericError):
    pass


class TailTooFat(NumericError):
    pass


class RadiusError(NumericError):
    pass


class CapExceeded(NumericError):
    pass


class SlowConvergence(NumericError):
    pass


class SingularAt1(NumericError):
    pass


class DivergentIntegral(NumericError):
    pass


class ConvergenceConstraint(NumericError):
    pass


class PathThroughSingularity(NumericError):
    pass


class DominationViolated(NumericError):
    pass


class TechnicalConditionViolated(DominationViolated):
    pass


class TailNotSmall(NumericError):
    pass


class DepthUnsupported(NumericError):
    pass


class NoClosedForm(NumericError):
    pass


class PositiveIntegerPole(NumericError):
    pass


class NoLaurentData(NumericError):
    pass


class NoBranchMatch(NumericError):
    pass
