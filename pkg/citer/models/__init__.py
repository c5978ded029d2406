"""Result models for citer"""

from .results import (
    CheckResult,
    CheckStatus,
    ContinuationResult,
    ContinuationRoute,
    EvalResult,
    MonodromyResult,
    VerificationReport,
)

__all__ = [
    "CheckResult",
    "CheckStatus",
    "ContinuationResult",
    "ContinuationRoute",
    "EvalResult",
    "MonodromyResult",
    "VerificationReport",
]
