"""Exception types.  All derive from :class:`CLMError` (a ValueError)."""

from __future__ import annotations


class CLMError(ValueError):
    kind = "domain"

    def payload(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class DimensionMismatch(CLMError):
    kind = "dimension"


class SingularMatrix(CLMError):
    kind = "singular"


class ZeroFamily(CLMError):
    """The polynomial matrix is identically zero."""

    kind = "zero-family"


class MinorVanishes(CLMError):
    kind = "minor-identically-zero"


class DegenerateFamily(CLMError):
    kind = "degenerate-family"


class FlavorMismatch(CLMError):
    kind = "flavor-mismatch"


class _WithViolations(CLMError):
    def __init__(self, message: str, violations):
        super().__init__(message)
        self.violations = list(violations)

    def payload(self) -> dict:
        return {"error": self.kind, "message": str(self), "violations": self.violations}


class InvalidCollineation(_WithViolations):
    kind = "invalid-collineation"


class InvalidChain(_WithViolations):
    kind = "invalid-chain"
