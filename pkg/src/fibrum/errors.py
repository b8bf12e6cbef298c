from __future__ import annotations


class FibrumError(Exception):
    """Base class; `kind` ends up in the CLI's structured error payload."""

    kind = "error"

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class PreconditionError(FibrumError, ValueError):
    kind = "precondition"


class FormatError(FibrumError, ValueError):
    kind = "format"


class ResourceError(FibrumError, RuntimeError):
    kind = "resource"


class ConsistencyError(FibrumError, AssertionError):
    """An internal invariant failed; this is a bug, not bad input."""

    kind = "internal"
