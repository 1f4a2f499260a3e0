"""Shared exception types."""


class PrecisionError(ValueError):
    """An operation needs more series precision than the operands carry."""


class NotPIntegral(ValueError):
    """A coefficient has negative p-adic valuation where p-integrality is required."""


class ConstructionError(RuntimeError):
    """A generator build failed one of its pinned identities."""


class FormatError(ValueError):
    """A q-expansion file violates the text format; carries the offending line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
