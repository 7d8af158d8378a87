"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (for example
``"jet-division-by-zero"``) so reports and the CLI can surface it without
parsing messages.
"""

from __future__ import annotations


class ParaslantError(Exception):
    code = "error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class InputError(ParaslantError, ValueError):
    """Malformed or out-of-contract input (bad shapes, unknown names, ...)."""

    code = "input-error"


class JetError(ParaslantError, ArithmeticError):
    code = "jet-error"


class JetDivisionByZero(JetError):
    code = "jet-division-by-zero"


class JetDomainError(JetError):
    code = "jet-domain-error"


class DegenerateError(ParaslantError):
    """A metric (ambient, induced or restricted) is numerically singular."""

    code = "degenerate-metric"


class NoAdmissibleSamples(ParaslantError):
    code = "no-admissible-samples"
