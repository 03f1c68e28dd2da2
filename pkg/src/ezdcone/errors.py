"""Failure classes.

Every failure the library raises falls in one of five kinds, which the CLI
maps onto its exit codes.
"""


class EzdError(Exception):
    kind = "error"


class ParseError(EzdError):
    """Malformed input; ``location`` names where (byte offset or key path)."""

    kind = "parse"

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class ValidationError(EzdError):
    """Input data violating algebra/module axioms."""

    kind = "precondition"


class PreconditionError(EzdError):
    kind = "precondition"


class HypothesisFailure(EzdError):
    """A theorem's hypotheses do not hold for this instance; no claim is made."""

    kind = "hypothesis"


class TheoremViolation(EzdError):
    """A proven statement failed to check; this indicates a bug."""

    kind = "theorem-violation"


class TruncationError(EzdError):
    """A degree outside the window where the computation is complete."""

    kind = "truncation-boundary"
