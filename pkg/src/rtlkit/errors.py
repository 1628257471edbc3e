"""Exception hierarchy shared across the toolkit.

Three broad families map onto CLI exit codes: domain errors (bad or
inconsistent data, exit 1), usage errors (bad invocation or config,
exit 2), and infrastructure errors (missing tools, network failures,
timeouts, exit 3).
"""


class RtlkitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(RtlkitError):
    """Invalid or inconsistent input data."""


class UsageError(RtlkitError):
    """Invalid invocation: bad flags or malformed configuration."""


class InfrastructureError(RtlkitError):
    """External tool or service failure: not found, crash, timeout."""


class MalformedResponse(DomainError):
    """A client response violates the stage's structural contract."""


class ContentDrift(DomainError):
    """A commented rewrite changed non-comment tokens of the code."""


class QueryLeak(DomainError):
    """A rephrased query still names declared identifiers after retries."""


class UnclassifiableOutput(DomainError):
    """Equivalence-checker output matched no configured verdict pattern."""
