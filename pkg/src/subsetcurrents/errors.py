"""Shared exception types.

Everything user-facing raises one of these instead of a bare ValueError so
the CLI can map failures to exit codes without string matching.
"""


class WordFormatError(ValueError):
    """Malformed word text: unknown token, mixed formats, index out of range."""


class TrivialSubgroupError(ValueError):
    """The trivial subgroup has no core graph; callers must special-case it."""


class EmptyCoreError(ValueError):
    """Coring removed every edge, so no core graph exists."""


class NotConnectedError(ValueError):
    """Operation needs a connected graph (rank, canonical form, membership)."""


class NotSubgroupError(ValueError):
    """H is not contained in K, so the relative index is undefined."""


class NotAutomorphismError(ValueError):
    """Invariance checks require a genuine automorphism, not just an endomorphism."""


class SizeLimitError(ValueError):
    """An enumeration would exceed the configured size cap."""


class RetryLimitError(RuntimeError):
    """Randomized construction failed to produce a valid object in the allowed tries."""


class MismatchBugError(RuntimeError):
    """Two routes that must agree by theorem disagreed; this is always a bug."""
