"""Exception hierarchy shared by all simrel modules.

Each error carries the process exit code the CLI maps it to.
"""

from __future__ import annotations


class SimrelError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class MalformedInput(SimrelError):
    """Input violates a structural precondition (bad bitstring, empty corpus, bad CSV, value out of range)."""

    exit_code = 2


class PairNotFound(SimrelError):
    """A term pair is absent from a hit table; no interpolation is attempted."""

    exit_code = 3


class UndefinedSimilarity(SimrelError):
    """The requested similarity is undefined for these inputs (zero denominator, log of zero, missing N)."""

    exit_code = 4


class ProviderFailure(SimrelError):
    """A hit-count provider failed for every requested cell."""

    exit_code = 5
