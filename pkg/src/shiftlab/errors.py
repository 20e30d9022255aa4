"""Exception types shared across the workbench.

Every library-raised error derives from ShiftLabError so callers (and the
CLI) can catch the whole family at once.  Domain validation failures also
subclass ValueError for ergonomic use with pytest.raises and plain scripts.
"""

from __future__ import annotations


class ShiftLabError(Exception):
    """Base class for all workbench errors."""


class DomainError(ShiftLabError, ValueError):
    """An argument lies outside the documented domain."""


class CapExceeded(ShiftLabError):
    """An enumeration would materialize more objects than the configured cap."""


class EmptyLanguage(ShiftLabError):
    """An operation needs at least one admissible block and found none."""


class NoWitness(ShiftLabError):
    """The counting hypothesis fails so badly that not even a singleton works."""


class PreconditionViolated(ShiftLabError, ValueError):
    """A documented precondition does not hold for the given arguments."""


class DeadEnd(ShiftLabError, ValueError):
    """A tree adjacency matrix has an all-zero row, so some vertex has no child."""


class NotUnexpandable(ShiftLabError):
    """A sink decomposition was requested for a matrix with spectral radius > 1."""


class DeadSymbol(ShiftLabError, ValueError):
    """A transition-matrix base has a symbol with no outgoing transition."""


class EmptyBase(ShiftLabError, ValueError):
    """A word base admits no arbitrarily long words, so no ray can be labeled."""


class NotHereditary(ShiftLabError):
    """The sink lift needs a hereditary base and the given one is not."""


class ConfigError(ShiftLabError, ValueError):
    """An experiment config is malformed; the message names the offending field."""
