"""Exception taxonomy for entrodyn.

Every domain failure raises a subclass of :class:`EntrodynError`, which itself
subclasses ``ValueError`` so callers that only care about "bad input" can catch
the builtin. Nothing in the library returns NaN or infinity to signal a
problem; undefined quantities raise.
"""

from __future__ import annotations


class EntrodynError(ValueError):
    """Base class for all entrodyn domain errors."""


class InvalidDistributionError(EntrodynError):
    """A probability vector is empty, negative, all-zero, or off-simplex."""


class InsufficientDataError(EntrodynError):
    """An operation needs data the inputs do not carry."""


class MissingScoreError(EntrodynError):
    """A scored response lacks the confidence kind an operation asked for."""


class MissingAnswerError(EntrodynError):
    """A voting operation found a candidate without an extracted answer."""


class GroupSizeError(EntrodynError):
    """A selection or filter target exceeds (or underruns) the group size."""


class DegenerateLabelsError(EntrodynError):
    """A labeled score set has only one class, so ranking metrics are undefined."""


class UndefinedCorrelationError(EntrodynError):
    """A correlation is undefined because one input has zero variance."""


class UndefinedEffectError(EntrodynError):
    """An effect size is undefined because the pooled spread is zero."""


class UndefinedRatioError(EntrodynError):
    """A ratio is undefined because its denominator is zero or negative."""


class TraceFormatError(EntrodynError):
    """A trace line is malformed; the message names the offending line."""


class MissingTokenTextError(EntrodynError):
    """A rendering operation needs token texts the trajectory does not have."""
