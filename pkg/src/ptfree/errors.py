"""Exception hierarchy shared by all solver modules."""

from __future__ import annotations


class PtFreeError(Exception):
    """Base class for every error raised by this package."""


class GraphInputError(PtFreeError, ValueError):
    """Malformed input: bad vertex index, bad parameter, broken file."""


class CapacityError(PtFreeError):
    """An input exceeds a configured size cap (pattern size, oracle limit)."""


class SamplingError(PtFreeError):
    """A rejection sampler ran out of attempts."""


class InternalError(PtFreeError, AssertionError):
    """A proven invariant failed to hold. Always a bug."""


class PatternFoundError(PtFreeError):
    """The input contains a forbidden induced pattern.

    ``witness`` lists the vertices of the induced copy in pattern order.
    """

    def __init__(self, message: str, witness: list[int]):
        super().__init__(message)
        self.witness = list(witness)


class NotPtFreeError(PatternFoundError):
    """An induced path on t vertices was found; ``witness`` is the path."""


class NotBroomFreeError(PatternFoundError):
    """An induced broom was found.

    ``witness`` is the handle path v_1..v_t followed by the d leaves, the
    leaves all adjacent to v_t.
    """
