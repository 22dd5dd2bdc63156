"""Exception hierarchy shared by all zetalab modules."""

from __future__ import annotations


class ZetalabError(Exception):
    """Base class."""


class InputError(ZetalabError, ValueError):
    """Invalid argument or malformed data file."""


class DomainError(ZetalabError, ValueError):
    """Argument outside the region where the requested route converges."""


class PoleError(ZetalabError, ArithmeticError):
    """Evaluation at (or numerically on top of) a pole."""

    def __init__(self, message: str, location: complex | None = None, **info):
        super().__init__(message)
        self.location = location
        self.info = info


class PrecisionError(ZetalabError, ArithmeticError):
    """A truncation or quadrature bound exceeds the requested tolerance."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class ConsistencyError(ZetalabError, RuntimeError):
    """Two routes that must agree do not (e.g. functional equation violated)."""


class GeometryError(ZetalabError, RuntimeError):
    """Quadrature circle would enclose a neighbouring singularity."""


class ContractError(ZetalabError, ValueError):
    """A precondition of a transform is not met (e.g. f is not an annihilator)."""


class RemovablePointError(DomainError):
    """The denominator M(f)(s) vanishes; the quotient must be taken at a nearby point."""

    def __init__(self, message: str, suggestion: complex | None = None):
        super().__init__(message)
        self.suggestion = suggestion
