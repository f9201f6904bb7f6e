"""Exception and warning types shared across the package.

Every validation failure raises a subclass of both :class:`OTBoundsError`
and :class:`ValueError`, so callers may catch either the package root or
the builtin.
"""

from __future__ import annotations

__all__ = [
    "OTBoundsError",
    "NonFiniteCost",
    "NonFiniteInput",
    "SizeOverflow",
    "DimensionMismatch",
    "EmptyGroup",
    "EtaNegative",
    "NotSymmetric",
    "IndefiniteInput",
    "NonScalarSpec",
    "SingularSigma0",
    "GroupTooSmall",
    "ZeroVariance",
    "NonScalarOutcome",
    "MissingColumn",
    "NonBinaryTreatment",
    "NonNumericCell",
    "ConvergenceWarning",
]


class OTBoundsError(ValueError):
    """Root of the package's exception hierarchy."""


class NonFiniteCost(OTBoundsError):
    """A cost matrix contains NaN or infinite entries."""


class NonFiniteInput(OTBoundsError):
    """An outcome or covariate array contains NaN or infinite entries."""


class SizeOverflow(OTBoundsError):
    """A requested transport problem exceeds the configured size cap."""


class DimensionMismatch(OTBoundsError):
    """Array shapes are inconsistent with each other or with a cost spec."""


class EmptyGroup(OTBoundsError):
    """A treatment arm contains no observations."""


class EtaNegative(OTBoundsError):
    """A penalty weight eta was negative."""


class NotSymmetric(OTBoundsError):
    """A matrix expected to be symmetric is not, beyond tolerance."""


class IndefiniteInput(OTBoundsError):
    """A matrix expected to be positive semidefinite has a clearly negative eigenvalue."""


class NonScalarSpec(OTBoundsError):
    """A closed-form oracle restricted to scalar models received a non-scalar spec."""


class SingularSigma0(OTBoundsError):
    """The source covariance of an OT map is numerically singular."""


class GroupTooSmall(OTBoundsError):
    """A treatment arm has too few observations for a variance estimate."""


class ZeroVariance(OTBoundsError):
    """A group outcome variance is zero, so a correlation is undefined."""


class NonScalarOutcome(OTBoundsError):
    """An application requiring one-dimensional outcomes received dY > 1."""


class MissingColumn(OTBoundsError):
    """A CSV header does not match the expected `w, y1.., z1..` layout."""


class NonBinaryTreatment(OTBoundsError):
    """A treatment cell holds a value other than 0 or 1."""


class NonNumericCell(OTBoundsError):
    """A CSV data cell could not be parsed as a number."""


class ConvergenceWarning(UserWarning):
    """An iterative solver stopped before reaching its tolerance."""
