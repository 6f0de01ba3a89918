"""Exception types shared across the package."""


class DiscinterpError(Exception):
    """Base class for domain and numerical errors raised by this package."""


class PoleOnDomain(DiscinterpError):
    """A Blaschke zero lies on or outside the unit circle."""


class TruncationError(DiscinterpError):
    """A series truncation cannot reach the requested tolerance."""


class UnsupportedSpace(DiscinterpError):
    """The space descriptor is outside the implemented families."""


class NotHilbert(UnsupportedSpace):
    """The operation requires a Hilbert-case space (p = 2)."""


class Divergence(DiscinterpError):
    """Evaluation-functional norm diverges (t >= 1)."""


class DegenerateNodes(DiscinterpError):
    """Interpolation nodes violate the minimum separation."""


class MixedMultiplicity(DiscinterpError):
    """Node multisets mixing several points with repetitions are not handled."""


class IllConditionedWarning(UserWarning):
    """A Gram or Pick matrix is numerically near-singular."""
