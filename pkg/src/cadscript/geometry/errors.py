"""Error types raised by the geometry kernel."""


class GeometryError(Exception):
    """Base class for all geometry kernel failures."""


class NonPositiveDimension(GeometryError):
    """An extent, radius or thickness that must be strictly positive was not."""


class ResourceLimit(GeometryError):
    """A construction would exceed a hard resource limit."""


class NotWatertight(GeometryError):
    """Mesh failed the closed / consistently-oriented manifold check."""


class NotABox(GeometryError):
    """Operation requires a solid whose membership leaf is an axis box."""


class CsgFailure(GeometryError):
    """Boolean op produced a non-manifold surface that cleanup could not close.

    Raised instead of silently returning broken geometry.
    """
