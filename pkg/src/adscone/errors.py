"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Input data violates a geometric precondition."""


class DegreeParityError(GeometryError):
    """A link circle with non-elliptic holonomy must have even degree."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"link circles of non-elliptic holonomy need even degree, got {degree}")


class NotHyperbolicError(GeometryError):
    """Cone-surface data does not define a hyperbolic metric."""


class CausalityError(GeometryError):
    """An HS-surface or spacetime fails a causality requirement."""


class LinkRealizationError(GeometryError):
    """Requested link data cannot be realized by any hyperbolic configuration."""
