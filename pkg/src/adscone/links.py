"""The dictionary between link circles and singular-line types.

Elliptic links are massive particles (mass m = 1 - theta/2pi), hyperbolic
links of degree 2 are tachyons, parabolic links of degree 2 are gravitons,
and degree-0 links over de Sitter or boundary points are the future/past
singularities of (possibly extreme) BTZ black holes.  Links of degree >= 4
and spacelike hyperbolic links are rejected: the former split the local
future into several components, the latter force closed timelike curves.

Tachyon and black-hole masses are stored as the translation length of the
holonomy (the rapidity of the gluing boost).  Under the cross-ratio
convention of tachyon_mass_from_planes the wedge angle between two timelike
planes equals twice that rapidity; the length normalization is the one the
model-spacetime round trips pin down.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GeometryError
from .linalg import HSPointClass, dot12
from .rp1 import ArcTag, CircleKind, CircleTag, LinkCircle

TWO_PI = 2.0 * np.pi


class SingKind(Enum):
    MASSIVE_PARTICLE = "MassiveParticle"
    TACHYON = "Tachyon"
    GRAVITON_POSITIVE = "GravitonPositive"
    GRAVITON_NEGATIVE = "GravitonNegative"
    BTZ_FUTURE = "BTZFuture"
    BTZ_PAST = "BTZPast"
    EXTREME_BTZ_FUTURE = "ExtremeBTZFuture"
    EXTREME_BTZ_PAST = "ExtremeBTZPast"
    REJECTED_DEGREE = "RejectedDegree"
    REJECTED_SPACELIKE_HYPERBOLIC = "RejectedSpacelikeHyperbolic"


@dataclass(frozen=True)
class SingularityType:
    kind: SingKind
    angle: float | None = None  # massive particle cone angle
    mass: float | None = None  # particle/tachyon mass, BTZ length parameter
    degree: int | None = None  # rejected degrees

    @property
    def is_rejected(self) -> bool:
        return self.kind in (
            SingKind.REJECTED_DEGREE,
            SingKind.REJECTED_SPACELIKE_HYPERBOLIC,
        )

    @property
    def is_positive(self) -> bool:
        """Positive-mass / positive-type filter used by interaction checks."""
        if self.kind is SingKind.MASSIVE_PARTICLE:
            return self.angle < TWO_PI
        if self.kind is SingKind.TACHYON:
            return self.mass > 0
        if self.kind is SingKind.GRAVITON_NEGATIVE:
            return False
        return not self.is_rejected


def particle_mass(theta: float) -> float:
    """Mass of a cone particle of angle theta: m = 1 - theta / 2 pi."""
    return 1.0 - theta / TWO_PI


def classify_singularity(link: LinkCircle) -> SingularityType:
    """Identify the singular line whose link is the given circle."""
    kind: CircleKind = link.kind
    base = link.basepoint_class

    if kind.tag is CircleTag.ELLIPTIC:
        if not base.is_timelike:
            raise GeometryError("elliptic links must sit over a timelike point")
        theta = kind.angle
        return SingularityType(SingKind.MASSIVE_PARTICLE, angle=theta, mass=particle_mass(theta))

    if kind.degree is not None and kind.degree >= 4:
        return SingularityType(SingKind.REJECTED_DEGREE, degree=kind.degree)

    if kind.tag is CircleTag.HYPERBOLIC:
        if base is not HSPointClass.DS2:
            raise GeometryError("hyperbolic links must sit over a de Sitter point")
        if kind.degree == 2:
            if kind.sign is None:
                raise GeometryError("tachyon link needs a marked future anchor")
            return SingularityType(SingKind.TACHYON, mass=kind.sign * kind.length)
        if kind.degree == 0:
            comp = kind.component
            if comp == "future":
                return SingularityType(SingKind.BTZ_PAST, mass=kind.length)
            if comp == "past":
                return SingularityType(SingKind.BTZ_FUTURE, mass=kind.length)
            if comp == "spacelike":
                return SingularityType(SingKind.REJECTED_SPACELIKE_HYPERBOLIC)
            raise GeometryError("degree-0 hyperbolic link lacks a component tag")
        raise GeometryError(f"hyperbolic link of unsupported degree {kind.degree}")

    # parabolic
    if not base.is_boundary:
        raise GeometryError("parabolic links must sit over a boundary point")
    future_base = base is HSPointClass.BOUNDARY_PLUS
    if kind.degree == 2:
        k = SingKind.GRAVITON_POSITIVE if kind.sign == +1 else SingKind.GRAVITON_NEGATIVE
        return SingularityType(k)
    if kind.degree == 0:
        tags = link.arc_tags()
        if len(tags) != 1:
            raise GeometryError("degree-0 parabolic link must carry one arc")
        into_h2 = (tags[0] is ArcTag.FUTURE) == future_base
        cuspidal = into_h2
        if (future_base and not cuspidal) or (not future_base and cuspidal):
            return SingularityType(SingKind.EXTREME_BTZ_FUTURE)
        return SingularityType(SingKind.EXTREME_BTZ_PAST)
    raise GeometryError(f"parabolic link of unsupported degree {kind.degree}")


def tachyon_mass_from_planes(l1, d1, d2, l2) -> float:
    """Log cross-ratio of four coplanar rays, the wedge angle of a tachyon.

    l1, l2 are the isotropic rays of the (Lorentzian) tangent 2-plane and
    d1, d2 the traces of the two timelike planes.  The cross-ratio
    convention is [a:b:c:d] = ((a-c)(b-d)) / ((a-b)(c-d)) on slopes in the
    null basis, with the indexing of (d1, d2) chosen so the value is >= 1.
    """
    l1, d1, d2, l2 = (np.asarray(v, dtype=float) for v in (l1, d1, d2, l2))
    for iso in (l1, l2):
        if abs(dot12(iso, iso)) > 1e-9 * np.dot(iso, iso):
            raise GeometryError("l1, l2 must be isotropic")
    for d in (d1, d2):
        if dot12(d, d) >= 0:
            raise GeometryError("d1, d2 must be timelike")
    # coordinates in the null basis (l1, l2) of the plane they span
    basis = np.column_stack([l1, l2])

    def slope(v):
        coef, res, _, _ = np.linalg.lstsq(basis, v, rcond=None)
        if res.size and res[0] > 1e-18 * np.dot(v, v):
            raise GeometryError("rays are not coplanar")
        if abs(coef[0]) < 1e-14:
            return np.inf
        return coef[1] / coef[0]

    s1, s2 = slope(d1), slope(d2)
    if not (np.isfinite(s1) and np.isfinite(s2)) or s1 * s2 <= 0:
        raise GeometryError("timelike rays must be separated from the null rays")
    # cross-ratio [l1 : d1 : d2 : l2] on parameters (0, s1, s2, inf)
    cr = s2 / s1
    if cr < 1.0:
        cr = 1.0 / cr
    if cr < 1.0 - 1e-12:
        raise GeometryError("cross-ratio below 1 for both indexings")
    return float(np.log(cr))


@dataclass(frozen=True)
class GluingPositivity:
    positive: bool
    degenerate: bool


def positivity_from_gluing(glue_map, side: str = "future") -> GluingPositivity:
    """Causal positivity of a gluing that fixes the singular geodesic.

    The gluing acts along the lightlike rays of the cut half-plane; it is
    given by its projective action t -> (a t + b)/(c t + d) on the affine ray
    coordinate, with t = 0 on the axis.  Positive mass means every sampled
    point moves into its own causal future: t increases on a future-side
    half-plane and decreases on a past-side one.  The identity gluing is
    reported as degenerate (mass zero) and positive by convention.
    """
    m = np.asarray(getattr(glue_map, "m", glue_map), dtype=float)
    if m.shape != (2, 2):
        raise GeometryError("glue map must be a 2x2 projective matrix")
    m = m / np.sqrt(abs(np.linalg.det(m)))
    if abs(m[0, 1]) > 1e-9:
        raise GeometryError("glue map does not fix the axis t = 0")
    if side not in ("future", "past"):
        raise GeometryError("side must be future or past")

    ts = np.geomspace(1e-3, 10.0, 64)
    img = (m[0, 0] * ts + m[0, 1]) / (m[1, 0] * ts + m[1, 1])
    disp = img - ts
    if np.abs(disp).max() <= 1e-12 * (1 + np.abs(ts).max()):
        return GluingPositivity(positive=True, degenerate=True)
    forward = bool(np.all(disp > 0))
    backward = bool(np.all(disp < 0))
    if not (forward or backward):
        raise GeometryError("glue map does not preserve the ray family")
    positive = forward if side == "future" else backward
    return GluingPositivity(positive=positive, degenerate=False)
