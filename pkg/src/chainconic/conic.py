"""Focal conics and the tangency certificates for a center polygon.

A conic with foci ``K`` and ``L`` is stored as the circle that the
reflections of ``K`` in its tangent lines sweep out: centre ``L``, squared
radius ``r_sq`` (``r`` is the major axis length ``2a``).  A line is tangent
exactly when the reflection of ``K`` in it lands on that circle.  For a
parabola the circle degenerates into the directrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .chain import CenterPolygon, Chain
from .errors import (
    ClassificationMismatch,
    CoincidentPoints,
    DegenerateConic,
    DegenerateDiagonal,
    FocusOnTangent,
    NotInscribed,
    WrongArity,
)
from .kernel import (
    GeneralizedCircle,
    Line,
    Point,
    ProperCircle,
    Scalar,
    StraightLine,
    is_exact,
    is_zero,
    lines_concurrency_residual,
    lines_equal,
    perpendicular_bisector,
    reflect_point,
    squared_distance,
)


class ConicKind(enum.Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    PARABOLA = "parabola"
    CIRCLE = "circle"


@dataclass(frozen=True)
class FocalConic:
    kind: ConicKind
    focus_k: Point
    focus_l: Optional[Point] = None
    r_sq: Optional[Scalar] = None
    directrix: Optional[Line] = None

    def __post_init__(self):
        if self.kind is ConicKind.PARABOLA:
            if self.directrix is None:
                raise ValueError("a parabola needs a directrix")
            if self.directrix.contains(self.focus_k):
                raise DegenerateConic("directrix passes through the focus")
        else:
            if self.focus_l is None or self.r_sq is None:
                raise ValueError("a central conic needs both foci and r_sq")
            if not self.r_sq > 0:
                raise DegenerateConic("r_sq must be positive")

    @property
    def focus(self) -> Point:
        return self.focus_k

    def to_float(self) -> "FocalConic":
        return FocalConic(
            self.kind,
            self.focus_k.to_float(),
            None if self.focus_l is None else self.focus_l.to_float(),
            None if self.r_sq is None else float(self.r_sq),
            None if self.directrix is None else self.directrix.to_float(),
        )


@dataclass(frozen=True)
class TangencyCertificate:
    side: Line
    reflected_focus: Point
    dist_sq_to_l: Optional[Scalar] = None


def _kind_for(K: Point, L: Point, r_sq: Scalar, tol: Optional[float]) -> ConicKind:
    focal = squared_distance(K, L)
    if K == L or (not is_exact(focal) and is_zero(focal, r_sq, tol)):
        return ConicKind.CIRCLE
    diff = r_sq - focal
    if is_zero(diff, r_sq, tol):
        raise DegenerateConic("reflected-focus circle passes through K")
    return ConicKind.ELLIPSE if diff > 0 else ConicKind.HYPERBOLA


def conic_from_focus_tangent(K: Point, L: Point, tangent: Line, tol: Optional[float] = None) -> FocalConic:
    if tangent.contains(K, tol):
        raise FocusOnTangent(f"focus {K} lies on the tangent")
    T = reflect_point(K, tangent)
    r_sq = squared_distance(L, T)
    if is_zero(r_sq, squared_distance(K, T), tol):
        raise DegenerateConic("reflection of K lands on L")
    return FocalConic(_kind_for(K, L, r_sq, tol), K, L, r_sq)


def remark_kind(K: Point, carrier_l: GeneralizedCircle, tol: Optional[float] = None) -> ConicKind:
    """Kind predicted from where ``K`` sits: inside ``c(L)`` ellipse, outside hyperbola.

    The prediction is guaranteed only when the two carriers do not cross
    (see :func:`guaranteed_kind`); crossing carriers can go either way.
    """
    if isinstance(carrier_l, StraightLine):
        return ConicKind.PARABOLA
    position = squared_distance(K, carrier_l.center) - carrier_l.radius_sq
    if is_zero(position, carrier_l.radius_sq, tol):
        raise DegenerateConic("K lies on the carrier c(L)")
    return ConicKind.ELLIPSE if position < 0 else ConicKind.HYPERBOLA


def guaranteed_kind(carrier_k: ProperCircle, carrier_l: GeneralizedCircle) -> Optional[ConicKind]:
    """Kind forced by the carriers alone, or ``None`` when the chain decides.

    Every reflected focus is at distance ``r_K`` from a point of ``c(L)``,
    so ``r`` lies between ``|r_K - r_L|`` and ``r_K + r_L``.  Nested
    carriers therefore force an ellipse and separated ones a hyperbola.
    """
    if isinstance(carrier_l, StraightLine):
        return ConicKind.PARABOLA
    d_sq = squared_distance(carrier_k.center, carrier_l.center)
    rk, rl = carrier_k.radius, carrier_l.radius
    if rk is None or rl is None:
        return None
    if d_sq < (rk - rl) ** 2:
        return ConicKind.CIRCLE if d_sq == 0 else ConicKind.ELLIPSE
    if d_sq > (rk + rl) ** 2:
        return ConicKind.HYPERBOLA
    return None


def classify(
    K: Point,
    carrier_l: GeneralizedCircle,
    r_sq: Optional[Scalar] = None,
    tol: Optional[float] = None,
    strict: bool = False,
) -> ConicKind:
    """Kind of the conic with focus ``K`` inscribed via ``carrier_l``.

    With ``strict=True`` the result must also match :func:`remark_kind`,
    otherwise :class:`ClassificationMismatch` is raised.
    """
    if isinstance(carrier_l, StraightLine):
        return ConicKind.PARABOLA
    if r_sq is None or not r_sq > 0:
        raise DegenerateConic("r_sq must be positive for a proper carrier")
    kind = _kind_for(K, carrier_l.center, r_sq, tol)
    if strict and kind is not ConicKind.CIRCLE:
        expected = remark_kind(K, carrier_l, tol)
        if kind is not expected:
            raise ClassificationMismatch(f"K position implies {expected.value}, conic is {kind.value}")
    return kind


def polygon_sides(polygon: CenterPolygon) -> List[Line]:
    """Lines ``O_i O_{i+1}`` for i = 1..n, the last one closing the polygon."""
    v = polygon.vertices
    return [Line.through(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


def tangency_certificates(K: Point, L: Optional[Point], polygon: CenterPolygon) -> List[TangencyCertificate]:
    certs = []
    for side in polygon_sides(polygon):
        T = reflect_point(K, side)
        certs.append(TangencyCertificate(side, T, None if L is None else squared_distance(L, T)))
    return certs


def relative_spread(values: List[Scalar]) -> Tuple[Scalar, int]:
    """``max |v - mean| / mean`` and the 1-based index of the worst value."""
    mean = sum(values) / len(values)
    deviations = [abs(v - mean) for v in values]
    worst = max(range(len(values)), key=deviations.__getitem__)
    if mean == 0:
        return deviations[worst], worst + 1
    return deviations[worst] / abs(mean), worst + 1


def _offset(line: Line, p: Point, scale: Scalar) -> Scalar:
    value = line.evaluate(p)
    if is_exact(value):
        return value
    return value / math.hypot(line.a, line.b) / scale


def verify_inscribed_conic(
    K: Point,
    carrier_l: GeneralizedCircle,
    polygon: CenterPolygon,
    tol: Optional[float] = None,
) -> Tuple[FocalConic, List[TangencyCertificate]]:
    """Certify that every side of ``polygon`` touches one conic with focus ``K``.

    Raises :class:`NotInscribed` naming the worst side when the reflected
    points of ``K`` do not lie on one circle about ``L`` (or, for a straight
    carrier, on one line parallel to it).
    """
    if isinstance(carrier_l, ProperCircle):
        L = carrier_l.center
        certs = tangency_certificates(K, L, polygon)
        dists = [c.dist_sq_to_l for c in certs]
        spread, worst = relative_spread(dists)
        if not is_zero(spread, 1, tol):
            raise NotInscribed(worst, spread)
        r_sq = dists[0] if is_exact(*dists) else sum(dists) / len(dists)
        if is_zero(r_sq, squared_distance(K, certs[0].reflected_focus), tol):
            raise DegenerateConic("reflected points collapse onto L")
        kind = classify(K, carrier_l, r_sq, tol)
        return FocalConic(kind, K, L, r_sq), certs

    certs = tangency_certificates(K, None, polygon)
    pts = [c.reflected_focus for c in certs]
    second = next((j for j in range(1, len(pts)) if not pts[j].coincides(pts[0], tol)), None)
    if second is None:
        raise NotInscribed(2, 0)
    directrix = Line.through(pts[0], pts[second])
    scale = max(math.sqrt(float(squared_distance(K, p))) for p in pts)
    offsets = [abs(_offset(directrix, p, scale)) for p in pts]
    worst = max(range(len(pts)), key=offsets.__getitem__)
    if not is_zero(offsets[worst], 1, tol):
        raise NotInscribed(worst + 1, offsets[worst])
    if not directrix.is_parallel(carrier_l.line, tol):
        u, v = directrix.normalized(), carrier_l.line.normalized()
        raise NotInscribed(second + 1, u.a * v.b - u.b * v.a)
    if directrix.contains(K, tol):
        raise DegenerateConic("directrix passes through the focus")
    return FocalConic(ConicKind.PARABOLA, K, directrix=directrix), certs


def tangency_residual(conic: FocalConic, line: Line) -> Scalar:
    """Signed, scale-free distance of the reflected focus from its locus."""
    T = reflect_point(conic.focus_k, line)
    if conic.kind is ConicKind.PARABOLA:
        scale = math.sqrt(float(squared_distance(conic.focus_k, T))) or 1.0
        return _offset(conic.directrix, T, scale)
    return (squared_distance(conic.focus_l, T) - conic.r_sq) / conic.r_sq


def is_tangent(conic: FocalConic, line: Line, tol: Optional[float] = None) -> bool:
    return is_zero(tangency_residual(conic, line), 1, tol)


def brianchon_residual(polygon: CenterPolygon) -> Scalar:
    if polygon.n != 6:
        raise WrongArity(f"Brianchon check needs 6 vertices, got {polygon.n}")
    v = polygon.vertices
    diagonals = []
    for i in range(3):
        if v[i] == v[i + 3]:
            raise DegenerateDiagonal(f"opposite vertices {i + 1} and {i + 4} coincide")
        diagonals.append(Line.through(v[i], v[i + 3]))
    return lines_concurrency_residual(*diagonals)


def brianchon_check(polygon: CenterPolygon, tol: Optional[float] = None) -> bool:
    """Main diagonals ``O_1O_4, O_2O_5, O_3O_6`` pass through one point."""
    return is_zero(brianchon_residual(polygon), 1, tol)


def bisector_coincidence_check(chain: Chain, i: int, tol: Optional[float] = None) -> bool:
    """Check the reflection argument at vertex ``O_i``.

    With ``T`` and ``U`` the mirror images of ``K`` in the sides before and
    after ``O_i``, the perpendicular bisector of ``TU`` must be the
    perpendicular bisector of ``Q_i Q_{i+1}``.
    """
    n = chain.n
    K = chain.config.carrier_k.center
    centers = [c.center for c in chain.support]
    prev, here, nxt = centers[(i - 2) % n], centers[(i - 1) % n], centers[i % n]
    T = reflect_point(K, Line.through(prev, here))
    U = reflect_point(K, Line.through(here, nxt))
    q_here, q_next = chain.Q[(i - 1) % n], chain.Q[i % n]
    if T.coincides(U, tol) or q_here.coincides(q_next, tol):
        raise CoincidentPoints(f"degenerate bisector at vertex {i}")
    return lines_equal(perpendicular_bisector(T, U), perpendicular_bisector(q_here, q_next), tol)
