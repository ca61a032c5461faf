"""Field-generic plane primitives, constructions and predicates.

Every function works unchanged on :class:`fractions.Fraction` (exact) and
``float`` coordinates.  Constructions never take square roots, so exact
inputs always produce exact outputs.  Predicates compare against zero
exactly when all inputs are exact and against a scale-normalised tolerance
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

from .errors import (
    CoincidentPoints,
    CollinearPoints,
    DuplicatePoints,
    NotOnCurves,
    TangentContact,
)

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-9


def is_exact(*values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def is_zero(value: Scalar, scale: Scalar = 1, tol: Optional[float] = None) -> bool:
    """Zero test: exact for rationals, ``|value| <= tol * scale`` otherwise."""
    if is_exact(value):
        return value == 0
    if tol is None:
        tol = DEFAULT_TOL
    return abs(value) <= tol * abs(scale)


def to_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(value)


def as_scalar(value):
    # ints become Fractions so that true division stays exact
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    return float(value)


def _coerce_fields(obj, *names):
    for name in names:
        object.__setattr__(obj, name, as_scalar(getattr(obj, name)))


@dataclass(frozen=True)
class Point:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        _coerce_fields(self, "x", "y")

    def __iter__(self):
        yield self.x
        yield self.y

    def to_float(self) -> "Point":
        return Point(float(self.x), float(self.y))

    def coincides(self, other: "Point", tol: Optional[float] = None) -> bool:
        if is_exact(self.x, self.y, other.x, other.y):
            return self == other
        scale = 1 + max(abs(self.x), abs(self.y), abs(other.x), abs(other.y))
        return is_zero(squared_distance(self, other), scale * scale, _sq(tol))


@dataclass(frozen=True, eq=False)
class Line:
    """The line ``a*x + b*y + c = 0``.

    Equality is projective: two lines are equal when their coefficient
    triples are proportional.
    """

    a: Scalar
    b: Scalar
    c: Scalar

    def __post_init__(self):
        _coerce_fields(self, "a", "b", "c")
        if self.a == 0 and self.b == 0:
            raise ValueError("line needs (a, b) != (0, 0)")

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        if p == q:
            raise CoincidentPoints(f"no unique line through {p} twice")
        return cls(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y)

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return lines_equal(self, other)

    __hash__ = None

    def evaluate(self, p: Point) -> Scalar:
        return self.a * p.x + self.b * p.y + self.c

    def normalized(self) -> "Line":
        """Scale so the largest coefficient magnitude is one (stays rational)."""
        m = max(abs(self.a), abs(self.b), abs(self.c))
        return Line(self.a / m, self.b / m, self.c / m)

    def contains(self, p: Point, tol: Optional[float] = None) -> bool:
        value = self.evaluate(p)
        if is_exact(value):
            return value == 0
        norm = math.hypot(self.a, self.b)
        scale = 1 + max(abs(p.x), abs(p.y))
        return is_zero(value / norm, scale, tol)

    def is_parallel(self, other: "Line", tol: Optional[float] = None) -> bool:
        u, v = self.normalized(), other.normalized()
        return is_zero(u.a * v.b - u.b * v.a, 1, tol)

    def to_float(self) -> "Line":
        return Line(float(self.a), float(self.b), float(self.c))


@dataclass(frozen=True)
class ProperCircle:
    """Circle stored by centre and squared radius.

    ``radius`` is optional; generators supply it when it is rational so
    that points can be placed exactly with :func:`param_point`.
    """

    center: Point
    radius_sq: Scalar
    radius: Optional[Scalar] = None

    def __post_init__(self):
        _coerce_fields(self, "radius_sq")
        if self.radius is not None:
            _coerce_fields(self, "radius")
        if not self.radius_sq > 0:
            raise ValueError("circle needs radius_sq > 0")
        if self.radius is not None and not self.radius > 0:
            raise ValueError("circle radius must be positive")

    @classmethod
    def from_radius(cls, center: Point, radius: Scalar) -> "ProperCircle":
        return cls(center, radius * radius, radius)

    def contains(self, p: Point, tol: Optional[float] = None) -> bool:
        return is_zero(squared_distance(self.center, p) - self.radius_sq, self.radius_sq, tol)

    def to_float(self) -> "ProperCircle":
        return ProperCircle(
            self.center.to_float(),
            float(self.radius_sq),
            None if self.radius is None else float(self.radius),
        )


@dataclass(frozen=True)
class StraightLine:
    """A generalised circle through the point at infinity."""

    line: Line

    def contains(self, p: Point, tol: Optional[float] = None) -> bool:
        return self.line.contains(p, tol)

    def to_float(self) -> "StraightLine":
        return StraightLine(self.line.to_float())


GeneralizedCircle = Union[ProperCircle, StraightLine]


def _sq(tol: Optional[float]) -> float:
    t = DEFAULT_TOL if tol is None else tol
    return t * t


def squared_distance(p: Point, q: Point) -> Scalar:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def orientation(p: Point, q: Point, r: Point) -> Scalar:
    """Twice the signed area of triangle ``pqr``."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def lines_equal(l1: Line, l2: Line, tol: Optional[float] = None) -> bool:
    """All 2x2 minors of the stacked coefficient rows vanish."""
    u, v = l1.normalized(), l2.normalized()
    minors = (u.a * v.b - u.b * v.a, u.a * v.c - u.c * v.a, u.b * v.c - u.c * v.b)
    return all(is_zero(m, 1, tol) for m in minors)


def perpendicular_bisector(p: Point, q: Point) -> Line:
    if p == q:
        raise CoincidentPoints(f"perpendicular bisector of {p} with itself")
    return Line(
        2 * (q.x - p.x),
        2 * (q.y - p.y),
        (p.x * p.x + p.y * p.y) - (q.x * q.x + q.y * q.y),
    )


def reflect_point(p: Point, line: Line) -> Point:
    k = line.evaluate(p) / (line.a * line.a + line.b * line.b)
    return Point(p.x - 2 * line.a * k, p.y - 2 * line.b * k)


def circumcircle(p: Point, q: Point, r: Point) -> ProperCircle:
    if p == q or q == r or p == r:
        raise DuplicatePoints(f"circumcircle of {p}, {q}, {r}")
    d = 2 * orientation(p, q, r)
    if is_zero(d, _triangle_scale(p, q, r)):
        raise CollinearPoints(f"{p}, {q}, {r} are collinear")
    bx, by = q.x - p.x, q.y - p.y
    cx, cy = r.x - p.x, r.y - p.y
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = Point(p.x + ux, p.y + uy)
    return ProperCircle(center, ux * ux + uy * uy)


def _triangle_scale(p: Point, q: Point, r: Point) -> Scalar:
    return max(squared_distance(p, q), squared_distance(q, r), squared_distance(p, r))


def second_intersection(
    through: ProperCircle,
    base: GeneralizedCircle,
    known: Point,
    tol: Optional[float] = None,
) -> Point:
    """Other common point of ``through`` and ``base``.

    The two meeting points are mirror images across the line of centres
    (or, for a straight ``base``, across the perpendicular dropped from the
    centre), so the answer is a single reflection of ``known``.
    """
    if not (through.contains(known, tol) and base.contains(known, tol)):
        raise NotOnCurves(f"{known} is not on both curves")
    c = through.center
    if isinstance(base, StraightLine):
        ln = base.line
        axis = Line(ln.b, -ln.a, ln.a * c.y - ln.b * c.x)
    else:
        if base.center == c:
            raise CoincidentPoints("concentric curves have no line of centres")
        axis = Line.through(c, base.center)
    result = reflect_point(known, axis)
    if is_exact(result.x, result.y, known.x, known.y):
        touching = result == known
    else:
        touching = is_zero(squared_distance(result, known), through.radius_sq, _sq(tol))
    if touching:
        raise TangentContact(f"curves touch at {known}")
    return result


def concyclic_residual(p1: Point, p2: Point, p3: Point, p4: Point) -> Scalar:
    """Scale-free 4x4 concyclicity determinant.

    The determinant with rows ``(x, y, x^2 + y^2, 1)`` is divided by the
    square of the mean pairwise squared distance, which makes it invariant
    under translation, rotation and scaling (reflections flip its sign).
    """
    rows = []
    for p in (p2, p3, p4):
        dx, dy = p.x - p1.x, p.y - p1.y
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    det = a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)
    pts = (p1, p2, p3, p4)
    total = sum(squared_distance(pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4))
    if total == 0:
        return det
    mean = total / 6
    return det / (mean * mean)


def concyclic4(p1: Point, p2: Point, p3: Point, p4: Point, tol: Optional[float] = None) -> bool:
    """True when the four points lie on one circle or one line."""
    return is_zero(concyclic_residual(p1, p2, p3, p4), 1, tol)


def param_point(circle: ProperCircle, t: Scalar, radius: Optional[Scalar] = None) -> Point:
    """Rational parametrisation ``center + radius*((1-t^2)/(1+t^2), 2t/(1+t^2))``."""
    if radius is None:
        radius = circle.radius
    if radius is None:
        raise ValueError("param_point needs an explicit radius")
    t, radius = as_scalar(t), as_scalar(radius)
    w = 1 + t * t
    return Point(
        circle.center.x + radius * (1 - t * t) / w,
        circle.center.y + radius * 2 * t / w,
    )


def circle_parameter(circle: ProperCircle, p: Point, radius: Optional[Scalar] = None) -> Scalar:
    """Inverse of :func:`param_point`."""
    if radius is None:
        radius = circle.radius
    radius = as_scalar(radius)
    dx, dy = p.x - circle.center.x, p.y - circle.center.y
    if dx + radius == 0:
        raise ValueError("the antipode of the base point has no finite parameter")
    return dy / (dx + radius)


def line_point(line: Line, t: Scalar) -> Point:
    """Point on ``line``: foot of the origin plus ``t`` times ``(-b, a)``."""
    t = as_scalar(t)
    n2 = line.a * line.a + line.b * line.b
    fx, fy = -line.a * line.c / n2, -line.b * line.c / n2
    return Point(fx - t * line.b, fy + t * line.a)


def line_parameter(line: Line, p: Point) -> Scalar:
    n2 = line.a * line.a + line.b * line.b
    return (line.a * p.y - line.b * p.x) / n2


def lines_concurrency_residual(l1: Line, l2: Line, l3: Line) -> Scalar:
    """3x3 coefficient determinant after scaling each line to unit max-norm."""
    u, v, w = l1.normalized(), l2.normalized(), l3.normalized()
    return (
        u.a * (v.b * w.c - v.c * w.b)
        - u.b * (v.a * w.c - v.c * w.a)
        + u.c * (v.a * w.b - v.b * w.a)
    )


def lines_concurrent(l1: Line, l2: Line, l3: Line, tol: Optional[float] = None) -> bool:
    """Three lines share a point; three parallel lines share an ideal point."""
    return is_zero(lines_concurrency_residual(l1, l2, l3), 1, tol)
