"""Chains of circles between two carriers.

A chain starts from points ``P_1..P_n`` on the carrier ``c(K)`` and one
point ``Q_1`` on the carrier ``c(L)``.  Step ``i`` draws the circle through
``P_i, Q_i, P_{i+1}`` and takes its second meeting point with ``c(L)`` as
``Q_{i+1}``.  The first ``n - 1`` quadruples ``P_i Q_i Q_{i+1} P_{i+1}`` are
cyclic by construction; whether the closing quadruple ``P_n Q_n Q_1 P_1``
is cyclic is what :func:`closure_residual` measures.

Indices in error messages and public arguments are 1-based and cyclic,
while the stored tuples are ordinary 0-based Python sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import (
    ConfigurationError,
    DegeneracyError,
    DegenerateCenter,
    DegenerateStep,
    DuplicateChainPoint,
    NotClosed,
)
from .kernel import (
    GeneralizedCircle,
    Point,
    ProperCircle,
    Scalar,
    StraightLine,
    as_scalar,
    circle_parameter,
    circumcircle,
    concyclic_residual,
    is_zero,
    line_parameter,
    line_point,
    orientation,
    param_point,
    second_intersection,
)


def carrier_point(carrier: GeneralizedCircle, t: Scalar) -> Point:
    if isinstance(carrier, StraightLine):
        return line_point(carrier.line, t)
    return param_point(carrier, t)


def carrier_parameter(carrier: GeneralizedCircle, p: Point) -> Scalar:
    if isinstance(carrier, StraightLine):
        return line_parameter(carrier.line, p)
    return circle_parameter(carrier, p)


@dataclass(frozen=True)
class ChainConfiguration:
    """Everything needed to propagate a chain.

    ``carrier_k`` must carry its exact ``radius``; so must ``carrier_l``
    when it is a proper circle.  ``q_start`` is the parameter of ``Q_1`` on
    ``carrier_l`` (see :func:`carrier_point`).
    """

    carrier_k: ProperCircle
    carrier_l: GeneralizedCircle
    n: int
    p_params: Tuple[Scalar, ...]
    q_start: Scalar

    def __post_init__(self):
        object.__setattr__(self, "p_params", tuple(as_scalar(t) for t in self.p_params))
        object.__setattr__(self, "q_start", as_scalar(self.q_start))
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 3:
            raise ConfigurationError(f"n must be an integer > 2, got {self.n!r}")
        if len(self.p_params) != self.n:
            raise ConfigurationError(f"expected {self.n} P parameters, got {len(self.p_params)}")
        if len(set(self.p_params)) != self.n:
            raise ConfigurationError("P parameters must be pairwise distinct")
        if self.carrier_k.radius is None:
            raise ConfigurationError("carrier_k needs an exact radius")
        if isinstance(self.carrier_l, ProperCircle):
            if self.carrier_l.radius is None:
                raise ConfigurationError("carrier_l needs an exact radius")
            if (
                self.carrier_l.center == self.carrier_k.center
                and self.carrier_l.radius_sq == self.carrier_k.radius_sq
            ):
                raise ConfigurationError("carriers must be distinct curves")

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.q_start, float)

    def p_points(self) -> Tuple[Point, ...]:
        return tuple(param_point(self.carrier_k, t) for t in self.p_params)

    def q_first(self) -> Point:
        return carrier_point(self.carrier_l, self.q_start)

    def to_float(self) -> "ChainConfiguration":
        return ChainConfiguration(
            self.carrier_k.to_float(),
            self.carrier_l.to_float(),
            self.n,
            tuple(float(t) for t in self.p_params),
            float(self.q_start),
        )


@dataclass(frozen=True)
class Chain:
    config: ChainConfiguration
    P: Tuple[Point, ...]
    Q: Tuple[Point, ...]
    support: Tuple[ProperCircle, ...]

    @property
    def n(self) -> int:
        return len(self.P)

    def quadruple(self, i: int) -> Tuple[Point, Point, Point, Point]:
        """``(P_i, Q_i, Q_{i+1}, P_{i+1})`` for 1-based cyclic ``i``."""
        n = self.n
        a, b = (i - 1) % n, i % n
        return self.P[a], self.Q[a], self.Q[b], self.P[b]


@dataclass(frozen=True)
class CenterPolygon:
    vertices: Tuple[Point, ...] = field()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ConfigurationError("a center polygon needs at least 3 vertices")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point:
        return self.vertices[(i - 1) % self.n]

    def to_float(self) -> "CenterPolygon":
        return CenterPolygon(tuple(v.to_float() for v in self.vertices))


def _step_circle(a: Point, b: Point, c: Point, index: int) -> ProperCircle:
    try:
        return circumcircle(a, b, c)
    except DegeneracyError as exc:
        raise DegenerateStep(exc, index) from exc


def propagate(config: ChainConfiguration, tol: Optional[float] = None) -> Chain:
    n = config.n
    P = config.p_points()
    Q = [config.q_first()]
    support = []
    for i in range(n - 1):
        circle = _step_circle(P[i], Q[i], P[i + 1], i + 1)
        try:
            q_next = second_intersection(circle, config.carrier_l, Q[i], tol)
        except DegeneracyError as exc:
            raise DegenerateStep(exc, i + 1) from exc
        if q_next.coincides(P[i], tol) or q_next.coincides(P[i + 1], tol):
            raise DuplicateChainPoint(i + 1)
        support.append(circle)
        Q.append(q_next)
    support.append(_step_circle(P[n - 1], Q[n - 1], Q[0], n))
    return Chain(config, tuple(P), tuple(Q), tuple(support))


def closure_residual(chain: Chain) -> Scalar:
    """Normalised concyclicity determinant of ``P_n, Q_n, Q_1, P_1``."""
    return concyclic_residual(chain.P[-1], chain.Q[-1], chain.Q[0], chain.P[0])


def verify_closure(chain: Chain, tol: Optional[float] = None) -> bool:
    return is_zero(closure_residual(chain), 1, tol)


def center_polygon(chain: Chain, tol: Optional[float] = None) -> CenterPolygon:
    if not verify_closure(chain, tol):
        raise NotClosed(f"closing quadruple is not cyclic (residual {closure_residual(chain)})")
    for i in range(1, chain.n + 1):
        quad = chain.quadruple(i)
        scale = max(abs(c) for p in quad for c in p) + 1
        if all(
            is_zero(orientation(quad[0], quad[j], quad[k]), scale * scale, tol)
            for j, k in ((1, 2), (1, 3), (2, 3))
        ):
            raise DegenerateCenter(i)
    return CenterPolygon(tuple(c.center for c in chain.support))


def reversed_config(chain: Chain) -> ChainConfiguration:
    """Configuration that walks ``chain`` backwards, starting from ``Q_n``."""
    cfg = chain.config
    return ChainConfiguration(
        cfg.carrier_k,
        cfg.carrier_l,
        cfg.n,
        tuple(reversed(cfg.p_params)),
        carrier_parameter(cfg.carrier_l, chain.Q[-1]),
    )

