"""Seeded random configurations and canned scenarios.

Randomness comes from NumPy's PCG64.  Attempt ``k`` of a draw for chain
length ``n`` and seed ``s`` uses the stream
``SeedSequence(s, spawn_key=(n, k))``, so every retry has its own
independent, reproducible stream and a given ``(n, seed, profile)`` always
yields the same configuration.

Profiles place the carriers so the conic kind is fixed: ``k-inside``
nests the two carriers with ``K`` inside ``c(L)``, ``k-outside`` keeps
them apart, ``l-line`` makes ``c(L)`` a straight line.

Every parameter is a rational ``p/q`` with ``|p|, |q| <= param_grid``.
Draws that hit a degenerate case, or whose chain points crowd together
closer than ``min_separation`` (relative to the scene size), are thrown
away and redrawn.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Optional

import numpy as np

from .chain import ChainConfiguration, center_polygon, propagate
from .conic import verify_inscribed_conic
from .errors import ChainConicError, ConfigurationError, ExhaustedRetries, UnknownScenario
from .kernel import Line, Point, ProperCircle, StraightLine, squared_distance

DEFAULT_RETRIES = 1000


class CarrierSeparation(enum.Enum):
    K_INSIDE_L = "k-inside"
    K_OUTSIDE_L = "k-outside"
    L_IS_LINE = "l-line"


@dataclass(frozen=True)
class GeneratorProfile:
    carrier_separation: CarrierSeparation = CarrierSeparation.K_INSIDE_L
    seed: int = 0
    n_range: FrozenSet[int] = field(default_factory=lambda: frozenset(range(3, 33)))
    param_grid: int = 12
    min_separation: Fraction = Fraction(1, 100)
    max_retries: int = DEFAULT_RETRIES

    def __post_init__(self):
        object.__setattr__(self, "carrier_separation", CarrierSeparation(self.carrier_separation))
        object.__setattr__(self, "n_range", frozenset(self.n_range))
        if self.param_grid < 8:
            raise ConfigurationError("param_grid must be at least 8")
        if not self.min_separation > 0:
            raise ConfigurationError("min_separation must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")


class _Draw:
    def __init__(self, seed: int, n: int, attempt: int):
        ss = np.random.SeedSequence(seed, spawn_key=(n, attempt))
        self.rng = np.random.Generator(np.random.PCG64(ss))

    def integer(self, lo: int, hi: int) -> int:
        return int(self.rng.integers(lo, hi, endpoint=True))

    def rational(self, bound: int) -> Fraction:
        return Fraction(self.integer(-bound, bound), self.integer(1, bound))


class _Rejected(Exception):
    pass


def _carriers(draw: _Draw, profile: GeneratorProfile):
    K = Point(draw.rational(4), draw.rational(4))
    carrier_k = ProperCircle.from_radius(K, Fraction(draw.integer(2, 12), draw.integer(1, 4)))
    sep = profile.carrier_separation
    if sep is CarrierSeparation.L_IS_LINE:
        while True:
            a, b = draw.integer(-4, 4), draw.integer(-4, 4)
            if a or b:
                break
        line = Line(a, b, draw.integer(-8, 8))
        dist_sq = line.evaluate(K) ** 2 / (line.a ** 2 + line.b ** 2)
        if dist_sq < Fraction(1, 4):
            raise _Rejected("profile")
        return carrier_k, StraightLine(line)
    spread = 4 if sep is CarrierSeparation.K_INSIDE_L else 16
    L = Point(K.x + draw.rational(spread), K.y + draw.rational(spread))
    if L == K:
        # concentric carriers make the conic a circle
        raise _Rejected("concentric")
    r_l = Fraction(draw.integer(2, 12), draw.integer(1, 4))
    carrier_l = ProperCircle.from_radius(L, r_l)
    d_sq = squared_distance(K, L)
    r_k = carrier_k.radius
    # Nested carriers force an ellipse, separated ones a hyperbola; crossing
    # carriers are left out because the conic kind then depends on the chain.
    # The 3/4 and 4/3 margins keep the conic away from degenerate.
    if sep is CarrierSeparation.K_INSIDE_L:
        ok = d_sq <= Fraction(3, 4) * min((r_k - r_l) ** 2, r_l * r_l)
    else:
        ok = d_sq >= Fraction(4, 3) * (r_k + r_l) ** 2
    if not ok:
        raise _Rejected("profile")
    return carrier_k, carrier_l


def _angle(t: Fraction) -> float:
    return 2 * math.atan(float(t))


def _well_spread(angles, min_separation: float) -> bool:
    a = sorted(angles)
    gaps = [b - x for x, b in zip(a, a[1:])] + [a[0] + 2 * math.pi - a[-1]]
    return min(gaps) / (2 * math.pi) >= min_separation


def _check_conditioning(chain, min_separation: float) -> None:
    pts = [p.to_float() for p in chain.P + chain.Q]
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    scale = max(max(xs) - min(xs), max(ys) - min(ys))
    for i in range(1, chain.n + 1):
        quad = [p.to_float() for p in chain.quadruple(i)]
        for j in range(4):
            for k in range(j + 1, 4):
                if math.sqrt(squared_distance(quad[j], quad[k])) < min_separation * scale:
                    raise _Rejected("crowded")
    for circle in chain.support:
        if math.sqrt(float(circle.radius_sq)) > scale / min_separation:
            raise _Rejected("flat-quadruple")


def _attempt(n: int, profile: GeneratorProfile, attempt: int) -> ChainConfiguration:
    draw = _Draw(profile.seed, n, attempt)
    carrier_k, carrier_l = _carriers(draw, profile)
    B = profile.param_grid
    params = []
    while len(params) < n:
        t = draw.rational(B)
        if t not in params:
            params.append(t)
    min_sep = float(profile.min_separation)
    if not _well_spread([_angle(t) for t in params], min_sep):
        raise _Rejected("crowded")
    q_start = draw.rational(B)
    config = ChainConfiguration(carrier_k, carrier_l, n, tuple(params), q_start)
    chain = propagate(config)
    _check_conditioning(chain, min_sep)
    if n % 2 == 0:
        polygon = center_polygon(chain)
        verify_inscribed_conic(carrier_k.center, carrier_l, polygon)
    return config


def random_config(n: int, profile: GeneratorProfile, stats: Optional[Counter] = None) -> ChainConfiguration:
    """Draw a configuration that propagates cleanly (and closes, for even n).

    ``stats``, when given, is updated with a count per rejection reason.
    """
    if n not in profile.n_range:
        raise ConfigurationError(f"n={n} is outside the profile's n_range")
    for attempt in range(profile.max_retries):
        try:
            return _attempt(n, profile, attempt)
        except _Rejected as exc:
            reason = str(exc)
        except ChainConicError as exc:
            reason = type(exc).__name__
        if stats is not None:
            stats[reason] += 1
    raise ExhaustedRetries(f"no usable configuration after {profile.max_retries} attempts")


def _f(text: str) -> Fraction:
    return Fraction(text)


# Representative hand-picked constants; the figures they imitate carry no coordinates.
_SCENARIOS = {
    "fig2-ellipse": lambda: ChainConfiguration(
        ProperCircle.from_radius(Point(0, 0), 3),
        ProperCircle.from_radius(Point(_f("3/2"), _f("1/2")), 5),
        6,
        (_f("0"), _f("1/2"), _f("3/2"), _f("-5"), _f("-1"), _f("-1/3")),
        _f("1/4"),
    ),
    "fig3-parabola": lambda: ChainConfiguration(
        ProperCircle.from_radius(Point(0, 2), 2),
        StraightLine(Line(0, 1, 1)),
        6,
        (_f("0"), _f("1/2"), _f("2"), _f("-4"), _f("-1"), _f("-1/3")),
        _f("1/2"),
    ),
    "hyperbola": lambda: ChainConfiguration(
        ProperCircle.from_radius(Point(0, 0), 2),
        ProperCircle.from_radius(Point(6, 1), 3),
        6,
        (_f("0"), _f("1/2"), _f("3/2"), _f("-5"), _f("-1"), _f("-1/3")),
        _f("1/3"),
    ),
}

SCENARIO_NAMES = tuple(_SCENARIOS)


def scenario(name: str) -> ChainConfiguration:
    try:
        factory = _SCENARIOS[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; choose from {', '.join(SCENARIO_NAMES)}") from None
    return factory()
