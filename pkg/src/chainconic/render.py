"""Static SVG pictures of a chain, its center polygon and the inscribed conic.

Output is a pure function of the inputs: a fixed 1000x1000 viewBox, the
scene fitted with a 5% margin, elements emitted in a fixed order with
stable ids, and every coordinate printed with three decimals.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from .chain import CenterPolygon, Chain
from .conic import ConicKind, FocalConic
from .kernel import Line, ProperCircle, StraightLine

SIZE = 1000.0
MARGIN = 0.05
SAMPLES = 720

XY = Tuple[float, float]


class _Frame:
    """Model-to-viewBox map (uniform scale, y axis flipped)."""

    def __init__(self, xmin: float, xmax: float, ymin: float, ymax: float):
        span = max(xmax - xmin, ymax - ymin, 1e-12)
        self.scale = SIZE * (1 - 2 * MARGIN) / span
        self.cx = (xmin + xmax) / 2
        self.cy = (ymin + ymax) / 2
        half = SIZE / 2 / self.scale
        # model-space window covered by the viewBox
        self.window = (self.cx - half, self.cx + half, self.cy - half, self.cy + half)

    def __call__(self, p: XY) -> XY:
        return (
            SIZE / 2 + self.scale * (p[0] - self.cx),
            SIZE / 2 - self.scale * (p[1] - self.cy),
        )

    def visible(self, p: XY, slack: float = 0.05) -> bool:
        x0, x1, y0, y1 = self.window
        pad = slack * (x1 - x0)
        return x0 - pad <= p[0] <= x1 + pad and y0 - pad <= p[1] <= y1 + pad

    @property
    def radius(self) -> float:
        x0, x1, y0, y1 = self.window
        return math.hypot(x1 - x0, y1 - y0)


def _fmt(v: float) -> str:
    text = f"{v:.3f}"
    return "0.000" if text == "-0.000" else text


def _pt(p) -> XY:
    return (float(p.x), float(p.y))


def _bounds(chain: Chain, polygon: Optional[CenterPolygon], conic: Optional[FocalConic]):
    pts: List[XY] = [_pt(p) for p in chain.P + chain.Q]
    carriers = [chain.config.carrier_k]
    if isinstance(chain.config.carrier_l, ProperCircle):
        carriers.append(chain.config.carrier_l)
    for c in carriers:
        x, y = _pt(c.center)
        r = math.sqrt(float(c.radius_sq))
        pts += [(x - r, y - r), (x + r, y + r)]
    if polygon is not None:
        pts += [_pt(v) for v in polygon.vertices]
    if conic is not None:
        pts.append(_pt(conic.focus_k))
        if conic.focus_l is not None:
            pts.append(_pt(conic.focus_l))
        if conic.kind in (ConicKind.ELLIPSE, ConicKind.CIRCLE):
            pts += _ellipse_points(conic, 64)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), max(xs), min(ys), max(ys)


def _axes(conic: FocalConic):
    k, l = _pt(conic.focus_k), _pt(conic.focus_l)
    dist = math.dist(k, l)
    u = (1.0, 0.0) if dist == 0 else ((l[0] - k[0]) / dist, (l[1] - k[1]) / dist)
    center = ((k[0] + l[0]) / 2, (k[1] + l[1]) / 2)
    a = math.sqrt(float(conic.r_sq)) / 2
    c = dist / 2
    b = math.sqrt(abs(a * a - c * c))
    return center, u, (-u[1], u[0]), a, b


def _ellipse_points(conic: FocalConic, samples: int = SAMPLES) -> List[XY]:
    m, u, v, a, b = _axes(conic)
    out = []
    for i in range(samples):
        t = 2 * math.pi * i / samples
        x, y = a * math.cos(t), b * math.sin(t)
        out.append((m[0] + x * u[0] + y * v[0], m[1] + x * u[1] + y * v[1]))
    return out


def _hyperbola_branches(conic: FocalConic, frame: _Frame) -> List[List[XY]]:
    m, u, v, a, b = _axes(conic)
    reach = frame.radius + math.dist(m, (frame.cx, frame.cy))
    smax = math.acosh(max(1.0, reach / a)) + 0.5
    branches = []
    for sign in (1.0, -1.0):
        pts = []
        for i in range(SAMPLES + 1):
            s = -smax + 2 * smax * i / SAMPLES
            x, y = sign * a * math.cosh(s), b * math.sinh(s)
            pts.append((m[0] + x * u[0] + y * v[0], m[1] + x * u[1] + y * v[1]))
        branches.append(pts)
    return branches


def _parabola_points(conic: FocalConic, frame: _Frame) -> List[XY]:
    d = conic.directrix.to_float()
    f = _pt(conic.focus_k)
    n2 = d.a * d.a + d.b * d.b
    k = (d.a * f[0] + d.b * f[1] + d.c) / n2
    foot = (f[0] - d.a * k, f[1] - d.b * k)
    vertex = ((f[0] + foot[0]) / 2, (f[1] + foot[1]) / 2)
    p = math.dist(f, vertex)
    u = ((f[0] - foot[0]) / (2 * p), (f[1] - foot[1]) / (2 * p))
    w = (-u[1], u[0])
    reach = frame.radius + math.dist(vertex, (frame.cx, frame.cy))
    xmax = 2 * math.sqrt(p * reach) + reach
    pts = []
    for i in range(SAMPLES + 1):
        x = -xmax + 2 * xmax * i / SAMPLES
        y = x * x / (4 * p)
        pts.append((vertex[0] + y * u[0] + x * w[0], vertex[1] + y * u[1] + x * w[1]))
    return pts


def _clip_runs(pts: Sequence[XY], frame: _Frame) -> List[List[XY]]:
    runs: List[List[XY]] = []
    current: List[XY] = []
    for p in pts:
        if frame.visible(p):
            current.append(p)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return [r for r in runs if len(r) > 1]


def _path(runs: Iterable[Sequence[XY]], frame: _Frame, closed: bool = False) -> str:
    parts = []
    for run in runs:
        mapped = [frame(p) for p in run]
        head, *tail = mapped
        parts.append(f"M{_fmt(head[0])},{_fmt(head[1])}")
        parts.extend(f"L{_fmt(x)},{_fmt(y)}" for x, y in tail)
        if closed:
            parts.append("Z")
    return " ".join(parts)


def _line_segment(line: Line, frame: _Frame) -> Tuple[XY, XY]:
    ln = line.to_float()
    n2 = ln.a * ln.a + ln.b * ln.b
    k = (ln.a * frame.cx + ln.b * frame.cy + ln.c) / n2
    foot = (frame.cx - ln.a * k, frame.cy - ln.b * k)
    norm = math.sqrt(n2)
    d = (-ln.b / norm, ln.a / norm)
    r = frame.radius
    return (foot[0] - r * d[0], foot[1] - r * d[1]), (foot[0] + r * d[0], foot[1] + r * d[1])


def _circle_el(ident: str, circle: ProperCircle, frame: _Frame, style: str) -> str:
    x, y = frame(_pt(circle.center))
    r = math.sqrt(float(circle.radius_sq)) * frame.scale
    return f'<circle id="{ident}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" {style}/>'


def _dot(ident: str, p: XY, frame: _Frame, color: str, label: str) -> List[str]:
    x, y = frame(p)
    return [
        f'<circle id="{ident}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4.000" fill="{color}"/>',
        f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-size="14" fill="{color}">{label}</text>',
    ]


def render_svg(chain: Chain, polygon: Optional[CenterPolygon] = None, conic: Optional[FocalConic] = None) -> str:
    frame = _Frame(*_bounds(chain, polygon, conic))
    cfg = chain.config
    thin = 'fill="none" stroke-width="1"'
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{int(SIZE)}" '
        f'height="{int(SIZE)}" viewBox="0 0 {int(SIZE)} {int(SIZE)}">',
        f'<rect id="background" x="0" y="0" width="{int(SIZE)}" height="{int(SIZE)}" fill="white"/>',
        '<g id="support-circles" stroke="#bbbbbb">',
    ]
    out += [_circle_el(f"support-{i + 1}", c, frame, thin) for i, c in enumerate(chain.support)]
    out.append("</g>")

    out.append('<g id="carriers" stroke="black">')
    out.append(_circle_el("carrier-K", cfg.carrier_k, frame, 'fill="none" stroke-width="2"'))
    if isinstance(cfg.carrier_l, StraightLine):
        a, b = _line_segment(cfg.carrier_l.line, frame)
        out.append(f'<path id="carrier-L" d="{_path([[a, b]], frame)}" fill="none" stroke-width="2"/>')
    else:
        out.append(_circle_el("carrier-L", cfg.carrier_l, frame, 'fill="none" stroke-width="2"'))
    out.append("</g>")

    if conic is not None:
        out.append('<g id="conic" stroke="#c0392b" fill="none" stroke-width="2">')
        if conic.kind in (ConicKind.ELLIPSE, ConicKind.CIRCLE):
            out.append(f'<path id="conic-0" d="{_path([_ellipse_points(conic)], frame, closed=True)}"/>')
        elif conic.kind is ConicKind.HYPERBOLA:
            for i, branch in enumerate(_hyperbola_branches(conic, frame)):
                out.append(f'<path id="conic-{i}" d="{_path(_clip_runs(branch, frame), frame)}"/>')
        else:
            pts = _parabola_points(conic, frame)
            out.append(f'<path id="conic-0" d="{_path(_clip_runs(pts, frame), frame)}"/>')
            a, b = _line_segment(conic.directrix, frame)
            out.append(
                f'<path id="directrix" d="{_path([[a, b]], frame)}" stroke-dasharray="6,4" stroke-width="1"/>'
            )
        out.append("</g>")

    if polygon is not None:
        ring = [_pt(v) for v in polygon.vertices]
        out.append(
            f'<path id="center-polygon" d="{_path([ring], frame, closed=True)}" '
            'fill="none" stroke="#2471a3" stroke-width="2"/>'
        )

    out.append('<g id="points">')
    for i, p in enumerate(chain.P):
        out += _dot(f"P-{i + 1}", _pt(p), frame, "#1e8449", f"P{i + 1}")
    for i, q in enumerate(chain.Q):
        out += _dot(f"Q-{i + 1}", _pt(q), frame, "#7d3c98", f"Q{i + 1}")
    if polygon is not None:
        for i, v in enumerate(polygon.vertices):
            out += _dot(f"O-{i + 1}", _pt(v), frame, "#2471a3", f"O{i + 1}")
    out += _dot("focus-K", _pt(cfg.carrier_k.center), frame, "black", "K")
    if isinstance(cfg.carrier_l, ProperCircle):
        out += _dot("focus-L", _pt(cfg.carrier_l.center), frame, "black", "L")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
