"""Deterministic SVG figures of string-art scenes.

Implicit curves are traced with marching squares on a regular grid; saddle
cells are resolved by sampling the cell center.  All coordinates are written
with four decimals so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .envelope import ImplicitCurve, envelope_unconstrained
from .errors import DegenerateMember, OutOfRange
from .family import (
    FAMILIES,
    LineFamily,
    Scene,
    as_rational,
    default_params,
    single_scene,
    square4_scene,
)

Box = Tuple[float, float, float, float]  # xmin, ymin, xmax, ymax
MAX_GRID = 4096


@dataclass(frozen=True)
class RenderOptions:
    viewbox: Tuple[Fraction, Fraction, Fraction, Fraction]
    grid: int = 256
    string_width: float = 0.15
    curve_width: float = 0.3
    show_envelope: bool = True
    show_extended_lines: bool = False
    size: int = 600
    workers: int = 1

    def __post_init__(self):
        vb = tuple(as_rational(v, "viewbox") for v in self.viewbox)
        if len(vb) != 4 or vb[2] <= 0 or vb[3] <= 0:
            raise ValueError("viewbox needs positive width and height")
        if not 8 <= self.grid <= MAX_GRID:
            raise ValueError(f"grid resolution must be between 8 and {MAX_GRID}")
        if not (0 < self.string_width < math.inf and 0 < self.curve_width < math.inf):
            raise ValueError("stroke widths must be positive and finite")
        if not 1 <= self.size <= MAX_GRID:
            raise ValueError(f"size must be between 1 and {MAX_GRID}")
        if not 1 <= self.workers <= 64:
            raise ValueError("workers must be between 1 and 64")
        object.__setattr__(self, "viewbox", vb)

    @property
    def box(self) -> Box:
        x, y, w, h = (float(v) for v in self.viewbox)
        return x, y, x + w, y + h


@dataclass(frozen=True)
class PolylineSet:
    polylines: Tuple[Tuple[Tuple[float, float], ...], ...] = ()
    closed: Tuple[bool, ...] = ()

    def __len__(self):
        return len(self.polylines)

    def __iter__(self):
        return iter(self.polylines)

    def points(self):
        for line in self.polylines:
            yield from line

    def length(self) -> float:
        return sum(
            math.dist(a, b) for line in self.polylines for a, b in zip(line, line[1:])
        )


# bits: bottom-left 1, bottom-right 2, top-right 4, top-left 8; edges B, R, T, L
_CASES = {
    1: (("L", "B"),),
    2: (("B", "R"),),
    3: (("L", "R"),),
    4: (("R", "T"),),
    6: (("B", "T"),),
    7: (("L", "T"),),
    8: (("T", "L"),),
    9: (("B", "T"),),
    11: (("R", "T"),),
    12: (("L", "R"),),
    13: (("B", "R"),),
    14: (("L", "B"),),
}
# saddles, keyed by (case, center inside)
_SADDLES = {
    (5, True): (("B", "R"), ("T", "L")),
    (5, False): (("L", "B"), ("R", "T")),
    (10, True): (("L", "B"), ("R", "T")),
    (10, False): (("B", "R"), ("T", "L")),
}


def _edge_id(i, j, side):
    if side == "B":
        return ("h", i, j)
    if side == "T":
        return ("h", i, j + 1)
    if side == "L":
        return ("v", i, j)
    return ("v", i + 1, j)


def _evaluate_grid(poly, xs, ys, workers):
    def rows(js):
        gx, gy = np.meshgrid(xs, ys[js[0]:js[-1] + 1])
        return poly.eval_float({"x": gx, "y": gy}) + np.zeros_like(gx)

    n = len(ys)
    if workers == 1:
        return rows(range(n))
    chunk = max(1, -(-n // workers))
    parts = [range(k, min(n, k + chunk)) for k in range(0, n, chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.vstack(list(pool.map(rows, parts)))


def curve_polyline(curve, opts: RenderOptions, box: Optional[Box] = None) -> PolylineSet:
    """Marching-squares trace of ``curve = 0`` over ``box`` (default: the viewbox)."""
    poly = curve.poly if isinstance(curve, ImplicitCurve) else curve
    x0, y0, x1, y1 = box or opts.box
    n = opts.grid
    xs = np.array([x0 + (x1 - x0) * i / n for i in range(n + 1)])
    ys = np.array([y0 + (y1 - y0) * j / n for j in range(n + 1)])
    vals = _evaluate_grid(poly, xs, ys, opts.workers)
    inside = vals >= 0

    def edge_point(eid):
        kind, i, j = eid
        if kind == "h":
            va, vb = vals[j, i], vals[j, i + 1]
            t = va / (va - vb) if va != vb else 0.5
            return (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
        va, vb = vals[j, i], vals[j + 1, i]
        t = va / (va - vb) if va != vb else 0.5
        return (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))

    code = (
        inside[:-1, :-1].astype(np.int8)
        + 2 * inside[:-1, 1:]
        + 4 * inside[1:, 1:]
        + 8 * inside[1:, :-1]
    )
    segments: List[Tuple[tuple, tuple]] = []
    js, is_ = np.nonzero((code != 0) & (code != 15))
    for j, i in zip(js.tolist(), is_.tolist()):
        c = int(code[j, i])
        if c in (5, 10):
            cx = 0.5 * (xs[i] + xs[i + 1])
            cy = 0.5 * (ys[j] + ys[j + 1])
            pairs = _SADDLES[(c, poly.eval_float({"x": cx, "y": cy}) >= 0)]
        else:
            pairs = _CASES[c]
        for a, b in pairs:
            segments.append((_edge_id(i, j, a), _edge_id(i, j, b)))
    return _chain(segments, edge_point)


def _chain(segments, edge_point) -> PolylineSet:
    at_edge: Dict[tuple, List[int]] = {}
    for k, (a, b) in enumerate(segments):
        at_edge.setdefault(a, []).append(k)
        at_edge.setdefault(b, []).append(k)
    used = [False] * len(segments)
    lines, closed = [], []

    def walk(k, start):
        path = [start]
        edge = start
        while True:
            used[k] = True
            a, b = segments[k]
            edge = b if a == edge else a
            path.append(edge)
            nxt = [s for s in at_edge[edge] if not used[s]]
            if not nxt:
                return path
            k = nxt[0]

    for k, (a, b) in enumerate(segments):
        if used[k]:
            continue
        for end in (a, b):
            if len(at_edge[end]) == 1:
                lines.append(walk(k, end))
                closed.append(False)
                break
    for k, (a, b) in enumerate(segments):
        if not used[k]:
            path = walk(k, a)
            lines.append(path)
            closed.append(path[0] == path[-1])
    cache: Dict[tuple, Tuple[float, float]] = {}

    def pt(e):
        if e not in cache:
            px, py = edge_point(e)
            cache[e] = (float(px), float(py))
        return cache[e]

    return PolylineSet(tuple(tuple(pt(e) for e in path) for path in lines), tuple(closed))


def clip_line(line, box: Box):
    """Segment of ``a*x + b*y + c = 0`` inside ``box``, or None."""
    a, b, c = (float(v) for v in line)
    x0, y0, x1, y1 = box
    if b != 0:
        # parametrize by x, then clip in y (Liang-Barsky on a 1-D parameter)
        p = (x0, -(a * x0 + c) / b)
        q = (x1, -(a * x1 + c) / b)
    else:
        p = (-c / a, y0)
        q = (-c / a, y1)
    t0, t1 = 0.0, 1.0
    dx, dy = q[0] - p[0], q[1] - p[1]
    for den, num in ((-dx, p[0] - x0), (dx, x1 - p[0]), (-dy, p[1] - y0), (dy, y1 - p[1])):
        if den == 0:
            if num < 0:
                return None
            continue
        r = num / den
        if den < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    return (p[0] + t0 * dx, p[1] + t0 * dy), (p[0] + t1 * dx, p[1] + t1 * dy)


def fmt(v: float) -> str:
    s = f"{float(v):.4f}"
    return "0.0000" if s == "-0.0000" else s


def _pt(p) -> str:
    return f"{fmt(p[0])},{fmt(p[1])}"


def render_scene(
    scene: Scene,
    curves: Sequence = (),
    opts: Optional[RenderOptions] = None,
    clips: Optional[Sequence[Optional[Box]]] = None,
) -> str:
    """SVG 1.1 text for a scene and its envelope curves.

    ``clips`` optionally restricts each curve to a box (for envelope arcs).
    """
    if opts is None:
        opts = RenderOptions(scene_viewbox(scene))
    vx, vy, vw, vh = (float(v) for v in opts.viewbox)
    box = opts.box
    height = max(1, round(opts.size * vh / vw))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.size}" height="{height}" '
        f'viewBox="{fmt(vx)} {fmt(vy)} {fmt(vw)} {fmt(vh)}">',
        f'<rect x="{fmt(vx)}" y="{fmt(vy)}" width="{fmt(vw)}" height="{fmt(vh)}" fill="white"/>',
        f'<g transform="matrix(1 0 0 -1 0 {fmt(2 * vy + vh)})">',
    ]
    for idx, fam in enumerate(scene.placed()):
        out.append(f'<g class="strings" id="family-{idx}" stroke="black" stroke-width="{fmt(opts.string_width)}">')
        for t in scene.samples:
            seg = _string_segment(fam, t, box, opts.show_extended_lines)
            if seg is not None:
                (ax, ay), (bx, by) = seg
                out.append(f'<line x1="{fmt(ax)}" y1="{fmt(ay)}" x2="{fmt(bx)}" y2="{fmt(by)}"/>')
        out.append("</g>")
    if opts.show_envelope:
        for idx, curve in enumerate(curves):
            clip = clips[idx] if clips is not None else None
            region = box if clip is None else _intersect(box, clip)
            if region is None:
                continue
            lines = curve_polyline(curve, opts, region)
            out.append(f'<g class="envelope" id="curve-{idx}" fill="none" stroke="red" stroke-width="{fmt(opts.curve_width)}">')
            for line in lines:
                out.append(f'<polyline points="{" ".join(_pt(p) for p in line)}"/>')
            out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _string_segment(fam: LineFamily, t, box: Box, extended: bool):
    try:
        line = fam.line_at(t)
    except (DegenerateMember, OutOfRange):
        return None
    if extended or fam.anchors is None:
        return clip_line(line, box)
    return tuple((float(x), float(y)) for x, y in fam.segment_at(t))


def _intersect(a: Box, b: Box) -> Optional[Box]:
    box = (max(a[0], b[0]), max(a[1], b[1]), min(a[2], b[2]), min(a[3], b[3]))
    if box[0] >= box[2] or box[1] >= box[3]:
        return None
    return box


def _anchor_box(fam: LineFamily, params) -> Optional[Tuple[Fraction, Fraction, Fraction, Fraction]]:
    pts = []
    for t in params:
        seg = fam.segment_at(t) if fam.anchors is not None else None
        if seg is not None and (fam.range is None or fam.range[0] <= t <= fam.range[1]):
            pts.extend(seg)
    if not pts:
        return None
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def scene_viewbox(scene: Scene, margin=Fraction(1, 10)):
    """Square viewbox around every string end point, padded by ``margin``."""
    boxes = [b for b in (_anchor_box(f, scene.samples) for f in scene.placed()) if b is not None]
    d = as_rational(scene.d)
    if not boxes:
        return (-d, -d, 2 * d, 2 * d)
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    side = max(x1 - x0, y1 - y0, d)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = side * (1 + 2 * margin) / 2
    return (cx - half, cy - half, 2 * half, 2 * half)


@dataclass
class Figure:
    scene: Scene
    curves: List[ImplicitCurve]
    clips: List[Optional[Box]]
    options: RenderOptions

    def svg(self) -> str:
        return render_scene(self.scene, self.curves, self.options, self.clips)


def build_figure(name: str, d, params: Optional[Sequence] = None, **options) -> Figure:
    """Scene, envelope curves and default options for a named figure.

    ``square4`` is the four-corner figure; ``cross``, ``diagonal`` and
    ``corner`` show one family with its envelope.
    """
    d = as_rational(d, "d")
    if name == "square4":
        scene = square4_scene(d)
        if params is not None:
            scene = replace(scene, samples=tuple(as_rational(t) for t in params))
    elif name in FAMILIES:
        fam = FAMILIES[name](d)
        scene = single_scene(fam, params if params is not None else default_params(name, d), d)
    else:
        raise ValueError(f"unknown scene {name!r}")
    curves, clips = [], []
    for fam in scene.placed():
        curves.append(envelope_unconstrained(fam).curve)
        ab = _anchor_box(fam, scene.samples) if fam.range is not None else None
        clips.append(None if ab is None else tuple(float(v) for v in ab))
    viewbox = options.pop("viewbox", None) or scene_viewbox(scene)
    return Figure(scene, curves, clips, RenderOptions(viewbox, **options))
