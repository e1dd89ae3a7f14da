import math
import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from stringart.envelope import ImplicitCurve
from stringart.family import Scene, cross_family, single_scene
from stringart.parse import parse_poly as P
from stringart.render import RenderOptions, clip_line, curve_polyline, fmt, render_scene

from goldens import FIGURES, GOLDEN_DIR, render

SVG = "{http://www.w3.org/2000/svg}"


def curve(text):
    return ImplicitCurve.from_poly(P(text))


def grid_step(opts):
    x0, y0, x1, y1 = opts.box
    return math.hypot((x1 - x0) / opts.grid, (y1 - y0) / opts.grid)


def test_parabola_single_open_polyline():
    c = curve("x^2+20*y+100")
    opts = RenderOptions((-25, -25, 50, 50))
    lines = curve_polyline(c, opts)
    assert len(lines) == 1 and lines.closed == (False,)
    # y = -x^2/20 - 5 within interpolation error
    for x, y in lines.points():
        assert abs(y - (-x * x / 20 - 5)) <= 0.05


def test_vertices_bounded_by_edge_variation():
    c = curve("x^2+20*y+100")
    opts = RenderOptions((-25, -25, 50, 50))
    h = 50 / opts.grid
    # |P| changes by at most max|grad P| * h along one edge
    for x, y in curve_polyline(c, opts).points():
        grad = math.hypot(2 * abs(x) + 2 * h, 20)
        assert abs(x * x + 20 * y + 100) <= grad * h


def test_unit_circle_length():
    opts = RenderOptions((-2, -2, 4, 4), grid=512)
    lines = curve_polyline(curve("x^2+y^2-1"), opts)
    assert len(lines) == 1 and lines.closed == (True,)
    assert abs(lines.length() - 2 * math.pi) <= 0.01 * 2 * math.pi


def test_empty_locus():
    assert len(curve_polyline(curve("x^2+y^2+1"), RenderOptions((-2, -2, 4, 4)))) == 0


@pytest.mark.parametrize("text", ["x^2+20*y+100", "x^2+2*x*y+y^2-20*x+20*y+100", "x^2-y^2-1", "(x^2+y^2-1)^3+27*x^2*y^2"])
def test_vertices_on_sign_change_edges(text):
    c = curve(text)
    opts = RenderOptions((-30, -30, 60, 60), grid=64) if "20" in text else RenderOptions((-2, -2, 4, 4), grid=64)
    x0, y0, x1, y1 = opts.box
    hx, hy = (x1 - x0) / opts.grid, (y1 - y0) / opts.grid
    for x, y in curve_polyline(c, opts).points():
        i = (x - x0) / hx
        j = (y - y0) / hy
        on_vertical = abs(i - round(i)) < 1e-9
        if on_vertical:
            gx = x0 + round(i) * hx
            ja = math.floor(j)
            ends = [(gx, y0 + ja * hy), (gx, y0 + (ja + 1) * hy)]
        else:
            assert abs(j - round(j)) < 1e-9
            gy = y0 + round(j) * hy
            ia = math.floor(i)
            ends = [(x0 + ia * hx, gy), (x0 + (ia + 1) * hx, gy)]
        va, vb = (c.poly.eval_float({"x": px, "y": py}) for px, py in ends)
        assert va * vb <= 1e-9 * (1 + abs(va) + abs(vb))


@pytest.mark.parametrize("text", ["x^2+20*y+100", "x^2+2*x*y+y^2-20*x+20*y+100"])
def test_grid_doubling_is_stable(text):
    c = curve(text)
    coarse = RenderOptions((-25, -25, 50, 50), grid=128)
    fine = RenderOptions((-25, -25, 50, 50), grid=256)
    fine_pts = np.array(list(curve_polyline(c, fine).points()))
    tol = grid_step(coarse)
    for p in curve_polyline(c, coarse).points():
        assert np.min(np.hypot(*(fine_pts - p).T)) <= tol


def test_empty_scene_is_valid_svg():
    svg = render_scene(Scene((), (), 1, ()), [], RenderOptions((0, 0, 1, 1)))
    root = ET.fromstring(svg.encode())
    assert root.tag == SVG + "svg"
    assert root.find(SVG + "rect") is not None
    assert not list(root.iter(SVG + "line")) and not list(root.iter(SVG + "polyline"))


def test_scene_svg_structure():
    fam = cross_family(10)
    scene = single_scene(fam, range(-5, 6), 10)
    svg = render_scene(scene, [curve("x^2+2*x*y+y^2-20*x+20*y+100")], RenderOptions((-25, -35, 60, 60), grid=64))
    root = ET.fromstring(svg.encode())
    assert root.get("viewBox") == "-25.0000 -35.0000 60.0000 60.0000"
    assert len(list(root.iter(SVG + "line"))) == 11
    assert len(list(root.iter(SVG + "polyline"))) == 1
    assert not re.search(r"\d[eE][-+]?\d", svg)
    assert all(re.fullmatch(r"-?\d+\.\d{4}", v) for v in re.findall(r'[xy][12]="([^"]*)"', svg))


def test_extended_lines_reach_viewbox():
    scene = single_scene(cross_family(10), [5], 10)
    svg = render_scene(scene, [], RenderOptions((-20, -20, 40, 40), show_extended_lines=True))
    line = next(ET.fromstring(svg.encode()).iter(SVG + "line"))
    xs = sorted(float(line.get(k)) for k in ("x1", "x2"))
    assert xs == [-15.0, 20.0]


def test_clip_line():
    assert clip_line((1, -1, 0), (-1, -1, 1, 1)) == ((-1, -1), (1, 1))
    assert clip_line((1, 0, -0.5), (-1, -1, 1, 1)) == ((0.5, -1), (0.5, 1))
    assert clip_line((0, 1, -5), (-1, -1, 1, 1)) is None


def test_fmt():
    assert fmt(-0.00001) == "0.0000"
    assert fmt(2.5) == "2.5000"
    assert fmt(1e-20) == "0.0000"


def test_options_validation():
    with pytest.raises(ValueError):
        RenderOptions((0, 0, 0, 1))
    with pytest.raises(ValueError):
        RenderOptions((0, 0, 1, 1), grid=4)


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_goldens(name):
    expected = (GOLDEN_DIR / name).read_text(encoding="utf-8")
    assert render(name) == expected
    assert render(name) == expected
    assert render(name, workers=4) == expected
