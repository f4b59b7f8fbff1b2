"""Convex bodies with a flat floor: 2D sub-prisms, 3D mountains, prisms,
frustums and the reference tetrahedron.

Constructors normalize to unit volume (and, except for the frustum and the
tetrahedron, to unit floor volume); the applied scales are recorded.  Floor
polygons are stored with their centroid at the origin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .topfunctions import (PiecewiseLinearTop, QuadraticTop, TopFunction,
                           constant_top, mountain_top, triangle_top)

VOLUME_TOL = 1e-12


# ---------------------------------------------------------------------------
# Floor polygons

def normalize_floor_polygon(vertices):
    """Return (polygon, scale): ccw convex polygon with area 1 and centroid 0.

    vertices: iterable of (x, y).  Raises on degenerate input.
    """
    pts = [(float(x), float(y)) for (x, y) in vertices]
    if len(pts) < 3:
        raise ValueError("floor polygon needs at least 3 vertices")
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    area2 = sum(pts[i][0] * pts[(i + 1) % len(pts)][1]
                - pts[(i + 1) % len(pts)][0] * pts[i][1] for i in range(len(pts)))
    if area2 <= 0:
        raise ValueError("floor polygon is degenerate")
    area = area2 / 2
    gx = gy = 0.0
    for i in range(len(pts)):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % len(pts)]
        w = x0 * y1 - x1 * y0
        gx += (x0 + x1) * w
        gy += (y0 + y1) * w
    gx /= 6 * area
    gy /= 6 * area
    s = 1.0 / math.sqrt(area)
    return tuple(((x - gx) * s, (y - gy) * s) for (x, y) in pts), s


def polygon_area(polygon) -> float:
    n = len(polygon)
    return 0.5 * sum(polygon[i][0] * polygon[(i + 1) % n][1]
                     - polygon[(i + 1) % n][0] * polygon[i][1] for i in range(n))


UNIT_SQUARE_FLOOR = normalize_floor_polygon(
    [(0, 0), (1, 0), (1, 1), (0, 1)])[0]
UNIT_TRIANGLE_FLOOR = normalize_floor_polygon(
    [(0, 0), (1, 0), (0.5, 1)])[0]


def regular_polygon_floor(k: int):
    """Unit-area regular k-gon, centroid at the origin."""
    raw = [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
           for i in range(k)]
    return normalize_floor_polygon(raw)[0]


# ---------------------------------------------------------------------------
# Body kinds

@dataclass(frozen=True)
class SubPrism2D:
    """Region under a top function, floor [0, 1] x {0}."""
    top: TopFunction
    dimension = 2
    kind = "subprism2d"

    @property
    def floor(self):
        return ((0.0, 0.0), (1.0, 0.0))


@dataclass(frozen=True)
class Mountain3D:
    """CH(floor polygon + apex); floor area 1, apex height 3 for unit volume."""
    floor: tuple
    apex: tuple = (0.0, 0.0, 3.0)
    dimension = 3
    kind = "mountain"

    def __post_init__(self):
        if abs(self.apex[2] - 3.0) > 1e-9:
            raise ValueError("unit-volume mountain over a unit floor has apex height 3")


@dataclass(frozen=True)
class Prism3D:
    """floor x [0, 1]; floor area 1."""
    floor: tuple
    dimension = 3
    kind = "prism"


@dataclass(frozen=True)
class Frustum:
    """CH(F x {0}, c F x {h}), isotropically rescaled to unit volume.

    h and c are the pre-scale parameters; scale is the factor applied to all
    coordinates.  In 2D the floor is the segment [-1/2, 1/2] and scale is 1.
    """
    dimension: int
    h: float
    c: float
    scale: float
    floor: tuple  # polygon (3D) or segment endpoints (2D), post-scale

    kind = "frustum"


@dataclass(frozen=True)
class Tetrahedron:
    """Reference tetrahedron (0,0,0),(1,0,0),(0,1,0),(0,0,6):
    unit volume, floor area 1/2, apex height 6."""
    dimension = 3
    kind = "tetrahedron"
    vertices = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 6.0))

    @property
    def floor(self):
        return ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


BodyWithFloor = SubPrism2D | Mountain3D | Prism3D | Frustum | Tetrahedron


def frustum(h: float, d: int, floor_polygon=None) -> BodyWithFloor | Frustum:
    """Unit-volume frustum with top dilation c_h = (2/h - 1)^(1/(d-1)).

    The hull of the two bases has volume slightly below 1 in 3D, so the body
    is rescaled isotropically; the floor then has area slightly above 1.
    """
    if not 0 < h < 2:
        raise ValueError("frustum height must lie in (0, 2)")
    if d not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    c = (2.0 / h - 1.0) ** (1.0 / (d - 1))
    if abs(c - 1.0) < 1e-12:
        vol = h
    else:
        vol = h * (c ** d - 1.0) / (d * (c - 1.0))
    s = vol ** (-1.0 / d)
    if d == 2:
        floor = ((-0.5 * s, 0.0), (0.5 * s, 0.0))
    else:
        poly = UNIT_SQUARE_FLOOR if floor_polygon is None else normalize_floor_polygon(floor_polygon)[0]
        floor = tuple((x * s, y * s) for (x, y) in poly)
    return Frustum(dimension=d, h=h, c=c, scale=s, floor=floor)


def mountain3d(floor_polygon=None, apex_xy=(0.0, 0.0)) -> Mountain3D:
    poly = UNIT_SQUARE_FLOOR if floor_polygon is None else normalize_floor_polygon(floor_polygon)[0]
    return Mountain3D(floor=poly, apex=(apex_xy[0], apex_xy[1], 3.0))


def prism3d(floor_polygon=None) -> Prism3D:
    poly = UNIT_SQUARE_FLOOR if floor_polygon is None else normalize_floor_polygon(floor_polygon)[0]
    return Prism3D(floor=poly)


# ---------------------------------------------------------------------------
# Layer and below-level volumes

def max_height(body: BodyWithFloor) -> float:
    if isinstance(body, SubPrism2D):
        return body.top.max_height()
    if isinstance(body, Mountain3D):
        return 3.0
    if isinstance(body, Prism3D):
        return 1.0
    if isinstance(body, Frustum):
        return body.h * body.scale
    if isinstance(body, Tetrahedron):
        return 6.0
    raise TypeError(f"unsupported body {body!r}")


def floor_volume(body: BodyWithFloor) -> float:
    """(d-1)-volume of the floor (length in 2D, area in 3D)."""
    if isinstance(body, SubPrism2D):
        return 1.0
    if isinstance(body, (Mountain3D, Prism3D)):
        return polygon_area(body.floor)
    if isinstance(body, Frustum):
        if body.dimension == 2:
            return body.floor[1][0] - body.floor[0][0]
        return polygon_area(body.floor)
    if isinstance(body, Tetrahedron):
        return 0.5
    raise TypeError(f"unsupported body {body!r}")


def layer_volume(body: BodyWithFloor, t: float) -> float:
    """(d-1)-volume of the horizontal slice at height t (0 above the body)."""
    if t < 0:
        raise ValueError("height must be >= 0")
    if t > max_height(body):
        return 0.0
    if isinstance(body, SubPrism2D):
        return body.top.level_width(t)
    if isinstance(body, Mountain3D):
        return (1.0 - t / 3.0) ** 2
    if isinstance(body, Prism3D):
        return 1.0
    if isinstance(body, Frustum):
        lam = 1.0 + (body.c - 1.0) * t / (body.h * body.scale)
        return body.scale ** (body.dimension - 1) * lam ** (body.dimension - 1)
    if isinstance(body, Tetrahedron):
        return 0.5 * (1.0 - t / 6.0) ** 2
    raise TypeError(f"unsupported body {body!r}")


def below_volume(body: BodyWithFloor, t: float) -> float:
    """Volume of the body below height t (equals 1 at the top)."""
    if t < 0:
        raise ValueError("height must be >= 0")
    t = min(t, max_height(body))
    if isinstance(body, SubPrism2D):
        return 1.0 - body.top.area_above(t)
    if isinstance(body, Mountain3D):
        return 1.0 - (1.0 - t / 3.0) ** 3
    if isinstance(body, Prism3D):
        return t
    if isinstance(body, Frustum):
        d, s = body.dimension, body.scale
        hs = body.h * s
        if abs(body.c - 1.0) < 1e-12:
            return s ** (d - 1) * t
        lam = 1.0 + (body.c - 1.0) * t / hs
        return s ** (d - 1) * hs * (lam ** d - 1.0) / (d * (body.c - 1.0))
    if isinstance(body, Tetrahedron):
        return 1.0 - (1.0 - t / 6.0) ** 3
    raise TypeError(f"unsupported body {body!r}")


def mean_height(body: BodyWithFloor) -> float:
    """Exact expected height of a uniform point (closed forms per kind)."""
    if isinstance(body, SubPrism2D):
        return float(body.top.integral_sq()) / 2
    if isinstance(body, Mountain3D):
        return 0.75
    if isinstance(body, Prism3D):
        return 0.5
    if isinstance(body, Tetrahedron):
        return 1.5
    if isinstance(body, Frustum):
        d, s, c = body.dimension, body.scale, body.c
        hs = body.h * s
        if abs(c - 1.0) < 1e-12:
            return hs / 2
        # int t lam(t)^(d-1) dt over [0, hs] with lam = 1 + (c-1) t / hs
        inner = (hs / (c - 1.0)) ** 2 * ((c ** (d + 1) - 1.0) / (d + 1)
                                         - (c ** d - 1.0) / d)
        return s ** (d - 1) * inner
    raise TypeError(f"unsupported body {body!r}")


# ---------------------------------------------------------------------------
# JSON descriptors

def _frac_pair(x: Fraction):
    f = Fraction(x)
    return [str(f.numerator), str(f.denominator)]


def _top_to_json(top: TopFunction) -> dict:
    if isinstance(top, QuadraticTop):
        return {"kind": "quadratic"}
    return {"kind": "pwl",
            "knots": [[_frac_pair(x), _frac_pair(y)] for (x, y) in top.knots]}


def _top_from_json(d: dict) -> TopFunction:
    if d["kind"] == "quadratic":
        return QuadraticTop()
    if d["kind"] == "pwl":
        knots = tuple((Fraction(int(x[0]), int(x[1])), Fraction(int(y[0]), int(y[1])))
                      for (x, y) in d["knots"])
        return PiecewiseLinearTop(knots)
    raise ValueError(f"unknown top function kind {d['kind']!r}")


def body_to_json(body: BodyWithFloor) -> dict:
    d = {"kind": body.kind, "dimension": body.dimension}
    if isinstance(body, SubPrism2D):
        d["top"] = _top_to_json(body.top)
    elif isinstance(body, Mountain3D):
        d["floor"] = [list(v) for v in body.floor]
        d["apex"] = list(body.apex)
    elif isinstance(body, Prism3D):
        d["floor"] = [list(v) for v in body.floor]
    elif isinstance(body, Frustum):
        d["h"] = body.h
        if body.dimension == 3:
            d["floor"] = [list(v) for v in body.floor]
    return d


def body_from_json(d: dict) -> BodyWithFloor:
    kind = d.get("kind")
    if kind == "subprism2d":
        return SubPrism2D(_top_from_json(d["top"]))
    if kind == "mountain":
        floor = d.get("floor")
        apex = d.get("apex", [0.0, 0.0, 3.0])
        return mountain3d(floor, apex_xy=(apex[0], apex[1]))
    if kind == "prism":
        return prism3d(d.get("floor"))
    if kind == "frustum":
        return frustum(d["h"], d["dimension"], d.get("floor"))
    if kind == "tetrahedron":
        return Tetrahedron()
    raise ValueError(f"unknown body kind {kind!r}")


BUILTIN_BODIES = {
    "triangle": lambda: SubPrism2D(triangle_top()),
    "square": lambda: SubPrism2D(constant_top()),
    "parabola": lambda: SubPrism2D(QuadraticTop()),
    "mountain2d": lambda: SubPrism2D(mountain_top(Fraction(1, 2))),
    "mountain3d": mountain3d,
    "prism3d": prism3d,
    "tetrahedron": Tetrahedron,
}


def builtin_body(name: str) -> BodyWithFloor:
    """Resolve a builtin body name; 'frustum2d:h' / 'frustum3d:h' take a height."""
    if name in BUILTIN_BODIES:
        return BUILTIN_BODIES[name]()
    if name.startswith("frustum2d:"):
        return frustum(float(name.split(":", 1)[1]), 2)
    if name.startswith("frustum3d:"):
        return frustum(float(name.split(":", 1)[1]), 3)
    raise ValueError(f"unknown builtin body {name!r}; known: "
                     f"{', '.join(sorted(BUILTIN_BODIES))}, frustum2d:<h>, frustum3d:<h>")


def load_body(spec: str) -> BodyWithFloor:
    """Builtin name or path to a JSON descriptor file."""
    try:
        return builtin_body(spec)
    except ValueError:
        pass
    with open(spec) as fh:
        return body_from_json(json.load(fh))
