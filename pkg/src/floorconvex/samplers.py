"""Rejection-free uniform samplers for the bodies and auxiliary densities.

All samplers are vectorized and draw from an explicitly seeded stream, so a
(seed, stream) pair fully determines the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bodies import (BodyWithFloor, Frustum, Mountain3D, Prism3D, SubPrism2D,
                     Tetrahedron)


@dataclass(frozen=True)
class RngStream:
    """Deterministic generator factory keyed by (seed, stream)."""
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


# ---------------------------------------------------------------------------
# Convex polygon sampling (fan triangulation + square-root map)

def sample_polygon(polygon, rng: np.random.Generator, n: int) -> np.ndarray:
    """n uniform points in a convex polygon, shape (n, 2)."""
    v = np.asarray(polygon, dtype=float)
    a = v[0]
    b, c = v[1:-1], v[2:]
    tri_area = 0.5 * np.abs((b[:, 0] - a[0]) * (c[:, 1] - a[1])
                            - (c[:, 0] - a[0]) * (b[:, 1] - a[1]))
    idx = rng.choice(len(tri_area), size=n, p=tri_area / tri_area.sum())
    r1 = np.sqrt(rng.random(n))[:, None]
    r2 = rng.random(n)[:, None]
    return (1 - r1) * a + r1 * ((1 - r2) * b[idx] + r2 * c[idx])


# ---------------------------------------------------------------------------
# Full-point samplers

def sample_body(body: BodyWithFloor, rng: np.random.Generator, n: int) -> np.ndarray:
    """n uniform points in the body; shape (n, 2) in 2D, (n, 3) in 3D."""
    if isinstance(body, SubPrism2D):
        x = body.top.sample_x(rng.random(n))
        y = body.top.values(x) * rng.random(n)
        return np.column_stack([x, y])
    if isinstance(body, Mountain3D):
        t = 3.0 * (1.0 - (1.0 - rng.random(n)) ** (1.0 / 3.0))
        base = sample_polygon(body.floor, rng, n)
        lam = (1.0 - t / 3.0)[:, None]
        apex_xy = np.array(body.apex[:2])
        xy = apex_xy + lam * (base - apex_xy)
        return np.column_stack([xy, t])
    if isinstance(body, Prism3D):
        xy = sample_polygon(body.floor, rng, n)
        return np.column_stack([xy, rng.random(n)])
    if isinstance(body, Frustum):
        t, lam = _frustum_height_and_dilation(body, rng.random(n))
        if body.dimension == 2:
            half = body.floor[1][0]
            x = lam * half * (2.0 * rng.random(n) - 1.0)
            return np.column_stack([x, t])
        xy = lam[:, None] * sample_polygon(body.floor, rng, n)
        return np.column_stack([xy, t])
    if isinstance(body, Tetrahedron):
        # exponential-ratio barycentric coordinates are uniform on the simplex
        w = rng.exponential(size=(n, 4))
        w /= w.sum(axis=1, keepdims=True)
        return w @ np.asarray(Tetrahedron.vertices)
    raise TypeError(f"unsupported body {body!r}")


def _frustum_height_and_dilation(body: Frustum, u: np.ndarray):
    hs = body.h * body.scale
    if abs(body.c - 1.0) < 1e-12:
        t = u * hs
        return t, np.ones_like(t)
    d = body.dimension
    lam = (1.0 + u * (body.c ** d - 1.0)) ** (1.0 / d)
    t = hs * (lam - 1.0) / (body.c - 1.0)
    return t, lam


def sample_heights(body: BodyWithFloor, rng: np.random.Generator, n: int) -> np.ndarray:
    """Heights of n uniform points, without the horizontal coordinates."""
    if isinstance(body, SubPrism2D):
        x = body.top.sample_x(rng.random(n))
        return body.top.values(x) * rng.random(n)
    if isinstance(body, Mountain3D):
        return 3.0 * (1.0 - (1.0 - rng.random(n)) ** (1.0 / 3.0))
    if isinstance(body, Prism3D):
        return rng.random(n)
    if isinstance(body, Frustum):
        return _frustum_height_and_dilation(body, rng.random(n))[0]
    if isinstance(body, Tetrahedron):
        return 6.0 * (1.0 - (1.0 - rng.random(n)) ** (1.0 / 3.0))
    raise TypeError(f"unsupported body {body!r}")


# ---------------------------------------------------------------------------
# Auxiliary densities for the anchored-chain functionals

def sample_density_g1(rng: np.random.Generator, n: int) -> np.ndarray:
    """Density 2x on the unit square; shape (n, 2)."""
    return np.column_stack([np.sqrt(rng.random(n)), rng.random(n)])


def sample_density_g2(rng: np.random.Generator, n: int) -> np.ndarray:
    """Density 2x restricted to x <= 1 - y/3 on [0,1] x [0,3]; shape (n, 2).

    The y-marginal is (1 - y/3)^2 on [0, 3]; given y the x-coordinate has
    density proportional to x on [0, 1 - y/3].
    """
    y = 3.0 * (1.0 - (1.0 - rng.random(n)) ** (1.0 / 3.0))
    x = (1.0 - y / 3.0) * np.sqrt(rng.random(n))
    return np.column_stack([x, y])


# ---------------------------------------------------------------------------
# Floor radius of a convex polygon (gauge of the floor at a direction)

def floor_radius(polygon, xy) -> float:
    """Gauge a(z) with a(z) * (z/|z|...): smallest a with xy/a inside
    the polygon boundary; equals max over edges of (n_e . xy) / b_e where
    the edge line is n_e . p = b_e and the origin is interior."""
    v = np.asarray(polygon, dtype=float)
    return float(floor_radius_batch(polygon, np.asarray(xy, dtype=float)[None, :])[0])


def floor_radius_batch(polygon, xy: np.ndarray) -> np.ndarray:
    v = np.asarray(polygon, dtype=float)
    w = np.roll(v, -1, axis=0)
    e = w - v
    normals = np.column_stack([e[:, 1], -e[:, 0]])          # outward for ccw
    offsets = np.einsum("ij,ij->i", normals, v)
    if np.any(offsets <= 0):
        raise ValueError("polygon must contain the origin in its interior")
    vals = xy @ normals.T / offsets
    return np.maximum(vals.max(axis=1), 0.0)
