"""Robust low-level geometry: orientation predicates, 2D/3D convex hulls and
the "in convex position together with the floor" predicates.

All predicates run a filtered floating-point evaluation first and escalate to
exact rational arithmetic when the computed determinant falls inside the
certified error band.  Inputs may mix floats, ints and Fractions; exact
fallbacks always use the original coordinate values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

_EPS = 2.220446049250313e-16

Point = tuple  # (x, y) or (x, y, z) of numbers


def _frac(p):
    return tuple(Fraction(c) for c in p)


# ---------------------------------------------------------------------------
# Orientation predicates

def orient2(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle (a, b, c): +1 ccw, -1 cw, 0 flat."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    p1 = (bx - ax) * (cy - ay)
    p2 = (by - ay) * (cx - ax)
    det = p1 - p2
    bound = 8.0 * _EPS * (abs(p1) + abs(p2))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    # ambiguous: exact evaluation
    (ax, ay), (bx, by), (cx, cy) = _frac(a), _frac(b), _frac(c)
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient3(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign of det[b-a, c-a, d-a]; +1 when d sees (a, b, c) clockwise."""
    bdx = float(b[0]) - float(a[0]); bdy = float(b[1]) - float(a[1]); bdz = float(b[2]) - float(a[2])
    cdx = float(c[0]) - float(a[0]); cdy = float(c[1]) - float(a[1]); cdz = float(c[2]) - float(a[2])
    ddx = float(d[0]) - float(a[0]); ddy = float(d[1]) - float(a[1]); ddz = float(d[2]) - float(a[2])
    m1 = bdy * cdz - bdz * cdy
    m2 = bdz * cdx - bdx * cdz
    m3 = bdx * cdy - bdy * cdx
    det = ddx * m1 + ddy * m2 + ddz * m3
    mag = (abs(ddx) * (abs(bdy * cdz) + abs(bdz * cdy))
           + abs(ddy) * (abs(bdz * cdx) + abs(bdx * cdz))
           + abs(ddz) * (abs(bdx * cdy) + abs(bdy * cdx)))
    bound = 16.0 * _EPS * mag
    if det > bound:
        return 1
    if det < -bound:
        return -1
    fa, fb, fc, fd = _frac(a), _frac(b), _frac(c), _frac(d)
    u = tuple(fb[i] - fa[i] for i in range(3))
    v = tuple(fc[i] - fa[i] for i in range(3))
    w = tuple(fd[i] - fa[i] for i in range(3))
    det = (w[0] * (u[1] * v[2] - u[2] * v[1])
           + w[1] * (u[2] * v[0] - u[0] * v[2])
           + w[2] * (u[0] * v[1] - u[1] * v[0]))
    return (det > 0) - (det < 0)


# ---------------------------------------------------------------------------
# 2D hull (monotone chain, strictly convex vertex cycle)

@dataclass(frozen=True)
class Hull2:
    vertices: tuple          # ccw cycle of strict vertices
    degenerate: bool = False  # all input points coincident or collinear


def _dedupe(points):
    seen = set()
    out = []
    for p in points:
        key = _frac(p)
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def convex_hull_2d(points) -> Hull2:
    pts = _dedupe(points)
    if not pts:
        raise ValueError("convex_hull_2d needs at least one point")
    pts.sort(key=_frac)
    if len(pts) == 1:
        return Hull2((pts[0],), degenerate=True)

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        # all collinear: keep the two extremes
        return Hull2((pts[0], pts[-1]), degenerate=True)
    return Hull2(tuple(verts))


def point_in_hull_2d(p: Point, points) -> bool:
    """Weak containment: True when p lies inside or on conv(points)."""
    hull = convex_hull_2d(points)
    v = hull.vertices
    if hull.degenerate:
        if len(v) == 1:
            return _frac(p) == _frac(v[0])
        # on the segment [v0, v1]
        if orient2(v[0], v[1], p) != 0:
            return False
        f0, f1, fp = _frac(v[0]), _frac(v[1]), _frac(p)
        lo, hi = min(f0, f1), max(f0, f1)
        return lo <= fp <= hi
    n = len(v)
    return all(orient2(v[i], v[(i + 1) % n], p) >= 0 for i in range(n))


# ---------------------------------------------------------------------------
# 3D hull (incremental, triangular facets with outward orientation)

@dataclass(frozen=True)
class Hull3:
    vertices: tuple                 # strict vertex set (no fixed order)
    facets: tuple                   # triples of vertex indices, outward ccw
    degenerate: bool = False        # input affinely degenerate (coplanar)


def _initial_simplex(pts):
    """Indices of four affinely independent points, or None."""
    i0 = 0
    i1 = next((i for i in range(len(pts)) if _frac(pts[i]) != _frac(pts[i0])), None)
    if i1 is None:
        return None
    i2 = None
    for i in range(len(pts)):
        if i in (i0, i1):
            continue
        d = pts[i]
        # non-collinear test via 3D cross product sign-free: use orient3 with a lift
        u = tuple(Fraction(pts[i1][k]) - Fraction(pts[i0][k]) for k in range(3))
        v = tuple(Fraction(d[k]) - Fraction(pts[i0][k]) for k in range(3))
        cross = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                 u[0] * v[1] - u[1] * v[0])
        if any(c != 0 for c in cross):
            i2 = i
            break
    if i2 is None:
        return None
    i3 = next((i for i in range(len(pts))
               if i not in (i0, i1, i2)
               and orient3(pts[i0], pts[i1], pts[i2], pts[i]) != 0), None)
    if i3 is None:
        return None
    return i0, i1, i2, i3


def convex_hull_3d(points) -> Hull3:
    pts = _dedupe(points)
    if len(pts) < 4:
        raise ValueError("convex_hull_3d needs at least 4 distinct points")
    pts.sort(key=_frac)
    simplex = _initial_simplex(pts)
    if simplex is None:
        strict = [p for i, p in enumerate(pts)
                  if not _in_conv_affinely_dependent(p, pts[:i] + pts[i + 1:])]
        return Hull3(tuple(strict), (), degenerate=True)
    i0, i1, i2, i3 = simplex
    if orient3(pts[i0], pts[i1], pts[i2], pts[i3]) > 0:
        facets = [(i0, i2, i1), (i0, i1, i3), (i1, i2, i3), (i2, i0, i3)]
    else:
        facets = [(i0, i1, i2), (i0, i3, i1), (i1, i3, i2), (i2, i3, i0)]
    saw_zero = False
    used = {i0, i1, i2, i3}
    for i in range(len(pts)):
        if i in used:
            continue
        p = pts[i]
        visible = []
        for f in facets:
            s = orient3(pts[f[0]], pts[f[1]], pts[f[2]], p)
            if s > 0:
                visible.append(f)
            elif s == 0:
                saw_zero = True
        if not visible:
            continue  # weakly inside the current hull
        vis = set(visible)
        edge_count = {}
        for (a, b, c) in visible:
            for e in ((a, b), (b, c), (c, a)):
                edge_count[frozenset(e)] = edge_count.get(frozenset(e), 0) + 1
        horizon = []
        for (a, b, c) in visible:
            for e in ((a, b), (b, c), (c, a)):
                if edge_count[frozenset(e)] == 1:
                    horizon.append(e)
        facets = [f for f in facets if f not in vis]
        for (a, b) in horizon:
            facets.append((a, b, i))
        used.add(i)
    ref = sorted({j for f in facets for j in f})
    if saw_zero:
        # coplanar events can leave non-strict vertices referenced; filter and
        # rebuild on the strict set
        strict = [j for j in ref
                  if not point_in_conv_3d(pts[j], [pts[k] for k in ref if k != j])]
        if len(strict) < len(ref):
            return convex_hull_3d([pts[j] for j in strict])
    remap = {j: k for k, j in enumerate(ref)}
    return Hull3(tuple(pts[j] for j in ref),
                 tuple((remap[a], remap[b], remap[c]) for (a, b, c) in facets))


def point_in_conv_3d(p: Point, points) -> bool:
    """Weak containment in conv(points) for a small 3D point set.

    By Caratheodory a contained point lies weakly inside some simplex of four
    of the points; when the set is full-dimensional every lower-dimensional
    containment is also covered by a non-flat simplex, so the flat
    triangle/segment scan only runs for affinely dependent sets.
    """
    pts = _dedupe(points)
    found_nondeg = False
    for (a, b, c, d) in itertools.combinations(pts, 4):
        s = orient3(a, b, c, d)
        if s == 0:
            continue
        found_nondeg = True
        if (orient3(p, b, c, d) * s >= 0 and orient3(a, p, c, d) * s >= 0
                and orient3(a, b, p, d) * s >= 0
                and orient3(a, b, c, p) * s >= 0):
            return True
    if not found_nondeg:
        return _in_conv_affinely_dependent(p, pts)
    return False


def _in_conv_affinely_dependent(p, pts) -> bool:
    """Caratheodory containment test over triangles and segments only."""
    for tri in itertools.combinations(pts, 3):
        if _point_in_triangle_3d(p, *tri):
            return True
    for (a, b) in itertools.combinations(pts, 2):
        if _point_on_segment_3d(p, a, b):
            return True
    return any(_frac(p) == _frac(q) for q in pts)


def _point_in_triangle_3d(p, a, b, c) -> bool:
    if orient3(a, b, c, p) != 0:
        return False
    fa, fb, fc, fp = _frac(a), _frac(b), _frac(c), _frac(p)
    u = tuple(fb[i] - fa[i] for i in range(3))
    v = tuple(fc[i] - fa[i] for i in range(3))
    n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    if all(x == 0 for x in n):
        return False  # collinear triple, handled by segment tests
    for (x, y, z) in ((fa, fb, fp), (fb, fc, fp), (fc, fa, fp)):
        e = tuple(y[i] - x[i] for i in range(3))
        w = tuple(z[i] - x[i] for i in range(3))
        cr = (e[1] * w[2] - e[2] * w[1], e[2] * w[0] - e[0] * w[2], e[0] * w[1] - e[1] * w[0])
        if sum(cr[i] * n[i] for i in range(3)) < 0:
            return False
    return True


def _point_on_segment_3d(p, a, b) -> bool:
    fa, fb, fp = _frac(a), _frac(b), _frac(p)
    u = tuple(fb[i] - fa[i] for i in range(3))
    w = tuple(fp[i] - fa[i] for i in range(3))
    cr = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
    if any(x != 0 for x in cr):
        return False
    dot = sum(u[i] * w[i] for i in range(3))
    return 0 <= dot <= sum(u[i] * u[i] for i in range(3))


# ---------------------------------------------------------------------------
# Convex position together with a floor

def in_convex_position_with_floor_2d(points, floor=((0, 0), (1, 0))) -> bool:
    """True iff every point is a strict vertex of CH(points + floor endpoints)."""
    f0, f1 = floor
    if Fraction(f0[1]) != 0 or Fraction(f1[1]) != 0 or _frac(f0) == _frac(f1):
        raise ValueError("floor must be two distinct points at height 0")
    for p in points:
        if Fraction(p[1]) <= 0:
            raise ValueError("sample points must have positive height")
    pts = list(points)
    if len(_dedupe(pts)) < len(pts):
        return False
    verts = {_frac(v) for v in convex_hull_2d(pts + [f0, f1]).vertices}
    return all(_frac(p) in verts for p in pts)


def in_convex_position_with_floor_3d(points, floor_polygon) -> bool:
    """True iff every point is a strict vertex of CH(points + floor vertices).

    floor_polygon: extremal vertices of the floor, given as (x, y) pairs or
    (x, y, 0) triples.
    """
    floor_pts = []
    for v in floor_polygon:
        if len(v) == 3:
            if Fraction(v[2]) != 0:
                raise ValueError("floor vertices must be at height 0")
            floor_pts.append(tuple(v))
        else:
            floor_pts.append((v[0], v[1], 0))
    for p in points:
        if Fraction(p[2]) <= 0:
            raise ValueError("sample points must have positive height")
    pts = list(points)
    if len(_dedupe(pts)) < len(pts):
        return False
    S = pts + floor_pts
    for i, p in enumerate(pts):
        others = S[:i] + S[i + 1:]
        if point_in_conv_3d(p, others):
            return False
    return True


# ---------------------------------------------------------------------------
# Independent exact oracle: vertex test via LP feasibility over rationals

def _lp_feasible(A, b) -> bool:
    """Exact phase-1 simplex feasibility of A x = b, x >= 0 (Bland's rule)."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-A[i][j] for j in range(n)])
            rhs.append(-b[i])
        else:
            rows.append(list(A[i]))
            rhs.append(b[i])
    # tableau with artificial variables n..n+m-1
    T = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m
    # objective: minimize sum of artificials -> reduced costs
    cost = [Fraction(0)] * total
    for j in range(n, total):
        cost[j] = Fraction(1)
    while True:
        # reduced costs: c_j - c_B B^-1 A_j, using current tableau
        red = []
        for j in range(total):
            cj = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
            red.append(cj)
        enter = next((j for j in range(total) if red[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][total] / T[i][enter], basis[i], i)
                  for i in range(m) if T[i][enter] > 0]
        if not ratios:
            break  # unbounded phase-1 cannot happen, but stay safe
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [T[i][j] - f * T[leave][j] for j in range(total + 1)]
        basis[leave] = enter
    value = sum(cost[basis[i]] * T[i][total] for i in range(m))
    return value == 0


def point_in_hull_lp(p: Point, points) -> bool:
    """Exact rational test of p in conv(points) via barycentric LP feasibility."""
    fp = _frac(p)
    fpts = [_frac(q) for q in points]
    dim = len(fp)
    A = [[q[k] for q in fpts] for k in range(dim)]
    A.append([Fraction(1)] * len(fpts))
    b = list(fp) + [Fraction(1)]
    return _lp_feasible(A, b)


def in_convex_position_with_floor_oracle(points, floor_pts) -> bool:
    """Brute-force oracle for both floor predicates (any dimension)."""
    pts = list(points)
    if len(_dedupe(pts)) < len(pts):
        return False
    S = pts + [tuple(f) for f in floor_pts]
    for i, p in enumerate(pts):
        others = S[:i] + S[i + 1:]
        if point_in_hull_lp(p, others):
            return False
    return True
