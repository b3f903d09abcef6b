"""Projective-plane primitives, twisted polygons, canonical coordinates, and
the literal diagonal-intersection construction.

Points and lines are numpy length-3 arrays of homogeneous coordinates,
normalized to unit max-absolute entry after every operation so tolerances
stay meaningful across iterations.  A twisted polygon is n base vertices
plus a monodromy M with vertex(k + n) = M @ vertex(k).

The canonical coordinates z_i, w_i are cross ratios of four collinear points
built from the five-vertex stencil v_{i-2}..v_{i+2}; the coordinate-space
map in ``dynamics`` and the geometric construction here are cross-checked
against each other through these coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, GeometryError

#: Relative tolerance for comparing projective representatives.
POINT_RTOL = 1e-9
#: Incidence residual allowed when asserting four points share a line.
INCIDENCE_TOL = 1e-8
#: Floor for normalized determinants / denominators before declaring
#: degeneracy.
DEGENERACY_TOL = 1e-12

#: Vertex relabeling applied to the diagonal-intersection construction so it
#: matches the coordinate-space map through canonical_coordinates.  Fixed
#: empirically by scanning offsets and testing the commutation property; the
#: construction itself only defines the image polygon up to relabeling.
IMAGE_SHIFT = 0


def normalize(h) -> np.ndarray:
    """Scale a homogeneous triple to unit max-absolute entry."""
    h = np.asarray(h, dtype=float)
    if h.shape != (3,):
        raise ValueError(f"homogeneous coordinates must be length 3, got shape {h.shape}")
    m = np.abs(h).max()
    if m < DEGENERACY_TOL:
        raise DegeneracyError(f"zero homogeneous vector {h}")
    return h / m


def points_equal(p, q, rtol: float = POINT_RTOL) -> bool:
    """Equality up to scale: the cross product of representatives vanishes
    relative to their magnitudes."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    return bool(
        np.linalg.norm(np.cross(p, q))
        <= rtol * np.linalg.norm(p) * np.linalg.norm(q)
    )


def line_through(p, q) -> np.ndarray:
    """Line coefficients through two distinct points (their cross product)."""
    p, q = normalize(p), normalize(q)
    ell = np.cross(p, q)
    if np.abs(ell).max() < DEGENERACY_TOL:
        raise DegeneracyError(f"coincident points {p} and {q} span no line")
    return normalize(ell)


def intersect(l1, l2) -> np.ndarray:
    """Intersection point of two distinct lines (their cross product)."""
    l1, l2 = normalize(l1), normalize(l2)
    p = np.cross(l1, l2)
    if np.abs(p).max() < DEGENERACY_TOL:
        raise DegeneracyError(f"lines {l1} and {l2} coincide")
    return normalize(p)


def cross_ratio(t1, t2, t3, t4):
    """[t1, t2, t3, t4] = (t1-t2)(t3-t4) / ((t1-t3)(t2-t4))."""
    scale = max(abs(t1), abs(t2), abs(t3), abs(t4), 1.0)
    den = (t1 - t3) * (t2 - t4)
    if abs(den) <= DEGENERACY_TOL * scale * scale:
        raise DegeneracyError("cross ratio denominator vanishes (t1=t3 or t2=t4)")
    return (t1 - t2) * (t3 - t4) / den


def cross_ratio_points(p1, p2, p3, p4):
    """Cross ratio of four collinear points.

    Uses determinants against the best-fit line covector q: for points
    a + t_i b one has det(q, p_i, p_j) proportional to (t_j - t_i) times the
    representatives' scales, which cancel in the cross-ratio combination.
    q itself cannot lie on a real line (q.q = 0 forces q = 0), so the
    pencil through q separates the points.
    """
    pts = [normalize(p) for p in (p1, p2, p3, p4)]
    stacked = np.stack(pts)
    _, sv, vt = np.linalg.svd(stacked)
    q = vt[-1]
    residual = np.abs(stacked @ q).max()
    if residual > INCIDENCE_TOL:
        raise GeometryError(
            f"points are not collinear: incidence residual {residual:.3e}"
        )
    for a in range(4):
        for b in range(a + 1, 4):
            if points_equal(pts[a], pts[b], rtol=1e-12):
                raise DegeneracyError(f"coincident points at positions {a + 1}, {b + 1}")

    def d(i, j):
        return float(np.linalg.det(np.stack([q, pts[i], pts[j]])))

    num = d(0, 1) * d(2, 3)
    den = d(0, 2) * d(1, 3)
    if abs(den) <= DEGENERACY_TOL * max(abs(num), 1.0):
        raise DegeneracyError("degenerate configuration: separating determinants vanish")
    return num / den


@dataclass(frozen=True)
class TwistedPolygon:
    """n base vertices plus the monodromy relating index k to k + n."""

    vertices: tuple  # n normalized homogeneous triples
    monodromy: np.ndarray  # 3x3, unit Frobenius scale

    def __post_init__(self):
        verts = tuple(normalize(v) for v in self.vertices)
        if len(verts) < 5:
            raise ValueError(f"need at least 5 vertices, got {len(verts)}")
        m = np.asarray(self.monodromy, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"monodromy must be 3x3, got shape {m.shape}")
        scale = np.linalg.norm(m)
        if scale < DEGENERACY_TOL:
            raise DegeneracyError("zero monodromy matrix")
        m = m / scale
        if abs(np.linalg.det(m)) <= DEGENERACY_TOL:
            raise DegeneracyError("singular monodromy matrix")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "monodromy", m)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, k: int) -> np.ndarray:
        """Vertex at any integer index, applying the monodromy (or its
        inverse) the minimal number of times."""
        q, r = divmod(k, self.n)
        v = self.vertices[r]
        if q == 0:
            return v
        m = self.monodromy if q > 0 else np.linalg.inv(self.monodromy)
        for _ in range(abs(q)):
            v = m @ v
        return normalize(v)

    def transformed(self, psi) -> "TwistedPolygon":
        """Apply a projective transform: vertices by psi, monodromy by
        conjugation."""
        psi = np.asarray(psi, dtype=float)
        if abs(np.linalg.det(psi)) <= DEGENERACY_TOL:
            raise DegeneracyError("singular projective transform")
        verts = tuple(normalize(psi @ v) for v in self.vertices)
        mono = psi @ self.monodromy @ np.linalg.inv(psi)
        return TwistedPolygon(verts, mono)


def canonical_coordinates(poly: TwistedPolygon):
    """The 2n cross-ratio coordinates (z, w) of a twisted polygon.

    z_i compares, along the line (v_{i-2}, v_{i-1}): the two vertices, then
    that line's intersections with (v_i, v_{i+1}) and with (v_{i+1}, v_{i+2}).
    w_i compares, along the line (v_{i+1}, v_{i+2}): the intersections coming
    from (v_{i-2}, v_{i-1}) and (v_{i-1}, v_i), then the two vertices.
    """
    n = poly.n
    z, w = [], []
    for i in range(n):
        try:
            vm2, vm1 = poly.vertex(i - 2), poly.vertex(i - 1)
            v0, vp1, vp2 = poly.vertex(i), poly.vertex(i + 1), poly.vertex(i + 2)
            back = line_through(vm2, vm1)
            mid = line_through(vm1, v0)
            front_near = line_through(v0, vp1)
            front_far = line_through(vp1, vp2)
            z.append(
                cross_ratio_points(
                    vm2, vm1, intersect(back, front_near), intersect(back, front_far)
                )
            )
            w.append(
                cross_ratio_points(
                    intersect(back, front_far), intersect(mid, front_far), vp1, vp2
                )
            )
        except (DegeneracyError, GeometryError) as exc:
            raise GeometryError(
                f"canonical coordinates degenerate at index {i}: {exc}", index=i
            ) from exc
    return tuple(z), tuple(w)


def geometric_pentagram_step(poly: TwistedPolygon) -> TwistedPolygon:
    """Replace each vertex by the intersection of the two neighboring
    shortest diagonals; monodromy unchanged.

    Raw image vertex j is (v_{j-1}, v_{j+1}) meet (v_j, v_{j+2}); the output
    is relabeled by IMAGE_SHIFT so the coordinate-space map and this
    construction commute with canonical_coordinates.
    """
    n = poly.n
    raw = []
    for j in range(n):
        try:
            d1 = line_through(poly.vertex(j - 1), poly.vertex(j + 1))
            d2 = line_through(poly.vertex(j), poly.vertex(j + 2))
            raw.append(intersect(d1, d2))
        except DegeneracyError as exc:
            raise GeometryError(
                f"pentagram step degenerate at vertex {j}: {exc}", index=j
            ) from exc
    shifted = tuple(raw[(j + IMAGE_SHIFT) % n] for j in range(n))
    return TwistedPolygon(shifted, poly.monodromy)


def _convex_in_chart(verts) -> bool:
    pts = np.array([v[:2] / v[2] for v in verts])
    n = len(pts)

    def turn(i):
        a = pts[(i + 1) % n] - pts[i]
        b = pts[(i + 2) % n] - pts[(i + 1) % n]
        return float(a[0] * b[1] - a[1] * b[0])

    turns = [turn(i) for i in range(n)]
    return all(t > 1e-9 for t in turns) or all(t < -1e-9 for t in turns)


def random_convex_polygon(rng, n: int, radial_jitter: float = 0.1) -> TwistedPolygon:
    """Closed convex n-gon (identity monodromy): angles strictly increasing
    around a circle, radii jittered by at most ``radial_jitter``.

    Small consecutive angle gaps plus opposing radius jitter can produce a
    reflex vertex, so samples are rejected until the turning test passes.
    """
    if not 0 <= radial_jitter <= 0.1:
        raise ValueError("radial jitter beyond 10% can break convexity")
    for _ in range(200):
        jitter = rng.uniform(0.05, 0.95, size=n)
        angles = 2 * np.pi * (np.arange(n) + jitter) / n
        radii = 1.0 + radial_jitter * rng.uniform(-1.0, 1.0, size=n)
        verts = tuple(
            np.array([r * np.cos(a), r * np.sin(a), 1.0]) for r, a in zip(radii, angles)
        )
        if _convex_in_chart(verts):
            return TwistedPolygon(verts, np.eye(3))
    raise GeometryError(f"failed to sample a convex {n}-gon")


def random_projective_perturbation(rng, max_condition: float = 10.0) -> np.ndarray:
    """Random transform near the identity with condition number below
    ``max_condition``; keeps perturbed polygons inside the generic regime."""
    for _ in range(100):
        psi = np.eye(3) + 0.15 * rng.standard_normal((3, 3))
        if np.linalg.cond(psi) <= max_condition:
            return psi
    raise GeometryError("could not sample a well-conditioned perturbation")


def save_polygon(poly: TwistedPolygon, path) -> None:
    obj = {
        "n": poly.n,
        "monodromy": [[float(x) for x in row] for row in poly.monodromy],
        "vertices": [[float(x) for x in v] for v in poly.vertices],
    }
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def load_polygon(path) -> TwistedPolygon:
    with open(path) as fh:
        obj = json.load(fh)
    verts = obj["vertices"]
    if obj.get("n") not in (None, len(verts)):
        raise ValueError(f"polygon file claims n={obj['n']} but has {len(verts)} vertices")
    return TwistedPolygon(tuple(np.array(v, float) for v in verts), np.array(obj["monodromy"], float))


def affine_chart(p) -> tuple:
    """(x, y) in the chart h2 = 1; raises for points at infinity."""
    p = normalize(p)
    if abs(p[2]) < DEGENERACY_TOL:
        raise DegeneracyError(f"point at infinity has no affine chart: {p}")
    return float(p[0] / p[2]), float(p[1] / p[2])
