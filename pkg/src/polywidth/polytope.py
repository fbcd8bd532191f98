"""Polytope representations and the basic convex-geometry operations on them.

A polytope is stored through one or both of two canonical representations:

* vertex form -- the convex hull of a finite point list, and
* halfspace form -- an intersection of halfspaces ``<a_i, x> <= 1``.

The halfspace right-hand side is always 1, so the origin is interior by
construction and the gauge of the body is ``max_i <a_i, x>`` with no
division.  Under this convention polar duality simply swaps the two lists:
the vertices of ``P`` are the facet normals of the dual body and vice versa.

All containers are immutable after construction (arrays are marked
read-only) and every operation is a pure function, so values can be shared
freely across threads.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (ConsistencyError, MissingRepresentationError,
                     UnsupportedInstanceError)
from .simplex import OPTIMAL, INFEASIBLE, solve_standard_form

DEDUP_TOL = 1e-9          # Euclidean distance below which two points coincide
CROSS_REP_TOL = 1e-7      # vertex/halfspace mutual-consistency tolerance


def _freeze(points, dim, name):
    arr = np.array(points, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError(f"{name} must be a nonempty 2-d array")
    if arr.shape[1] != dim:
        raise ValueError(f"{name} rows have length {arr.shape[1]}, expected {dim}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} must be finite")
    arr.flags.writeable = False
    return arr


def has_duplicates(points, tol=DEDUP_TOL):
    """True if two rows of ``points`` are within ``tol`` of each other.

    Exhaustive for small lists; large lists fall back to a lexicographic
    sort, which still catches exact duplicates.
    """
    m = points.shape[0]
    if m <= 512:
        diff = points[:, None, :] - points[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        dist[np.diag_indices(m)] = np.inf
        return bool((dist < tol).any())
    order = np.lexsort(points.T[::-1])
    gaps = np.linalg.norm(np.diff(points[order], axis=0), axis=1)
    return bool((gaps < tol).any())


def dedup_points(points, tol=DEDUP_TOL):
    """Remove near-duplicate rows, keeping the first occurrence of each."""
    points = np.asarray(points, dtype=float)
    keep = []
    for i, p in enumerate(points):
        if all(np.linalg.norm(p - points[j]) >= tol for j in keep):
            keep.append(i)
    return points[keep]


def closed_under_negation(points, tol=DEDUP_TOL):
    """True if the point list maps onto itself under x -> -x."""
    order = np.lexsort(points.T[::-1])
    neg = -points
    neg_order = np.lexsort(neg.T[::-1])
    return bool(np.allclose(points[order], neg[neg_order], atol=tol, rtol=0.0))


@dataclass(frozen=True)
class VRep:
    """Vertex representation: the polytope is the convex hull of ``vertices``."""

    dim: int
    vertices: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        object.__setattr__(self, "vertices", _freeze(self.vertices, self.dim, "vertices"))
        if has_duplicates(self.vertices):
            raise ValueError("duplicate vertices (within dedup tolerance)")

    @property
    def count(self):
        return self.vertices.shape[0]


@dataclass(frozen=True)
class HRep:
    """Halfspace representation: all ``x`` with ``<a, x> <= 1`` for each normal ``a``."""

    dim: int
    normals: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        object.__setattr__(self, "normals", _freeze(self.normals, self.dim, "normals"))
        if (np.linalg.norm(self.normals, axis=1) < DEDUP_TOL).any():
            raise ValueError("zero normal vector")

    @property
    def count(self):
        return self.normals.shape[0]


@dataclass(frozen=True)
class Polytope:
    """A validated polytope carrying one or both representations.

    ``cached_r``/``cached_R`` hold the inradius/circumradius when they are
    known analytically for polytopes too large to carry the representation
    that would otherwise yield them.
    """

    dim: int
    vrep: VRep | None = None
    hrep: HRep | None = None
    symmetric: bool = False
    cached_r: float | None = None
    cached_R: float | None = None

    def __post_init__(self):
        if self.vrep is None and self.hrep is None:
            raise ValueError("at least one representation is required")
        for rep in (self.vrep, self.hrep):
            if rep is not None and rep.dim != self.dim:
                raise ValueError("representation dimension mismatch")
        if self.symmetric:
            if self.vrep is not None and not closed_under_negation(self.vrep.vertices):
                raise ValueError("symmetric flag set but vertices not closed under negation")
            if self.hrep is not None and not closed_under_negation(self.hrep.normals):
                raise ValueError("symmetric flag set but normals not closed under negation")
        if self.vrep is not None and self.hrep is not None:
            worst = float((self.vrep.vertices @ self.hrep.normals.T).max())
            if worst > 1.0 + CROSS_REP_TOL:
                raise ValueError(
                    f"vertex violates a halfspace constraint by {worst - 1.0:.3g}")

    @property
    def num_vertices(self):
        if self.vrep is None:
            raise MissingRepresentationError("polytope has no vertex representation")
        return self.vrep.count

    @property
    def num_normals(self):
        if self.hrep is None:
            raise MissingRepresentationError("polytope has no halfspace representation")
        return self.hrep.count


def from_vertices(vertices, symmetric=False, cached_r=None):
    """Build a vertex-form polytope; the circumradius comes along for free."""
    vertices = np.asarray(vertices, dtype=float)
    vrep = VRep(vertices.shape[1], vertices)
    big_r = float(np.linalg.norm(vertices, axis=1).max())
    return Polytope(vrep.dim, vrep=vrep, symmetric=symmetric,
                    cached_r=cached_r, cached_R=big_r)


def from_halfspaces(normals, symmetric=False, cached_R=None):
    """Build a halfspace-form polytope; the inradius comes along for free."""
    normals = np.asarray(normals, dtype=float)
    hrep = HRep(normals.shape[1], normals)
    r = float(1.0 / np.linalg.norm(normals, axis=1).max())
    return Polytope(hrep.dim, hrep=hrep, symmetric=symmetric,
                    cached_r=r, cached_R=cached_R)


def from_both(vertices, normals, symmetric=False):
    vertices = np.asarray(vertices, dtype=float)
    normals = np.asarray(normals, dtype=float)
    dim = vertices.shape[1]
    return Polytope(
        dim,
        vrep=VRep(dim, vertices),
        hrep=HRep(dim, normals),
        symmetric=symmetric,
        cached_r=float(1.0 / np.linalg.norm(normals, axis=1).max()),
        cached_R=float(np.linalg.norm(vertices, axis=1).max()),
    )


def support(p: Polytope, x) -> float:
    """Support value ``max_{v in P} <v, x>``, a max over the vertex list."""
    if p.vrep is None:
        raise MissingRepresentationError("support requires a vertex representation")
    x = np.asarray(x, dtype=float)
    return float((p.vrep.vertices @ x).max())


def support_batch(p: Polytope, points) -> np.ndarray:
    """Support values for each row of ``points``; chunked to bound memory."""
    if p.vrep is None:
        raise MissingRepresentationError("support requires a vertex representation")
    points = np.asarray(points, dtype=float)
    verts = p.vrep.vertices
    chunk = max(1, (1 << 22) // max(1, verts.shape[0]))
    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], chunk):
        block = points[start:start + chunk]
        out[start:start + chunk] = (block @ verts.T).max(axis=1)
    return out


def _gauge_lp(vertices, x):
    # min sum(lp + lm)  s.t.  V.T (lp - lm) = x,  lp, lm >= 0; the optimum
    # is the gauge of conv(+-v_i) at x.
    m = vertices.shape[0]
    a = np.hstack([vertices.T, -vertices.T])
    res = solve_standard_form(np.ones(2 * m), a, x)
    if res.status == INFEASIBLE:
        raise ConsistencyError("gauge LP infeasible for a spanning symmetric polytope")
    if res.status != OPTIMAL:
        raise ConsistencyError(f"gauge LP ended with status {res.status}")
    return float(res.value)


def gauge(p: Polytope, x) -> float:
    """Gauge (Minkowski functional) ``inf {t > 0 : x in tP}``.

    With a halfspace form this is ``max_i <a_i, x>``.  Vertex-only symmetric
    polytopes fall back to a small LP over signed convex combinations;
    vertex-only asymmetric polytopes are not supported.
    """
    x = np.asarray(x, dtype=float)
    if p.hrep is not None:
        return float(max((p.hrep.normals @ x).max(), 0.0))
    if not p.symmetric:
        raise UnsupportedInstanceError(
            "gauge of an asymmetric vertex-only polytope is not supported")
    return _gauge_lp(p.vrep.vertices, x)


def gauge_batch(p: Polytope, points) -> np.ndarray:
    """Gauge values for each row of ``points``."""
    points = np.asarray(points, dtype=float)
    if p.hrep is not None:
        normals = p.hrep.normals
        chunk = max(1, (1 << 22) // max(1, normals.shape[0]))
        out = np.empty(points.shape[0])
        for start in range(0, points.shape[0], chunk):
            block = points[start:start + chunk]
            out[start:start + chunk] = np.maximum((block @ normals.T).max(axis=1), 0.0)
        return out
    if not p.symmetric:
        raise UnsupportedInstanceError(
            "gauge of an asymmetric vertex-only polytope is not supported")
    verts = p.vrep.vertices
    return np.array([_gauge_lp(verts, x) for x in points])


def polar_dual(p: Polytope) -> Polytope:
    """The polar body: vertices become facet normals and vice versa.

    Cached radii transfer through the identities r(P) = 1/R(dual) and
    R(P) = 1/r(dual).  Applying the operation twice reproduces the original
    representations.
    """
    vrep = VRep(p.dim, p.hrep.normals) if p.hrep is not None else None
    hrep = HRep(p.dim, p.vrep.vertices) if p.vrep is not None else None
    return Polytope(
        p.dim, vrep=vrep, hrep=hrep, symmetric=p.symmetric,
        cached_r=None if p.cached_R is None else 1.0 / p.cached_R,
        cached_R=None if p.cached_r is None else 1.0 / p.cached_r,
    )


def scale_polytope(p: Polytope, factor: float) -> Polytope:
    """Image under ``x -> factor * x``; cached radii scale along exactly."""
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    return Polytope(
        p.dim,
        vrep=None if p.vrep is None else VRep(p.dim, p.vrep.vertices * factor),
        hrep=None if p.hrep is None else HRep(p.dim, p.hrep.normals / factor),
        symmetric=p.symmetric,
        cached_r=None if p.cached_r is None else p.cached_r * factor,
        cached_R=None if p.cached_R is None else p.cached_R * factor,
    )


def circumradius(p: Polytope) -> float:
    """Largest vertex norm; falls back to the cached value for analytic families."""
    if p.vrep is not None:
        return float(np.linalg.norm(p.vrep.vertices, axis=1).max())
    if p.cached_R is not None:
        return p.cached_R
    raise MissingRepresentationError("circumradius requires vertices or a cached value")


def inradius(p: Polytope) -> float:
    """Distance from the origin to the nearest bounding hyperplane.

    In canonical form this is ``1 / max_i |a_i|``, the polar-duality twin of
    the circumradius.
    """
    if p.hrep is not None:
        return float(1.0 / np.linalg.norm(p.hrep.normals, axis=1).max())
    if p.cached_r is not None:
        return p.cached_r
    raise MissingRepresentationError("inradius requires halfspaces or a cached value")


def validate(p: Polytope) -> list[str]:
    """Check every structural invariant; returns a report of violations.

    An empty list means the polytope is valid.  Unlike the constructors this
    also verifies facet tightness: with both representations present, every
    halfspace must be supported by at least ``dim`` affinely independent
    vertices, i.e. each stored normal defines a genuine facet.
    """
    issues = []
    if p.vrep is not None and has_duplicates(p.vrep.vertices):
        issues.append("duplicate vertices")
    if p.symmetric:
        if p.vrep is not None and not closed_under_negation(p.vrep.vertices):
            issues.append("vertex set not closed under negation")
        if p.hrep is not None and not closed_under_negation(p.hrep.normals):
            issues.append("normal set not closed under negation")
    try:
        r, big_r = None, None
        if p.hrep is not None or p.cached_r is not None:
            r = inradius(p)
            if r <= 0:
                issues.append("nonpositive inradius")
        if p.vrep is not None or p.cached_R is not None:
            big_r = circumradius(p)
        if r is not None and big_r is not None and r > big_r * (1 + CROSS_REP_TOL):
            issues.append("inradius exceeds circumradius")
    except MissingRepresentationError:
        pass
    if p.vrep is not None and p.hrep is not None:
        products = p.vrep.vertices @ p.hrep.normals.T  # (verts, normals)
        worst = float(products.max())
        if worst > 1.0 + CROSS_REP_TOL:
            issues.append(f"vertex outside halfspace by {worst - 1.0:.3g}")
        for i in range(p.hrep.count):
            tight = p.vrep.vertices[np.abs(products[:, i] - 1.0) <= CROSS_REP_TOL]
            if tight.shape[0] < p.dim:
                issues.append(f"halfspace {i} tight at only {tight.shape[0]} vertices")
                continue
            lifted = np.hstack([tight, np.ones((tight.shape[0], 1))])
            if np.linalg.matrix_rank(lifted, tol=1e-8) < p.dim:
                issues.append(f"halfspace {i} lacks {p.dim} affinely independent "
                              "tight vertices")
    return issues


def to_dict(p: Polytope) -> dict:
    out = {"dim": p.dim, "symmetric": p.symmetric}
    if p.vrep is not None:
        out["vertices"] = p.vrep.vertices.tolist()
    if p.hrep is not None:
        out["normals"] = p.hrep.normals.tolist()
    return out


def from_dict(data: dict) -> Polytope:
    dim = int(data["dim"])
    symmetric = bool(data.get("symmetric", False))
    vertices = data.get("vertices")
    normals = data.get("normals")
    if vertices is not None and normals is not None:
        p = from_both(vertices, normals, symmetric=symmetric)
    elif vertices is not None:
        p = from_vertices(vertices, symmetric=symmetric)
    elif normals is not None:
        p = from_halfspaces(normals, symmetric=symmetric)
    else:
        raise ValueError("polytope data needs 'vertices' and/or 'normals'")
    if p.dim != dim:
        raise ValueError(f"declared dim {dim} does not match data dim {p.dim}")
    return p


def save_polytope(p: Polytope, path):
    with open(path, "w") as fh:
        json.dump(to_dict(p), fh)


def load_polytope(path) -> Polytope:
    with open(path) as fh:
        return from_dict(json.load(fh))
