"""Polytope families, exact vertex/facet counting and facet enumeration.

Exact facet enumeration examines every dim-subset of the vertex list and is
therefore restricted to desk scale (dim <= 7, at most 24 vertices).  The
named cube / cross-polytope families have analytic counts at any dimension;
their exponentially long representation lists are materialized only up to
dimension 12.
"""

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import UnsupportedInstanceError
from .polytope import (HRep, Polytope, VRep, dedup_points, from_vertices,
                       load_polytope, closed_under_negation)
from .simplex import OPTIMAL, solve_standard_form

FAMILY_NAMES = ("cube", "cross_polytope", "random_sign",
                "random_gaussian_symmetric", "file")

MAX_ENUM_DIM = 7
MAX_ENUM_VERTICES = 24
MAX_MATERIALIZED_DIM = 12   # 2^dim-long lists are stored only up to here
COPLANAR_TOL = 1e-9
NORMAL_MERGE_TOL = 1e-7


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for one polytope instance.

    ``pairs`` is the number of vertex pairs {v, -v} for the random families;
    ``path`` points at a JSON polytope for the "file" family.
    """

    family: str
    dim: int = 0
    pairs: int | None = None
    seed: int | None = None
    path: str | None = None

    def __post_init__(self):
        if self.family not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "file":
            if not self.path:
                raise ValueError("file family needs a path")
            return
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.family.startswith("random"):
            if self.pairs is None or self.pairs < self.dim:
                raise ValueError("random families need pairs >= dim to span")
            if self.seed is None:
                raise ValueError("random families need a seed")

    def label(self) -> str:
        if self.family == "file":
            return f"file:{self.path}"
        bits = [self.family, f"n={self.dim}"]
        if self.pairs is not None:
            bits.append(f"m={self.pairs}")
        if self.seed is not None:
            bits.append(f"seed={self.seed}")
        return " ".join(bits)


@dataclass(frozen=True)
class FaceCounts:
    num_vertices: int
    num_facets: int
    method: str  # analytic | enumerated | dual_enumerated


def sign_vectors(dim: int) -> np.ndarray:
    """All 2^dim vectors with entries +-1, in lexicographic order."""
    return np.array(list(product((-1.0, 1.0), repeat=dim)))


def cube(dim: int) -> Polytope:
    """[-1, 1]^dim: halfspaces +-e_i, vertices all sign vectors."""
    normals = np.vstack([np.eye(dim), -np.eye(dim)])
    vrep = VRep(dim, sign_vectors(dim)) if dim <= MAX_MATERIALIZED_DIM else None
    return Polytope(dim, vrep=vrep, hrep=HRep(dim, normals), symmetric=True,
                    cached_r=1.0, cached_R=math.sqrt(dim))


def cross_polytope(dim: int) -> Polytope:
    """conv(+-e_i): vertices +-e_i, facet normals all sign vectors."""
    verts = np.vstack([np.eye(dim), -np.eye(dim)])
    hrep = HRep(dim, sign_vectors(dim)) if dim <= MAX_MATERIALIZED_DIM else None
    return Polytope(dim, vrep=VRep(dim, verts), hrep=hrep, symmetric=True,
                    cached_r=1.0 / math.sqrt(dim), cached_R=1.0)


def _canonical_signs(points):
    # Flip each row so its first nonzero entry is positive: identifies v
    # with -v, which keeps the pair structure intact through deduplication.
    flipped = points.copy()
    for i, row in enumerate(flipped):
        nonzero = np.nonzero(np.abs(row) > 1e-14)[0]
        if nonzero.size and row[nonzero[0]] < 0:
            flipped[i] = -row
    return flipped


def _draw_symmetric_vertices(draw, dim, pairs, rng):
    for _ in range(100):
        reps = dedup_points(_canonical_signs(draw(rng)))
        verts = np.vstack([reps, -reps])
        if np.linalg.matrix_rank(verts) == dim:
            return verts
    raise UnsupportedInstanceError(
        f"could not draw a spanning symmetric vertex set in dim {dim} "
        f"after 100 attempts")


def generate(spec: FamilySpec) -> Polytope:
    """Build the polytope an instance spec describes; deterministic per seed."""
    if spec.family == "file":
        return load_polytope(spec.path)
    if spec.family == "cube":
        return cube(spec.dim)
    if spec.family == "cross_polytope":
        return cross_polytope(spec.dim)

    rng = np.random.default_rng(spec.seed)
    if spec.family == "random_sign":
        def draw(rng):
            signs = rng.integers(0, 2, size=(spec.pairs, spec.dim)) * 2.0 - 1.0
            return signs / math.sqrt(spec.dim)  # scaled so R(P) = 1
    else:  # random_gaussian_symmetric
        def draw(rng):
            g = rng.standard_normal((spec.pairs, spec.dim))
            return g / np.linalg.norm(g, axis=1)[:, None]
    verts = _draw_symmetric_vertices(draw, spec.dim, spec.pairs, rng)
    return from_vertices(verts, symmetric=True)


def extreme_points(vertices) -> np.ndarray:
    """Filter a point list down to the true vertex set of its convex hull.

    A point is kept iff it is not a convex combination of the others, each
    case decided by an LP feasibility check.  Near-duplicates are merged
    first so copies cannot shield each other.
    """
    points = dedup_points(np.asarray(vertices, dtype=float))
    m, dim = points.shape
    if m == 1:
        return points
    keep = []
    for i in range(m):
        others = np.delete(points, i, axis=0)
        a = np.vstack([others.T, np.ones(m - 1)])
        b = np.append(points[i], 1.0)
        res = solve_standard_form(np.zeros(m - 1), a, b)
        if res.status != OPTIMAL:
            keep.append(i)
    return points[keep]


def _facet_candidates(points, subsets):
    # Solve <a, v_s> = 1 for each subset; singular systems are skipped.
    dim = points.shape[1]
    systems = points[subsets]                      # (batch, dim, dim)
    dets = np.abs(np.linalg.det(systems))
    scale = np.linalg.norm(systems, axis=2).prod(axis=1)
    ok = dets > 1e-12 * np.maximum(scale, 1.0)
    if not ok.any():
        return np.empty((0, dim))
    rhs = np.ones((int(ok.sum()), dim, 1))
    return np.linalg.solve(systems[ok], rhs)[:, :, 0]


def _merge_normals(normals, tol=NORMAL_MERGE_TOL):
    if normals.shape[0] <= 512:
        return dedup_points(normals, tol=tol)
    order = np.lexsort(normals.T[::-1])
    rows = normals[order]
    gaps = np.linalg.norm(np.diff(rows, axis=0), axis=1)
    keep = np.insert(gaps >= tol, 0, True)
    return rows[keep]


def enumerate_facets(vertices) -> HRep:
    """Exact facet list of conv(vertices) by checking every dim-subset.

    Requires the origin in the interior and a spanning point list.  A
    subset spanning a hyperplane ``<a, x> = 1`` is a facet iff every vertex
    lies on the <= side; coplanar subsets of a non-simplicial facet produce
    the same normal and are merged, so the count is exactly the facet count.
    """
    points = np.asarray(vertices, dtype=float)
    m, dim = points.shape
    if dim > MAX_ENUM_DIM or m > MAX_ENUM_VERTICES:
        raise UnsupportedInstanceError(
            f"facet enumeration supports dim <= {MAX_ENUM_DIM} and at most "
            f"{MAX_ENUM_VERTICES} vertices, got dim {dim} with {m} points")
    if np.linalg.matrix_rank(points) < dim:
        raise UnsupportedInstanceError("vertex set does not span the space")

    subsets = np.array(list(combinations(range(m), dim)))
    accepted = []
    for start in range(0, subsets.shape[0], 50000):
        cands = _facet_candidates(points, subsets[start:start + 50000])
        if cands.size == 0:
            continue
        side = points @ cands.T                     # (m, batch)
        facet = side.max(axis=0) <= 1.0 + COPLANAR_TOL
        if facet.any():
            accepted.append(cands[facet])
    if not accepted:
        raise UnsupportedInstanceError(
            "no facets found; is the origin interior to the hull?")
    normals = _merge_normals(np.vstack(accepted))
    order = np.lexsort(normals.T[::-1])             # deterministic output order
    return HRep(dim, normals[order])


def with_enumerated_facets(p: Polytope) -> Polytope:
    """Attach the enumerated halfspace form to a vertex-form polytope."""
    if p.hrep is not None:
        return p
    hrep = enumerate_facets(p.vrep.vertices)
    return Polytope(p.dim, vrep=p.vrep, hrep=hrep, symmetric=p.symmetric,
                    cached_r=float(1.0 / np.linalg.norm(hrep.normals, axis=1).max()),
                    cached_R=p.cached_R)


def face_counts(p: Polytope, spec: FamilySpec | None = None) -> FaceCounts:
    """Exact vertex and facet counts.

    Named families are counted analytically.  Otherwise the vertex count
    comes from extreme-point filtering and the facet count from the stored
    halfspace form or exact enumeration; when only one side is available
    the other is counted on the polar dual (facets of P are vertices of the
    dual and vice versa).
    """
    if spec is not None and spec.family in ("cube", "cross_polytope"):
        n = spec.dim
        if spec.family == "cube":
            return FaceCounts(2 ** n, 2 * n, "analytic")
        return FaceCounts(2 * n, 2 ** n, "analytic")

    method = "enumerated"
    if p.vrep is not None:
        num_vertices = extreme_points(p.vrep.vertices).shape[0]
    elif p.hrep is not None:
        # vertices of P are facets of the dual body conv(normals)
        num_vertices = enumerate_facets(p.hrep.normals).count
        method = "dual_enumerated"
    else:
        raise UnsupportedInstanceError("no representation to count from")

    if p.hrep is not None:
        num_facets = p.hrep.count
    else:
        num_facets = enumerate_facets(p.vrep.vertices).count
    return FaceCounts(int(num_vertices), int(num_facets), method)
