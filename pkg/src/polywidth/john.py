"""Minimum-volume enclosing ellipsoids and the sandwich transform.

For a symmetric vertex set the minimum-volume enclosing ellipsoid is
centered, so it is found by multiplicative-weights ascent on the dual
problem: maximize ``log det M(u)`` with ``M(u) = sum_i u_i v_i v_i^T`` over
the weight simplex.  At the optimum ``Q = M^{-1}/n`` and the weighted
contact identity ``sum_i u_i v_i v_i^T = Q^{-1}/n`` holds exactly.

The map ``T = sqrt(n) Q^{1/2}`` sends the ellipsoid to the radius-sqrt(n)
ball.  Because ``M(u)`` is a convex combination of rank-one terms,
``{x : x^T M^{-1} x <= 1}`` is contained in the polytope for any simplex
weights, which gives the unit ball inside ``T(P)`` unconditionally; the
convergence tolerance only enters on the outer radius.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailureError
from .polytope import HRep, Polytope, VRep


@dataclass(frozen=True)
class EllipsoidForm:
    """Ellipsoid ``{x : x^T Q x <= 1}`` with Q symmetric positive definite.

    ``contact_weights`` records the dual weights of the ascent that produced
    the form (one per input vertex), used for optimality certificates.
    """

    dim: int
    q: np.ndarray
    contact_weights: np.ndarray | None = None

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.shape != (self.dim, self.dim):
            raise ValueError("Q must be dim x dim")
        if np.abs(q - q.T).max() > 1e-10:
            raise ValueError("Q must be symmetric")
        if np.linalg.eigvalsh(q).min() <= 0:
            raise ValueError("Q must be positive definite")
        q = q.copy()
        q.flags.writeable = False
        object.__setattr__(self, "q", q)


def mvee_symmetric(vertices, tol: float = 1e-6, max_iter: int = 100000) -> EllipsoidForm:
    """Centered minimum-volume enclosing ellipsoid of a symmetric point set.

    Ascends the dual objective until the duality gap
    ``max_i v_i^T Q v_i - 1`` drops below ``tol``.  Each iteration either
    moves weight onto the most-violating point or (away step) pulls weight
    off the most-slack supported point, whichever violation is larger; both
    use the closed-form optimal step length, and the away steps are what
    make the convergence linear rather than sublinear.

    Raises if the points do not span (no bounded centered ellipsoid exists)
    or if the iteration cap is hit, reporting the residual gap.
    """
    points = np.asarray(vertices, dtype=float)
    m, dim = points.shape
    if np.linalg.matrix_rank(points) < dim:
        raise ValueError("vertex set does not span the space; "
                         "centered ellipsoid would be degenerate")
    u = np.full(m, 1.0 / m)
    gap = np.inf
    for _ in range(max_iter):
        mat = points.T @ (u[:, None] * points)
        scores = np.einsum("ij,ij->i", points, np.linalg.solve(mat, points.T).T)
        hi = int(np.argmax(scores))
        gap = scores[hi] / dim - 1.0
        if gap <= tol:
            q = np.linalg.inv(mat) / dim
            q = 0.5 * (q + q.T)
            return EllipsoidForm(dim, q, contact_weights=u.copy())
        supported = np.nonzero(u > 0.0)[0]
        lo = int(supported[np.argmin(scores[supported])])
        if scores[hi] - dim >= dim - scores[lo]:
            j, kappa = hi, scores[hi]
            step = (kappa - dim) / (dim * (kappa - 1.0))
        else:
            j, kappa = lo, scores[lo]
            step = max((kappa - dim) / (dim * (kappa - 1.0)),
                       -u[lo] / (1.0 - u[lo]))
        u *= 1.0 - step
        u[j] += step
        np.maximum(u, 0.0, out=u)
        u /= u.sum()
    raise ConvergenceFailureError(
        f"ellipsoid ascent did not reach gap {tol} in {max_iter} iterations",
        residual=float(gap))


def duality_gap(form: EllipsoidForm, vertices) -> float:
    """``max_i v_i^T Q v_i - 1``: how far the worst point pokes out."""
    points = np.asarray(vertices, dtype=float)
    return float(np.einsum("ij,jk,ik->i", points, form.q, points).max() - 1.0)


def john_map(form: EllipsoidForm) -> np.ndarray:
    """The sandwich transform ``T = sqrt(n) Q^{1/2}``.

    T maps the ellipsoid onto the radius-sqrt(n) ball, so the transformed
    polytope fits between the unit ball and sqrt(n) times it.  The square
    root is taken through a symmetric eigendecomposition.
    """
    w, vecs = np.linalg.eigh(np.asarray(form.q, dtype=float))
    if w.min() <= 0:
        raise ValueError("form matrix is not positive definite")
    return np.sqrt(form.dim) * (vecs * np.sqrt(w)) @ vecs.T


def apply_transform(p: Polytope, t) -> Polytope:
    """Image of the polytope under an invertible linear map.

    Vertices map through ``T``; halfspace normals map through the inverse
    transpose, which keeps the canonical right-hand side at 1.  Vertex and
    facet counts (and the whole incidence pattern) are unchanged.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (p.dim, p.dim):
        raise ValueError("transform must be dim x dim")
    det = np.linalg.det(t)
    if not np.isfinite(det) or abs(det) < 1e-12:
        raise ValueError("transform is singular")
    t_inv = np.linalg.inv(t)
    vrep = None
    if p.vrep is not None:
        vrep = VRep(p.dim, p.vrep.vertices @ t.T)
    hrep = None
    if p.hrep is not None:
        hrep = HRep(p.dim, p.hrep.normals @ t_inv)
    return Polytope(
        p.dim, vrep=vrep, hrep=hrep, symmetric=p.symmetric,
        cached_r=(None if hrep is None
                  else float(1.0 / np.linalg.norm(hrep.normals, axis=1).max())),
        cached_R=(None if vrep is None
                  else float(np.linalg.norm(vrep.vertices, axis=1).max())),
    )
