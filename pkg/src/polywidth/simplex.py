"""Dense two-phase simplex solver for desk-scale linear programs.

Problems are converted to standard form (minimize c.x subject to A x = b,
x >= 0) and solved on a dense tableau with Bland's anti-cycling pivot rule,
so every solve is deterministic and guaranteed to terminate.  Intended for
small instances (up to a few hundred variables/constraints); there is no
sparsity handling and no presolve.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SolverFailureError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_TOL = 1e-9


@dataclass(frozen=True)
class LPProblem:
    """Linear program: minimize ``c.x`` subject to equality and <= constraints.

    ``bounds`` holds one ``(low, high)`` pair per variable; ``None`` means
    unbounded on that side.  When ``bounds`` is omitted every variable is
    nonnegative.
    """

    c: np.ndarray
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    bounds: tuple | None = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        object.__setattr__(self, "c", c)
        for name in ("a_eq", "a_ub"):
            mat = getattr(self, name)
            if mat is not None:
                mat = np.atleast_2d(np.asarray(mat, dtype=float))
                if mat.shape[1] != c.size:
                    raise ValueError(
                        f"{name} has {mat.shape[1]} columns, expected {c.size}")
                object.__setattr__(self, name, mat)
        for mat_name, vec_name in (("a_eq", "b_eq"), ("a_ub", "b_ub")):
            mat, vec = getattr(self, mat_name), getattr(self, vec_name)
            if (mat is None) != (vec is None):
                raise ValueError(f"{mat_name} and {vec_name} must come together")
            if vec is not None:
                vec = np.atleast_1d(np.asarray(vec, dtype=float))
                if vec.size != mat.shape[0]:
                    raise ValueError(f"{vec_name} length does not match {mat_name}")
                object.__setattr__(self, vec_name, vec)
        if self.bounds is not None and len(self.bounds) != c.size:
            raise ValueError("bounds must have one (low, high) pair per variable")


@dataclass(frozen=True)
class LPResult:
    status: str
    value: float | None = None
    x: np.ndarray | None = None
    iterations: int = field(default=0, compare=False)


def _pivot(tableau, basis, row, col):
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0
    basis[row] = col


def _bland_iterate(tableau, basis, ncols, max_iter, tol):
    """Run simplex iterations with Bland's rule until optimal or unbounded.

    Returns (status, iterations).  The last tableau row holds reduced costs;
    the last column holds the right-hand side.
    """
    for it in range(max_iter):
        reduced = tableau[-1, :ncols]
        negatives = np.nonzero(reduced < -tol)[0]
        if negatives.size == 0:
            return OPTIMAL, it
        col = negatives[0]  # Bland: smallest eligible index
        column = tableau[:-1, col]
        rows = np.nonzero(column > tol)[0]
        if rows.size == 0:
            return UNBOUNDED, it
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + tol]
        # Bland tie-break: leave the basic variable with the smallest index
        row = tied[np.argmin(basis[tied])]
        _pivot(tableau, basis, row, col)
    raise SolverFailureError(
        f"simplex iteration cap {max_iter} exceeded (degenerate or ill-posed LP)")


def solve_standard_form(c, a, b, tol=_PIVOT_TOL):
    """Solve ``min c.x  s.t.  a x = b, x >= 0`` by the two-phase tableau method.

    Returns an LPResult whose ``x`` has one entry per column of ``a``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    c = np.asarray(c, dtype=float)
    m, n = a.shape
    max_iter = 50 * (n + m)

    flip = b < 0
    a = np.where(flip[:, None], -a, a)
    b = np.abs(b)

    # Phase 1: artificial variables, minimize their sum.
    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = a
    tableau[:m, n:n + m] = np.eye(m)
    tableau[:m, -1] = b
    basis = np.arange(n, n + m)
    tableau[-1, :n] = -a.sum(axis=0)
    tableau[-1, -1] = -b.sum()

    status, used = _bland_iterate(tableau, basis, n + m, max_iter, tol)
    if status != OPTIMAL:  # phase-1 objective is bounded below by 0
        raise SolverFailureError("phase 1 terminated abnormally")
    if -tableau[-1, -1] > np.sqrt(tol):
        return LPResult(INFEASIBLE, iterations=used)

    # Drive any residual artificial variables out of the basis; rows whose
    # artificial cannot leave are redundant constraints and get dropped.
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n:
            candidates = np.nonzero(np.abs(tableau[i, :n]) > tol)[0]
            if candidates.size:
                _pivot(tableau, basis, i, candidates[0])
            else:
                keep[i] = False
    rows = np.append(keep, True)
    tableau = tableau[rows][:, np.r_[np.arange(n), n + m]]
    basis = basis[keep]

    # Phase 2: restore the real objective, priced out over the current basis.
    tableau[-1, :] = 0.0
    tableau[-1, :n] = c
    for i, j in enumerate(basis):
        tableau[-1] -= c[j] * tableau[i]

    status, it2 = _bland_iterate(tableau, basis, n, max_iter, tol)
    iterations = used + it2
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, iterations=iterations)
    x = np.zeros(n)
    x[basis] = tableau[:-1, -1]
    return LPResult(OPTIMAL, float(c @ x), x, iterations)


def lp_solve(prob: LPProblem, tol=_PIVOT_TOL) -> LPResult:
    """Solve an LPProblem; returns status, optimal value and a solution vector.

    General bounds are reduced to standard form: free variables are split
    into positive/negative parts, finite lower bounds are shifted away and
    finite upper bounds become extra inequality rows.
    """
    n = prob.c.size
    bounds = prob.bounds if prob.bounds is not None else ((0.0, None),) * n

    # Column mapping: each original variable contributes one or two standard
    # columns (two for free variables); shift records the lower-bound offset.
    pos_col, neg_col, shift = [], [], np.zeros(n)
    ncols = 0
    extra_ub = []
    for j, (low, high) in enumerate(bounds):
        if low is None:
            pos_col.append(ncols)
            neg_col.append(ncols + 1)
            ncols += 2
        else:
            shift[j] = low
            pos_col.append(ncols)
            neg_col.append(-1)
            ncols += 1
        if high is not None:
            extra_ub.append((j, high))

    def expand(mat):
        out = np.zeros((mat.shape[0], ncols))
        for j in range(n):
            out[:, pos_col[j]] += mat[:, j]
            if neg_col[j] >= 0:
                out[:, neg_col[j]] -= mat[:, j]
        return out

    rows_a, rows_b = [], []
    if prob.a_ub is not None:
        rows_a.append(expand(prob.a_ub))
        rows_b.append(prob.b_ub - prob.a_ub @ shift)
    for j, high in extra_ub:
        row = np.zeros((1, n))
        row[0, j] = 1.0
        rows_a.append(expand(row))
        rows_b.append(np.array([high - shift[j]]))
    ineq_rows = sum(mat.shape[0] for mat in rows_a)
    if prob.a_eq is not None:
        rows_a.append(expand(prob.a_eq))
        rows_b.append(prob.b_eq - prob.a_eq @ shift)

    a_std = np.vstack(rows_a) if rows_a else np.zeros((0, ncols))
    b_std = np.concatenate(rows_b) if rows_b else np.zeros(0)
    if ineq_rows:
        slacks = np.zeros((a_std.shape[0], ineq_rows))
        slacks[:ineq_rows, :] = np.eye(ineq_rows)
        a_std = np.hstack([a_std, slacks])
    c_std = np.zeros(a_std.shape[1])
    for j in range(n):
        c_std[pos_col[j]] += prob.c[j]
        if neg_col[j] >= 0:
            c_std[neg_col[j]] -= prob.c[j]

    if a_std.shape[0] == 0:
        # No constraints: bounded only if the shifted objective has no
        # improving direction.
        improving = (c_std < -tol).any()
        if improving:
            return LPResult(UNBOUNDED)
        x = shift.copy()
        return LPResult(OPTIMAL, float(prob.c @ x), x)

    res = solve_standard_form(c_std, a_std, b_std, tol=tol)
    if res.status != OPTIMAL:
        return res
    x = np.empty(n)
    for j in range(n):
        x[j] = res.x[pos_col[j]] + shift[j]
        if neg_col[j] >= 0:
            x[j] -= res.x[neg_col[j]]
    return LPResult(OPTIMAL, float(prob.c @ x), x, res.iterations)
