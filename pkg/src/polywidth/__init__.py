"""Convex-geometry toolkit for symmetric polytopes.

Builds polytopes in vertex and halfspace form, computes gauges, support
functions, polar duals and John-position transforms, estimates spherical
mean widths by Monte Carlo, counts vertices and facets exactly at desk
scale, and certifies the resulting vertex/facet count inequalities.
"""

from .errors import (ConsistencyError, ConvergenceFailureError,
                     MissingRepresentationError, SolverFailureError,
                     UnsupportedInstanceError)
from .polytope import (HRep, Polytope, VRep, circumradius, from_both,
                       from_halfspaces, from_vertices, from_dict, gauge,
                       gauge_batch, inradius, load_polytope, polar_dual,
                       save_polytope, support, support_batch, to_dict,
                       validate)
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LPProblem, LPResult, lp_solve
from .spheremc import (Estimate, SphereSample, cap_measure, mean_gauge,
                       mean_support, sample_sphere, support_tail,
                       width_product)
from .john import EllipsoidForm, apply_transform, john_map, mvee_symmetric
from .families import (FaceCounts, FamilySpec, cross_polytope, cube,
                       enumerate_facets, extreme_points, face_counts,
                       generate)
from .harness import (BoundCheck, InstanceReport, check_mean_gauge_bound,
                      check_mean_support_bound, check_product_chain,
                      run_experiment)

__version__ = "0.1.0"
