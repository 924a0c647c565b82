"""Projection geometry on matrix algebras.

Kovarik's formula and idempotent/projection paths, affine charts on
Grassmannians, the two-projection canonical form with the midpoint
constructions built on it, and a decidable lattice model of diagonal
projections on l^2.
"""

from .errors import *  # noqa: F401,F403
from .numeric import (DEFAULT_TOL, Subspace, ToleranceConfig, hermitian_eigen,
                      kernel_basis, projector_of, solve_inverse, spectral_norm,
                      subspace_intersection)
from .projections import (BallReport, Idempotent, Kind, Projection,
                          ball_predicates, classify, complement,
                          converse_kovarik, idempotent_path, kovarik,
                          mv_equivalent, order_leq, projection_path,
                          random_projection, range_kernel_match)
from .twoproj import (HalmosForm, PairDecomposition, complementary_midpoint,
                      find_common_ball, generic_midpoint, halmos_form,
                      halmos_reconstruct, kernel_dimension_report,
                      pair_decompose)
from .atlas import (AffineCoordinates, ChartIndex, chart_select,
                    chart_transition, classical_affine_coords, phi,
                    phi_inverse, projection_from_frame, standard_projection)
from . import lattice

__version__ = '0.1.0'
