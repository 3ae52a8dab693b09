"""Exact computation of rank-2 cluster scattering diagram wall coefficients.

Two independent routes to the same numbers: order-by-order completion of the
scattering diagram, and enumeration of tight gradings on maximal Dyck paths.
"""

from .dyck import MaxDyckPath, build_max_dyck, pi_label
from .exact import B, C, G, Partition, PolyBCG, TruncSeries, partitions_of
from .gradings import (Grading, TightSpec, choose_dims, enumerate_tight, is_compatible, is_tight,
                       lam, lambda_table, shadow, tau_by_counting)
from .scatter import OrderExceeded, ScatteringDiagram, cluster_diagram, extract_rho, extract_tau, gps_diagram
from .tiling import tightness_via_tiles, tilings
from .wallcoeffs import (SlopeContext, TauSplit, central_series, chi_extract, closed_formula,
                         rho_from_tau, rho_k, tau_series, tau_split, verify_conjectures)
from .weyl import mutate, retract, transpose, weyl_map

__version__ = "0.1.0"
