"""Ehrhart data of lattice polytopes in exact arithmetic.

Counting sequences, Ehrhart polynomials and delta-vectors; integral
closedness, reflexivity and smoothness tests; Macaulay O-sequence
predicates; and checkers for the volume and delta-vector inequalities that
hold for integrally closed polytopes.
"""

from .analysis import AnalysisRecord, analyze
from .bounds import (
    ExtremalClass,
    VerificationReport,
    cyclic_facets,
    schepers_classification,
    verify_diff_o,
    verify_hibi_lbt,
    verify_lower_bound,
    verify_oda,
    verify_partial_sums,
    verify_reflexive_upper,
    verify_unimodality_n_le_d4,
    verify_volume_upper,
)
from .ehrhart import (
    EhrhartData,
    boundary_count_sequence,
    count_sequence,
    delta_vector,
    ehrhart_data,
    ehrhart_polynomial,
    interior_count,
)
from .kernels import BACKEND
from .normality import ClosureReport, is_integrally_closed, is_smooth, is_unimodular_simplex
from .osequence import (
    BinomialExpansion,
    HSequence,
    binomial_expansion,
    is_differentiable_O_sequence,
    is_gorenstein_sequence_h1le3,
    is_O_sequence,
    is_palindromic,
    is_unimodal,
    level_inequalities,
    macaulay_bound_holds,
    macaulay_power,
    partial_sum_inequalities,
)
from .polytope import HalfSpace, LatticePolytope, contains, facets, lattice_points, vertex_reduce
from .reflexivity import ReflexivityReport, is_reflexive, reflexivity_report

__version__ = "0.1.0"
