"""Turaev based matrices of virtual knots and their stable parities.

Exact arithmetic over Z or Z/2 throughout.  The usual entry points are
:func:`knot_invariant_bundle` for a Gauss code and
:func:`matrix_invariant_bundle` for a based matrix.
"""

from .diagram import (GaussCode, GaussCodeError, HomologyForm, KnotReport, RotationSystem,
                      based_matrix_of_diagram, carter_surface, gaussian_index, homology_form,
                      knot_invariant_bundle, left_half, parse_gauss_code, right_half)
from .groups import CanonicalAbelianGroup, quotient_group
from .matrix import (BasedMatrix, BasedMatrixError, ElementClass, Isomorphism, ReductionTrace, Ring,
                     apply_m1, apply_m2, apply_m3, automorphisms, classify_element, is_isomorphic,
                     is_primitive, load_matrix, new_based_matrix, reduce_to_primitive, trivial_matrix)
from .parity import (MatrixReport, ParityAssignment, Violation, bar_structure, gaussian_parity,
                     hat_parity_functor, matrix_invariant_bundle, parity_matrix_report, reduced_parity,
                     reduced_parity_functor, stable_parity_functor, verify_parity_axioms)
from .partitions import (AnnulatorModule, Partition, TribeTags, annulator, aut_coarsening, derive,
                         partition_chain, stable_partition, tag_tribes, transport_tribes, zero_tribe)

__version__ = "0.1.0"

__all__ = [
    "AnnulatorModule", "BasedMatrix", "BasedMatrixError", "CanonicalAbelianGroup", "ElementClass",
    "GaussCode", "GaussCodeError", "HomologyForm", "Isomorphism", "KnotReport", "MatrixReport",
    "ParityAssignment", "Partition", "ReductionTrace", "Ring", "RotationSystem", "TribeTags",
    "Violation", "annulator", "apply_m1", "apply_m2", "apply_m3", "aut_coarsening", "automorphisms",
    "bar_structure", "based_matrix_of_diagram", "carter_surface", "classify_element", "derive",
    "gaussian_index", "gaussian_parity", "hat_parity_functor", "homology_form", "is_isomorphic",
    "is_primitive", "knot_invariant_bundle", "left_half", "load_matrix", "matrix_invariant_bundle",
    "new_based_matrix", "parity_matrix_report", "parse_gauss_code", "partition_chain", "quotient_group",
    "reduce_to_primitive", "reduced_parity", "reduced_parity_functor", "right_half",
    "stable_parity_functor", "stable_partition", "tag_tribes", "transport_tribes", "trivial_matrix",
    "verify_parity_axioms", "zero_tribe",
]
