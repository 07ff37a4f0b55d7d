"""Exact sparse resultants, graded Koszul complexes and toric
Nullstellensatz certificates for sparse Laurent polynomial systems."""

from .bezout import Certificate, certificate, emptiness_check, verify_certificate
from .errors import (DivisionFailure, ExactnessFailure, GeometryError,
                     NoCertificate, TargetSupportEscape)
from .koszul import GradedKoszulComplex, build_complex, check_exact, rightmost_surjective
from .lattice_geom import (Facet, IntegralPolytope, convex_hull, euclidean_volume,
                           lattice_points, minkowski_sum, mixed_volume)
from .polyring import LaurentPoly, MPoly
from .resultant import (ResultantResult, sparse_resultant, specialize_resultant,
                        verify_minor_divisibility)
from .toric import SparseSystem, ToricContext, build_context, make_system

__all__ = [
    "Certificate", "DivisionFailure", "ExactnessFailure", "Facet",
    "GeometryError", "GradedKoszulComplex", "IntegralPolytope", "LaurentPoly",
    "MPoly", "NoCertificate", "ResultantResult", "SparseSystem",
    "TargetSupportEscape", "ToricContext", "build_complex", "build_context",
    "certificate", "check_exact", "convex_hull", "emptiness_check",
    "euclidean_volume", "lattice_points", "make_system", "minkowski_sum",
    "mixed_volume", "rightmost_surjective", "sparse_resultant",
    "specialize_resultant", "verify_certificate", "verify_minor_divisibility",
]
