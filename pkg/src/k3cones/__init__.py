"""Exact verification of the cone computations on the projectivised
cotangent bundle of a degree-two K3 surface: intersection tables on the
blown-up threefold and its distinguished surfaces, the linear-cone pipeline
for the lower slope bound 39/22, and the polynomial positivity certification
for the upper bound just below 9/5."""

from .bigness import (BignessInstance, CriticalEta, critical_eta, cubic_f,
                      evaluate_instance, sample_region)
from .cones import (ClassTriple, ConeVerdict, extremality_test,
                    necessary_conditions, nef_membership_ES,
                    nodal_infeasibility, theorem13_bound)
from .geometry import (GeometryModel, PlueckerData, build_model, lambda_slope,
                       numerology, pluecker, pushforward_class, verify_tables)
from .lattice import (CurveClass, DivClass, IntersectionForm, LatticeSpace,
                      LinearMap, change_basis, make_form, pair, pair_curve)
from .linprog import FarkasCertificate, IneqSystem, LinRow, lp_optimize
from .poly import Poly1, Poly2, RootBracket, isolate_roots, resultant

__version__ = "1.0.0"

__all__ = [
    "BignessInstance", "ClassTriple", "ConeVerdict", "CriticalEta",
    "CurveClass", "DivClass", "FarkasCertificate", "GeometryModel",
    "IneqSystem", "IntersectionForm", "LatticeSpace", "LinRow", "LinearMap",
    "PlueckerData", "Poly1", "Poly2", "RootBracket", "build_model",
    "change_basis", "critical_eta", "cubic_f", "evaluate_instance",
    "extremality_test", "isolate_roots", "lambda_slope", "lp_optimize",
    "make_form", "necessary_conditions", "nef_membership_ES",
    "nodal_infeasibility", "numerology", "pair", "pair_curve", "pluecker",
    "pushforward_class", "resultant", "sample_region", "theorem13_bound",
    "verify_tables",
]
