"""Exhaustive experiments with polynomial images on small finite matrix rings."""
from .kernels import BACKEND
from .lab import (CENTRAL, EQUAL, EXC_GF4, EXC_I, EXC_II, EXC_LIE, FULL, GF4_COPY,
                  LIE_EXCEPTION, REFUTATION, ImageReport, ImageSet, check_m2f2_dichotomies,
                  classify_image_m2f2, image_report, image_set, is_central_valued,
                  p_commutator_set_check, parse_univariate, standard_poly_probe,
                  sum_length_profile, sweep_m2f2, tilde_equivalence_check,
                  fully_noncentral_check)
from .rings import (FiniteRingSpec, additive_closure, commutator_ideal, commutator_set,
                    commutator_span, ideal_closure, parse_ring, product_power, product_set,
                    subring_closure)

__all__ = [
    "BACKEND", "CENTRAL", "EQUAL", "EXC_GF4", "EXC_I", "EXC_II", "EXC_LIE", "FULL", "GF4_COPY",
    "LIE_EXCEPTION", "REFUTATION", "FiniteRingSpec", "ImageReport", "ImageSet",
    "additive_closure", "check_m2f2_dichotomies", "classify_image_m2f2", "commutator_ideal",
    "commutator_set", "commutator_span", "fully_noncentral_check", "ideal_closure",
    "image_report", "image_set", "is_central_valued", "p_commutator_set_check", "parse_ring",
    "parse_univariate", "product_power", "product_set", "standard_poly_probe",
    "subring_closure", "sum_length_profile", "sweep_m2f2", "tilde_equivalence_check",
]
