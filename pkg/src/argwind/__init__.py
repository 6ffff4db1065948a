"""Numerical holomorphic-extendibility tests and negative-winding witnesses on circle domains."""

__version__ = "0.1.0"

from .argument import WindingReport, change_of_argument, zero_count_check
from .boundary import (BoundaryFunction, add, from_expression, from_fourier, from_samples,
                       multiply_by_affine, rotate, scale, smooth_truncate)
from .extend import (ExtendibilityReport, PhiData, WitnessCertificate, WitnessParams, compute_A,
                     construct_witness, detect_extendibility, phi_data, select_base_point,
                     select_rotation, verify_certificate)
from .geometry import Circle, CircleDomain, boundary_sampling, contains, validate_domain
from .harmonic import (HarmonicMeasureSet, HarmonicRepresentation, conjugation_constants,
                       harmonic_measures, periods, solve_dirichlet, split_conjugable)
