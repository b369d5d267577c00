"""Steering certificates for rank-2 two-qubit states."""

from .decomp import (MeasurementFrame, alice_basis, canonical_taus, conditional_decompose,
                     hermiticity_defect, ns_separability_check, residuals)
from .entangle import (ConcurrenceReport, concurrence_closed_form, concurrence_report,
                       concurrence_wootters, is_separable, s_coefficients)
from .states import (PureState2Q, Rank2Params, SchmidtResult, SwapUnitary, make_psi1, make_psi2,
                     pure_concurrence, rank2_density, schmidt_decompose, swap_theta_quarter)
from .steer import (LinearSteeringSettings, SteeringCertificate, SteeringVectors, avn_state,
                    bloch_f, chsh_max, classical_bound, generic_w_expectation, linear_i3_value,
                    steer_certificate, steering_vectors, w_max_pair)

__version__ = "0.1.0"
