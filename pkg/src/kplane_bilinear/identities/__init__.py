"""End-to-end verifiers of the bilinear identities and the sharp-constant checks."""

from ._common import FourWaveSums, FourWaveWeights, Settings, four_wave_identity_defect, graded_time_rule
from .catalog import (gaussian_u0_data, hermite_gaussian, hyperboloid_gaussian, paraboloid_gaussian,
                      seeded_zonal, sphere_constant, sphere_zero, sphere_zonal, truncated_gaussian, zero_function)
from .hyperboloid import C_H, hyperboloid_rhs, verify_hyperboloid_identity
from .paraboloid import (check_constants, honest_corollary_term, honest_paraboloid_rhs, ot_constant,
                         ot_recovery, pv_algebraic_check, pv_constant, pv_rhs, verify_honest_paraboloid,
                         verify_pv_identity)
from .sphere import (C_S, InequalityCheck, antipodal_form, antipodal_sharp, check_antipodal_chain,
                     check_foschi_sphere, check_stein_tomas_sphere, sphere_lhs, sphere_refinement_study,
                     sphere_rhs, verify_sphere_corollary, verify_sphere_identity)

__all__ = [
    "Settings", "FourWaveSums", "FourWaveWeights", "four_wave_identity_defect", "graded_time_rule",
    "gaussian_u0_data", "hermite_gaussian", "hyperboloid_gaussian", "paraboloid_gaussian", "seeded_zonal",
    "sphere_constant", "sphere_zero", "sphere_zonal", "truncated_gaussian", "zero_function",
    "C_H", "hyperboloid_rhs", "verify_hyperboloid_identity",
    "check_constants", "honest_corollary_term", "honest_paraboloid_rhs", "ot_constant", "ot_recovery",
    "pv_algebraic_check", "pv_constant", "pv_rhs", "verify_honest_paraboloid", "verify_pv_identity",
    "C_S", "InequalityCheck", "antipodal_form", "antipodal_sharp", "check_antipodal_chain",
    "check_foschi_sphere", "check_stein_tomas_sphere", "sphere_lhs", "sphere_refinement_study",
    "sphere_rhs", "verify_sphere_corollary", "verify_sphere_identity",
]
