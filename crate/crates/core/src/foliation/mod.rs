//! Foliation-level verdicts on logarithmic specs.

pub mod criteria;
pub mod identities;
pub mod kupka;
pub mod perturbation;
pub mod singular;

pub use criteria::{
    degree_by_restriction, first_integral, first_integral_exponents, foliation_degree, integrability_p2,
    invariant_components_of, invariant_pole_components, is_closed_form, is_closed_log, is_logarithmic, FirstIntegral,
    IntegrabilityVerdict, RestrictionDegree,
};
pub use identities::{identity_suite, IdentityReport};
pub use kupka::{
    kupka_classify, kupka_eigenvalue_system, nonresonance_check, nonresonance_check_exact, normal_type_eigenvalues,
    perturbation_family, poincare_domain_check, zero_params, KupkaKind, KupkaTolerances, KupkaVerdict,
    NonresonanceVerdict, PerturbationParams, PoincareVerdict,
};
pub use perturbation::{matches_up_to_scale, perturbation_row, perturbation_sweep, PerturbationRow};
pub use singular::{
    divisor_singularity_audit, is_exact_singular_point, line_singularity_count, off_divisor_singularities,
    plane_singularity_count, triple_point, OffDivisorOptions, OffDivisorReport, SingularityReport, P3_EXPECTED_TOTAL,
};
