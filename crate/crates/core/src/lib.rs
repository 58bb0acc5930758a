//! Exact computational commutative algebra for symbolic-power containment
//! experiments: Gröbner bases over ℚ and prime fields, ideal algebra
//! (intersection, quotient, saturation), symbolic powers of point
//! configurations and monomial curves, containment certificates, and exact
//! degree-bound audits and integer threshold calculators.

pub mod asymptotics;
pub mod configurations;
pub mod containment;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod poly;
pub mod scalar;

pub use asymptotics::{
    alpha_general_points, chudnovsky_audit, count_inequality, ev_audit,
    fatpoint_chudnovsky_audit, grifo_threshold, theorem31_threshold, waldschmidt_table,
    weak_chudnovsky_audit, AuditKind, AuditReport, AuditRow, CountReport, ThresholdInputs,
    ThresholdReport, TraceStep, WaldschmidtRow, WaldschmidtTable,
};
pub use configurations::{
    arrangement_singular_locus, configuration_ideal, fermat_ideal, monomial_curve_ideal,
    parse_point_file, point_ideal, random_points, star_configuration, PointConfiguration,
    XorShift64Star,
};
pub use containment::{
    check_containment, degree_criterion, intersection_oracle, johnson_check,
    maximal_twist_target, resurgence_witness_scan, symbolic_power, ContainmentCertificate,
    Method, QueryShape, ResurgenceRow, ResurgenceWitnessTable, Verdict,
};
pub use error::{EngineError, GbStats};
pub use ideal::{DegreeProfile, Ideal, IdealKind, PointSet};
pub use groebner::{buchberger, guards, member, normal_form, set_guards, GbGuards, GroebnerBasis};
pub use poly::{Monomial, MonomialOrder, Poly, Ring};
pub use scalar::{binomial, rat, Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};

/// Version tag baked into every report and cache key; bump when any algorithm
/// change could alter serialized output.
pub const ENGINE_VERSION: &str = concat!("symlab/", env!("CARGO_PKG_VERSION"));
