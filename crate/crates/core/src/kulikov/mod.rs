//! Kulikov models: anticanonical pairs glued along their boundaries, their
//! combinatorial validation, numerically Cartier classes, monodromy and
//! base change.

mod base_change;
mod config;
mod lambda;
mod monodromy;
mod pair;
mod validate;

pub use base_change::{base_change_resolution, elliptic_ruled};
pub use config::{Edge, EdgeEnd, KulikovConfig, KulikovType, Orientation, ResolvedTriangle};
pub use lambda::{
    block_offsets, lambda_lattice, lambda_lattice_unchecked, numerically_cartier_lattice, numerically_cartier_unchecked,
    restriction_matrix, xi_vectors, LambdaReport, NumericallyCartier,
};
pub use monodromy::{classify_type, monodromy_operator, picard_lefschetz_t, DegenerationType, MonodromyData};
pub use pair::{charge, BoundaryKind, PairData};
pub use validate::{euler_check, triple_point_count, validate, Failure, ValidationReport, TOTAL_CHARGE};
