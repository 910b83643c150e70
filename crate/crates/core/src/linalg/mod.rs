//! Exact integer and rational linear algebra used throughout the crate.

pub mod echelon;
pub mod matrix;
pub mod rational;
pub mod smith;

pub use echelon::{kernel, rank, row_echelon, saturate_rows, solve_left_full_rank, Kernel, RowEchelon};
pub use matrix::{content, dot, to_bigints, IntMatrix};
pub use rational::{inertia, solve_rational, Inertia};
pub use smith::{cokernel, invariant_factors, smith_normal_form, Cokernel, SmithForm};
