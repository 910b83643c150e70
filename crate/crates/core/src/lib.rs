pub mod cusps;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod kulikov;
pub mod lattice;
pub mod linalg;
pub mod small_cones;
pub mod toric;
pub mod yau_zaslow;

pub use error::{Error, Result};
