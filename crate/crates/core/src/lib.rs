pub mod classify;
pub mod constructions;
pub mod error;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod volume;

pub use error::{Error, Result};
pub use polytope::{AffineMap, Face, Halfspace, Polytope};
