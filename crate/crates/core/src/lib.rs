//! Convolutional codes built from input/state/output representations over
//! finite fields.
pub mod actions;
pub mod analysis;
pub mod erasure;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod search;
pub mod system;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use matrix::{Matrix, SupportPattern};
pub use poly::{Poly, PolyMatrix};
pub use system::{CodeHandle, IsoSystem};
