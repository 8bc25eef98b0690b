//! Partition-type diagram algebras and the homology of their trivial modules.

pub mod algebra;
pub mod cli;
pub mod coeff;
pub mod cover;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod homcompute;
pub mod linalg;
pub mod matrix;
pub mod mv;
pub mod report;
pub mod setpart;
mod unionfind;

pub use algebra::{AlgebraContext, AlgebraElement, Basis, FamilySpec};
pub use coeff::{RingSpec, Scalar};
pub use diagram::{Column, CompositionResult, Diagram, Vertex};
pub use error::{Error, Result};
pub use matrix::Matrix;
