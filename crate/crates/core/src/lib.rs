//! Exact rational computations with chain complexes of finite-dimensional
//! vector spaces: tensor powers under symmetric-group idempotents, Kimura
//! dimension, cube objects, and filtrations on powers of an extension.

pub mod cli;
pub mod complex;
pub mod error;
pub mod filtration;
pub mod group_algebra;
pub mod limits;
pub mod linalg;
pub mod powers;
pub mod random;
pub mod symgroup;

pub use complex::{ChainMap, Complex, GradedDims, Subcomplex};
pub use error::{Error, Result};
pub use limits::Limits;
pub use linalg::{Matrix, Rational, SplitData};
