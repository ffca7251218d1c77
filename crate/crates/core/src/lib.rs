//! Exact finite-group machinery for generalized Springer correspondences
//! and cuspidal enhanced L-parameters.

pub mod error;
pub mod exactnum;
pub mod groups;
pub mod linalg;
pub mod reps;
pub mod tga;
pub mod clifford;
pub mod extquot;
pub mod springer;
pub mod lparams;

pub use error::{Error, Result};
pub use exactnum::{Cyclotomic, Field, Rational, RootOfUnity};
pub use groups::{FiniteGroup, GroupHom, SubgroupHandle};

/// Matrices over the rationals.
pub type QMatrix = linalg::Matrix<Rational>;
/// Matrices over cyclotomic fields; every representation lives here.
pub type CycMatrix = linalg::Matrix<Cyclotomic>;
