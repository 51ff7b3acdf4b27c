//! Explicit matrices for the non-standard q-deformed algebras U'_q(so_3),
//! U'_q(so_4) and U'_q(so_{2,2}), with numerical certificates for their
//! relations, spectra, decompositions and *-structures.

pub mod error;
pub mod gtrep;
pub mod halfint;
pub mod matfile;
pub mod qarith;
pub mod rep;
pub mod so22;
pub mod verify;
pub mod xdiag;

pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use matfile::MatrixFile;
pub use qarith::{QContext, C64};
pub use rep::{BasisLabel, CMat, GenMatrixSet, Generator};
