//! Exact stability computations for weighted projective lines of tame type.

pub mod batch;
pub mod charge;
pub mod derive;
pub mod doc;
pub mod error;
pub mod model;
pub mod num;
pub mod oracle;
pub mod region;
pub mod sample;
pub mod quiver_core;

pub use error::{Error, Result};
pub use model::Lattice;
