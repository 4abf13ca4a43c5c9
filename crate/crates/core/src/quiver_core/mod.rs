//! Weight data, quivers, the Grothendieck lattice and the Coxeter action.

mod coxeter;
mod lattice;
mod quiver;
mod weights;
mod window;

pub use coxeter::{coxeter_data, exceptional_simple_class, CoxeterData, KClass};
pub use lattice::IntMatrix;
pub use quiver::{canonical_quiver, euclidean_diagram, section_quiver, StarQuiver};
pub use weights::{classify_weights, weights_from_tag, EuclideanType, WeightData};
pub use window::{ar_window, ARWindow, WindowArrow};
