//! Finite complete lattices and quantales.

mod lattice;
mod quantale;

pub use lattice::{Elem, Lattice};
pub use quantale::{Quantale, QuantaleProperties, QuantaleSpec, Side};
