//! Exact continued fractions, Markov and Lagrange values, subshifts of
//! finite type and certified Hausdorff-dimension bounds for the pieces of
//! the classical Markov and Lagrange spectra.

pub mod cf;
pub mod dimension;
pub mod error;
pub mod graph;
pub mod interval;
pub mod precision;
pub mod radical;
pub mod spectra;
pub mod surd;
pub mod symbolic;

pub use dimension::DimBound;
pub use error::{Error, Result};
pub use interval::Interval;
pub use precision::{precision, set_precision, Enclosure};
pub use radical::{CFValue, RadicalSum};
pub use surd::QuadSurd;
