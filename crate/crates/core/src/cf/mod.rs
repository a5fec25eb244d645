//! Continued fractions: convergents, cylinders, exact values of periodic
//! expansions, ordering, separation and distortion.

pub mod compare;
pub mod constants;
pub mod convergents;
pub mod cylinder;
pub mod distortion;
pub mod expansion;
pub mod separation;
pub mod word;

pub use compare::{compare, Comparison};
pub use constants::{named_constants, NamedConstant};
pub use convergents::{convergents, Convergents};
pub use cylinder::{cylinder, cylinder_length, CylinderInterval};
pub use distortion::{distortion_constant, geometric_bounds, Distortion, GeometricBounds};
pub use expansion::{eval_periodic, Expansion};
pub use separation::{separation_lower_bound, Separation};
pub use word::Word;
