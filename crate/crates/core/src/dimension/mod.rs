//! Certified Hausdorff-dimension bounds for Gauss-Cantor sets and the
//! pieces of subshifts of finite type.

pub mod bounds;
pub mod components;
pub mod cover;
pub mod eq32;

pub use bounds::{hd_bounds, DimBound, Method};
pub use components::{component_bounds, component_dimension, strict_drop_check, DropCheck, SetDimension};
pub use cover::{cover_sum, refine_cover, CoverSum};
pub use eq32::{eq32_verify, Eq32Record};
