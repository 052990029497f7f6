//! Contraction maps, Hutchinson operators and the fixed-point driver.

mod comparison;
mod contraction;
mod fixpoint;
mod geometry;
mod hutchinson;
pub mod presets;

pub use comparison::{ComparisonCheck, ComparisonFunction};
pub use contraction::{verify_matkowski, AffineMap, ContractionMap, MatkowskiReport};
pub use fixpoint::{default_tolerance, iterate_operator, iterate_to_fixpoint, FixpointRun};
pub use geometry::{box_sample, fiber_diameter, invariant_box, INVARIANT_BOX_STEPS};
pub use hutchinson::{
    crisp_fixed_set, fuzzy_hutchinson_cuts, fuzzy_hutchinson_pointwise, hutchinson, FuzzyIfs, HutchinsonOperator,
};
