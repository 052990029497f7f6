//! Fuzzy iterated function systems on regular grids.
//!
//! Membership values are quantized to `L+1` levels and the space is a one-
//! or two-dimensional box sampled on a regular grid, so α-cuts are finite
//! node sets and every distance is computed exactly on the discrete model.

pub mod codespace;
pub mod error;
pub mod experiments;
pub mod format;
pub mod fuzzy;
pub mod grey;
pub mod grid;
pub mod ifs;
pub mod metrics;
pub mod zadeh;

pub use codespace::{
    attractor_via_projection, grey_limit, grey_partials, project, Address, GreyLimit, ProjectionAttractor,
};
pub use error::{Error, Result};
pub use fuzzy::{alpha_cut, pointwise_max, CompactFuzzySet, FuzzySet, Level, LevelScale};
pub use grey::{apply_grey, grey_threshold, GreyLevelMap, GreySystem};
pub use grid::{BoxRegion, Grid, Point, SubGrid};
pub use ifs::{
    fuzzy_hutchinson_cuts, fuzzy_hutchinson_pointwise, hutchinson, iterate_to_fixpoint, AffineMap,
    ComparisonFunction, ContractionMap, FuzzyIfs,
};
pub use metrics::{fuzzy_hausdorff, hypo0_distance, hypo_distance, linf_distance, Distance, Pseudometric};
pub use zadeh::{zadeh_image, SnappedMap};
