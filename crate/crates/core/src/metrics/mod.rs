//! Pseudometrics, Hausdorff lifts and the distances between fuzzy sets.

mod fuzzy_distance;
mod hausdorff;
mod nearest;
mod pseudometric;

pub use fuzzy_distance::{
    base_plane, fuzzy_hausdorff, hypo0_distance, hypo_distance, hypo_points, linf_distance, pointwise_gap,
    product_distance, Distance, DistanceKind, HypoPoint,
};
pub use hausdorff::{directed_hausdorff, hausdorff, hausdorff_nodes};
pub use pseudometric::{sample_point, Pseudometric, PseudometricFamily};
