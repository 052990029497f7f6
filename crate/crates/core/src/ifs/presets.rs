//! Systems used throughout the examples and experiments.

use crate::fuzzy::LevelScale;
use crate::grey::{GreyLevelMap, GreySystem};
use crate::grid::Point;
use crate::ifs::{AffineMap, ContractionMap, FuzzyIfs};

pub const SIERPINSKI_VERTICES: [Point; 3] = [[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]];

/// `f(x) = x/2` on the line with `ϱ = id`.
pub fn halving(scale: LevelScale) -> FuzzyIfs {
    FuzzyIfs::new(vec![ContractionMap::new(AffineMap::line(0.5, 0.0))], GreySystem::identity(scale, 1))
        .expect("one map, one grey map")
}

/// Three half-scale maps toward the vertices of the triangle
/// `(0,0), (1,0), (1/2,1)`, with the given grey maps.
pub fn sierpinski(greys: GreySystem) -> FuzzyIfs {
    let maps = SIERPINSKI_VERTICES.iter().map(|&v| ContractionMap::new(AffineMap::toward(0.5, v))).collect();
    FuzzyIfs::new(maps, greys).expect("three grey maps required")
}

/// Sierpinski maps with greys `(id, id, ⌊j/2⌋)`.
pub fn sierpinski_half_shaded(scale: LevelScale) -> FuzzyIfs {
    let id = GreyLevelMap::identity(scale);
    let greys = GreySystem::new(vec![id.clone(), id, GreyLevelMap::half_scale(scale)]).expect("admissible");
    sierpinski(greys)
}
