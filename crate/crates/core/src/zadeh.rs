//! Grid-to-grid maps and the Zadeh image of a fuzzy set.

use crate::error::{Error, Result};
use crate::fuzzy::{CompactFuzzySet, FuzzySet};
use crate::grid::{Grid, Point};

/// A point map evaluated once per node and snapped to the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SnappedMap {
    grid: Grid,
    id: usize,
    targets: Vec<Option<usize>>,
}

impl SnappedMap {
    /// `id` labels the map in escape errors.
    pub fn new(grid: Grid, id: usize, f: impl Fn(Point) -> Point) -> Self {
        let targets = (0..grid.len()).map(|i| grid.snap(f(grid.point(i)))).collect();
        SnappedMap { grid, id, targets }
    }

    pub fn identity(grid: Grid) -> Self {
        SnappedMap { grid, id: 0, targets: (0..grid.len()).map(Some).collect() }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn target(&self, idx: usize) -> Result<usize> {
        self.targets[idx].ok_or(Error::Escape { map: self.id, point: self.grid.point(idx) })
    }

    /// Image of a node set, sorted and deduplicated.
    pub fn image(&self, nodes: &[usize]) -> Result<Vec<usize>> {
        let mut out = nodes.iter().map(|&i| self.target(i)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// `f[u](y) = max{u(x) : f(x) = y}`, zero off the image of the support.
pub fn zadeh_image(f: &SnappedMap, u: &FuzzySet) -> Result<FuzzySet> {
    if f.grid() != u.grid() {
        return Err(Error::GridMismatch);
    }
    let mut out = FuzzySet::zeros(*u.grid(), u.scale());
    for x in u.support() {
        out.raise(f.target(x)?, u.level(x))?;
    }
    Ok(out)
}

impl CompactFuzzySet {
    /// Zadeh image; normality carries over from `self`.
    pub fn image(&self, f: &SnappedMap) -> Result<CompactFuzzySet> {
        CompactFuzzySet::new(zadeh_image(f, self)?)
    }
}
