//! Quantized fuzzy sets on a grid and their α-cut algebra.
//!
//! Membership values live on the level scale `{0, 1/L, ..., 1}` and are
//! stored as integer levels `0..=L`. The α-cut at level `j` is the set of
//! nodes with level at least `j`; the cut at level 0 is the support.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::grid::{Grid, Point, SubGrid};

pub type Level = u16;

/// Number of nonzero grey levels `L`; level `j` stands for `α = j/L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LevelScale(Level);

impl LevelScale {
    pub fn new(top: Level) -> Result<Self> {
        if top == 0 {
            return Err(Error::InvalidScale);
        }
        Ok(LevelScale(top))
    }

    /// `L`.
    pub fn top(self) -> Level {
        self.0
    }

    pub fn alpha(self, j: Level) -> f64 {
        j as f64 / self.0 as f64
    }

    /// Largest level `j` with `j/L <= t`, clamped to `0..=L`.
    pub fn quantize(self, t: f64) -> Level {
        if t.is_nan() || t <= 0.0 {
            return 0;
        }
        let j = (t * self.0 as f64 + 1e-9).floor();
        j.min(self.0 as f64) as Level
    }

    pub fn check(self, j: u32) -> Result<Level> {
        if j > self.0 as u32 {
            Err(Error::LevelOutOfRange { level: j, top: self.0 })
        } else {
            Ok(j as Level)
        }
    }
}

/// A quantized fuzzy set with no normality requirement. Grey-level maps
/// produce these as intermediates.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzySet {
    grid: Grid,
    scale: LevelScale,
    levels: Vec<Level>,
}

impl FuzzySet {
    pub fn zeros(grid: Grid, scale: LevelScale) -> Self {
        FuzzySet { grid, scale, levels: vec![0; grid.len()] }
    }

    pub fn from_levels(grid: Grid, scale: LevelScale, levels: Vec<Level>) -> Result<Self> {
        if levels.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: levels.len() });
        }
        if let Some(&bad) = levels.iter().find(|&&l| l > scale.top()) {
            return Err(Error::LevelOutOfRange { level: bad as u32, top: scale.top() });
        }
        Ok(FuzzySet { grid, scale, levels })
    }

    /// Samples `f` at every node and quantizes downward.
    pub fn from_fn(grid: Grid, scale: LevelScale, f: impl Fn(Point) -> f64) -> Self {
        let levels = (0..grid.len()).map(|i| scale.quantize(f(grid.point(i)))).collect();
        FuzzySet { grid, scale, levels }
    }

    /// Build from `(node, level)` pairs; repeated nodes keep the larger level.
    pub fn from_entries(grid: Grid, scale: LevelScale, entries: &[(usize, Level)]) -> Result<Self> {
        let mut set = FuzzySet::zeros(grid, scale);
        for &(idx, level) in entries {
            set.raise(idx, level)?;
        }
        Ok(set)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn scale(&self) -> LevelScale {
        self.scale
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, idx: usize) -> Level {
        self.levels[idx]
    }

    pub fn membership(&self, idx: usize) -> f64 {
        self.scale.alpha(self.levels[idx])
    }

    /// `level(idx) = max(level(idx), level)`.
    pub fn raise(&mut self, idx: usize, level: Level) -> Result<()> {
        if idx >= self.levels.len() {
            return Err(Error::InvalidArgument(format!("node {idx} outside grid")));
        }
        self.scale.check(level as u32)?;
        let slot = &mut self.levels[idx];
        *slot = (*slot).max(level);
        Ok(())
    }

    pub fn support(&self) -> Vec<usize> {
        self.cut_unchecked(1)
    }

    /// Highest level attained.
    pub fn height(&self) -> Level {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn is_normal(&self) -> bool {
        self.height() == self.scale.top()
    }

    /// The α-cut at level `j`; level 0 gives the support.
    pub fn cut(&self, j: Level) -> Result<Vec<usize>> {
        self.scale.check(j as u32)?;
        Ok(self.cut_unchecked(j.max(1)))
    }

    pub(crate) fn cut_unchecked(&self, j: Level) -> Vec<usize> {
        let j = j.max(1);
        self.levels.iter().enumerate().filter(|(_, &l)| l >= j).map(|(i, _)| i).collect()
    }

    pub fn same_domain(&self, other: &FuzzySet) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch(self.scale.top(), other.scale.top()));
        }
        Ok(())
    }

    /// Pointwise `self <= other`.
    pub fn is_below(&self, other: &FuzzySet) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| a <= b)
    }

    pub fn restrict_to(&self, sub: &SubGrid) -> Result<FuzzySet> {
        if sub.parent() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut out = FuzzySet::zeros(*sub.grid(), self.scale);
        for idx in self.support() {
            let s = sub.from_parent(idx).ok_or(Error::SupportOutsideSubgrid)?;
            out.levels[s] = self.levels[idx];
        }
        Ok(out)
    }

    pub fn extend_from(&self, sub: &SubGrid) -> Result<FuzzySet> {
        if sub.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut out = FuzzySet::zeros(*sub.parent(), self.scale);
        for idx in self.support() {
            out.levels[sub.to_parent(idx)] = self.levels[idx];
        }
        Ok(out)
    }
}

/// A normal, nonempty quantized fuzzy set: the grid stand-in for an element
/// of the hyperspace of compact fuzzy sets.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactFuzzySet(FuzzySet);

impl CompactFuzzySet {
    pub fn new(set: FuzzySet) -> Result<Self> {
        let height = set.height();
        if height == 0 {
            return Err(Error::EmptySupport);
        }
        if height != set.scale.top() {
            return Err(Error::NotNormal { height, top: set.scale.top() });
        }
        Ok(CompactFuzzySet(set))
    }

    pub fn from_levels(grid: Grid, scale: LevelScale, levels: Vec<Level>) -> Result<Self> {
        Self::new(FuzzySet::from_levels(grid, scale, levels)?)
    }

    /// Dirac function χ_a of the node `a`.
    pub fn dirac(grid: Grid, scale: LevelScale, a: usize) -> Result<Self> {
        Self::indicator(grid, scale, &[a])
    }

    /// Characteristic function of a set of nodes.
    pub fn indicator(grid: Grid, scale: LevelScale, nodes: &[usize]) -> Result<Self> {
        let entries: Vec<_> = nodes.iter().map(|&i| (i, scale.top())).collect();
        Self::new(FuzzySet::from_entries(grid, scale, &entries)?)
    }

    /// The constant function 1 on the whole grid.
    pub fn full(grid: Grid, scale: LevelScale) -> Self {
        CompactFuzzySet(FuzzySet { grid, scale, levels: vec![scale.top(); grid.len()] })
    }

    pub fn as_fuzzy(&self) -> &FuzzySet {
        &self.0
    }

    pub fn into_fuzzy(self) -> FuzzySet {
        self.0
    }

    /// The α-cut `{x : u(x) >= j/L}`, never empty.
    pub fn alpha_cut(&self, j: Level) -> Result<Vec<usize>> {
        self.0.cut(j)
    }

    /// Restriction to a sub-grid containing the support.
    pub fn restrict(&self, sub: &SubGrid) -> Result<CompactFuzzySet> {
        Ok(CompactFuzzySet(self.0.restrict_to(sub)?))
    }

    /// Extension by zero from a sub-grid to its parent.
    pub fn extend(&self, sub: &SubGrid) -> Result<CompactFuzzySet> {
        Ok(CompactFuzzySet(self.0.extend_from(sub)?))
    }
}

impl Deref for CompactFuzzySet {
    type Target = FuzzySet;

    fn deref(&self) -> &FuzzySet {
        &self.0
    }
}

impl TryFrom<FuzzySet> for CompactFuzzySet {
    type Error = Error;

    fn try_from(set: FuzzySet) -> Result<Self> {
        CompactFuzzySet::new(set)
    }
}

/// The α-cut of `u` at level `j` (level 0 gives the support).
pub fn alpha_cut(u: &FuzzySet, j: Level) -> Result<Vec<usize>> {
    u.cut(j)
}

/// Pointwise maximum, the fuzzy counterpart of union.
pub fn pointwise_max<'a, I>(sets: I) -> Result<FuzzySet>
where
    I: IntoIterator<Item = &'a FuzzySet>,
{
    let mut iter = sets.into_iter();
    let first = iter.next().ok_or_else(|| Error::InvalidArgument("pointwise_max of an empty list".into()))?;
    let mut out = first.clone();
    for s in iter {
        out.same_domain(s)?;
        for (o, &l) in out.levels.iter_mut().zip(&s.levels) {
            *o = (*o).max(l);
        }
    }
    Ok(out)
}
