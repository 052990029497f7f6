//! Grey-level maps as monotone lookup tables on the level scale.
//!
//! A table `g` of length `L+1` encodes the step function
//! `ϱ(t) = g[⌊tL⌋]/L`, which is right continuous by construction.

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Level, LevelScale};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreyLevelMap {
    table: Vec<Level>,
}

impl GreyLevelMap {
    /// Validates `g[0] = 0`, monotonicity and range.
    pub fn new(table: Vec<Level>) -> Result<Self> {
        if table.len() < 2 {
            return Err(Error::InvalidGreyMap("table needs at least two entries".into()));
        }
        let top = (table.len() - 1) as u32;
        if top > Level::MAX as u32 {
            return Err(Error::InvalidGreyMap("too many levels".into()));
        }
        if table[0] != 0 {
            return Err(Error::InvalidGreyMap(format!("ϱ(0)=0 violated: g0 = {}", table[0])));
        }
        if let Some(w) = table.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidGreyMap(format!("table decreases at g{}", w + 1)));
        }
        if let Some(&bad) = table.iter().find(|&&g| g as u32 > top) {
            return Err(Error::InvalidGreyMap(format!("entry {bad} exceeds L = {top}")));
        }
        Ok(GreyLevelMap { table })
    }

    pub fn identity(scale: LevelScale) -> Self {
        GreyLevelMap { table: (0..=scale.top()).collect() }
    }

    /// `g[j] = ⌊j/2⌋`.
    pub fn half_scale(scale: LevelScale) -> Self {
        GreyLevelMap { table: (0..=scale.top()).map(|j| j / 2).collect() }
    }

    pub fn scale(&self) -> LevelScale {
        LevelScale::new((self.table.len() - 1) as Level).expect("validated table")
    }

    pub fn table(&self) -> &[Level] {
        &self.table
    }

    pub fn apply(&self, j: Level) -> Level {
        self.table[j as usize]
    }

    /// `ϱ(1)` as a level.
    pub fn top_value(&self) -> Level {
        *self.table.last().expect("nonempty table")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GreyLevelMap) -> Result<GreyLevelMap> {
        if self.table.len() != inner.table.len() {
            return Err(Error::ScaleMismatch(self.scale().top(), inner.scale().top()));
        }
        Ok(GreyLevelMap { table: inner.table.iter().map(|&j| self.table[j as usize]).collect() })
    }

    /// Resample onto another scale: `g'[j'] = ⌊L'·ϱ(j'/L')⌋`.
    pub fn rescale(&self, scale: LevelScale) -> GreyLevelMap {
        let old = self.scale();
        let table = (0..=scale.top())
            .map(|j| {
                let t = old.quantize(scale.alpha(j));
                scale.quantize(old.alpha(self.table[t as usize]))
            })
            .collect();
        GreyLevelMap { table }
    }
}

/// The quantized threshold `β(α)`: the least level `m` with `ϱ(m) >= j`, or
/// `None` when `j > ϱ(1)` (the cut is empty). At `j = 0` this is the
/// threshold of strict positivity.
pub fn grey_threshold(rho: &GreyLevelMap, j: Level) -> Result<Option<Level>> {
    rho.scale().check(j as u32)?;
    let want = j.max(1);
    if want > rho.top_value() {
        return Ok(None);
    }
    // nondecreasing table: first index reaching `want`
    let m = rho.table.partition_point(|&g| g < want);
    Ok(Some(m as Level))
}

/// Pointwise `ϱ∘u`. The result may be non-normal.
pub fn apply_grey(rho: &GreyLevelMap, u: &FuzzySet) -> Result<FuzzySet> {
    if rho.scale() != u.scale() {
        return Err(Error::ScaleMismatch(rho.scale().top(), u.scale().top()));
    }
    let levels = u.levels().iter().map(|&l| rho.apply(l)).collect();
    FuzzySet::from_levels(*u.grid(), u.scale(), levels)
}

/// An admissible family of grey-level maps on a shared scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreySystem {
    maps: Vec<GreyLevelMap>,
}

impl GreySystem {
    pub fn new(maps: Vec<GreyLevelMap>) -> Result<Self> {
        let first = maps.first().ok_or_else(|| Error::InvalidGreyMap("empty grey system".into()))?;
        let scale = first.scale();
        if let Some(m) = maps.iter().find(|m| m.scale() != scale) {
            return Err(Error::ScaleMismatch(scale.top(), m.scale().top()));
        }
        if !maps.iter().any(|m| m.top_value() == scale.top()) {
            return Err(Error::NotAdmissible);
        }
        Ok(GreySystem { maps })
    }

    pub fn identity(scale: LevelScale, k: usize) -> Self {
        GreySystem { maps: vec![GreyLevelMap::identity(scale); k] }
    }

    pub fn maps(&self) -> &[GreyLevelMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn scale(&self) -> LevelScale {
        self.maps[0].scale()
    }

    pub fn rescale(&self, scale: LevelScale) -> Result<GreySystem> {
        GreySystem::new(self.maps.iter().map(|m| m.rescale(scale)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::CompactFuzzySet;
    use crate::grid::Grid;

    fn scale() -> LevelScale {
        LevelScale::new(8).unwrap()
    }

    #[test]
    fn identity_threshold() {
        let id = GreyLevelMap::identity(scale());
        for j in 1..=8 {
            assert_eq!(grey_threshold(&id, j).unwrap(), Some(j));
        }
        assert_eq!(grey_threshold(&id, 0).unwrap(), Some(1));
    }

    #[test]
    fn threshold_above_top_is_empty() {
        let g = GreyLevelMap::new(vec![0, 1, 2, 3, 4, 5, 6, 7, 7]).unwrap();
        assert_eq!(grey_threshold(&g, 8).unwrap(), None);
        assert_eq!(grey_threshold(&g, 7).unwrap(), Some(7));
        assert!(grey_threshold(&g, 9).is_err());
    }

    #[test]
    fn zero_map_has_no_positive_threshold() {
        let z = GreyLevelMap::new(vec![0; 9]).unwrap();
        assert_eq!(grey_threshold(&z, 0).unwrap(), None);
    }

    #[test]
    fn half_scale_on_dirac() {
        let g = Grid::unit_interval(4).unwrap();
        let u = CompactFuzzySet::dirac(g, scale(), 2).unwrap();
        let out = apply_grey(&GreyLevelMap::half_scale(scale()), &u).unwrap();
        assert_eq!(out.level(2), 4);
        assert_eq!(out.support(), vec![2]);
        let same = apply_grey(&GreyLevelMap::identity(scale()), &u).unwrap();
        assert_eq!(&same, u.as_fuzzy());
    }

    #[test]
    fn validation_messages() {
        let e = GreyLevelMap::new(vec![1, 1, 2]).unwrap_err();
        assert!(e.to_string().contains("ϱ(0)=0"));
        assert!(GreyLevelMap::new(vec![0, 2, 1]).is_err());
        assert!(GreyLevelMap::new(vec![0, 1, 3]).is_err());
        let s = LevelScale::new(2).unwrap();
        let half = GreyLevelMap::half_scale(s);
        let e = GreySystem::new(vec![half]).unwrap_err();
        assert!(e.to_string().contains("ϱ_j(1)=1"));
    }

    #[test]
    fn rescale_keeps_identity_and_admissibility() {
        let id = GreyLevelMap::identity(LevelScale::new(4).unwrap());
        assert_eq!(id.rescale(LevelScale::new(16).unwrap()).top_value(), 16);
        let half = GreyLevelMap::half_scale(LevelScale::new(16).unwrap());
        let r = half.rescale(LevelScale::new(4).unwrap());
        assert_eq!(r.table(), &[0, 0, 1, 1, 2]);
    }

    #[test]
    fn compose_tables() {
        let s = scale();
        let h = GreyLevelMap::half_scale(s);
        let hh = h.compose(&h).unwrap();
        assert_eq!(hh.apply(8), 2);
        assert_eq!(hh.apply(3), 0);
    }
}
