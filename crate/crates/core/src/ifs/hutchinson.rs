//! Crisp and fuzzy Hutchinson operators on a grid.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuzzy::{pointwise_max, CompactFuzzySet, FuzzySet, LevelScale};
use crate::grey::{apply_grey, grey_threshold, GreySystem};
use crate::grid::Grid;
use crate::ifs::ContractionMap;
use crate::zadeh::{zadeh_image, SnappedMap};

/// A fuzzy IFS: contraction maps paired with an admissible grey system.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyIfs {
    maps: Vec<ContractionMap>,
    greys: GreySystem,
}

impl FuzzyIfs {
    pub fn new(maps: Vec<ContractionMap>, greys: GreySystem) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidSystem("at least one map is required".into()));
        }
        if maps.len() != greys.len() {
            return Err(Error::InvalidSystem(format!("{} maps but {} grey maps", maps.len(), greys.len())));
        }
        Ok(FuzzyIfs { maps, greys })
    }

    pub fn maps(&self) -> &[ContractionMap] {
        &self.maps
    }

    pub fn greys(&self) -> &GreySystem {
        &self.greys
    }

    pub fn k(&self) -> usize {
        self.maps.len()
    }

    pub fn scale(&self) -> LevelScale {
        self.greys.scale()
    }

    /// The operator on `grid`, with every map pre-snapped.
    pub fn on_grid(&self, grid: Grid) -> HutchinsonOperator<'_> {
        HutchinsonOperator { ifs: self, grid, snapped: snap_maps(&self.maps, grid) }
    }
}

fn snap_maps(maps: &[ContractionMap], grid: Grid) -> Vec<SnappedMap> {
    maps.par_iter().enumerate().map(|(i, m)| SnappedMap::new(grid, i, |p| m.apply(p))).collect()
}

/// A fuzzy IFS bound to a grid.
#[derive(Clone, Debug)]
pub struct HutchinsonOperator<'a> {
    ifs: &'a FuzzyIfs,
    grid: Grid,
    snapped: Vec<SnappedMap>,
}

impl HutchinsonOperator<'_> {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn ifs(&self) -> &FuzzyIfs {
        self.ifs
    }

    pub fn snapped(&self) -> &[SnappedMap] {
        &self.snapped
    }

    /// `S(K) = ∪ f_i(K)`.
    pub fn crisp(&self, nodes: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for f in &self.snapped {
            out.extend(f.image(nodes)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn check(&self, u: &FuzzySet) -> Result<()> {
        if u.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        if u.scale() != self.ifs.scale() {
            return Err(Error::ScaleMismatch(self.ifs.scale().top(), u.scale().top()));
        }
        Ok(())
    }

    /// Level-by-level assembly: `[S_F(u)]^j = ∪_i f_i([u]^{β_i(j)})`, with
    /// branches whose threshold is empty contributing nothing.
    pub fn apply_cuts(&self, u: &CompactFuzzySet) -> Result<CompactFuzzySet> {
        self.check(u)?;
        let mut out = FuzzySet::zeros(self.grid, u.scale());
        for j in 1..=u.scale().top() {
            for (f, rho) in self.snapped.iter().zip(self.ifs.greys.maps()) {
                let Some(beta) = grey_threshold(rho, j)? else { continue };
                for y in f.image(&u.cut_unchecked(beta))? {
                    out.raise(y, j)?;
                }
            }
        }
        CompactFuzzySet::new(out)
    }

    /// `S_F(u) = max_i ϱ_i ∘ f_i[u]`.
    pub fn apply_pointwise(&self, u: &CompactFuzzySet) -> Result<CompactFuzzySet> {
        self.check(u)?;
        let branches = self
            .snapped
            .par_iter()
            .zip(self.ifs.greys.maps().par_iter())
            .map(|(f, rho)| apply_grey(rho, &zadeh_image(f, u)?))
            .collect::<Result<Vec<FuzzySet>>>()?;
        CompactFuzzySet::new(pointwise_max(&branches)?)
    }
}

/// Crisp Hutchinson operator on a set of grid nodes.
pub fn hutchinson(maps: &[ContractionMap], grid: &Grid, nodes: &[usize]) -> Result<Vec<usize>> {
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("Hutchinson operator needs a nonempty set".into()));
    }
    let mut out = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        for &x in nodes {
            let p = m.apply(grid.point(x));
            out.push(grid.snap(p).ok_or(Error::Escape { map: i, point: grid.point(x) })?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Fuzzy Hutchinson operator assembled from α-cuts.
pub fn fuzzy_hutchinson_cuts(sf: &FuzzyIfs, u: &CompactFuzzySet) -> Result<CompactFuzzySet> {
    sf.on_grid(*u.grid()).apply_cuts(u)
}

/// Fuzzy Hutchinson operator as a pointwise maximum of grey-modulated images.
pub fn fuzzy_hutchinson_pointwise(sf: &FuzzyIfs, u: &CompactFuzzySet) -> Result<CompactFuzzySet> {
    sf.on_grid(*u.grid()).apply_pointwise(u)
}

/// Iterate the crisp operator from `start` until the node set repeats.
pub fn crisp_fixed_set(op: &HutchinsonOperator<'_>, start: &[usize], max_iter: usize) -> Result<Vec<usize>> {
    let mut cur = start.to_vec();
    for _ in 0..max_iter {
        let next = op.crisp(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::NoConvergence { trace: Vec::new(), trace_dh: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grey::GreyLevelMap;
    use crate::ifs::{presets, AffineMap};

    #[test]
    fn identity_system_is_identity() {
        let g = Grid::unit_square(8).unwrap();
        let s = LevelScale::new(4).unwrap();
        let sf = FuzzyIfs::new(vec![ContractionMap::new(AffineMap::identity())], GreySystem::identity(s, 1)).unwrap();
        let u = CompactFuzzySet::new(FuzzySet::from_entries(g, s, &[(5, 4), (20, 2), (40, 1)]).unwrap()).unwrap();
        assert_eq!(fuzzy_hutchinson_cuts(&sf, &u).unwrap(), u);
        assert_eq!(fuzzy_hutchinson_pointwise(&sf, &u).unwrap(), u);
    }

    #[test]
    fn halving_moves_dirac_one_step() {
        let g = Grid::unit_interval(16).unwrap();
        let s = LevelScale::new(4).unwrap();
        let sf = presets::halving(s);
        let u = CompactFuzzySet::dirac(g, s, 16).unwrap();
        let want = CompactFuzzySet::dirac(g, s, 8).unwrap();
        assert_eq!(fuzzy_hutchinson_cuts(&sf, &u).unwrap(), want);
        assert_eq!(fuzzy_hutchinson_pointwise(&sf, &u).unwrap(), want);
        assert_eq!(hutchinson(sf.maps(), &g, &[16]).unwrap(), vec![8]);
    }

    #[test]
    fn duplicated_branch_changes_nothing() {
        let g = Grid::unit_square(8).unwrap();
        let s = LevelScale::new(4).unwrap();
        let m = ContractionMap::new(AffineMap::toward(0.5, [1.0, 0.0]));
        let rho = GreyLevelMap::identity(s);
        let one = FuzzyIfs::new(vec![m.clone()], GreySystem::new(vec![rho.clone()]).unwrap()).unwrap();
        let two = FuzzyIfs::new(vec![m.clone(), m], GreySystem::new(vec![rho.clone(), rho]).unwrap()).unwrap();
        let u = CompactFuzzySet::new(FuzzySet::from_entries(g, s, &[(3, 4), (60, 2)]).unwrap()).unwrap();
        assert_eq!(fuzzy_hutchinson_pointwise(&one, &u).unwrap(), fuzzy_hutchinson_pointwise(&two, &u).unwrap());
    }

    #[test]
    fn sierpinski_vertices() {
        let g = Grid::unit_square(8).unwrap();
        let sf = presets::sierpinski(GreySystem::identity(LevelScale::new(2).unwrap(), 3));
        let v: Vec<usize> = presets::SIERPINSKI_VERTICES.iter().map(|p| g.snap(*p).unwrap()).collect();
        let img = hutchinson(sf.maps(), &g, &v).unwrap();
        // three vertices plus three edge midpoints
        let mut want = v.clone();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (p, q) = (presets::SIERPINSKI_VERTICES[i], presets::SIERPINSKI_VERTICES[j]);
            want.push(g.snap([(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0]).unwrap());
        }
        want.sort_unstable();
        assert_eq!(img, want);
    }

    #[test]
    fn escape_is_an_error() {
        let g = Grid::unit_interval(4).unwrap();
        let maps = vec![ContractionMap::new(AffineMap::line(0.5, 0.8))];
        assert!(matches!(hutchinson(&maps, &g, &[4]), Err(Error::Escape { map: 0, .. })));
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let s = LevelScale::new(2).unwrap();
        let maps = vec![ContractionMap::new(AffineMap::identity()); 2];
        assert!(FuzzyIfs::new(maps, GreySystem::identity(s, 3)).is_err());
    }
}
