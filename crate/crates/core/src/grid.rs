//! Regular grids on axis-aligned boxes in one or two dimensions.
//!
//! A grid with `dims[a]` cells along axis `a` has `dims[a] + 1` nodes on that
//! axis, so both faces of the box are grid nodes. Nodes are numbered with
//! axis 0 varying fastest.

use crate::error::{Error, Result};

/// Highest supported dimension.
pub const MAX_DIM: usize = 2;

/// A point of the ambient space. One-dimensional grids leave the second
/// coordinate at zero.
pub type Point = [f64; MAX_DIM];

/// Snapping treats positions within this many cells of a half-way point as
/// ties, which then go to the lower index.
const TIE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    ndim: usize,
    dims: [usize; MAX_DIM],
    origin: Point,
    extent: Point,
}

impl Grid {
    /// `dims`, `origin` and `extent` must all have length 1 or 2 (the same).
    pub fn new(dims: &[usize], origin: &[f64], extent: &[f64]) -> Result<Self> {
        let ndim = dims.len();
        if ndim == 0 || ndim > MAX_DIM {
            return Err(Error::InvalidGrid(format!("dimension {ndim} not in 1..={MAX_DIM}")));
        }
        if origin.len() != ndim || extent.len() != ndim {
            return Err(Error::InvalidGrid("origin/extent length differs from dims".into()));
        }
        let mut g = Grid { ndim, dims: [0; MAX_DIM], origin: [0.0; MAX_DIM], extent: [0.0; MAX_DIM] };
        for a in 0..ndim {
            if dims[a] == 0 {
                return Err(Error::InvalidGrid(format!("axis {a} has zero cells")));
            }
            if !(extent[a] > 0.0 && extent[a].is_finite()) || !origin[a].is_finite() {
                return Err(Error::InvalidGrid(format!("axis {a} needs finite origin and positive extent")));
            }
            g.dims[a] = dims[a];
            g.origin[a] = origin[a];
            g.extent[a] = extent[a];
        }
        Ok(g)
    }

    /// `[0,1]` split into `cells` cells.
    pub fn unit_interval(cells: usize) -> Result<Self> {
        Self::new(&[cells], &[0.0], &[1.0])
    }

    /// `[0,1]^2` split into `cells × cells` cells.
    pub fn unit_square(cells: usize) -> Result<Self> {
        Self::new(&[cells, cells], &[0.0, 0.0], &[1.0, 1.0])
    }

    pub fn ndim(&self) -> usize {
        self.ndim
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims[..self.ndim]
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin[..self.ndim]
    }

    pub fn extent(&self) -> &[f64] {
        &self.extent[..self.ndim]
    }

    pub fn cell_size(&self, axis: usize) -> f64 {
        if axis < self.ndim {
            self.extent[axis] / self.dims[axis] as f64
        } else {
            0.0
        }
    }

    /// Largest cell side.
    pub fn max_cell(&self) -> f64 {
        (0..self.ndim).map(|a| self.cell_size(a)).fold(0.0, f64::max)
    }

    /// Euclidean length of a cell diagonal.
    pub fn cell_diagonal(&self) -> f64 {
        (0..self.ndim).map(|a| self.cell_size(a).powi(2)).sum::<f64>().sqrt()
    }

    /// Number of nodes along `axis` (1 for unused axes).
    pub fn nodes(&self, axis: usize) -> usize {
        if axis < self.ndim {
            self.dims[axis] + 1
        } else {
            1
        }
    }

    /// Total node count.
    pub fn len(&self) -> usize {
        (0..MAX_DIM).map(|a| self.nodes(a)).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self, idx: usize) -> [usize; MAX_DIM] {
        let n0 = self.nodes(0);
        [idx % n0, idx / n0]
    }

    pub fn index(&self, coords: [usize; MAX_DIM]) -> usize {
        coords[1] * self.nodes(0) + coords[0]
    }

    pub fn point(&self, idx: usize) -> Point {
        let c = self.coords(idx);
        let mut p = [0.0; MAX_DIM];
        for a in 0..self.ndim {
            p[a] = self.origin[a] + c[a] as f64 * self.cell_size(a);
        }
        p
    }

    /// Nearest node to `p`, ties toward the lower index on each axis.
    /// `None` when the nearest node would lie outside the grid.
    pub fn snap(&self, p: Point) -> Option<usize> {
        let mut c = [0usize; MAX_DIM];
        for a in 0..self.ndim {
            let t = (p[a] - self.origin[a]) / self.cell_size(a);
            if !t.is_finite() {
                return None;
            }
            let i = (t - 0.5 - TIE_EPS).ceil();
            if i < 0.0 || i > self.dims[a] as f64 {
                return None;
            }
            c[a] = i as usize;
        }
        Some(self.index(c))
    }

    pub fn domain(&self) -> BoxRegion {
        let mut hi = self.origin;
        for a in 0..self.ndim {
            hi[a] += self.extent[a];
        }
        BoxRegion { ndim: self.ndim, lo: self.origin, hi }
    }

    /// Inclusive node-coordinate range covered by `region`, or `None` when the
    /// region misses every node.
    pub fn node_range(&self, region: &BoxRegion) -> Option<([usize; MAX_DIM], [usize; MAX_DIM])> {
        let mut lo = [0usize; MAX_DIM];
        let mut hi = [0usize; MAX_DIM];
        for a in 0..self.ndim {
            let h = self.cell_size(a);
            let l = ((region.lo[a] - self.origin[a]) / h - TIE_EPS).ceil().max(0.0);
            let u = ((region.hi[a] - self.origin[a]) / h + TIE_EPS).floor().min(self.dims[a] as f64);
            if l > u {
                return None;
            }
            lo[a] = l as usize;
            hi[a] = u as usize;
        }
        Some((lo, hi))
    }

    /// All nodes inside `region`, in index order.
    pub fn nodes_in(&self, region: &BoxRegion) -> Vec<usize> {
        let Some((lo, hi)) = self.node_range(region) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for j in lo[1]..=hi[1] {
            for i in lo[0]..=hi[0] {
                out.push(self.index([i, j]));
            }
        }
        out
    }

    /// The sub-grid spanned by the inclusive node-coordinate box `lo..=hi`.
    pub fn sub_grid(&self, lo: [usize; MAX_DIM], hi: [usize; MAX_DIM]) -> Result<SubGrid> {
        let mut dims = Vec::with_capacity(self.ndim);
        let mut origin = Vec::with_capacity(self.ndim);
        let mut extent = Vec::with_capacity(self.ndim);
        for a in 0..self.ndim {
            if lo[a] >= hi[a] || hi[a] > self.dims[a] {
                return Err(Error::InvalidGrid(format!("sub-grid range {}..={} invalid on axis {a}", lo[a], hi[a])));
            }
            let h = self.cell_size(a);
            dims.push(hi[a] - lo[a]);
            origin.push(self.origin[a] + lo[a] as f64 * h);
            extent.push((hi[a] - lo[a]) as f64 * h);
        }
        let grid = Grid::new(&dims, &origin, &extent)?;
        Ok(SubGrid { parent: *self, grid, offset: lo })
    }
}

/// Axis-aligned closed box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxRegion {
    pub ndim: usize,
    pub lo: Point,
    pub hi: Point,
}

impl BoxRegion {
    pub fn new(ndim: usize, lo: Point, hi: Point) -> Self {
        BoxRegion { ndim, lo, hi }
    }

    pub fn point(ndim: usize, p: Point) -> Self {
        BoxRegion { ndim, lo: p, hi: p }
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        (0..self.ndim).all(|a| p[a] >= self.lo[a] - tol && p[a] <= self.hi[a] + tol)
    }

    pub fn contains_box(&self, other: &BoxRegion, tol: f64) -> bool {
        self.contains(&other.lo, tol) && self.contains(&other.hi, tol)
    }

    pub fn corners(&self) -> Vec<Point> {
        if self.ndim == 1 {
            vec![[self.lo[0], 0.0], [self.hi[0], 0.0]]
        } else {
            vec![
                [self.lo[0], self.lo[1]],
                [self.hi[0], self.lo[1]],
                [self.lo[0], self.hi[1]],
                [self.hi[0], self.hi[1]],
            ]
        }
    }

    pub fn center(&self) -> Point {
        let mut c = [0.0; MAX_DIM];
        for a in 0..self.ndim {
            c[a] = 0.5 * (self.lo[a] + self.hi[a]);
        }
        c
    }

    /// Smallest box holding `self` and every point of `pts`.
    pub fn hull_with(&self, pts: &[Point]) -> BoxRegion {
        let mut out = *self;
        for p in pts {
            for a in 0..self.ndim {
                out.lo[a] = out.lo[a].min(p[a]);
                out.hi[a] = out.hi[a].max(p[a]);
            }
        }
        out
    }

    pub fn intersect(&self, other: &BoxRegion) -> Option<BoxRegion> {
        let mut out = *self;
        for a in 0..self.ndim {
            out.lo[a] = self.lo[a].max(other.lo[a]);
            out.hi[a] = self.hi[a].min(other.hi[a]);
            if out.lo[a] > out.hi[a] {
                return None;
            }
        }
        Some(out)
    }

    /// Euclidean diameter.
    pub fn diameter(&self) -> f64 {
        (0..self.ndim).map(|a| (self.hi[a] - self.lo[a]).powi(2)).sum::<f64>().sqrt()
    }
}

/// A box of nodes cut out of a parent grid, with its own node numbering.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubGrid {
    parent: Grid,
    grid: Grid,
    offset: [usize; MAX_DIM],
}

impl SubGrid {
    pub fn parent(&self) -> &Grid {
        &self.parent
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn to_parent(&self, idx: usize) -> usize {
        let c = self.grid.coords(idx);
        self.parent.index([c[0] + self.offset[0], c[1] + self.offset[1]])
    }

    pub fn from_parent(&self, idx: usize) -> Option<usize> {
        let c = self.parent.coords(idx);
        let mut s = [0usize; MAX_DIM];
        for a in 0..MAX_DIM {
            s[a] = c[a].checked_sub(self.offset[a])?;
            if s[a] >= self.grid.nodes(a) {
                return None;
            }
        }
        Some(self.grid.index(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_interval_has_both_ends() {
        let g = Grid::unit_interval(64).unwrap();
        assert_eq!(g.len(), 65);
        assert_eq!(g.point(0), [0.0, 0.0]);
        assert_eq!(g.point(64), [1.0, 0.0]);
        assert_eq!(g.snap([1.0, 0.0]), Some(64));
    }

    #[test]
    fn snapping_ties_go_low() {
        let g = Grid::unit_interval(4).unwrap();
        // 0.125 is half way between nodes 0 and 1
        assert_eq!(g.snap([0.125, 0.0]), Some(0));
        assert_eq!(g.snap([0.126, 0.0]), Some(1));
        assert_eq!(g.snap([0.375, 0.0]), Some(1));
        assert_eq!(g.snap([1.2, 0.0]), None);
        assert_eq!(g.snap([-0.1, 0.0]), Some(0));
    }

    #[test]
    fn coords_round_trip() {
        let g = Grid::new(&[3, 5], &[0.0, 1.0], &[3.0, 2.5]).unwrap();
        assert_eq!(g.len(), 24);
        for i in 0..g.len() {
            assert_eq!(g.index(g.coords(i)), i);
            assert_eq!(g.snap(g.point(i)), Some(i));
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(&[0], &[0.0], &[1.0]).is_err());
        assert!(Grid::new(&[4], &[0.0], &[-1.0]).is_err());
        assert!(Grid::new(&[4, 4, 4], &[0.0; 3], &[1.0; 3]).is_err());
    }

    #[test]
    fn sub_grid_maps_nodes() {
        let g = Grid::unit_square(8).unwrap();
        let s = g.sub_grid([2, 2], [6, 6]).unwrap();
        assert_eq!(s.grid().len(), 25);
        for i in 0..s.grid().len() {
            let p = s.to_parent(i);
            assert_eq!(s.from_parent(p), Some(i));
            assert_eq!(s.grid().point(i), g.point(p));
        }
        assert_eq!(s.from_parent(0), None);
    }

    #[test]
    fn nodes_in_region() {
        let g = Grid::unit_square(4).unwrap();
        let r = BoxRegion::new(2, [0.0, 0.0], [0.5, 0.5]);
        assert_eq!(g.nodes_in(&r).len(), 9);
    }
}
