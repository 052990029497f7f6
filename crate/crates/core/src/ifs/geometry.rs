//! Invariant boxes and fiber diameters for affine systems.

use crate::codespace::Address;
use crate::error::{Error, Result};
use crate::grid::{BoxRegion, Grid, Point};
use crate::ifs::ContractionMap;
use crate::metrics::Pseudometric;

/// Growth steps tried before giving up.
pub const INVARIANT_BOX_STEPS: usize = 64;

/// Nodes sampled per axis by [`fiber_diameter`].
const FIBER_SAMPLES: usize = 17;

const CONTAIN_TOL: f64 = 1e-12;

fn maps_into(maps: &[ContractionMap], b: &BoxRegion) -> bool {
    b.corners().iter().all(|&c| maps.iter().all(|m| b.contains(&m.apply(c), CONTAIN_TOL)))
}

/// Smallest grid-aligned box containing `b`, clipped to the grid domain.
fn snap_outward(grid: &Grid, b: &BoxRegion) -> Option<BoxRegion> {
    let dom = grid.domain();
    let mut out = b.intersect(&dom)?;
    for a in 0..grid.ndim() {
        let h = grid.cell_size(a);
        let o = grid.origin()[a];
        let lo = ((out.lo[a] - o) / h + 1e-9).floor().max(0.0);
        let hi = ((out.hi[a] - o) / h - 1e-9).ceil().min(grid.dims()[a] as f64);
        out.lo[a] = o + lo * h;
        out.hi[a] = o + hi.max(lo) * h;
    }
    Some(out)
}

/// A grid-aligned box `B` inside the grid domain with `f_i(B) ⊆ B` for every
/// map. Affine images of a box are the hulls of the corner images, so the
/// corner check is exact up to rounding.
pub fn invariant_box(maps: &[ContractionMap], seed: &BoxRegion, grid: &Grid) -> Result<BoxRegion> {
    if maps.is_empty() {
        return Err(Error::InvalidSystem("at least one map is required".into()));
    }
    let mut b = *seed;
    for _ in 0..INVARIANT_BOX_STEPS {
        if let Some(s) = snap_outward(grid, &b) {
            if maps_into(maps, &s) {
                return Ok(s);
            }
        }
        let images: Vec<Point> =
            b.corners().iter().flat_map(|&c| maps.iter().map(move |m| m.apply(c))).collect();
        let mut grown = b.hull_with(&images);
        for a in 0..grown.ndim {
            let pad = (grown.hi[a] - grown.lo[a]) / 8.0;
            grown.lo[a] -= pad;
            grown.hi[a] += pad;
        }
        b = grown;
    }
    Err(Error::NoInvariantBox(INVARIANT_BOX_STEPS))
}

/// Up to 17 evenly spaced grid nodes per axis of `b`, corners included.
pub fn box_sample(grid: &Grid, b: &BoxRegion) -> Vec<Point> {
    let Some((lo, hi)) = grid.node_range(b) else {
        return Vec::new();
    };
    let axis = |a: usize| -> Vec<usize> {
        let span = hi[a] - lo[a];
        let n = span.min(FIBER_SAMPLES - 1);
        let mut v: Vec<usize> = (0..=n).map(|i| lo[a] + (i * span).checked_div(n).unwrap_or(0)).collect();
        v.dedup();
        v
    };
    let xs = axis(0);
    let ys = if grid.ndim() == 2 { axis(1) } else { vec![0] };
    ys.iter().flat_map(|&j| xs.iter().map(move |&i| grid.point(grid.index([i, j])))).collect()
}

/// Diameter under `d` of the snapped image of a grid sample of `b` through
/// `f_{σ1} ∘ … ∘ f_{σn}`.
pub fn fiber_diameter(
    maps: &[ContractionMap],
    prefix: &Address,
    b: &BoxRegion,
    grid: &Grid,
    d: &Pseudometric,
) -> Result<f64> {
    let f = prefix.compose(maps)?;
    let pts: Vec<Point> = box_sample(grid, b)
        .into_iter()
        .map(|p| {
            let q = f.apply(p);
            grid.snap(q).map(|i| grid.point(i)).unwrap_or(q)
        })
        .collect();
    let mut diam = 0.0f64;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            diam = diam.max(d.eval(p, q));
        }
    }
    Ok(diam)
}
