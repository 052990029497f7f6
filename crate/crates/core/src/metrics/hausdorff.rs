//! Hausdorff distance between finite point sets.
//!
//! The directed term uses the early-break scan: the inner minimum stops as
//! soon as it drops to the running maximum, since that point can no longer
//! raise the result. Large Euclidean node sets go through a nearest-node
//! transform instead.

use crate::error::{Error, Result};
use crate::grid::{Grid, Point};
use crate::metrics::nearest::nearest_nodes;
use crate::metrics::Pseudometric;

/// Source-times-target count above which Euclidean node sets use the
/// nearest-node transform.
pub(crate) const TRANSFORM_THRESHOLD: usize = 1 << 14;

/// `max_{x∈a} min_{y∈b} d(x,y)`; 0 when `a` is empty, +∞ when only `b` is.
pub fn directed_hausdorff(d: &Pseudometric, a: &[Point], b: &[Point]) -> f64 {
    directed_scan(a.iter().map(|x| (x, false)), b, |x, y| d.eval(x, y))
}

/// Hausdorff distance with the convention `d_H(∅,∅) = 0`.
pub fn hausdorff(d: &Pseudometric, a: &[Point], b: &[Point]) -> Result<f64> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Ok(0.0),
        (false, false) => Ok(directed_hausdorff(d, a, b).max(directed_hausdorff(d, b, a))),
        _ => Err(Error::OneSidedEmpty),
    }
}

/// Hausdorff distance between two sets of grid nodes.
pub fn hausdorff_nodes(d: &Pseudometric, grid: &Grid, a: &[usize], b: &[usize]) -> Result<f64> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(0.0),
        (false, false) => {}
        _ => return Err(Error::OneSidedEmpty),
    }
    let mut in_a = vec![false; grid.len()];
    let mut in_b = vec![false; grid.len()];
    a.iter().for_each(|&i| in_a[i] = true);
    b.iter().for_each(|&i| in_b[i] = true);
    Ok(directed_nodes(d, grid, a, b, &in_b).max(directed_nodes(d, grid, b, a, &in_a)))
}

/// `max_{x∈a} min_{y∈b} d(x,y)` over nodes, `in_b` marking members of `b`.
fn directed_nodes(d: &Pseudometric, grid: &Grid, a: &[usize], b: &[usize], in_b: &[bool]) -> f64 {
    if *d == Pseudometric::Euclidean && a.len().saturating_mul(b.len()) > TRANSFORM_THRESHOLD {
        let near = nearest_nodes(grid, b).expect("b is nonempty");
        return a
            .iter()
            .filter(|&&x| !in_b[x])
            .map(|&x| d.eval(&grid.point(x), &grid.point(near[x] as usize)))
            .fold(0.0, f64::max);
    }
    let pa: Vec<Point> = a.iter().map(|&i| grid.point(i)).collect();
    let pb: Vec<Point> = b.iter().map(|&i| grid.point(i)).collect();
    directed_scan(a.iter().zip(&pa).map(|(&i, p)| (p, in_b[i])), &pb, |x, y| d.eval(x, y))
}

/// Early-break directed scan. Sources flagged `true` are known to have a
/// zero-distance partner and are skipped.
pub(crate) fn directed_scan<'a, P: 'a, I, F>(sources: I, targets: &[P], dist: F) -> f64
where
    I: Iterator<Item = (&'a P, bool)>,
    F: Fn(&P, &P) -> f64,
{
    let mut cmax = 0.0f64;
    for (x, covered) in sources {
        if covered {
            continue;
        }
        let mut cmin = f64::INFINITY;
        for y in targets {
            let v = dist(x, y);
            if v < cmin {
                cmin = v;
                if cmin <= cmax {
                    break;
                }
            }
        }
        if cmin > cmax {
            cmax = cmin;
        }
    }
    cmax
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_sets_are_at_zero() {
        let a = vec![[0.0, 0.0], [1.0, 2.0], [3.0, -1.0]];
        assert_eq!(hausdorff(&Pseudometric::Euclidean, &a, &a).unwrap(), 0.0);
    }

    #[test]
    fn point_vs_interval() {
        let g = Grid::unit_interval(16).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        assert_eq!(hausdorff_nodes(&Pseudometric::Euclidean, &g, &[0], &all).unwrap(), 1.0);
    }

    #[test]
    fn empty_conventions() {
        let d = Pseudometric::Euclidean;
        assert_eq!(hausdorff(&d, &[], &[]).unwrap(), 0.0);
        assert_eq!(hausdorff(&d, &[[0.0, 0.0]], &[]).unwrap_err(), Error::OneSidedEmpty);
    }

    #[test]
    fn transform_agrees_with_scan() {
        let g = Grid::unit_square(150).unwrap();
        let a: Vec<usize> = (0..g.len()).filter(|i| i % 7 == 0 || i % 11 == 3).collect();
        let b: Vec<usize> = (0..g.len()).filter(|i| i % 13 == 5).collect();
        assert!(a.len() * b.len() > TRANSFORM_THRESHOLD);
        let d = Pseudometric::Euclidean;
        let pa: Vec<Point> = a.iter().map(|&i| g.point(i)).collect();
        let pb: Vec<Point> = b.iter().map(|&i| g.point(i)).collect();
        let fast = hausdorff_nodes(&d, &g, &a, &b).unwrap();
        let slow = hausdorff(&d, &pa, &pb).unwrap();
        assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
    }

    #[test]
    fn asymmetric_directed_terms() {
        let d = Pseudometric::Euclidean;
        let a = vec![[0.0, 0.0]];
        let b = vec![[0.0, 0.0], [3.0, 4.0]];
        assert_eq!(directed_hausdorff(&d, &a, &b), 0.0);
        assert_eq!(directed_hausdorff(&d, &b, &a), 5.0);
        assert_eq!(hausdorff(&d, &a, &b).unwrap(), 5.0);
    }
}
