//! Distances between quantized fuzzy sets.
//!
//! The hypograph distances work on the product `X × [0,1]` with the metric
//! `max(d(x,x'), |α−α'|)`. For a point `(x, α)` of `hypo(u)` the nearest
//! point of `hypo(v)` above a node `y` sits at height `min(α, v(y))`, so the
//! directed term reduces to a scan over supports without expanding levels.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Level};
use crate::grid::Point;
use crate::metrics::hausdorff::{hausdorff_nodes, TRANSFORM_THRESHOLD};
use crate::metrics::nearest::nearest_nodes;
use crate::metrics::Pseudometric;

/// A point of `X × [0,1]`.
pub type HypoPoint = (Point, f64);

/// `max(d(x,x'), |α−α'|)`
pub fn product_distance(d: &Pseudometric, p: &HypoPoint, q: &HypoPoint) -> f64 {
    d.eval(&p.0, &q.0).max((p.1 - q.1).abs())
}

/// `d_HF(u,v) = max_j d_H([u]^j, [v]^j)`, exact on the quantized scale.
pub fn fuzzy_hausdorff(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet) -> Result<f64> {
    u.same_domain(v)?;
    let grid = *u.grid();
    // the level-0 cut (support) coincides with the level-1 cut
    let per_level: Vec<f64> = (1..=u.scale().top())
        .into_par_iter()
        .map(|j| hausdorff_nodes(d, &grid, &u.cut_unchecked(j), &v.cut_unchecked(j)))
        .collect::<Result<_>>()?;
    Ok(per_level.into_iter().fold(0.0, f64::max))
}

/// Points `(x, j/L)` for `x` in the support and `0 <= j <= level(x)`.
pub fn hypo_points(u: &FuzzySet) -> Vec<HypoPoint> {
    let s = u.scale();
    u.support()
        .into_iter()
        .flat_map(|x| {
            let p = u.grid().point(x);
            (0..=u.level(x)).map(move |j| (p, s.alpha(j)))
        })
        .collect()
}

/// Base plane `X × {0}` over every grid node.
pub fn base_plane(u: &FuzzySet) -> Vec<HypoPoint> {
    (0..u.grid().len()).map(|i| (u.grid().point(i), 0.0)).collect()
}

/// `d_h(u,v) = d_H(hypo(u), hypo(v))`.
pub fn hypo_distance(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet) -> Result<f64> {
    u.same_domain(v)?;
    match (u.height() == 0, v.height() == 0) {
        (true, true) => Ok(0.0),
        (false, false) => Ok(directed_hypo(d, u, v, false).max(directed_hypo(d, v, u, false))),
        _ => Err(Error::OneSidedEmpty),
    }
}

/// `d_H(hypo_0(u), hypo_0(v))` with `hypo_0(u) = hypo(u) ∪ (X × {0})`.
pub fn hypo0_distance(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet) -> Result<f64> {
    u.same_domain(v)?;
    Ok(directed_hypo(d, u, v, true).max(directed_hypo(d, v, u, true)))
}

fn directed_hypo(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet, with_base: bool) -> f64 {
    let sources = u.support();
    let targets = v.support();
    if *d == Pseudometric::Euclidean && sources.len().saturating_mul(targets.len()) > TRANSFORM_THRESHOLD {
        return directed_hypo_transform(d, u, v, &sources, with_base);
    }
    let grid = u.grid();
    let top = u.scale().top() as f64;
    let targets: Vec<(Point, Level)> = targets.into_iter().map(|y| (grid.point(y), v.level(y))).collect();
    let mut cmax = 0.0f64;
    for x in sources {
        let lu = u.level(x);
        if v.level(x) >= lu {
            continue;
        }
        let px = grid.point(x);
        // with the base plane, (x, 0) is always available at height gap lu
        let mut cmin = if with_base { lu as f64 / top } else { f64::INFINITY };
        if cmin <= cmax {
            continue;
        }
        for (py, lv) in &targets {
            let gap = lu.saturating_sub(*lv) as f64 / top;
            let val = d.eval(&px, py).max(gap);
            if val < cmin {
                cmin = val;
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

/// Same value as the scan: the nearest target at gap at most `(l − m)/L` is
/// a nearest node of the cut `[v]^m`, so the inner minimum runs over levels.
fn directed_hypo_transform(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet, sources: &[usize], with_base: bool) -> f64 {
    let grid = u.grid();
    let top = u.scale().top() as f64;
    let hmax = u.height();
    let near: Vec<Option<Vec<u32>>> =
        (1..=hmax).into_par_iter().map(|m| nearest_nodes(grid, &v.cut_unchecked(m))).collect();
    sources
        .par_iter()
        .map(|&x| {
            let lu = u.level(x);
            if v.level(x) >= lu {
                return 0.0;
            }
            let px = grid.point(x);
            let mut cmin = if with_base { lu as f64 / top } else { f64::INFINITY };
            for m in (1..=lu).rev() {
                let gap = (lu - m) as f64 / top;
                if gap >= cmin {
                    break;
                }
                if let Some(table) = &near[m as usize - 1] {
                    let val = d.eval(&px, &grid.point(table[x] as usize)).max(gap);
                    cmin = cmin.min(val);
                }
            }
            cmin
        })
        .reduce(|| 0.0, f64::max)
}

/// `sup_x |u(x) − v(x)|`, a multiple of `1/L`.
pub fn linf_distance(u: &FuzzySet, v: &FuzzySet) -> Result<f64> {
    u.same_domain(v)?;
    let m = u.levels().iter().zip(v.levels()).map(|(a, b)| a.abs_diff(*b)).max().unwrap_or(0);
    Ok(u.scale().alpha(m))
}

/// `|u(x) − v(x)|` at one node.
pub fn pointwise_gap(u: &FuzzySet, v: &FuzzySet, x: usize) -> Result<f64> {
    u.same_domain(v)?;
    if x >= u.grid().len() {
        return Err(Error::InvalidArgument(format!("node {x} outside grid")));
    }
    Ok(u.scale().alpha(u.level(x).abs_diff(v.level(x))))
}

/// Distances selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    Dhf,
    Dh,
    Dh0,
    Dinf,
    /// Hausdorff distance between supports.
    Hausdorff,
}

impl DistanceKind {
    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Dhf => "dhf",
            DistanceKind::Dh => "dh",
            DistanceKind::Dh0 => "dh0",
            DistanceKind::Dinf => "dinf",
            DistanceKind::Hausdorff => "hausdorff",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dhf" => Ok(DistanceKind::Dhf),
            "dh" => Ok(DistanceKind::Dh),
            "dh0" => Ok(DistanceKind::Dh0),
            "dinf" => Ok(DistanceKind::Dinf),
            "hausdorff" => Ok(DistanceKind::Hausdorff),
            other => Err(Error::UnknownDistance(other.to_string())),
        }
    }
}

/// A distance kind paired with the pseudometric it lifts.
#[derive(Clone, Debug, PartialEq)]
pub struct Distance {
    pub kind: DistanceKind,
    pub pm: Pseudometric,
}

impl Distance {
    pub fn new(kind: DistanceKind, pm: Pseudometric) -> Self {
        Distance { kind, pm }
    }

    pub fn dhf(pm: Pseudometric) -> Self {
        Distance::new(DistanceKind::Dhf, pm)
    }

    pub fn eval(&self, u: &FuzzySet, v: &FuzzySet) -> Result<f64> {
        match self.kind {
            DistanceKind::Dhf => fuzzy_hausdorff(&self.pm, u, v),
            DistanceKind::Dh => hypo_distance(&self.pm, u, v),
            DistanceKind::Dh0 => hypo0_distance(&self.pm, u, v),
            DistanceKind::Dinf => linf_distance(u, v),
            DistanceKind::Hausdorff => {
                u.same_domain(v)?;
                hausdorff_nodes(&self.pm, u.grid(), &u.support(), &v.support())
            }
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.pm)
    }
}

/// Parses `"<kind> [<pseudometric>]"`; the pseudometric defaults to `euclid`.
impl FromStr for Distance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let kind = parts.next().ok_or_else(|| Error::UnknownDistance(s.to_string()))?.parse()?;
        let pm = match parts.next() {
            Some(p) => p.parse()?,
            None => Pseudometric::Euclidean,
        };
        if parts.next().is_some() {
            return Err(Error::UnknownDistance(s.to_string()));
        }
        Ok(Distance { kind, pm })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{CompactFuzzySet, LevelScale};
    use crate::grid::Grid;

    fn dirac_pair(cells: usize, l: Level, a: usize, b: usize, lb: Level) -> (FuzzySet, FuzzySet) {
        let g = Grid::unit_interval(cells).unwrap();
        let s = LevelScale::new(l).unwrap();
        let u = FuzzySet::from_entries(g, s, &[(a, l), (b, lb)]).unwrap();
        let v = CompactFuzzySet::dirac(g, s, a).unwrap().into_fuzzy();
        (u, v)
    }

    #[test]
    fn self_distances_vanish() {
        let (u, _) = dirac_pair(8, 4, 0, 8, 1);
        let d = Pseudometric::Euclidean;
        assert_eq!(fuzzy_hausdorff(&d, &u, &u).unwrap(), 0.0);
        assert_eq!(hypo_distance(&d, &u, &u).unwrap(), 0.0);
        assert_eq!(hypo0_distance(&d, &u, &u).unwrap(), 0.0);
        assert_eq!(linf_distance(&u, &u).unwrap(), 0.0);
    }

    #[test]
    fn dirac_pair_values() {
        // χ_0 + (1/4)χ_1 against χ_0 with L = 16
        let (u, v) = dirac_pair(16, 16, 0, 16, 4);
        let d = Pseudometric::Euclidean;
        assert_eq!(fuzzy_hausdorff(&d, &u, &v).unwrap(), 1.0);
        assert_eq!(hypo_distance(&d, &u, &v).unwrap(), 1.0);
        assert_eq!(hypo0_distance(&d, &u, &v).unwrap(), 0.25);
        assert_eq!(linf_distance(&u, &v).unwrap(), 0.25);
        assert_eq!(pointwise_gap(&u, &v, 16).unwrap(), 0.25);
        assert_eq!(pointwise_gap(&u, &v, 0).unwrap(), 0.0);
    }

    #[test]
    fn hypo_of_dirac() {
        let (_, v) = dirac_pair(4, 8, 2, 3, 0);
        let h = hypo_points(&v);
        assert_eq!(h.len(), 9);
        assert!(h.iter().all(|(p, _)| p[0] == 0.5));
    }

    #[test]
    fn distance_parsing() {
        let d: Distance = "dh proj:0".parse().unwrap();
        assert_eq!(d, Distance::new(DistanceKind::Dh, Pseudometric::Projection(0)));
        let d: Distance = "dhf".parse().unwrap();
        assert_eq!(d.pm, Pseudometric::Euclidean);
        assert!("dq".parse::<Distance>().is_err());
        assert_eq!(d.to_string(), "dhf euclid");
    }

    #[test]
    fn empty_intermediates() {
        let g = Grid::unit_interval(4).unwrap();
        let s = LevelScale::new(2).unwrap();
        let z = FuzzySet::zeros(g, s);
        let d = Pseudometric::Euclidean;
        assert_eq!(fuzzy_hausdorff(&d, &z, &z).unwrap(), 0.0);
        assert_eq!(hypo_distance(&d, &z, &z).unwrap(), 0.0);
        let one = CompactFuzzySet::dirac(g, s, 1).unwrap();
        assert_eq!(fuzzy_hausdorff(&d, &z, &one).unwrap_err(), Error::OneSidedEmpty);
        assert_eq!(hypo0_distance(&d, &z, &one).unwrap(), 1.0);
    }
}
