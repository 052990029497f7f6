//! Code-space addresses, the projection map, grey limits and the
//! projection-based attractor.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuzzy::{pointwise_max, CompactFuzzySet, FuzzySet, Level};
use crate::grey::GreySystem;
use crate::grid::{BoxRegion, Grid, Point};
use crate::ifs::{invariant_box, AffineMap, ContractionMap, FuzzyIfs};
use crate::metrics::Pseudometric;

/// Leaf budget used by [`attractor_via_projection`].
pub const DEFAULT_LEAF_BUDGET: usize = 1 << 22;

/// A finite word over the symbols `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address {
    symbols: Vec<usize>,
}

impl Address {
    pub fn new(symbols: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(s) = symbols.iter().find(|&&s| s == 0 || s > k) {
            return Err(Error::InvalidAddress(format!("symbol {s} not in 1..={k}")));
        }
        Ok(Address { symbols })
    }

    pub fn empty() -> Self {
        Address::default()
    }

    pub fn constant(symbol: usize, depth: usize, k: usize) -> Result<Self> {
        Address::new(vec![symbol; depth], k)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn depth(&self) -> usize {
        self.symbols.len()
    }

    pub fn prefix(&self, n: usize) -> Address {
        Address { symbols: self.symbols[..n.min(self.depth())].to_vec() }
    }

    /// Checks the symbols against a system with `k` maps.
    pub fn check(&self, k: usize) -> Result<()> {
        if let Some(s) = self.symbols.iter().find(|&&s| s == 0 || s > k) {
            return Err(Error::InvalidAddress(format!("symbol {s} not in 1..={k}")));
        }
        Ok(())
    }

    /// `f_{σ1} ∘ … ∘ f_{σn}`, built left to right.
    pub fn compose(&self, maps: &[ContractionMap]) -> Result<AffineMap> {
        self.check(maps.len())?;
        Ok(self.symbols.iter().fold(AffineMap::identity(), |acc, &s| acc.compose(maps[s - 1].affine())))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Parses `1,2,3` or `(1,2,3)`; symbols are only checked to be positive.
impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Address::empty());
        }
        let symbols = body
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::InvalidAddress(format!("bad symbol `{}`", t.trim()))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Address { symbols })
    }
}

/// `f_{σ1} ∘ … ∘ f_{σN}(seed)`, snapped to `grid`.
pub fn project(maps: &[ContractionMap], sigma: &Address, seed: Point, grid: &Grid) -> Result<Point> {
    Ok(grid.point(project_node(maps, sigma, seed, grid)?))
}

/// Node index of [`project`].
pub fn project_node(maps: &[ContractionMap], sigma: &Address, seed: Point, grid: &Grid) -> Result<usize> {
    let p = sigma.compose(maps)?.apply(seed);
    grid.snap(p).ok_or(Error::Escape { map: sigma.symbols().first().map_or(0, |s| s - 1), point: p })
}

/// Stable value of `ϱ_{σ1} ∘ … ∘ ϱ_{σn}(1)` along a finite address.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreyLimit {
    pub level: Level,
    /// Depth after which the partial value no longer changes.
    pub stabilized_at: usize,
}

/// Partial values `p_n = ϱ_{σ1} ∘ … ∘ ϱ_{σn}(L)` for `n = 0..=depth`,
/// obtained by folding the composed table `T_n = T_{n−1} ∘ ϱ_{σn}`.
pub fn grey_partials(greys: &GreySystem, sigma: &Address) -> Result<Vec<Level>> {
    sigma.check(greys.len())?;
    let top = greys.scale().top();
    let mut table: Vec<Level> = (0..=top).collect();
    let mut out = Vec::with_capacity(sigma.depth() + 1);
    out.push(top);
    for &s in sigma.symbols() {
        let rho = &greys.maps()[s - 1];
        table = (0..=top).map(|j| table[rho.apply(j) as usize]).collect();
        out.push(table[top as usize]);
    }
    Ok(out)
}

pub fn grey_limit(greys: &GreySystem, sigma: &Address) -> Result<GreyLimit> {
    let partials = grey_partials(greys, sigma)?;
    let level = *partials.last().expect("partials start with L");
    let stabilized_at = partials.iter().rposition(|&p| p != level).map_or(0, |i| i + 1);
    Ok(GreyLimit { level, stabilized_at })
}

/// Attractor built from the projection map together with its truncation
/// diagnostics.
#[derive(Clone, Debug)]
pub struct ProjectionAttractor {
    pub set: CompactFuzzySet,
    pub depth: usize,
    /// Addresses that reached full depth.
    pub leaves: usize,
    /// Largest leaf level that some one-symbol extension would still lower;
    /// zero when every surviving grey value has settled.
    pub max_unsettled_level: Level,
    /// `c^N · diam(B)` for the Euclidean Lipschitz bound `c` and the
    /// invariant box `B` holding the seed.
    pub spatial_error: f64,
}

struct Walk<'a> {
    maps: &'a [ContractionMap],
    greys: &'a GreySystem,
    grid: Grid,
    seed: Point,
    depth: usize,
    budget: usize,
    leaves: &'a AtomicUsize,
}

#[derive(Default)]
struct Collected {
    entries: Vec<(usize, Level)>,
    unsettled: Level,
    addresses: Vec<Address>,
}

impl Walk<'_> {
    fn visit(
        &self,
        path: &mut Vec<usize>,
        f: AffineMap,
        table: Vec<Level>,
        keep_addresses: bool,
        out: &mut Collected,
    ) -> Result<()> {
        let top = self.greys.scale().top();
        let value = table[top as usize];
        if value == 0 {
            return Ok(());
        }
        if path.len() == self.depth {
            if self.leaves.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(Error::EnumerationBudget { budget: self.budget });
            }
            let p = f.apply(self.seed);
            let node = self.grid.snap(p).ok_or(Error::Escape { map: path[0] - 1, point: p })?;
            out.entries.push((node, value));
            if keep_addresses {
                out.addresses.push(Address { symbols: path.clone() });
            }
            if self.greys.maps().iter().any(|rho| table[rho.apply(top) as usize] != value) {
                out.unsettled = out.unsettled.max(value);
            }
            return Ok(());
        }
        for (i, (m, rho)) in self.maps.iter().zip(self.greys.maps()).enumerate() {
            let next: Vec<Level> = (0..=top).map(|j| table[rho.apply(j) as usize]).collect();
            path.push(i + 1);
            self.visit(path, f.compose(m.affine()), next, keep_addresses, out)?;
            path.pop();
        }
        Ok(())
    }

    fn branch(&self, first: Option<usize>, keep_addresses: bool) -> Result<Collected> {
        let top = self.greys.scale().top();
        let mut out = Collected::default();
        let identity: Vec<Level> = (0..=top).collect();
        match first {
            None => self.visit(&mut Vec::new(), AffineMap::identity(), identity, keep_addresses, &mut out)?,
            Some(i) => {
                let rho = &self.greys.maps()[i];
                let table = (0..=top).map(|j| rho.apply(j)).collect();
                self.visit(&mut vec![i + 1], *self.maps[i].affine(), table, keep_addresses, &mut out)?
            }
        }
        Ok(out)
    }
}

fn check_seed(sf: &FuzzyIfs, grid: &Grid, seed: Point) -> Result<BoxRegion> {
    if !grid.domain().contains(&seed, 1e-12) {
        return Err(Error::InvalidArgument(format!("seed {seed:?} outside the grid domain")));
    }
    invariant_box(sf.maps(), &BoxRegion::point(grid.ndim(), seed), grid)
}

/// `π[u_Λ]` truncated at depth `N`: every address of length `N` whose grey
/// value stays positive contributes its projected node at that value, and
/// collisions merge by max.
pub fn attractor_via_projection(sf: &FuzzyIfs, grid: &Grid, depth: usize, seed: Point) -> Result<ProjectionAttractor> {
    attractor_via_projection_with_budget(sf, grid, depth, seed, DEFAULT_LEAF_BUDGET)
}

pub fn attractor_via_projection_with_budget(
    sf: &FuzzyIfs,
    grid: &Grid,
    depth: usize,
    seed: Point,
    budget: usize,
) -> Result<ProjectionAttractor> {
    if depth == 0 {
        return Err(Error::InvalidArgument("projection depth must be at least 1".into()));
    }
    let inv = check_seed(sf, grid, seed)?;
    let leaves = AtomicUsize::new(0);
    let walk = Walk { maps: sf.maps(), greys: sf.greys(), grid: *grid, seed, depth, budget, leaves: &leaves };
    let parts = (0..sf.k())
        .into_par_iter()
        .map(|i| {
            let c = walk.branch(Some(i), false)?;
            let mut u = FuzzySet::zeros(*grid, sf.scale());
            for (x, l) in c.entries {
                u.raise(x, l)?;
            }
            Ok((u, c.unsettled))
        })
        .collect::<Result<Vec<_>>>()?;
    let unsettled = parts.iter().map(|p| p.1).max().unwrap_or(0);
    let set = CompactFuzzySet::new(pointwise_max(parts.iter().map(|p| &p.0))?)?;
    let c = sf.maps().iter().map(|m| m.affine().lipschitz(&Pseudometric::Euclidean)).fold(0.0, f64::max);
    Ok(ProjectionAttractor {
        set,
        depth,
        leaves: leaves.into_inner(),
        max_unsettled_level: unsettled,
        spatial_error: c.powi(depth as i32) * inv.diameter(),
    })
}

/// Every surviving address of length `depth` with its projected node and
/// truncated grey value, in lexicographic address order.
pub fn projection_leaves(
    sf: &FuzzyIfs,
    grid: &Grid,
    depth: usize,
    seed: Point,
    budget: usize,
) -> Result<Vec<(Address, usize, Level)>> {
    check_seed(sf, grid, seed)?;
    let leaves = AtomicUsize::new(0);
    let walk = Walk { maps: sf.maps(), greys: sf.greys(), grid: *grid, seed, depth, budget, leaves: &leaves };
    let c = walk.branch(None, true)?;
    Ok(c.addresses.into_iter().zip(c.entries).map(|(a, (x, l))| (a, x, l)).collect())
}
