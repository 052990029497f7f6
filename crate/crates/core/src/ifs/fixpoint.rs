//! Fixed-point iteration of the fuzzy Hutchinson operator.

use crate::error::{Error, Result};
use crate::fuzzy::CompactFuzzySet;
use crate::grid::Grid;
use crate::ifs::{FuzzyIfs, HutchinsonOperator};
use crate::metrics::{hypo_distance, Distance};

/// A converged iteration together with its distance traces.
#[derive(Clone, Debug)]
pub struct FixpointRun {
    /// First iterate `u*` with `distance(S_F(u*), u*) <= tol`.
    pub fixed: CompactFuzzySet,
    /// Distances between successive iterates under the chosen metric; the
    /// last entry is the fixed-point certificate.
    pub trace: Vec<f64>,
    /// The same successive distances under `d_h`.
    pub trace_dh: Vec<f64>,
}

impl FixpointRun {
    pub fn iterations(&self) -> usize {
        self.trace.len() - 1
    }

    pub fn certificate(&self) -> f64 {
        *self.trace.last().expect("trace is never empty")
    }
}

/// Stopping tolerance used when none is given: one cell diagonal.
pub fn default_tolerance(grid: &Grid) -> f64 {
    grid.cell_diagonal()
}

pub fn iterate_to_fixpoint(
    sf: &FuzzyIfs,
    u0: &CompactFuzzySet,
    metric: &Distance,
    tol: f64,
    max_iter: usize,
) -> Result<FixpointRun> {
    iterate_operator(&sf.on_grid(*u0.grid()), u0, metric, tol, max_iter)
}

/// As [`iterate_to_fixpoint`] on an operator that is already bound to a grid.
pub fn iterate_operator(
    op: &HutchinsonOperator<'_>,
    u0: &CompactFuzzySet,
    metric: &Distance,
    tol: f64,
    max_iter: usize,
) -> Result<FixpointRun> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut u = u0.clone();
    let mut trace = Vec::new();
    let mut trace_dh = Vec::new();
    for _ in 0..=max_iter {
        let next = op.apply_pointwise(&u)?;
        let dist = metric.eval(&next, &u)?;
        trace.push(dist);
        trace_dh.push(hypo_distance(&metric.pm, &next, &u)?);
        if dist <= tol {
            return Ok(FixpointRun { fixed: u, trace, trace_dh });
        }
        u = next;
    }
    Err(Error::NoConvergence { trace, trace_dh })
}
