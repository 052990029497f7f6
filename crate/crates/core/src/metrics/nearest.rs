//! Nearest-node transform for the Euclidean metric on a grid.
//!
//! Rows are swept for the nearest marked column, then each column takes the
//! lower envelope of the parabolas `g(q) + (h·(j − q))²`. Only the argmin is
//! kept; distances are re-evaluated from node coordinates so they match a
//! direct scan.

use crate::grid::Grid;

const NONE: u32 = u32::MAX;

/// For every node of `grid`, the index of a nearest node of `targets`, or
/// `None` everywhere when `targets` is empty.
pub(crate) fn nearest_nodes(grid: &Grid, targets: &[usize]) -> Option<Vec<u32>> {
    if targets.is_empty() {
        return None;
    }
    let nx = grid.nodes(0);
    let ny = if grid.ndim() == 2 { grid.nodes(1) } else { 1 };
    let hx = grid.cell_size(0);
    let hy = if grid.ndim() == 2 { grid.cell_size(1) } else { 1.0 };
    let mut marked = vec![false; nx * ny];
    for &t in targets {
        marked[t] = true;
    }
    // nearest marked column within each row
    let mut col = vec![NONE; nx * ny];
    for j in 0..ny {
        let row = &marked[j * nx..(j + 1) * nx];
        let out = &mut col[j * nx..(j + 1) * nx];
        let mut last = NONE;
        for i in 0..nx {
            if row[i] {
                last = i as u32;
            }
            out[i] = last;
        }
        let mut next = NONE;
        for i in (0..nx).rev() {
            if row[i] {
                next = i as u32;
            }
            if next != NONE && (out[i] == NONE || next as usize - i < i - out[i] as usize) {
                out[i] = next;
            }
        }
    }
    let mut nearest = vec![NONE; nx * ny];
    let mut f = vec![0.0f64; ny];
    let mut v = vec![0usize; ny];
    let mut z = vec![0.0f64; ny + 1];
    for i in 0..nx {
        let mut rows = 0;
        for j in 0..ny {
            let c = col[j * nx + i];
            f[j] = if c == NONE { f64::INFINITY } else { (hx * (i as f64 - c as f64)).powi(2) };
        }
        // lower envelope over rows holding a target
        let mut k = 0usize;
        for q in 0..ny {
            if !f[q].is_finite() {
                continue;
            }
            let pq = hy * q as f64;
            if rows == 0 {
                v[0] = q;
                z[0] = f64::NEG_INFINITY;
                z[1] = f64::INFINITY;
                rows = 1;
                k = 0;
                continue;
            }
            // z[0] = −∞, so the loop stops by k = 0 at the latest
            let mut s;
            loop {
                let pv = hy * v[k] as f64;
                s = ((f[q] + pq * pq) - (f[v[k]] + pv * pv)) / (2.0 * (pq - pv));
                if s > z[k] {
                    break;
                }
                k -= 1;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = f64::INFINITY;
        }
        let mut k = 0usize;
        for j in 0..ny {
            let pj = hy * j as f64;
            while z[k + 1] < pj {
                k += 1;
            }
            let q = v[k];
            nearest[j * nx + i] = (q * nx) as u32 + col[q * nx + i];
        }
    }
    Some(nearest)
}
