//! Line-oriented system files.
//!
//! ```text
//! # Sierpinski triangle
//! grid 256 256
//! domain 0 0 1 1
//! levels 16
//! map 0.5 0 0 0.5 0 0
//! grey 0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16
//! ```
//!
//! One-dimensional systems write `map a b`. A map may be followed by
//! `witness <pseudometric> linear <c>` or
//! `witness <pseudometric> table <t>:<v> ...` lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fuzzy::{Level, LevelScale};
use crate::grey::{GreyLevelMap, GreySystem};
use crate::grid::Grid;
use crate::ifs::{AffineMap, ComparisonFunction, ContractionMap, FuzzyIfs};
use crate::metrics::Pseudometric;

/// A loaded system file.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemConfig {
    pub grid: Grid,
    pub ifs: FuzzyIfs,
}

impl SystemConfig {
    pub fn scale(&self) -> LevelScale {
        self.ifs.scale()
    }

    /// Same domain with `cells` cells on every axis.
    pub fn with_cells(&self, cells: usize) -> Result<SystemConfig> {
        let g = &self.grid;
        let grid = Grid::new(&vec![cells; g.ndim()], g.origin(), g.extent())?;
        Ok(SystemConfig { grid, ifs: self.ifs.clone() })
    }

    /// Grey tables resampled onto `L` levels.
    pub fn with_levels(&self, levels: Level) -> Result<SystemConfig> {
        let greys = self.ifs.greys().rescale(LevelScale::new(levels)?)?;
        Ok(SystemConfig { grid: self.grid, ifs: FuzzyIfs::new(self.ifs.maps().to_vec(), greys)? })
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers<T: std::str::FromStr>(line: usize, toks: &[&str]) -> Result<Vec<T>> {
    toks.iter().map(|t| t.parse().map_err(|_| err(line, format!("bad number `{t}`")))).collect()
}

fn parse_witness(line: usize, toks: &[&str]) -> Result<(Pseudometric, ComparisonFunction)> {
    if toks.len() < 3 {
        return Err(err(line, "expected `witness <pseudometric> linear|table ...`"));
    }
    let pm: Pseudometric = toks[0].parse().map_err(|e: Error| err(line, e.to_string()))?;
    let phi = match toks[1] {
        "linear" if toks.len() == 3 => ComparisonFunction::linear(numbers::<f64>(line, &toks[2..])?[0]),
        "table" => {
            let mut args = Vec::new();
            let mut values = Vec::new();
            for t in &toks[2..] {
                let (a, v) = t.split_once(':').ok_or_else(|| err(line, format!("expected t:v, got `{t}`")))?;
                args.push(numbers::<f64>(line, &[a])?[0]);
                values.push(numbers::<f64>(line, &[v])?[0]);
            }
            ComparisonFunction::table(args, values)
        }
        other => return Err(err(line, format!("unknown witness kind `{other}`"))),
    }
    .map_err(|e| err(line, e.to_string()))?;
    Ok((pm, phi))
}

pub fn parse_system(text: &str) -> Result<SystemConfig> {
    let mut grid_line: Option<(usize, Vec<usize>)> = None;
    let mut domain: Option<(usize, Vec<f64>)> = None;
    let mut levels: Option<(usize, LevelScale)> = None;
    let mut maps: Vec<ContractionMap> = Vec::new();
    let mut greys: Vec<GreyLevelMap> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        last_line = n;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (head, rest) = (toks[0], &toks[1..]);
        match head {
            "grid" => {
                if grid_line.is_some() {
                    return Err(err(n, "duplicate `grid`"));
                }
                let cells = numbers::<usize>(n, rest)?;
                if !(1..=2).contains(&cells.len()) {
                    return Err(err(n, "`grid` takes one or two cell counts"));
                }
                grid_line = Some((n, cells));
            }
            "domain" => {
                if domain.is_some() {
                    return Err(err(n, "duplicate `domain`"));
                }
                domain = Some((n, numbers::<f64>(n, rest)?));
            }
            "levels" => {
                if levels.is_some() {
                    return Err(err(n, "duplicate `levels`"));
                }
                let v = numbers::<u32>(n, rest)?;
                if v.len() != 1 {
                    return Err(err(n, "`levels` takes one integer"));
                }
                let top = Level::try_from(v[0]).map_err(|_| err(n, "L too large"))?;
                levels = Some((n, LevelScale::new(top).map_err(|e| err(n, e.to_string()))?));
            }
            "map" => {
                let ndim = grid_line.as_ref().ok_or_else(|| err(n, "`map` before `grid`"))?.1.len();
                if maps.len() != greys.len() {
                    return Err(err(n, "previous map has no `grey` line"));
                }
                let c = numbers::<f64>(n, rest)?;
                let affine = match (ndim, c.len()) {
                    (1, 2) => AffineMap::line(c[0], c[1]),
                    (2, 6) => AffineMap::new([[c[0], c[1]], [c[2], c[3]]], [c[4], c[5]]),
                    _ => return Err(err(n, format!("`map` needs {} numbers in {ndim}D", if ndim == 1 { 2 } else { 6 }))),
                };
                maps.push(ContractionMap::new(affine));
            }
            "witness" => {
                if maps.len() != greys.len() + 1 {
                    return Err(err(n, "`witness` must follow a `map`"));
                }
                let (pm, phi) = parse_witness(n, rest)?;
                let m = maps.pop().expect("nonempty");
                maps.push(m.with_witness(pm, phi));
            }
            "grey" => {
                let scale = levels.as_ref().ok_or_else(|| err(n, "`grey` before `levels`"))?.1;
                if maps.len() != greys.len() + 1 {
                    return Err(err(n, "`grey` must follow a `map`"));
                }
                let table = numbers::<Level>(n, rest)?;
                if table.len() != scale.top() as usize + 1 {
                    return Err(err(n, format!("`grey` needs L+1 = {} entries, got {}", scale.top() + 1, table.len())));
                }
                greys.push(GreyLevelMap::new(table).map_err(|e| err(n, e.to_string()))?);
            }
            other => return Err(err(n, format!("unknown directive `{other}`"))),
        }
    }
    let (gn, cells) = grid_line.ok_or_else(|| err(0, "missing `grid`"))?;
    let ndim = cells.len();
    let (origin, extent) = match domain {
        Some((dn, d)) => {
            if d.len() != 2 * ndim {
                return Err(err(dn, format!("`domain` needs {} numbers", 2 * ndim)));
            }
            (d[..ndim].to_vec(), d[ndim..].to_vec())
        }
        None => (vec![0.0; ndim], vec![1.0; ndim]),
    };
    let grid = Grid::new(&cells, &origin, &extent).map_err(|e| err(gn, e.to_string()))?;
    levels.ok_or_else(|| err(0, "missing `levels`"))?;
    if maps.is_empty() {
        return Err(err(0, "no `map` blocks"));
    }
    if maps.len() != greys.len() {
        return Err(err(last_line, "last map has no `grey` line"));
    }
    let greys = GreySystem::new(greys).map_err(|e| err(last_line, e.to_string()))?;
    let ifs = FuzzyIfs::new(maps, greys).map_err(|e| err(last_line, e.to_string()))?;
    Ok(SystemConfig { grid, ifs })
}

fn fmt_phi(phi: &ComparisonFunction) -> Result<String> {
    match phi {
        ComparisonFunction::Linear(c) => Ok(format!("linear {c}")),
        ComparisonFunction::Table { args, values } => {
            let pairs: Vec<String> = args.iter().zip(values).map(|(a, v)| format!("{a}:{v}")).collect();
            Ok(format!("table {}", pairs.join(" ")))
        }
        ComparisonFunction::Max(_) => {
            Err(Error::InvalidSystem("max-of witnesses have no system-file form".into()))
        }
    }
}

/// Normalized text form; `parse_system(emit_system(c)) == c`.
pub fn emit_system(cfg: &SystemConfig) -> Result<String> {
    let g = &cfg.grid;
    let join = |xs: &[f64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let dims: Vec<String> = g.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "grid {}", dims.join(" "));
    let _ = writeln!(out, "domain {} {}", join(g.origin()), join(g.extent()));
    let _ = writeln!(out, "levels {}", cfg.scale().top());
    for (m, rho) in cfg.ifs.maps().iter().zip(cfg.ifs.greys().maps()) {
        let a = m.affine();
        if g.ndim() == 1 {
            let _ = writeln!(out, "map {} {}", a.matrix[0][0], a.offset[0]);
        } else {
            let _ = writeln!(
                out,
                "map {}",
                join(&[a.matrix[0][0], a.matrix[0][1], a.matrix[1][0], a.matrix[1][1], a.offset[0], a.offset[1]])
            );
        }
        for (pm, phi) in m.witnesses() {
            let _ = writeln!(out, "witness {pm} {}", fmt_phi(phi)?);
        }
        let t: Vec<String> = rho.table().iter().map(|l| l.to_string()).collect();
        let _ = writeln!(out, "grey {}", t.join(" "));
    }
    Ok(out)
}
