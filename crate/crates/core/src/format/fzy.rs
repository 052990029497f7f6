use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Level, LevelScale};
use crate::grid::Grid;

pub const FZY_MAGIC: &str = "FZY1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Serializes `u`: magic, cell counts and `L`, origin and extent, then one
/// line of levels per row of axis 0.
pub fn write_fzy(u: &FuzzySet) -> String {
    let g = u.grid();
    let mut out = String::new();
    let nums = |xs: &[f64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let dims: Vec<String> = g.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{FZY_MAGIC}");
    let _ = writeln!(out, "{} {}", dims.join(" "), u.scale().top());
    let _ = writeln!(out, "{} {}", nums(g.origin()), nums(g.extent()));
    for row in u.levels().chunks(g.nodes(0)) {
        let cells: Vec<String> = row.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn parse_fzy(text: &str) -> Result<FuzzySet> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| lines.next().ok_or_else(|| parse_err(0, format!("missing {what}")));
    let (n, magic) = next("header")?;
    if magic.trim() != FZY_MAGIC {
        return Err(parse_err(n, format!("expected `{FZY_MAGIC}`")));
    }
    let (n, sizes) = next("size line")?;
    let sizes: Vec<usize> = sizes
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(n, format!("bad integer `{t}`"))))
        .collect::<Result<_>>()?;
    if !(2..=3).contains(&sizes.len()) {
        return Err(parse_err(n, "expected cell counts followed by L"));
    }
    let (dims, top) = sizes.split_at(sizes.len() - 1);
    let top = Level::try_from(top[0]).map_err(|_| parse_err(n, "L too large"))?;
    let scale = LevelScale::new(top).map_err(|e| parse_err(n, e.to_string()))?;
    let (n, geom) = next("domain line")?;
    let geom: Vec<f64> = geom
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(n, format!("bad number `{t}`"))))
        .collect::<Result<_>>()?;
    if geom.len() != 2 * dims.len() {
        return Err(parse_err(n, format!("expected {} numbers", 2 * dims.len())));
    }
    let grid = Grid::new(dims, &geom[..dims.len()], &geom[dims.len()..]).map_err(|e| parse_err(n, e.to_string()))?;
    let mut levels = Vec::with_capacity(grid.len());
    for (n, line) in lines {
        for t in line.split_whitespace() {
            let v: u32 = t.parse().map_err(|_| parse_err(n, format!("bad level `{t}`")))?;
            levels.push(scale.check(v).map_err(|e| parse_err(n, e.to_string()))?);
        }
    }
    if levels.len() != grid.len() {
        return Err(parse_err(0, format!("expected {} levels, found {}", grid.len(), levels.len())));
    }
    FuzzySet::from_levels(grid, scale, levels)
}

pub fn read_fzy(path: &Path) -> Result<FuzzySet> {
    parse_fzy(&std::fs::read_to_string(path)?)
}
