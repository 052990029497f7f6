use std::fmt::Write as _;

use crate::fuzzy::{FuzzySet, Level, LevelScale};

/// `round(255·level/L)` with halves rounded up, in integer arithmetic.
pub fn pixel(level: Level, scale: LevelScale) -> u32 {
    let top = scale.top() as u32;
    (255 * level as u32 + top / 2) / top
}

/// ASCII PGM (P2) with the second axis pointing up. One-dimensional sets
/// render as a single row.
pub fn render_pgm(u: &FuzzySet) -> String {
    let g = u.grid();
    let width = g.nodes(0);
    let height = if g.ndim() == 2 { g.nodes(1) } else { 1 };
    let mut out = format!("P2\n{width} {height}\n255\n");
    for row in u.levels().chunks(width).rev() {
        let cells: Vec<String> = row.iter().map(|&l| pixel(l, u.scale()).to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
