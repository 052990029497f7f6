//! Text formats: FZY1 fuzzy sets, ASCII PGM renders and system configs.

mod config;
mod fzy;
mod pgm;

pub use config::{emit_system, parse_system, SystemConfig};
pub use fzy::{parse_fzy, read_fzy, write_fzy, FZY_MAGIC};
pub use pgm::{pixel, render_pgm};
