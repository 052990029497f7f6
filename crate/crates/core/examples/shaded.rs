use fuzzy_ifs::format::render_pgm;
use fuzzy_ifs::ifs::{iterate_to_fixpoint, presets};
use fuzzy_ifs::{CompactFuzzySet, Distance, Grid, LevelScale, Pseudometric};

fn main() -> fuzzy_ifs::Result<()> {
    let grid = Grid::unit_square(128)?;
    let sf = presets::sierpinski_half_shaded(LevelScale::new(16)?);
    let u0 = CompactFuzzySet::full(grid, sf.scale());
    let run = iterate_to_fixpoint(&sf, &u0, &Distance::dhf(Pseudometric::Euclidean), grid.cell_diagonal(), 200)?;
    eprintln!("{} iterations", run.iterations());
    print!("{}", render_pgm(&run.fixed));
    Ok(())
}
