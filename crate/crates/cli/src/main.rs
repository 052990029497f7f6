use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzy_ifs::codespace::{attractor_via_projection, projection_leaves, Address, DEFAULT_LEAF_BUDGET};
use fuzzy_ifs::experiments::{
    default_families, exp_dirac_pair, exp_halving, exp_hypo_vs_dhf, exp_multimetric_agreement, fmt9,
    ExperimentReport,
};
use fuzzy_ifs::format::{parse_system, read_fzy, render_pgm, write_fzy, SystemConfig};
use fuzzy_ifs::ifs::{
    default_tolerance, fiber_diameter, invariant_box, iterate_operator, verify_matkowski, FixpointRun,
};
use fuzzy_ifs::{CompactFuzzySet, Distance, Error, Pseudometric};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "fuzzy-ifs", version, about = "Fuzzy iterated function systems on grids")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the fuzzy attractor of a system file.
    Attract(AttractArgs),
    /// Distance between two FZY1 files.
    Distance(DistanceArgs),
    /// Sampled contraction checks, admissibility, invariant box and fiber diameters.
    Verify(VerifyArgs),
    /// Render an FZY1 file as an ASCII PGM image.
    Render { input: PathBuf, output: PathBuf },
    /// Print projected points and grey values of every surviving address.
    Project(ProjectArgs),
    /// Run a named experiment and print its report.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// System file.
    system: PathBuf,
    /// Override the number of cells per axis.
    #[arg(long)]
    grid: Option<usize>,
    /// Override the number of nonzero grey levels.
    #[arg(long)]
    levels: Option<u16>,
}

impl SystemArgs {
    fn load(&self) -> Result<SystemConfig> {
        let text = fs::read_to_string(&self.system).with_context(|| format!("reading {}", self.system.display()))?;
        let mut cfg = parse_system(&text).with_context(|| format!("loading {}", self.system.display()))?;
        if let Some(n) = self.grid {
            cfg = cfg.with_cells(n)?;
        }
        if let Some(l) = self.levels {
            cfg = cfg.with_levels(l)?;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Iterate,
    Projection,
}

#[derive(Args)]
struct AttractArgs {
    #[command(flatten)]
    sys: SystemArgs,
    #[arg(long, value_enum, default_value = "iterate")]
    method: Method,
    /// Stopping tolerance; defaults to one cell diagonal.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    /// Address depth for the projection method.
    #[arg(long)]
    depth: Option<usize>,
    /// Distance and pseudometric, e.g. "dhf euclid" or "dh proj:0".
    #[arg(long, default_value = "dhf euclid")]
    metric: String,
    /// Output prefix; writes <prefix>.fzy, <prefix>.pgm and <prefix>.txt.
    #[arg(long, default_value = "attractor")]
    out: PathBuf,
}

#[derive(Args)]
struct DistanceArgs {
    u: PathBuf,
    v: PathBuf,
    /// Distance name (dhf, dh, dh0, dinf, hausdorff), optionally followed by
    /// a pseudometric as a second positional value.
    dist: Option<String>,
    pm: Option<String>,
    /// Full metric spec; overrides the positional form.
    #[arg(long)]
    metric: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sys: SystemArgs,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Longest address prefix in the fiber-diameter table.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Pseudometric for the contraction and fiber checks.
    #[arg(long, default_value = "euclid")]
    metric: String,
}

#[derive(Args)]
struct ProjectArgs {
    #[command(flatten)]
    sys: SystemArgs,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Seed point as comma-separated coordinates; defaults to the centre of
    /// the invariant box.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentName {
    HypoVsDhf,
    DiracPair,
    Halving,
    Multimetric,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    name: ExperimentName,
    /// Cells per axis.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 16)]
    levels: u16,
    /// Comma-separated sequence indices.
    #[arg(long, default_value = "2,4,8,16")]
    n: String,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Command::Attract(a) => attract(a),
        Command::Distance(a) => distance(a),
        Command::Verify(a) => verify(a),
        Command::Render { input, output } => {
            let u = read_fzy(&input).with_context(|| format!("reading {}", input.display()))?;
            fs::write(&output, render_pgm(&u))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Project(a) => project(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn attract(a: AttractArgs) -> Result<ExitCode> {
    let cfg = a.sys.load()?;
    let metric: Distance = a.metric.parse()?;
    let grid = cfg.grid;
    let tol = a.tol.unwrap_or_else(|| default_tolerance(&grid));
    if !(tol > 0.0) {
        bail!("--tol must be positive");
    }
    let op = cfg.ifs.on_grid(grid);
    let inv = invariant_box(cfg.ifs.maps(), &grid.domain(), &grid)?;
    let mut report = String::new();
    writeln!(report, "# attractor")?;
    writeln!(report, "# system: {}", a.sys.system.display())?;
    writeln!(report, "# grid: {}", grid.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x"))?;
    writeln!(report, "# levels: {}", cfg.scale().top())?;
    writeln!(report, "# metric: {metric}")?;
    writeln!(report, "# tol: {}", fmt9(tol))?;
    writeln!(report, "# invariant_box: {:?} {:?}", &inv.lo[..grid.ndim()], &inv.hi[..grid.ndim()])?;
    let u = match a.method {
        Method::Iterate => {
            writeln!(report, "# method: iterate")?;
            let u0 = CompactFuzzySet::indicator(grid, cfg.scale(), &grid.nodes_in(&inv))?;
            let run = match iterate_operator(&op, &u0, &metric, tol, a.max_iter) {
                Ok(run) => run,
                Err(Error::NoConvergence { trace, .. }) => {
                    bail!(
                        "no convergence within {} iterations (last distance {}); the system may not contract or the grid is too coarse",
                        a.max_iter,
                        trace.last().map_or("n/a".into(), |&d| fmt9(d))
                    )
                }
                Err(e) => return Err(e.into()),
            };
            write_trace(&mut report, &run)?;
            run.fixed
        }
        Method::Projection => {
            let depth = a.depth.context("--method projection requires --depth")?;
            writeln!(report, "# method: projection")?;
            writeln!(report, "# depth: {depth}")?;
            let pa = attractor_via_projection(&cfg.ifs, &grid, depth, inv.center())?;
            writeln!(report, "# leaves: {}", pa.leaves)?;
            writeln!(report, "# spatial_error: {}", fmt9(pa.spatial_error))?;
            writeln!(report, "# max_unsettled_level: {}", pa.max_unsettled_level)?;
            pa.set
        }
    };
    let cert = metric.eval(op.apply_pointwise(&u)?.as_fuzzy(), &u)?;
    writeln!(report, "certificate\t{}", fmt9(cert))?;
    writeln!(report, "within_tol\t{}", cert <= tol)?;
    fs::write(with_ext(&a.out, "fzy"), write_fzy(&u))?;
    fs::write(with_ext(&a.out, "pgm"), render_pgm(&u))?;
    fs::write(with_ext(&a.out, "txt"), &report)?;
    print!("{report}");
    Ok(ExitCode::SUCCESS)
}

fn write_trace(out: &mut String, run: &FixpointRun) -> std::fmt::Result {
    writeln!(out, "# iterations: {}", run.iterations())?;
    writeln!(out, "n\tdist\tdh")?;
    for (n, (d, h)) in run.trace.iter().zip(&run.trace_dh).enumerate() {
        writeln!(out, "{n}\t{}\t{}", fmt9(*d), fmt9(*h))?;
    }
    Ok(())
}

fn distance(a: DistanceArgs) -> Result<ExitCode> {
    let spec = match (&a.metric, &a.dist) {
        (Some(m), _) => m.clone(),
        (None, Some(d)) => format!("{d} {}", a.pm.as_deref().unwrap_or("euclid")),
        (None, None) => "dhf euclid".to_string(),
    };
    let metric: Distance = spec.parse()?;
    let u = read_fzy(&a.u).with_context(|| format!("reading {}", a.u.display()))?;
    let v = read_fzy(&a.v).with_context(|| format!("reading {}", a.v.display()))?;
    println!("{}", fmt9(metric.eval(&u, &v)?));
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let cfg = a.sys.load()?;
    let pm: Pseudometric = a.metric.parse()?;
    let grid = cfg.grid;
    let dom = grid.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut ok = true;
    println!("# verify {}", a.sys.system.display());
    println!("# samples: {} seed: {} metric: {pm}", a.samples, a.seed);
    println!("admissible\tPASS (some grey map has ϱ_j(1)=1)");
    for (i, m) in cfg.ifs.maps().iter().enumerate() {
        match m.witness(&pm) {
            Some(phi) => {
                let r = verify_matkowski(m.affine(), &pm, &phi, a.samples.max(1), &dom, &mut rng);
                ok &= r.holds_on_samples();
                println!(
                    "map {}\twitness {:?}\tviolations {}\tworst_slack {}\t{}",
                    i + 1,
                    phi,
                    r.violations,
                    fmt9(r.worst_slack),
                    if r.holds_on_samples() { "PASS" } else { "FAIL" }
                );
            }
            None => {
                ok = false;
                println!("map {}\tno contraction witness under {pm}\tFAIL", i + 1);
            }
        }
    }
    let inv = match invariant_box(cfg.ifs.maps(), &dom, &grid) {
        Ok(b) => {
            println!("invariant_box\t{:?}\t{:?}\tPASS", &b.lo[..grid.ndim()], &b.hi[..grid.ndim()]);
            b
        }
        Err(e) => {
            println!("invariant_box\t{e}\tFAIL");
            return Ok(ExitCode::FAILURE);
        }
    };
    let k = cfg.ifs.k();
    println!("n\t{}\tmax_all", (1..=k).map(|i| format!("const_{i}")).collect::<Vec<_>>().join("\t"));
    for n in 0..=a.depth {
        let mut cells = Vec::new();
        for s in 1..=k {
            cells.push(fmt9(fiber_diameter(cfg.ifs.maps(), &Address::constant(s, n, k)?, &inv, &grid, &pm)?));
        }
        let all = match k.checked_pow(n as u32).filter(|&t| t <= 4096) {
            Some(total) => {
                let mut worst = 0.0f64;
                for idx in 0..total {
                    let mut syms = Vec::with_capacity(n);
                    let mut r = idx;
                    for _ in 0..n {
                        syms.push(r % k + 1);
                        r /= k;
                    }
                    worst = worst.max(fiber_diameter(cfg.ifs.maps(), &Address::new(syms, k)?, &inv, &grid, &pm)?);
                }
                fmt9(worst)
            }
            None => "-".to_string(),
        };
        println!("{n}\t{}\t{all}", cells.join("\t"));
    }
    println!("VERDICT: {}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn parse_point(s: &str, ndim: usize) -> Result<[f64; 2]> {
    let vals: Vec<f64> = s.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>()?;
    if vals.len() != ndim {
        bail!("point needs {ndim} coordinates");
    }
    let mut p = [0.0; 2];
    p[..ndim].copy_from_slice(&vals);
    Ok(p)
}

fn project(a: ProjectArgs) -> Result<ExitCode> {
    let cfg = a.sys.load()?;
    let grid = cfg.grid;
    let seed = match &a.point {
        Some(s) => parse_point(s, grid.ndim())?,
        None => invariant_box(cfg.ifs.maps(), &grid.domain(), &grid)?.center(),
    };
    for (sigma, node, level) in projection_leaves(&cfg.ifs, &grid, a.depth, seed, DEFAULT_LEAF_BUDGET)? {
        let p = grid.point(node);
        let coords: Vec<String> = p[..grid.ndim()].iter().map(|&c| fmt9(c)).collect();
        println!("{sigma} → ({}) {level}", coords.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn experiment(a: ExperimentArgs) -> Result<ExitCode> {
    let ns: Vec<usize> =
        a.n.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>().context("parsing --n")?;
    let rep: ExperimentReport = match a.name {
        ExperimentName::HypoVsDhf => exp_hypo_vs_dhf(a.grid.unwrap_or(64), a.levels, &ns)?,
        ExperimentName::DiracPair => exp_dirac_pair(a.grid.unwrap_or(64), a.levels, 0.0, 1.0, &ns)?,
        ExperimentName::Halving => {
            let n_max = ns.iter().copied().max().unwrap_or(10);
            exp_halving(a.grid.unwrap_or(1024), a.levels, n_max)?
        }
        ExperimentName::Multimetric => {
            let (fa, fb) = default_families();
            exp_multimetric_agreement(&fa, &fb, a.grid.unwrap_or(64), a.levels, &ns)?
        }
    };
    let text = rep.render();
    if let Some(path) = &a.out {
        fs::write(path, &text)?;
    }
    print!("{text}");
    Ok(if rep.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
