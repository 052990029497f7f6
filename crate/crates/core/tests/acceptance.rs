//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Set `UPDATE_GOLDEN=1` to rewrite the PGM goldens.

mod common;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use fuzzy_ifs::codespace::{attractor_via_projection, grey_partials, Address};
use fuzzy_ifs::experiments::{
    default_families, exp_dirac_pair, exp_halving, exp_hypo_vs_dhf, exp_multimetric_agreement, fmt9,
};
use fuzzy_ifs::format::render_pgm;
use fuzzy_ifs::ifs::{crisp_fixed_set, invariant_box, iterate_to_fixpoint, presets, FuzzyIfs};
use fuzzy_ifs::metrics::{fuzzy_hausdorff, hausdorff_nodes, Distance, Pseudometric};
use fuzzy_ifs::{CompactFuzzySet, Grid, GreySystem, LevelScale};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    summary: String,
    /// Everything measured, for the determinism comparison.
    report: String,
    images: Vec<(&'static str, String)>,
}

impl Outcome {
    fn new(pass: bool, summary: String, report: String) -> Self {
        Outcome { pass, summary, report, images: Vec::new() }
    }
}

const EUCLID: Pseudometric = Pseudometric::Euclidean;

fn dhf() -> Distance {
    Distance::dhf(EUCLID)
}

fn operator_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = Grid::unit_square(32).unwrap();
    let s = LevelScale::new(16).unwrap();
    let mut mismatches = 0;
    let mut report = String::new();
    for _ in 0..1000 {
        let k = rng.gen_range(1..=4);
        let sf = random_system(&mut rng, s, k, 2);
        let density = rng.gen_range(0.01..0.5);
        let u = random_set(&mut rng, g, s, density);
        let op = sf.on_grid(g);
        let a = op.apply_cuts(&u).unwrap();
        let b = op.apply_pointwise(&u).unwrap();
        mismatches += usize::from(a != b);
        report.push_str(&a.support().len().to_string());
        report.push(' ');
    }
    Outcome::new(mismatches == 0, format!("cuts vs pointwise on 1000 pairs, {mismatches} mismatches"), report)
}

fn hypo_example() -> Outcome {
    let rep = exp_hypo_vs_dhf(64, 16, &[2, 4, 8, 16]).unwrap();
    let dh = rep.column("dh").unwrap();
    Outcome::new(rep.passed(), format!("d_HF all 1, d_h = {}", list(&dh)), rep.render())
}

fn dirac_pair() -> Outcome {
    let rep = exp_dirac_pair(64, 16, 0.0, 1.0, &[2, 4, 8, 16]).unwrap();
    let dinf = rep.column("dinf").unwrap();
    let exact = dinf == [0.5, 0.25, 0.125, 0.0625];
    let dh = rep.column("dh").unwrap();
    let dhf = rep.column("dhf").unwrap();
    let ones = dh.iter().chain(&dhf).all(|&v| v == 1.0);
    Outcome::new(
        rep.passed() && exact && ones,
        format!("d_inf = {}, d_h0 = {}, d_h = d_HF = 1", list(&dinf), list(&rep.column("dh0").unwrap())),
        rep.render(),
    )
}

fn halving() -> Outcome {
    let rep = exp_halving(1024, 16, 10).unwrap();
    let g = Grid::unit_interval(1024).unwrap();
    let s = LevelScale::new(16).unwrap();
    let sf = presets::halving(s);
    let run = iterate_to_fixpoint(&sf, &CompactFuzzySet::dirac(g, s, 1024).unwrap(), &dhf(), 1e-9, 100).unwrap();
    let chi0 = CompactFuzzySet::dirac(g, s, 0).unwrap();
    let cert = fuzzy_hausdorff(&EUCLID, &sf.on_grid(g).apply_pointwise(&run.fixed).unwrap(), &run.fixed).unwrap();
    let pass = rep.passed() && run.fixed == chi0 && cert == 0.0;
    let mut report = rep.render();
    writeln!(report, "iterations {} certificate {}", run.iterations(), fmt9(cert)).unwrap();
    let mut out = Outcome::new(
        pass,
        format!("Diracs at 1/2^n for n <= 10, fixed point chi_0 after {} steps, certificate {}", run.iterations(), fmt9(cert)),
        report,
    );
    out.images.push(("halving_1024.pgm", render_pgm(&run.fixed)));
    out
}

fn iterate_from_box(sf: &FuzzyIfs, g: Grid) -> CompactFuzzySet {
    let inv = invariant_box(sf.maps(), &g.domain(), &g).unwrap();
    let u0 = CompactFuzzySet::indicator(g, sf.scale(), &g.nodes_in(&inv)).unwrap();
    iterate_to_fixpoint(sf, &u0, &dhf(), g.cell_diagonal(), 500).unwrap().fixed
}

fn crisp_attractor() -> Outcome {
    let g = Grid::unit_square(256).unwrap();
    let s = LevelScale::new(16).unwrap();
    let sf = presets::sierpinski(GreySystem::identity(s, 3));
    let u = iterate_from_box(&sf, g);
    let v: Vec<usize> = presets::SIERPINSKI_VERTICES.iter().map(|&p| g.snap(p).unwrap()).collect();
    let crisp = crisp_fixed_set(&sf.on_grid(g), &v, 500).unwrap();
    let support = u.support();
    let dh = hausdorff_nodes(&EUCLID, &g, &support, &crisp).unwrap();
    let full = support.iter().all(|&x| u.level(x) == s.top());
    let cells = dh / g.max_cell();
    let mut out = Outcome::new(
        dh <= 2.0 * g.max_cell() + 1e-12 && full,
        format!("d_H(support, crisp) = {} cells, all levels L: {full}", fmt9(cells)),
        format!("{} {} {}\n", support.len(), crisp.len(), fmt9(dh)),
    );
    out.images.push(("sierpinski_256.pgm", render_pgm(&u)));
    out
}

fn projection_agreement() -> Outcome {
    let g = Grid::unit_square(256).unwrap();
    let s = LevelScale::new(16).unwrap();
    let sf = presets::sierpinski_half_shaded(s);
    let iterated = iterate_from_box(&sf, g);
    let bound = 2.0 / 16.0 + 2.0 * g.max_cell();
    let mut dists = Vec::new();
    let mut report = String::new();
    let mut last = None;
    for depth in [6, 8, 10] {
        let pa = attractor_via_projection(&sf, &g, depth, [0.5, 0.5]).unwrap();
        let d = fuzzy_hausdorff(&EUCLID, &pa.set, &iterated).unwrap();
        writeln!(report, "{depth}\t{}\t{}\t{}", fmt9(d), pa.leaves, pa.max_unsettled_level).unwrap();
        dists.push(d);
        last = Some(pa.set);
    }
    let decreasing = dists.windows(2).all(|w| w[1] <= w[0]);
    let within = dists[2] <= bound + 1e-12;
    let mut out = Outcome::new(
        within && decreasing,
        format!("d_HF at N = 6,8,10: {} (bound {})", list(&dists), fmt9(bound)),
        report,
    );
    out.images.push(("shaded_iterate_256.pgm", render_pgm(&iterated)));
    out.images.push(("shaded_projection_256.pgm", render_pgm(&last.unwrap())));
    out
}

fn contraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = Grid::unit_square(64).unwrap();
    let s = LevelScale::new(16).unwrap();
    let sf = presets::sierpinski(random_greys(&mut rng, s, 3));
    let op = sf.on_grid(g);
    let h = g.max_cell();
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let mut report = String::new();
    for _ in 0..200 {
        let (du, dv) = (rng.gen_range(0.01..0.3), rng.gen_range(0.01..0.3));
        let u = random_set(&mut rng, g, s, du);
        let v = random_set(&mut rng, g, s, dv);
        let before = fuzzy_hausdorff(&EUCLID, &u, &v).unwrap();
        let after = fuzzy_hausdorff(&EUCLID, &op.apply_pointwise(&u).unwrap(), &op.apply_pointwise(&v).unwrap()).unwrap();
        let slack = 0.5 * before + 2.0 * h - after;
        violations += usize::from(slack < -1e-12);
        worst = worst.min(slack);
        writeln!(report, "{} {}", fmt9(before), fmt9(after)).unwrap();
    }
    Outcome::new(violations == 0, format!("200 pairs, {violations} violations, worst slack {}", fmt9(worst)), report)
}

fn grey_limits() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    let mut report = String::new();
    for _ in 0..1000 {
        let s = LevelScale::new(rng.gen_range(1..=32)).unwrap();
        let k = rng.gen_range(1..=5);
        let greys = random_greys(&mut rng, s, k);
        let depth = rng.gen_range(0..=60);
        let a = Address::new((0..depth).map(|_| rng.gen_range(1..=k)).collect(), k).unwrap();
        let p = grey_partials(&greys, &a).unwrap();
        let nonincreasing = p.windows(2).all(|w| w[1] <= w[0]);
        let drops = p.windows(2).filter(|w| w[1] < w[0]).count();
        let absorbed = p.iter().skip_while(|&&v| v != 0).all(|&v| v == 0);
        bad += usize::from(!(nonincreasing && drops <= s.top() as usize && absorbed));
        writeln!(report, "{}", p.last().unwrap()).unwrap();
    }
    Outcome::new(bad == 0, format!("1000 systems and addresses, {bad} failures"), report)
}

fn multimetric() -> Outcome {
    let (a, b) = default_families();
    let rep = exp_multimetric_agreement(&a, &b, 64, 16, &[2, 4, 8, 16, 32, 64]).unwrap();
    let measured: Vec<String> = rep.verdicts.iter().map(|v| v.measured.clone()).collect();
    Outcome::new(rep.passed(), measured.join("; "), rep.render())
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt9(x)).collect::<Vec<_>>().join(",")
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    ("operator equivalence", operator_equivalence),
    ("hypograph vs level-wise distance", hypo_example),
    ("Dirac pair", dirac_pair),
    ("halving system", halving),
    ("crisp attractor from identity greys", crisp_attractor),
    ("projection vs iteration", projection_agreement),
    ("contraction on pairs", contraction),
    ("grey-limit monotonicity", grey_limits),
    ("multimetric agreement", multimetric),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check_goldens(images: &[(&'static str, String)]) -> (bool, String) {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1");
    let mut bad = Vec::new();
    for (name, pgm) in images {
        let path = golden_dir().join(name);
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, pgm).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if &want == pgm => {}
            Ok(_) => bad.push(format!("{name} differs")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let msg = if bad.is_empty() { format!("{} goldens match", images.len()) } else { bad.join(", ") };
    (bad.is_empty(), msg)
}

fn main() -> ExitCode {
    let mut all = true;
    let mut first = Vec::new();
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        println!(
            "{} criterion {:>2} {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.summary,
            t.elapsed().as_secs_f64()
        );
        all &= o.pass;
        first.push(o);
    }
    let t = Instant::now();
    let mut differ = Vec::new();
    for (i, (_, run)) in CRITERIA.iter().enumerate() {
        let again = run();
        let a = &first[i];
        if again.report != a.report || again.summary != a.summary || again.images != a.images {
            differ.push(i + 1);
        }
    }
    let images: Vec<_> = first.iter().flat_map(|o| o.images.iter().cloned()).collect();
    let (golden_ok, golden_msg) = check_goldens(&images);
    let pass = differ.is_empty() && golden_ok;
    println!(
        "{} criterion 10 determinism: reruns differ on {:?}, {golden_msg} ({:.1}s)",
        if pass { "PASS" } else { "FAIL" },
        differ,
        t.elapsed().as_secs_f64()
    );
    all &= pass;
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
