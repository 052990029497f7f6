//! Reproducible probes of limit and non-limit claims, reported as plain text
//! tables with explicit verdicts.

use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzy::{CompactFuzzySet, FuzzySet, LevelScale};
use crate::grid::Grid;
use crate::ifs::presets;
use crate::metrics::{
    fuzzy_hausdorff, hypo0_distance, hypo_distance, linf_distance, pointwise_gap, Pseudometric,
    PseudometricFamily,
};

/// Distance columns shared by the single-sequence experiments.
pub const DISTANCE_COLUMNS: [&str; 6] = ["n", "dhf", "dh", "dh0", "dinf", "pw"];

/// Lower bound used by the floor test for non-convergence.
pub const DIVERGENCE_FLOOR: f64 = 0.5;

/// Renders a value with the fixed nine decimals used in every report.
pub fn fmt9(x: f64) -> String {
    format!("{x:.9}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    /// Leading text columns (at least the `n` value).
    pub labels: Vec<String>,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    /// The checked relation, e.g. `d_h(u_n,u_0) <= 1/n + cell`.
    pub claim: String,
    /// The measured quantity the claim was decided on.
    pub measured: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    fn new(name: &str, columns: &[&str]) -> Self {
        ExperimentReport {
            name: name.to_string(),
            params: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.push((key.to_string(), value.to_string()));
    }

    fn row(&mut self, labels: Vec<String>, values: Vec<f64>) {
        self.rows.push(ReportRow { labels, values });
    }

    fn verdict(&mut self, pass: bool, claim: impl Into<String>, measured: impl Into<String>) {
        self.verdicts.push(Verdict { pass, claim: claim.into(), measured: measured.into() });
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Values of a named numeric column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let labels = self.rows.first().map_or(1, |r| r.labels.len());
        let i = self.columns.iter().position(|c| c == name)?.checked_sub(labels)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# experiment: {}", self.name)?;
        writeln!(f, "# params")?;
        for (k, v) in &self.params {
            writeln!(f, "# {k}: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "# note: {n}")?;
        }
        writeln!(f, "{}", self.columns.join("\t"))?;
        for r in &self.rows {
            let cells: Vec<String> = r.labels.iter().cloned().chain(r.values.iter().map(|&v| fmt9(v))).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        for v in &self.verdicts {
            writeln!(f, "VERDICT: {} {} [measured {}]", if v.pass { "PASS" } else { "FAIL" }, v.claim, v.measured)?;
        }
        Ok(())
    }
}

fn scale(levels: u16) -> Result<LevelScale> {
    LevelScale::new(levels)
}

fn distance_row(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet, pw_node: usize) -> Result<Vec<f64>> {
    Ok(vec![
        fuzzy_hausdorff(d, u, v)?,
        hypo_distance(d, u, v)?,
        hypo0_distance(d, u, v)?,
        linf_distance(u, v)?,
        pointwise_gap(u, v, pw_node)?,
    ])
}

/// `u_n(x) = 1 − x` on `[0, 1/n]` and `1 − 1/n` beyond.
pub fn hypo_sequence_member(grid: Grid, s: LevelScale, n: usize) -> Result<CompactFuzzySet> {
    let cut = 1.0 / n as f64;
    CompactFuzzySet::new(FuzzySet::from_fn(grid, s, |p| if p[0] <= cut + 1e-12 { 1.0 - p[0] } else { 1.0 - cut }))
}

fn check_divides(cells: usize, n: usize) -> Result<()> {
    if n == 0 || !cells.is_multiple_of(n) {
        return Err(Error::InvalidArgument(format!("n = {n} does not divide the {cells}-cell grid")));
    }
    Ok(())
}

/// Hypograph convergence without `d_HF` convergence on `[0,1]`.
pub fn exp_hypo_vs_dhf(cells: usize, levels: u16, ns: &[usize]) -> Result<ExperimentReport> {
    let grid = Grid::unit_interval(cells)?;
    let s = scale(levels)?;
    for &n in ns {
        check_divides(cells, n)?;
    }
    let d = Pseudometric::Euclidean;
    let u0 = CompactFuzzySet::full(grid, s);
    let mut rep = ExperimentReport::new("hypo-vs-dhf", &DISTANCE_COLUMNS);
    rep.param("grid", cells);
    rep.param("levels", levels);
    rep.param("pm", &d);
    rep.param("n", join(ns));
    rep.param("pw_at", "x = 1");
    for &n in ns {
        let un = hypo_sequence_member(grid, s, n)?;
        rep.row(vec![n.to_string()], distance_row(&d, &un, &u0, cells)?);
    }
    let dhf = rep.column("dhf").unwrap_or_default();
    let dh = rep.column("dh").unwrap_or_default();
    let cell = grid.cell_size(0);
    rep.verdict(
        dhf.iter().all(|&v| v == 1.0),
        "d_HF(u_n,u_0) = 1 for every n",
        format!("min {} max {}", fmt9(min(&dhf)), fmt9(max(&dhf))),
    );
    let slack = ns.iter().zip(&dh).map(|(&n, &v)| 1.0 / n as f64 + cell - v).fold(f64::INFINITY, f64::min);
    rep.verdict(slack >= 0.0, "d_h(u_n,u_0) <= 1/n + cell for every n", format!("worst slack {}", fmt9(slack)));
    if ns.windows(2).all(|w| w[0] < w[1]) && ns.len() > 1 {
        rep.verdict(
            dh.windows(2).all(|w| w[1] < w[0]),
            "d_h(u_n,u_0) strictly decreasing in n",
            format!("d_h = {}", join_f(&dh)),
        );
    }
    Ok(rep)
}

/// `χ_a + (1/n) χ_b` against `χ_a` on the unit interval.
pub fn exp_dirac_pair(cells: usize, levels: u16, a: f64, b: f64, ns: &[usize]) -> Result<ExperimentReport> {
    let grid = Grid::unit_interval(cells)?;
    let s = scale(levels)?;
    let snap = |t: f64| grid.snap([t, 0.0]).ok_or_else(|| Error::InvalidArgument(format!("point {t} outside [0,1]")));
    let (ia, ib) = (snap(a)?, snap(b)?);
    if ia == ib {
        return Err(Error::InvalidArgument("a and b snap to the same node".into()));
    }
    let d = Pseudometric::Euclidean;
    let dab = d.eval(&grid.point(ia), &grid.point(ib));
    let chi_a = CompactFuzzySet::dirac(grid, s, ia)?;
    let mut rep = ExperimentReport::new("dirac-pair", &DISTANCE_COLUMNS);
    rep.param("grid", cells);
    rep.param("levels", levels);
    rep.param("pm", &d);
    rep.param("a", grid.point(ia)[0]);
    rep.param("b", grid.point(ib)[0]);
    rep.param("n", join(ns));
    rep.param("pw_at", "b");
    let mut ok_inf = true;
    let mut ok_h0 = true;
    let mut ok_const = true;
    let mut floor_ns = Vec::new();
    for &n in ns {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let lb = s.quantize(1.0 / n as f64);
        let un = FuzzySet::from_entries(grid, s, &[(ia, s.top()), (ib, lb)])?;
        let row = distance_row(&d, &un, &chi_a, ib)?;
        ok_inf &= row[3] == s.alpha(lb);
        ok_h0 &= row[2] <= 1.0 / n as f64;
        if lb == 0 {
            floor_ns.push(n);
            ok_const &= row.iter().all(|&v| v == 0.0);
        } else {
            ok_const &= row[0] == dab && row[1] == dab;
        }
        rep.row(vec![n.to_string()], row);
    }
    if !floor_ns.is_empty() {
        rep.notes.push(format!(
            "quantization floor: 1/n < 1/L for n in {{{}}}, the perturbation vanishes and every distance is 0",
            join(&floor_ns)
        ));
    }
    let dinf = rep.column("dinf").unwrap_or_default();
    let dh0 = rep.column("dh0").unwrap_or_default();
    let dh = rep.column("dh").unwrap_or_default();
    rep.verdict(ok_inf, "d_inf = floor(L/n)/L for every n", format!("d_inf = {}", join_f(&dinf)));
    rep.verdict(ok_h0, "d_h0 <= 1/n for every n", format!("d_h0 = {}", join_f(&dh0)));
    rep.verdict(
        ok_const,
        format!("d_h = d_HF = d(a,b) = {} above the quantization floor", fmt9(dab)),
        format!("d_h = {}", join_f(&dh)),
    );
    Ok(rep)
}

/// Iterates of `f(x) = x/2`, `ϱ = id` from `χ_1`, compared with `χ_0`.
pub fn exp_halving(cells: usize, levels: u16, n_max: usize) -> Result<ExperimentReport> {
    let grid = Grid::unit_interval(cells)?;
    let s = scale(levels)?;
    let sf = presets::halving(s);
    let op = sf.on_grid(grid);
    let d = Pseudometric::Euclidean;
    let chi0 = CompactFuzzySet::dirac(grid, s, 0)?;
    let mut rep = ExperimentReport::new("halving", &DISTANCE_COLUMNS);
    rep.param("grid", cells);
    rep.param("levels", levels);
    rep.param("pm", &d);
    rep.param("n_max", n_max);
    rep.param("pw_at", "snapped 1/2^n");
    let mut u = CompactFuzzySet::dirac(grid, s, cells)?;
    let mut dirac_ok = true;
    let mut pw_ok = true;
    let mut dhf_ok = true;
    let mut halving_ok = true;
    let mut prev: Option<f64> = None;
    for n in 0..=n_max {
        if n > 0 {
            u = op.apply_pointwise(&u)?;
        }
        let target = grid.snap([0.5f64.powi(n as i32), 0.0]).expect("inside [0,1]");
        dirac_ok &= u == CompactFuzzySet::dirac(grid, s, target)?;
        let row = distance_row(&d, &u, &chi0, target)?;
        dhf_ok &= row[0] == grid.point(target)[0];
        pw_ok &= if target == 0 { row[4] == 0.0 } else { row[4] == 1.0 };
        if let Some(p) = prev {
            halving_ok &= (row[0] - p / 2.0).abs() <= grid.cell_size(0);
        }
        prev = Some(row[0]);
        rep.row(vec![n.to_string()], row);
    }
    let dhf = rep.column("dhf").unwrap_or_default();
    rep.verdict(dirac_ok, "n-th iterate is the Dirac at the node nearest 1/2^n", format!("{} iterates", n_max + 1));
    rep.verdict(dhf_ok, "d_HF(u_n, chi_0) = snapped 1/2^n", format!("d_HF = {}", join_f(&dhf)));
    rep.verdict(halving_ok, "|d_HF(n) - d_HF(n-1)/2| <= cell", format!("cell {}", fmt9(grid.cell_size(0))));
    rep.verdict(
        pw_ok,
        "pointwise gap at the moving point is 1 until it reaches 0",
        format!("pw = {}", join_f(&rep.column("pw").unwrap_or_default())),
    );
    Ok(rep)
}

/// Classification of a finite distance sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Converges,
    Diverges,
    Inconclusive,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Converges => "converges",
            Trend::Diverges => "diverges",
            Trend::Inconclusive => "inconclusive",
        })
    }
}

/// Converges when the last distance is within `resolution`; diverges when
/// every distance stays at or above [`DIVERGENCE_FLOOR`].
pub fn classify(distances: &[f64], resolution: f64) -> Trend {
    match distances.last() {
        Some(&last) if last <= resolution => Trend::Converges,
        Some(_) if min(distances) >= DIVERGENCE_FLOOR => Trend::Diverges,
        _ => Trend::Inconclusive,
    }
}

/// A named sequence of fuzzy sets and its claimed limit.
pub struct SequenceFamily {
    pub name: String,
    pub members: Vec<(usize, CompactFuzzySet)>,
    pub limit: CompactFuzzySet,
}

/// The three sequences of the agreement probe, embedded along the diagonal
/// of the unit square: a constant sequence, the hypograph sequence and the
/// halving iterates.
pub fn multimetric_sequences(cells: usize, levels: u16, ns: &[usize]) -> Result<Vec<SequenceFamily>> {
    let grid = Grid::unit_square(cells)?;
    let line = Grid::unit_interval(cells)?;
    let s = scale(levels)?;
    let diag = |u: &FuzzySet| -> Result<CompactFuzzySet> {
        let entries: Vec<_> = u.support().into_iter().map(|i| (grid.index([i, i]), u.level(i))).collect();
        CompactFuzzySet::new(FuzzySet::from_entries(grid, s, &entries)?)
    };
    for &n in ns {
        check_divides(cells, n)?;
    }
    let constant = diag(hypo_sequence_member(line, s, 2)?.as_fuzzy())?;
    let hypo = ns.iter().map(|&n| Ok((n, diag(hypo_sequence_member(line, s, n)?.as_fuzzy())?))).collect::<Result<Vec<_>>>()?;
    let halving = ns
        .iter()
        .map(|&n| {
            let t = line.snap([0.5f64.powi(n as i32), 0.0]).expect("inside [0,1]");
            Ok((n, CompactFuzzySet::dirac(grid, s, grid.index([t, t]))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        SequenceFamily {
            name: "constant".into(),
            members: ns.iter().map(|&n| (n, constant.clone())).collect(),
            limit: constant,
        },
        SequenceFamily { name: "hypo".into(), members: hypo, limit: diag(CompactFuzzySet::full(line, s).as_fuzzy())? },
        SequenceFamily {
            name: "halving".into(),
            members: halving,
            limit: CompactFuzzySet::dirac(grid, s, 0)?,
        },
    ])
}

/// Compares convergence verdicts under the max members of two families.
pub fn exp_multimetric_agreement(
    family_a: &PseudometricFamily,
    family_b: &PseudometricFamily,
    cells: usize,
    levels: u16,
    ns: &[usize],
) -> Result<ExperimentReport> {
    let (da, db) = (family_a.max_member(), family_b.max_member());
    let grid = Grid::unit_square(cells)?;
    let resolution = grid.cell_diagonal();
    let mut rep = ExperimentReport::new("multimetric", &["n", "seq", "dhf_a", "dhf_b"]);
    rep.param("grid", format!("{cells}x{cells}"));
    rep.param("levels", levels);
    rep.param("family_a", &da);
    rep.param("family_b", &db);
    rep.param("n", join(ns));
    rep.param("resolution", fmt9(resolution));
    rep.param("floor", fmt9(DIVERGENCE_FLOOR));
    for seq in multimetric_sequences(cells, levels, ns)? {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (n, u) in &seq.members {
            let va = fuzzy_hausdorff(&da, u, &seq.limit)?;
            let vb = fuzzy_hausdorff(&db, u, &seq.limit)?;
            rep.row(vec![n.to_string(), seq.name.clone()], vec![va, vb]);
            a.push(va);
            b.push(vb);
        }
        let (ta, tb) = (classify(&a, resolution), classify(&b, resolution));
        rep.verdict(
            ta == tb && ta != Trend::Inconclusive,
            format!("{}: verdicts agree and are decided", seq.name),
            format!("a {ta}, b {tb}"),
        );
    }
    Ok(rep)
}

/// `{euclid}` against the directed closure of `{proj:0, proj:1}`.
pub fn default_families() -> (PseudometricFamily, PseudometricFamily) {
    let a = PseudometricFamily::new(vec![Pseudometric::Euclidean]).expect("nonempty");
    let b = PseudometricFamily::new(vec![Pseudometric::Projection(0), Pseudometric::Projection(1)])
        .and_then(|f| f.directed_closure(2))
        .expect("two members");
    (a, b)
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn join_f(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt9(x)).collect::<Vec<_>>().join(",")
}

fn min(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypo_member_shape() {
        let g = Grid::unit_interval(64).unwrap();
        let s = LevelScale::new(16).unwrap();
        let u1 = hypo_sequence_member(g, s, 1).unwrap();
        assert_eq!(u1.cut(16).unwrap(), vec![0]);
        let u4 = hypo_sequence_member(g, s, 4).unwrap();
        assert_eq!(u4.level(64), 12);
        assert_eq!(u4.level(4), 15);
    }

    #[test]
    fn misaligned_n_rejected() {
        assert!(exp_hypo_vs_dhf(64, 16, &[3]).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&[0.5, 0.1, 0.0], 0.01), Trend::Converges);
        assert_eq!(classify(&[1.0, 1.0], 0.01), Trend::Diverges);
        assert_eq!(classify(&[1.0, 0.2], 0.01), Trend::Inconclusive);
    }

    #[test]
    fn report_layout() {
        let rep = exp_dirac_pair(16, 16, 0.0, 1.0, &[2]).unwrap();
        let text = rep.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# experiment: dirac-pair");
        assert_eq!(lines[1], "# params");
        assert!(text.contains("n\tdhf\tdh\tdh0\tdinf\tpw\n"));
        assert!(text.contains("2\t1.000000000\t1.000000000\t0.500000000\t0.500000000\t0.500000000\n"));
        assert!(lines.iter().filter(|l| l.starts_with("VERDICT: ")).count() == 3);
    }

    #[test]
    fn quantization_floor_is_reported() {
        let rep = exp_dirac_pair(16, 4, 0.0, 1.0, &[8]).unwrap();
        assert!(rep.passed());
        assert!(rep.notes[0].contains("quantization floor"));
        assert_eq!(rep.rows[0].values, vec![0.0; 5]);
    }
}
