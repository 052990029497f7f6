use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{BoxRegion, Point, MAX_DIM};

/// A pseudometric on the plane (or line).
#[derive(Clone, Debug, PartialEq)]
pub enum Pseudometric {
    Euclidean,
    /// `|x_a - y_a|`
    Projection(usize),
    /// `max_a w_a |x_a - y_a|`
    WeightedMax(Vec<f64>),
    /// Pointwise maximum of the members.
    MaxOf(Vec<Pseudometric>),
}

impl Pseudometric {
    pub fn eval(&self, x: &Point, y: &Point) -> f64 {
        match self {
            Pseudometric::Euclidean => {
                let dx = x[0] - y[0];
                let dy = x[1] - y[1];
                (dx * dx + dy * dy).sqrt()
            }
            Pseudometric::Projection(a) => (x[*a] - y[*a]).abs(),
            Pseudometric::WeightedMax(w) => {
                w.iter().enumerate().map(|(a, wa)| wa * (x[a] - y[a]).abs()).fold(0.0, f64::max)
            }
            Pseudometric::MaxOf(ms) => ms.iter().map(|m| m.eval(x, y)).fold(0.0, f64::max),
        }
    }

    /// Spec string: `euclid`, `proj:<axis>`, `wmax:<w1,...>`, `max(<a>|<b>|...)`.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Pseudometric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pseudometric::Euclidean => write!(f, "euclid"),
            Pseudometric::Projection(a) => write!(f, "proj:{a}"),
            Pseudometric::WeightedMax(w) => {
                let ws: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                write!(f, "wmax:{}", ws.join(","))
            }
            Pseudometric::MaxOf(ms) => {
                let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                write!(f, "max({})", names.join("|"))
            }
        }
    }
}

impl FromStr for Pseudometric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPseudometric(s.to_string());
        let s = s.trim();
        if s == "euclid" {
            return Ok(Pseudometric::Euclidean);
        }
        if let Some(axis) = s.strip_prefix("proj:") {
            let a: usize = axis.parse().map_err(|_| bad())?;
            if a >= MAX_DIM {
                return Err(bad());
            }
            return Ok(Pseudometric::Projection(a));
        }
        if let Some(ws) = s.strip_prefix("wmax:") {
            let w = ws.split(',').map(|t| t.trim().parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>();
            let w = w.map_err(|_| bad())?;
            if w.is_empty() || w.len() > MAX_DIM || w.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(bad());
            }
            return Ok(Pseudometric::WeightedMax(w));
        }
        if let Some(inner) = s.strip_prefix("max(").and_then(|r| r.strip_suffix(')')) {
            let ms = inner.split('|').map(str::parse).collect::<Result<Vec<Pseudometric>>>()?;
            if ms.is_empty() {
                return Err(bad());
            }
            return Ok(Pseudometric::MaxOf(ms));
        }
        Err(bad())
    }
}

/// A finite family of pseudometrics, the desk-scale multimetric.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudometricFamily {
    members: Vec<Pseudometric>,
}

impl PseudometricFamily {
    pub fn new(members: Vec<Pseudometric>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("empty pseudometric family".into()));
        }
        Ok(PseudometricFamily { members })
    }

    pub fn members(&self) -> &[Pseudometric] {
        &self.members
    }

    /// Maxima of all nonempty subsets with at most `max_subset` members,
    /// ordered by subset size and then lexicographically. Singletons stay
    /// as the original member.
    pub fn directed_closure(&self, max_subset: usize) -> Result<PseudometricFamily> {
        if max_subset == 0 || max_subset > self.members.len() {
            return Err(Error::InvalidArgument(format!(
                "subset bound {max_subset} not in 1..={}",
                self.members.len()
            )));
        }
        let n = self.members.len();
        let mut out = Vec::new();
        for size in 1..=max_subset {
            for subset in combinations(n, size) {
                if size == 1 {
                    out.push(self.members[subset[0]].clone());
                } else {
                    out.push(Pseudometric::MaxOf(subset.iter().map(|&i| self.members[i].clone()).collect()));
                }
            }
        }
        Ok(PseudometricFamily { members: out })
    }

    /// Pointwise max of every member.
    pub fn max_member(&self) -> Pseudometric {
        if self.members.len() == 1 {
            self.members[0].clone()
        } else {
            Pseudometric::MaxOf(self.members.clone())
        }
    }

    /// Spot check of separation: every sampled pair of distinct points is
    /// told apart by some member.
    pub fn separates_samples<R: Rng>(&self, region: &BoxRegion, samples: usize, rng: &mut R) -> bool {
        (0..samples).all(|_| {
            let x = sample_point(region, rng);
            let y = sample_point(region, rng);
            x == y || self.members.iter().any(|m| m.eval(&x, &y) > 0.0)
        })
    }
}

/// Uniform point in `region`.
pub fn sample_point<R: Rng>(region: &BoxRegion, rng: &mut R) -> Point {
    let mut p = [0.0; MAX_DIM];
    for a in 0..region.ndim {
        p[a] = if region.hi[a] > region.lo[a] { rng.gen_range(region.lo[a]..=region.hi[a]) } else { region.lo[a] };
    }
    p
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
