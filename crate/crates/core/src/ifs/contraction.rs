use rand::Rng;

use crate::grid::{BoxRegion, Point};
use crate::ifs::ComparisonFunction;
use crate::metrics::{sample_point, Pseudometric};

/// `x ↦ A x + b` on the plane. One-dimensional systems use only `A[0][0]`
/// and `b[0]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    pub matrix: [[f64; 2]; 2],
    pub offset: [f64; 2],
}

impl AffineMap {
    pub fn new(matrix: [[f64; 2]; 2], offset: [f64; 2]) -> Self {
        AffineMap { matrix, offset }
    }

    /// `x ↦ a x + b` on the line.
    pub fn line(a: f64, b: f64) -> Self {
        AffineMap { matrix: [[a, 0.0], [0.0, 0.0]], offset: [b, 0.0] }
    }

    pub fn identity() -> Self {
        AffineMap { matrix: [[1.0, 0.0], [0.0, 1.0]], offset: [0.0, 0.0] }
    }

    /// Similarity with ratio `r` fixing `center`: `x ↦ center + r (x − center)`.
    pub fn toward(r: f64, center: Point) -> Self {
        AffineMap { matrix: [[r, 0.0], [0.0, r]], offset: [(1.0 - r) * center[0], (1.0 - r) * center[1]] }
    }

    pub fn apply(&self, p: Point) -> Point {
        let m = &self.matrix;
        [
            m[0][0] * p[0] + m[0][1] * p[1] + self.offset[0],
            m[1][0] * p[0] + m[1][1] * p[1] + self.offset[1],
        ]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let a = &self.matrix;
        let b = &inner.matrix;
        let mut m = [[0.0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        let o = self.apply(inner.offset);
        AffineMap { matrix: m, offset: o }
    }

    /// Upper bound on the Lipschitz constant under `d`. Infinite when the map
    /// mixes in a direction `d` cannot see.
    pub fn lipschitz(&self, d: &Pseudometric) -> f64 {
        let m = &self.matrix;
        match d {
            Pseudometric::Euclidean => {
                // largest singular value of a 2×2 matrix
                let (a, b, c, dd) = (m[0][0], m[0][1], m[1][0], m[1][1]);
                let s = a * a + b * b + c * c + dd * dd;
                let det = a * dd - b * c;
                let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
                ((s + disc) / 2.0).sqrt()
            }
            Pseudometric::Projection(axis) => {
                let other = 1 - axis;
                if m[*axis][other] != 0.0 {
                    f64::INFINITY
                } else {
                    m[*axis][*axis].abs()
                }
            }
            Pseudometric::WeightedMax(w) => {
                let weight = |i: usize| w.get(i).copied().unwrap_or(0.0);
                (0..2)
                    .map(|i| {
                        (0..2)
                            .map(|j| {
                                let coef = weight(i) * m[i][j].abs();
                                if coef == 0.0 {
                                    0.0
                                } else if weight(j) == 0.0 {
                                    f64::INFINITY
                                } else {
                                    coef / weight(j)
                                }
                            })
                            .sum::<f64>()
                    })
                    .fold(0.0, f64::max)
            }
            Pseudometric::MaxOf(ms) => ms.iter().map(|p| self.lipschitz(p)).fold(0.0, f64::max),
        }
    }
}

/// An affine map with its declared contraction witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionMap {
    affine: AffineMap,
    witnesses: Vec<(Pseudometric, ComparisonFunction)>,
}

impl ContractionMap {
    pub fn new(affine: AffineMap) -> Self {
        ContractionMap { affine, witnesses: Vec::new() }
    }

    pub fn with_witness(mut self, pm: Pseudometric, phi: ComparisonFunction) -> Self {
        self.witnesses.retain(|(p, _)| p != &pm);
        self.witnesses.push((pm, phi));
        self
    }

    pub fn affine(&self) -> &AffineMap {
        &self.affine
    }

    pub fn apply(&self, p: Point) -> Point {
        self.affine.apply(p)
    }

    /// Witnesses declared explicitly, in declaration order.
    pub fn witnesses(&self) -> &[(Pseudometric, ComparisonFunction)] {
        &self.witnesses
    }

    /// Declared witness for `pm`, else the linear witness from the Lipschitz
    /// bound when that bound is below one.
    pub fn witness(&self, pm: &Pseudometric) -> Option<ComparisonFunction> {
        if let Some((_, phi)) = self.witnesses.iter().find(|(p, _)| p == pm) {
            return Some(phi.clone());
        }
        ComparisonFunction::linear(self.affine.lipschitz(pm)).ok()
    }
}

/// Result of sampling `d(f(x),f(y)) <= φ(d(x,y))`. Evidence only.
#[derive(Clone, Debug, PartialEq)]
pub struct MatkowskiReport {
    pub samples: usize,
    pub violations: usize,
    /// Smallest `φ(d(x,y)) − d(f(x),f(y))` seen.
    pub worst_slack: f64,
}

impl MatkowskiReport {
    pub fn holds_on_samples(&self) -> bool {
        self.violations == 0
    }
}

pub fn verify_matkowski<R: Rng>(
    f: &AffineMap,
    d: &Pseudometric,
    phi: &ComparisonFunction,
    samples: usize,
    region: &BoxRegion,
    rng: &mut R,
) -> MatkowskiReport {
    let mut violations = 0;
    let mut worst_slack = f64::INFINITY;
    for _ in 0..samples.max(1) {
        let x = sample_point(region, rng);
        let y = sample_point(region, rng);
        let before = d.eval(&x, &y);
        let after = d.eval(&f.apply(x), &f.apply(y));
        let slack = phi.eval(before) - after;
        if slack < -1e-12 * (1.0 + before) {
            violations += 1;
        }
        worst_slack = worst_slack.min(slack);
    }
    MatkowskiReport { samples: samples.max(1), violations, worst_slack }
}
