#![allow(dead_code)]

use fuzzy_ifs::grid::{Grid, Point};
use fuzzy_ifs::ifs::{AffineMap, ContractionMap, FuzzyIfs};
use fuzzy_ifs::metrics::{base_plane, hypo_points, product_distance, HypoPoint, Pseudometric};
use fuzzy_ifs::{CompactFuzzySet, FuzzySet, GreyLevelMap, GreySystem, Level, LevelScale};
use rand::Rng;

pub fn random_set<R: Rng>(rng: &mut R, grid: Grid, scale: LevelScale, density: f64) -> CompactFuzzySet {
    let mut levels: Vec<Level> =
        (0..grid.len()).map(|_| if rng.gen_bool(density) { rng.gen_range(1..=scale.top()) } else { 0 }).collect();
    let peak = rng.gen_range(0..grid.len());
    levels[peak] = scale.top();
    CompactFuzzySet::from_levels(grid, scale, levels).unwrap()
}

/// Random set whose support lies in the node box `lo..=hi`.
pub fn random_set_in<R: Rng>(
    rng: &mut R,
    grid: Grid,
    scale: LevelScale,
    lo: [usize; 2],
    hi: [usize; 2],
    density: f64,
) -> CompactFuzzySet {
    let mut u = FuzzySet::zeros(grid, scale);
    let mut nodes = Vec::new();
    for j in lo[1]..=hi[1] {
        for i in lo[0]..=hi[0] {
            nodes.push(grid.index([i, j]));
        }
    }
    for &x in &nodes {
        if rng.gen_bool(density) {
            u.raise(x, rng.gen_range(1..=scale.top())).unwrap();
        }
    }
    u.raise(nodes[rng.gen_range(0..nodes.len())], scale.top()).unwrap();
    CompactFuzzySet::new(u).unwrap()
}

pub fn random_grey<R: Rng>(rng: &mut R, scale: LevelScale) -> GreyLevelMap {
    let top = scale.top();
    let mut t: Vec<Level> = (0..top).map(|_| rng.gen_range(0..=top)).collect();
    t.sort_unstable();
    let mut table = vec![0];
    table.extend(t);
    GreyLevelMap::new(table).unwrap()
}

/// Random admissible system: one map chosen at random is forced to `ϱ(1)=1`.
pub fn random_greys<R: Rng>(rng: &mut R, scale: LevelScale, k: usize) -> GreySystem {
    let mut maps: Vec<GreyLevelMap> = (0..k).map(|_| random_grey(rng, scale)).collect();
    let j = rng.gen_range(0..k);
    let mut table = maps[j].table().to_vec();
    *table.last_mut().unwrap() = scale.top();
    maps[j] = GreyLevelMap::new(table).unwrap();
    GreySystem::new(maps).unwrap()
}

/// Affine map with entries in `[-0.4, 0.4]` mapping the unit box into itself.
pub fn random_affine<R: Rng>(rng: &mut R, ndim: usize) -> AffineMap {
    let mut m = [[0.0f64; 2]; 2];
    let mut b = [0.0; 2];
    for i in 0..ndim {
        for j in 0..ndim {
            m[i][j] = rng.gen_range(-0.4..=0.4);
        }
        let neg: f64 = m[i].iter().map(|&a| a.min(0.0)).sum();
        let pos: f64 = m[i].iter().map(|&a| a.max(0.0)).sum();
        b[i] = rng.gen_range(-neg..=1.0 - pos);
    }
    AffineMap::new(m, b)
}

pub fn random_system<R: Rng>(rng: &mut R, scale: LevelScale, k: usize, ndim: usize) -> FuzzyIfs {
    let maps = (0..k).map(|_| ContractionMap::new(random_affine(rng, ndim))).collect();
    FuzzyIfs::new(maps, random_greys(rng, scale, k)).unwrap()
}

pub fn brute_cut(u: &FuzzySet, j: Level) -> Vec<usize> {
    let j = j.max(1) as f64;
    (0..u.grid().len()).filter(|&x| u.membership(x) * u.scale().top() as f64 >= j - 1e-9).collect()
}

pub fn points(grid: &Grid, nodes: &[usize]) -> Vec<Point> {
    nodes.iter().map(|&i| grid.point(i)).collect()
}

/// Full double loop, no early exit.
pub fn brute_hausdorff<P>(a: &[P], b: &[P], d: impl Fn(&P, &P) -> f64) -> Option<f64> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Some(0.0),
        (false, false) => {}
        _ => return None,
    }
    let dir = |a: &[P], b: &[P]| {
        a.iter().map(|x| b.iter().map(|y| d(x, y)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    Some(dir(a, b).max(dir(b, a)))
}

pub fn brute_dhf(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet) -> Option<f64> {
    let g = u.grid();
    let mut best = 0.0f64;
    for j in 1..=u.scale().top() {
        let a = points(g, &brute_cut(u, j));
        let b = points(g, &brute_cut(v, j));
        best = best.max(brute_hausdorff(&a, &b, |x, y| d.eval(x, y))?);
    }
    Some(best)
}

pub fn brute_hypo(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet) -> Option<f64> {
    let (a, b) = (hypo_points(u), hypo_points(v));
    brute_hausdorff(&a, &b, |p: &HypoPoint, q: &HypoPoint| product_distance(d, p, q))
}

pub fn brute_hypo0(d: &Pseudometric, u: &FuzzySet, v: &FuzzySet) -> f64 {
    let mut a = hypo_points(u);
    a.extend(base_plane(u));
    let mut b = hypo_points(v);
    b.extend(base_plane(v));
    brute_hausdorff(&a, &b, |p: &HypoPoint, q: &HypoPoint| product_distance(d, p, q)).unwrap()
}

/// `f[u](y)` by enumerating every `(x, y)` pair.
pub fn brute_zadeh(grid: &Grid, f: &AffineMap, u: &FuzzySet) -> FuzzySet {
    let mut out = FuzzySet::zeros(*grid, u.scale());
    for y in 0..grid.len() {
        let mut best = 0;
        for x in 0..grid.len() {
            if grid.snap(f.apply(grid.point(x))) == Some(y) {
                best = best.max(u.level(x));
            }
        }
        out.raise(y, best).unwrap();
    }
    out
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}
