#![allow(dead_code)]

use maxmin::semispace::{index_set, SemispaceId};
use maxmin::{Point, Polytope, SemiringBounds, Value};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit() -> SemiringBounds {
    SemiringBounds::unit()
}

/// `{0, 1/n, ..., 1}`.
pub fn grid(n: i128) -> Vec<Value> {
    (0..=n).map(|k| Value::new(k, n)).collect()
}

pub fn pt(c: &[&str]) -> Point {
    Point::parse(c).unwrap()
}

pub fn poly(points: &[&[&str]]) -> Polytope {
    Polytope::new(points.iter().map(|c| pt(c)).collect()).unwrap()
}

/// Coordinates `k/n` with `k` uniform in `lo..=hi`.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize, n: i128, lo: i128, hi: i128) -> Point {
    Point::new((0..d).map(|_| Value::new(rng.gen_range(lo..=hi), n)).collect()).unwrap()
}

pub fn random_points(rng: &mut ChaCha8Rng, count: usize, d: usize, n: i128) -> Vec<Point> {
    (0..count).map(|_| random_point(rng, d, n, 0, n)).collect()
}

/// Uniform pick among the values `k/n` in `[a, b]` together with `a` and `b`.
pub fn value_between(rng: &mut ChaCha8Rng, a: Value, b: Value, n: i128) -> Value {
    let mut options = vec![a, b];
    options.extend(grid(n).into_iter().filter(|v| a <= *v && *v <= b));
    *options.choose(rng).unwrap()
}

/// A random point of the sector `index` at `p`.
pub fn sector_sample(rng: &mut ChaCha8Rng, s: &SemispaceId, n: i128) -> Point {
    let bx = s.sector_box();
    let coords = (0..bx.dim())
        .map(|i| value_between(rng, bx.lower().get(i), bx.upper().get(i), n))
        .collect();
    Point::new(coords).unwrap()
}

/// A polytope whose hull contains `p`: one point in every sector at `p`,
/// plus `extra` random points, shuffled.
pub fn polytope_around(rng: &mut ChaCha8Rng, p: &Point, bounds: &SemiringBounds, n: i128, extra: usize) -> Polytope {
    let mut pts: Vec<Point> = index_set(p, bounds)
        .into_iter()
        .map(|i| sector_sample(rng, &SemispaceId::new(p.clone(), i, *bounds).unwrap(), n))
        .collect();
    for _ in 0..extra {
        pts.push(random_point(rng, p.dim(), n, 0, n));
    }
    pts.shuffle(rng);
    Polytope::new(pts).unwrap()
}

pub fn coords(p: &Point) -> Vec<Value> {
    p.coords().to_vec()
}

pub fn rows(x: &Polytope) -> Vec<Vec<Value>> {
    x.generators().iter().map(coords).collect()
}
