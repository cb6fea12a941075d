//! Max-T convexity: hull membership by residuation, and searches for Radon
//! partitions, Helly witnesses, centerpoints and Tverberg partitions.
//!
//! If `p = ⊕ T(λ_j, x^j)` then `T(λ_j, x^j_k) <= p_k` for every `k`, so each
//! `λ_j` is at most the principal coefficient `λ*_j = min_k res(x^j_k, p_k)`.
//! Raising coefficients to `λ*` keeps the combination below `p` and can only
//! increase it, so `p` is in the hull iff the principal combination equals
//! `p` and some `λ*_j` is the top value.

use itertools::Itertools;

use crate::error::{check_dim, Error, Result};
use crate::grid::WitnessGrid;
use crate::point::{join_all, Point, Polytope};
use crate::tnorm::{residual, tnorm_apply, TNorm};
use crate::value::{SemiringBounds, Value};

/// Search resolution for norms other than min.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub grid_step: Value,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            grid_step: Value::new(1, 100),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxTMembership {
    pub member: bool,
    /// Principal coefficients, one per canonical generator.
    pub coefficients: Vec<Value>,
    /// `⊕ T(λ*_j, x^j)`, the greatest hull-cone point below `p`.
    pub combination: Point,
}

fn check_norm(t: &dyn TNorm, bounds: &SemiringBounds) -> Result<()> {
    if !t.supports(bounds) {
        return Err(Error::Domain(format!(
            "{} is only defined on the unit interval, not [{}, {}]",
            t.name(),
            bounds.lo(),
            bounds.hi()
        )));
    }
    Ok(())
}

pub fn hull_member_maxt(p: &Point, x: &Polytope, t: &dyn TNorm, bounds: &SemiringBounds) -> Result<MaxTMembership> {
    check_norm(t, bounds)?;
    check_dim(x.dim(), p.dim())?;
    p.check_bounds(bounds)?;
    x.check_bounds(bounds)?;
    let mut coefficients = Vec::with_capacity(x.len());
    let mut combo = vec![bounds.lo(); p.dim()];
    for g in x.generators() {
        let mut lambda = bounds.hi();
        for k in 0..p.dim() {
            lambda = lambda.min(residual(t, g.get(k), p.get(k), bounds)?);
        }
        for (k, slot) in combo.iter_mut().enumerate() {
            *slot = (*slot).max(tnorm_apply(t, lambda, g.get(k), bounds)?);
        }
        coefficients.push(lambda);
    }
    let combination = Point::new(combo)?;
    let member = combination == *p && coefficients.iter().any(|&l| l == bounds.hi());
    Ok(MaxTMembership {
        member,
        coefficients,
        combination,
    })
}

pub fn in_hull_maxt(p: &Point, x: &Polytope, t: &dyn TNorm, bounds: &SemiringBounds) -> Result<bool> {
    Ok(hull_member_maxt(p, x, t, bounds)?.member)
}

fn in_all(q: &Point, polys: &[Polytope], t: &dyn TNorm, bounds: &SemiringBounds) -> Result<bool> {
    for x in polys {
        if !in_hull_maxt(q, x, t, bounds)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn first_in_all(
    candidates: impl IntoIterator<Item = Point>,
    polys: &[Polytope],
    t: &dyn TNorm,
    bounds: &SemiringBounds,
) -> Result<Option<Point>> {
    for q in candidates {
        if in_all_or_overflow(&q, polys, t, bounds)? {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Candidate check for the search stages: a candidate whose check overflows
/// the exact arithmetic is skipped.
fn in_all_or_overflow(q: &Point, polys: &[Polytope], t: &dyn TNorm, bounds: &SemiringBounds) -> Result<bool> {
    match in_all(q, polys, t, bounds) {
        Err(Error::Overflow) => Ok(false),
        other => other,
    }
}

const MAX_REFINED_POINTS: usize = 2_000_000;
const MAX_COMBO_PART: usize = 3;

/// A point in every hull. For min the search over the input grid is exact
/// and returns the lexicographically smallest common grid point. Other norms
/// go through cheap candidates (generators, joins, alternating principal
/// projections), then the input grid, combinations with coefficients on the
/// refined grid, and the refined grid itself.
pub fn common_point(
    polys: &[Polytope],
    t: &dyn TNorm,
    bounds: &SemiringBounds,
    opts: &SearchOptions,
) -> Result<Option<Point>> {
    check_norm(t, bounds)?;
    let first = polys
        .first()
        .ok_or_else(|| Error::Precondition("no sets to intersect".into()))?;
    let d = first.dim();
    for x in polys {
        check_dim(d, x.dim())?;
        x.check_bounds(bounds)?;
    }
    let grid = WitnessGrid::new(polys.iter().flat_map(Polytope::coordinate_values), bounds);
    if t.is_selective() {
        return first_in_all(grid.points(d), polys, t, bounds);
    }

    let gens: Vec<Point> = polys.iter().flat_map(|x| x.generators().iter().cloned()).collect();
    if let Some(q) = first_in_all(gens.iter().cloned(), polys, t, bounds)? {
        return Ok(Some(q));
    }
    let mut joins = Vec::new();
    for x in polys {
        for size in 2..=x.len().min(8) {
            for subset in x.generators().iter().combinations(size) {
                joins.push(join_all(subset)?);
            }
        }
    }
    if let Some(q) = first_in_all(joins, polys, t, bounds)? {
        return Ok(Some(q));
    }
    let starts = std::iter::once(Point::splat(bounds.hi(), d)?).chain(gens.iter().cloned());
    for start in starts {
        match alternating_projection(start, polys, t, bounds) {
            Ok(Some(q)) => return Ok(Some(q)),
            Ok(None) | Err(Error::Overflow) => {}
            Err(e) => return Err(e),
        }
    }
    if let Some(q) = first_in_all(grid.points(d), polys, t, bounds)? {
        return Ok(Some(q));
    }
    let refined = grid.clone().refined(opts.grid_step, bounds)?;
    for x in polys.iter().filter(|x| x.len() <= MAX_COMBO_PART) {
        for q in combinations_over(x, refined.values(), t, bounds)? {
            if in_all_or_overflow(&q, polys, t, bounds)? {
                return Ok(Some(q));
            }
        }
    }
    if refined.len().checked_pow(d as u32).is_some_and(|n| n <= MAX_REFINED_POINTS) {
        return first_in_all(refined.points(d), polys, t, bounds);
    }
    Ok(None)
}

/// Repeatedly replaces `q` by its principal combination in each hull; the
/// sequence is non-increasing and stops when it is a fixed point.
fn alternating_projection(
    mut q: Point,
    polys: &[Polytope],
    t: &dyn TNorm,
    bounds: &SemiringBounds,
) -> Result<Option<Point>> {
    for _ in 0..64 {
        let mut moved = false;
        for x in polys {
            let next = hull_member_maxt(&q, x, t, bounds)?.combination;
            moved |= next != q;
            q = next;
        }
        if !moved {
            break;
        }
    }
    Ok(if in_all(&q, polys, t, bounds)? { Some(q) } else { None })
}

/// All combinations `⊕ T(λ_j, x^j)` with one `λ_j` at the top and the others
/// drawn from `lambdas`.
fn combinations_over(x: &Polytope, lambdas: &[Value], t: &dyn TNorm, bounds: &SemiringBounds) -> Result<Vec<Point>> {
    let gens = x.generators();
    let mut out = Vec::new();
    for top in 0..gens.len() {
        let others: Vec<usize> = (0..gens.len()).filter(|&j| j != top).collect();
        for choice in (0..others.len()).map(|_| lambdas.iter()).multi_cartesian_product() {
            let mut combo = gens[top].coords().to_vec();
            for (&j, &&lam) in others.iter().zip(&choice) {
                for (k, slot) in combo.iter_mut().enumerate() {
                    *slot = (*slot).max(tnorm_apply(t, lam, gens[j].get(k), bounds)?);
                }
            }
            out.push(Point::new(combo)?);
        }
        if others.is_empty() {
            out.push(gens[top].clone());
        }
    }
    Ok(out)
}

fn check_points(points: &[Point], bounds: &SemiringBounds) -> Result<usize> {
    let d = points
        .first()
        .ok_or_else(|| Error::Precondition("no points given".into()))?
        .dim();
    for p in points {
        check_dim(d, p.dim())?;
        p.check_bounds(bounds)?;
    }
    Ok(d)
}

fn sub_polytope(points: &[Point], indices: &[usize]) -> Result<Polytope> {
    Polytope::new(indices.iter().map(|&i| points[i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadonPartition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub witness: Point,
}

/// Two disjoint index sets whose hulls share `witness`.
pub fn radon_partition(
    points: &[Point],
    t: &dyn TNorm,
    bounds: &SemiringBounds,
    opts: &SearchOptions,
) -> Result<RadonPartition> {
    check_norm(t, bounds)?;
    let d = check_points(points, bounds)?;
    if points.len() != d + 2 {
        return Err(Error::Precondition(format!(
            "Radon partitions need d + 2 = {} points, got {}",
            d + 2,
            points.len()
        )));
    }
    for (i, j) in (0..points.len()).tuple_combinations() {
        if points[i] == points[j] {
            return Ok(RadonPartition {
                first: vec![i],
                second: vec![j],
                witness: points[i].clone(),
            });
        }
    }
    match partition_search(points, 2, t, bounds, opts)? {
        Some((mut parts, witness)) => {
            let second = parts.pop().expect("two parts");
            let first = parts.pop().expect("two parts");
            Ok(RadonPartition { first, second, witness })
        }
        None if t.is_selective() => Err(Error::Invariant("no Radon partition on the exact grid".into())),
        None => Err(Error::ResolutionExhausted(format!(
            "no Radon witness for {} at grid step {}",
            t.name(),
            opts.grid_step
        ))),
    }
}

/// Restricted growth strings: every partition of `0..n` into exactly `r`
/// non-empty blocks, block of element 0 first.
fn set_partitions(n: usize, r: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, r: usize, labels: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if n - i < r - used {
            return;
        }
        if i == n {
            let mut parts = vec![Vec::new(); r];
            for (e, &b) in labels.iter().enumerate() {
                parts[b].push(e);
            }
            out.push(parts);
            return;
        }
        for b in 0..=used.min(r - 1) {
            labels.push(b);
            rec(i + 1, n, r, labels, used.max(b + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && r <= n {
        rec(0, n, r, &mut Vec::new(), 0, &mut out);
    }
    out
}

fn partition_search(
    points: &[Point],
    r: usize,
    t: &dyn TNorm,
    bounds: &SemiringBounds,
    opts: &SearchOptions,
) -> Result<Option<(Vec<Vec<usize>>, Point)>> {
    for parts in set_partitions(points.len(), r) {
        let polys: Vec<Polytope> = parts.iter().map(|p| sub_polytope(points, p)).collect::<Result<_>>()?;
        if let Some(q) = common_point(&polys, t, bounds, opts)? {
            return Ok(Some((parts, q)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HellyOutcome {
    /// A point lying in every member.
    Common(Point),
    /// Members (at most `d + 1`) with no common point; for norms other than
    /// min this is only certified at the search resolution.
    Counterexample { members: Vec<usize>, exact: bool },
}

pub fn helly_check(
    family: &[Polytope],
    t: &dyn TNorm,
    bounds: &SemiringBounds,
    opts: &SearchOptions,
) -> Result<HellyOutcome> {
    check_norm(t, bounds)?;
    let d = family
        .first()
        .ok_or_else(|| Error::Precondition("empty family".into()))?
        .dim();
    for x in family {
        check_dim(d, x.dim())?;
    }
    let exact = t.is_selective();
    for size in 1..=family.len().min(d + 1) {
        for members in (0..family.len()).combinations(size) {
            let sub: Vec<Polytope> = members.iter().map(|&i| family[i].clone()).collect();
            if common_point(&sub, t, bounds, opts)?.is_none() {
                return Ok(HellyOutcome::Counterexample { members, exact });
            }
        }
    }
    match common_point(family, t, bounds, opts)? {
        Some(q) => Ok(HellyOutcome::Common(q)),
        None if exact => Err(Error::Invariant("Helly hypothesis holds but no common grid point".into())),
        None => Err(Error::ResolutionExhausted(format!(
            "no common point for {} at grid step {}",
            t.name(),
            opts.grid_step
        ))),
    }
}

/// `⌊dn/(d+1)⌋ + 1`, the subset size every centerpoint hull must cover.
pub fn centerpoint_subset_size(n: usize, d: usize) -> usize {
    d * n / (d + 1) + 1
}

/// A point in the hull of every subset of size `⌊dn/(d+1)⌋ + 1`.
pub fn centerpoint(points: &[Point], t: &dyn TNorm, bounds: &SemiringBounds, opts: &SearchOptions) -> Result<Point> {
    check_norm(t, bounds)?;
    let d = check_points(points, bounds)?;
    let m0 = centerpoint_subset_size(points.len(), d);
    let polys: Vec<Polytope> = (0..points.len())
        .combinations(m0)
        .map(|s| sub_polytope(points, &s))
        .collect::<Result<_>>()?;
    match common_point(&polys, t, bounds, opts)? {
        Some(q) => Ok(q),
        None if t.is_selective() => Err(Error::Invariant("no centerpoint on the exact grid".into())),
        None => Err(Error::ResolutionExhausted(format!(
            "no centerpoint for {} at grid step {}",
            t.name(),
            opts.grid_step
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TverbergOutcome {
    Found { parts: Vec<Vec<usize>>, witness: Point },
    /// Nothing found. `soundness_alarm` is set when `r` is a prime power and
    /// the search was exact, where a partition is known to exist.
    NotFound { soundness_alarm: bool },
}

pub fn is_prime_power(r: usize) -> bool {
    if r < 2 {
        return false;
    }
    let p = (2..=r).find(|q| r % q == 0).expect("r divides itself");
    let mut m = r;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

pub fn tverberg_search(
    points: &[Point],
    r: usize,
    t: &dyn TNorm,
    bounds: &SemiringBounds,
    opts: &SearchOptions,
) -> Result<TverbergOutcome> {
    check_norm(t, bounds)?;
    let d = check_points(points, bounds)?;
    if r < 2 {
        return Err(Error::Precondition(format!("r must be at least 2, got {r}")));
    }
    let needed = (d + 1) * (r - 1) + 1;
    if points.len() != needed {
        return Err(Error::Precondition(format!(
            "Tverberg search needs (d + 1)(r - 1) + 1 = {needed} points, got {}",
            points.len()
        )));
    }
    if r == 2 {
        return match radon_partition(points, t, bounds, opts) {
            Ok(rp) => Ok(TverbergOutcome::Found {
                parts: vec![rp.first, rp.second],
                witness: rp.witness,
            }),
            Err(Error::ResolutionExhausted(_)) => Ok(TverbergOutcome::NotFound { soundness_alarm: false }),
            Err(e) => Err(e),
        };
    }
    match partition_search(points, r, t, bounds, opts)? {
        Some((parts, witness)) => Ok(TverbergOutcome::Found { parts, witness }),
        None => Ok(TverbergOutcome::NotFound {
            soundness_alarm: t.is_selective() && is_prime_power(r),
        }),
    }
}

/// Re-checks a partition claim: disjoint non-empty parts, witness in each hull.
pub fn verify_partition(
    points: &[Point],
    parts: &[Vec<usize>],
    witness: &Point,
    t: &dyn TNorm,
    bounds: &SemiringBounds,
) -> Result<bool> {
    let mut seen = vec![false; points.len()];
    for part in parts {
        if part.is_empty() {
            return Ok(false);
        }
        for &i in part {
            if i >= points.len() || seen[i] {
                return Ok(false);
            }
            seen[i] = true;
        }
        if !in_hull_maxt(witness, &sub_polytope(points, part)?, t, bounds)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{LukasiewiczNorm, MinNorm, ProductNorm};

    fn p(c: &[&str]) -> Point {
        Point::parse(c).unwrap()
    }

    fn pts(rows: &[&[&str]]) -> Vec<Point> {
        rows.iter().map(|r| p(r)).collect()
    }

    fn unit() -> SemiringBounds {
        SemiringBounds::unit()
    }

    #[test]
    fn lukasiewicz_membership_example() {
        let x = Polytope::new(pts(&[&["0.9", "0.4"], &["0.3", "0.8"]])).unwrap();
        let m = hull_member_maxt(&p(&["0.9", "0.8"]), &x, &LukasiewiczNorm, &unit()).unwrap();
        assert!(m.member);
        assert_eq!(m.coefficients, [Value::ONE, Value::ONE]);
        assert!(in_hull_maxt(&p(&["0.3", "0.8"]), &x, &ProductNorm, &unit()).unwrap());
        assert!(!in_hull_maxt(&p(&["0.5", "0.5"]), &x, &MinNorm, &unit()).unwrap());
    }

    #[test]
    fn non_min_needs_unit_bounds() {
        let wide = SemiringBounds::unit().extended().unwrap();
        let x = Polytope::singleton(p(&["0.5"]));
        assert!(matches!(
            hull_member_maxt(&p(&["0.5"]), &x, &ProductNorm, &wide),
            Err(Error::Domain(_))
        ));
        assert!(in_hull_maxt(&p(&["0.5"]), &x, &MinNorm, &wide).unwrap());
    }

    #[test]
    fn radon_examples() {
        let opts = SearchOptions::default();
        let rp = radon_partition(&pts(&[&["0.2"], &["0.5"], &["0.9"]]), &MinNorm, &unit(), &opts).unwrap();
        assert_eq!((rp.first.clone(), rp.second.clone()), (vec![0, 2], vec![1]));
        assert_eq!(rp.witness, p(&["0.5"]));
        let dup = radon_partition(&pts(&[&["0.2"], &["0.7"], &["0.2"]]), &ProductNorm, &unit(), &opts).unwrap();
        assert_eq!((dup.first, dup.second, dup.witness), (vec![0], vec![2], p(&["0.2"])));
        assert!(radon_partition(&pts(&[&["0.2"], &["0.7"]]), &MinNorm, &unit(), &opts).is_err());
    }

    #[test]
    fn helly_one_dimensional() {
        let intervals: Vec<Polytope> = [["0.1", "0.6"], ["0.3", "0.8"], ["0.2", "0.5"]]
            .iter()
            .map(|[a, b]| Polytope::new(vec![p(&[a]), p(&[b])]).unwrap())
            .collect();
        let out = helly_check(&intervals, &MinNorm, &unit(), &SearchOptions::default()).unwrap();
        assert_eq!(out, HellyOutcome::Common(p(&["0.3"])));

        let mut broken = intervals;
        broken.push(Polytope::new(vec![p(&["0.9"]), p(&["1"])]).unwrap());
        let out = helly_check(&broken, &MinNorm, &unit(), &SearchOptions::default()).unwrap();
        assert_eq!(
            out,
            HellyOutcome::Counterexample {
                members: vec![0, 3],
                exact: true
            }
        );
    }

    #[test]
    fn centerpoint_examples() {
        let opts = SearchOptions::default();
        let same = pts(&[&["0.4", "0.6"], &["0.4", "0.6"], &["0.4", "0.6"]]);
        assert_eq!(centerpoint(&same, &MinNorm, &unit(), &opts).unwrap(), same[0]);
        let line = pts(&[&["0.1"], &["0.2"], &["0.8"], &["0.9"]]);
        let c = centerpoint(&line, &MinNorm, &unit(), &opts).unwrap();
        assert!(p(&["0.2"]) <= c && c <= p(&["0.8"]));
        assert_eq!(centerpoint_subset_size(4, 1), 3);
    }

    #[test]
    fn tverberg_line() {
        let x = pts(&[&["0.1"], &["0.3"], &["0.5"], &["0.7"], &["0.9"]]);
        let out = tverberg_search(&x, 3, &MinNorm, &unit(), &SearchOptions::default()).unwrap();
        let TverbergOutcome::Found { parts, witness } = out else {
            panic!("{out:?}")
        };
        assert!(verify_partition(&x, &parts, &witness, &MinNorm, &unit()).unwrap());
        assert_eq!(witness, p(&["0.5"]));
        assert!(is_prime_power(8) && is_prime_power(3) && !is_prime_power(6) && !is_prime_power(1));
        assert_eq!(set_partitions(4, 2).len(), 7);
        assert_eq!(set_partitions(7, 3).len(), 301);
    }
}
