//! Brute-force reference implementations for tests.
//!
//! Everything here works straight from the definitions by enumeration and
//! shares no code with the modules it is used to check (only the number
//! type and error enum).

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::value::{SemiringBounds, Value};

pub const MAX_POINTS: usize = 5;
pub const MAX_DIM: usize = 5;
pub const MAX_GRID: usize = 51;

fn guard(what: &str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::SizeGuard(format!("oracle {what} is {got}, limit {limit}")));
    }
    Ok(())
}

/// Candidate values for enumeration: the base values, both bounds, and
/// optionally every multiple of `step` above `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    values: Vec<Value>,
    bounds: SemiringBounds,
}

impl GridSpec {
    pub fn new(base: impl IntoIterator<Item = Value>, step: Option<Value>, bounds: SemiringBounds) -> Result<GridSpec> {
        let mut values: Vec<Value> = base.into_iter().collect();
        values.push(bounds.lo());
        values.push(bounds.hi());
        if let Some(step) = step {
            if step <= Value::ZERO {
                return Err(Error::Precondition("oracle step must be positive".into()));
            }
            let mut v = bounds.lo();
            while v <= bounds.hi() {
                values.push(v);
                guard("grid", values.len(), 4 * MAX_GRID)?;
                v = v.checked_add(&step)?;
            }
        }
        values.retain(|v| bounds.lo() <= *v && *v <= bounds.hi());
        values.sort();
        values.dedup();
        guard("grid", values.len(), MAX_GRID)?;
        Ok(GridSpec { values, bounds })
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn bounds(&self) -> &SemiringBounds {
        &self.bounds
    }
}

/// The three built-in norms, written out independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleNorm {
    Min,
    Product,
    Lukasiewicz,
}

impl OracleNorm {
    pub fn from_name(name: &str) -> Result<OracleNorm> {
        match name.to_ascii_lowercase().as_str() {
            "min" => Ok(OracleNorm::Min),
            "product" => Ok(OracleNorm::Product),
            "lukasiewicz" => Ok(OracleNorm::Lukasiewicz),
            _ => Err(Error::UnknownTNorm(name.into())),
        }
    }

    pub fn apply(self, a: Value, b: Value) -> Result<Value> {
        match self {
            OracleNorm::Min => Ok(if a <= b { a } else { b }),
            OracleNorm::Product => a.checked_mul(&b),
            OracleNorm::Lukasiewicz => {
                let s = a.checked_add(&b)?.checked_sub(&Value::ONE)?;
                Ok(if s > Value::ZERO { s } else { Value::ZERO })
            }
        }
    }
}

/// Is `p` equal to `⊕_j T(λ_j, x^j)` for some `λ` on the grid with
/// `max_j λ_j = hi`? Partial combinations that already exceed `p` are pruned.
pub fn brute_hull_member(p: &[Value], xs: &[Vec<Value>], norm: OracleNorm, grid: &GridSpec) -> Result<bool> {
    guard("point count", xs.len(), MAX_POINTS)?;
    guard("dimension", p.len(), MAX_DIM)?;
    if xs.is_empty() || xs.iter().any(|x| x.len() != p.len()) {
        return Err(Error::Precondition("oracle needs equal-dimension generators".into()));
    }
    let mut partial = vec![grid.bounds.lo(); p.len()];
    search(p, xs, norm, grid, 0, false, &mut partial)
}

fn search(
    p: &[Value],
    xs: &[Vec<Value>],
    norm: OracleNorm,
    grid: &GridSpec,
    j: usize,
    have_top: bool,
    partial: &mut Vec<Value>,
) -> Result<bool> {
    if j == xs.len() {
        return Ok(have_top && partial.as_slice() == p);
    }
    for &lambda in &grid.values {
        let mut next = partial.clone();
        let mut fits = true;
        for k in 0..p.len() {
            let term = norm.apply(lambda, xs[j][k])?;
            if term > next[k] {
                next[k] = term;
            }
            if next[k] > p[k] {
                fits = false;
                break;
            }
        }
        if fits && search(p, xs, norm, grid, j + 1, have_top || lambda == grid.bounds.hi(), &mut next)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every combination `⊕_j T(λ_j, x^j)` with `λ` on the grid and
/// `max_j λ_j = hi`, sorted and without repeats.
pub fn brute_hull_points(xs: &[Vec<Value>], norm: OracleNorm, grid: &GridSpec) -> Result<Vec<Vec<Value>>> {
    guard("point count", xs.len(), MAX_POINTS)?;
    let d = xs.first().map_or(0, |x| x.len());
    guard("dimension", d, MAX_DIM)?;
    if xs.is_empty() || xs.iter().any(|x| x.len() != d) {
        return Err(Error::Precondition("oracle needs equal-dimension generators".into()));
    }
    let values = &grid.values;
    let hi = grid.bounds.hi();
    // terms[j][i] = T(values[i], x^j)
    let mut terms = Vec::with_capacity(xs.len());
    for x in xs {
        let mut row = Vec::with_capacity(values.len());
        for &l in values {
            row.push(x.iter().map(|&c| norm.apply(l, c)).collect::<Result<Vec<Value>>>()?);
        }
        terms.push(row);
    }
    // combinations laid end to end, `d` values each
    let mut flat: Vec<Value> = Vec::new();
    // odometer over λ indices, last generator fastest
    let mut digits = vec![0usize; xs.len()];
    loop {
        if digits.iter().any(|&i| values[i] == hi) {
            let start = flat.len();
            flat.resize(start + d, grid.bounds.lo());
            let z = &mut flat[start..];
            for (row, &i) in terms.iter().zip(&digits) {
                for (zk, &t) in z.iter_mut().zip(&row[i]) {
                    if t > *zk {
                        *zk = t;
                    }
                }
            }
        }
        let mut j = xs.len();
        loop {
            if j == 0 {
                let mut out: Vec<&[Value]> = flat.chunks(d).collect();
                out.sort_unstable();
                out.dedup();
                return Ok(out.into_iter().map(|z| z.to_vec()).collect());
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < values.len() {
                break;
            }
            digits[j] = 0;
        }
    }
}

/// `{ α⊗x ⊕ β⊗y : α, β on the grid, max(α, β) = hi }` for the min norm,
/// sorted and without repeats.
pub fn brute_segment(x: &[Value], y: &[Value], grid: &GridSpec) -> Result<Vec<Vec<Value>>> {
    guard("dimension", x.len(), MAX_DIM)?;
    if x.len() != y.len() {
        return Err(Error::Precondition("segment endpoints differ in dimension".into()));
    }
    let hi = grid.bounds.hi();
    let mut out = Vec::new();
    for &a in &grid.values {
        for &b in &grid.values {
            if a != hi && b != hi {
                continue;
            }
            let z: Vec<Value> = x
                .iter()
                .zip(y)
                .map(|(&xi, &yi)| {
                    let l = if a < xi { a } else { xi };
                    let r = if b < yi { b } else { yi };
                    if l > r {
                        l
                    } else {
                        r
                    }
                })
                .collect();
            out.push(z);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Max over all `d`-row subsets and all bijections onto the columns of the
/// smallest matched entry, for a `(d + 1) x d` matrix.
pub fn brute_bottleneck(rows: &[Vec<Value>]) -> Result<Value> {
    let d = rows.len().saturating_sub(1);
    guard("dimension", d, MAX_DIM)?;
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Precondition("oracle bottleneck needs a (d+1) x d matrix, d >= 1".into()));
    }
    let mut best: Option<Value> = None;
    for skip in 0..rows.len() {
        let chosen: Vec<&Vec<Value>> = rows.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r).collect();
        for perm in (0..d).permutations(d) {
            let worst = chosen
                .iter()
                .zip(&perm)
                .map(|(r, &c)| r[c])
                .min()
                .expect("d >= 1");
            if best.map_or(true, |b| worst > b) {
                best = Some(worst);
            }
        }
    }
    Ok(best.expect("at least one matching"))
}

/// Membership of `q` in the semispace with index `index` at `anchor`,
/// transcribed from the sorted-anchor definition with its `k_j`, `l_j`
/// blocks. Returns `None` when the index is not present at the anchor.
pub fn brute_semispace_contains(
    anchor: &[Value],
    index: usize,
    q: &[Value],
    bounds: &SemiringBounds,
) -> Result<Option<bool>> {
    let d = anchor.len();
    guard("dimension", d, MAX_DIM)?;
    if q.len() != d || index > d {
        return Err(Error::Precondition("oracle semispace arguments disagree".into()));
    }
    let has_one = anchor.iter().any(|&a| a == bounds.hi());
    if index == 0 && has_one {
        return Ok(None);
    }
    if index > 0 && anchor[index - 1] == bounds.lo() {
        return Ok(None);
    }
    // any non-increasing arrangement; ties within a block are symmetric
    let perm: Vec<usize> = (0..d).sorted_by(|&a, &b| anchor[b].cmp(&anchor[a])).collect();
    let xs: Vec<Value> = perm.iter().map(|&i| anchor[i]).collect();
    let ys: Vec<Value> = perm.iter().map(|&i| q[i]).collect();
    let exceeds_from = |start: usize| (start..d).any(|i| ys[i] > xs[i]);
    if index == 0 {
        return Ok(Some(exceeds_from(0)));
    }
    // 0-based sorted position of the attached coordinate
    let pos = perm.iter().position(|&i| i == index - 1).expect("permutation");
    // block decomposition: maximal runs of equal values; a run of length one
    // is one of the strictly decreasing singletons (l-part), longer runs are
    // equality blocks (k-part)
    let mut start = pos;
    while start > 0 && xs[start - 1] == xs[pos] {
        start -= 1;
    }
    let mut end = pos;
    while end + 1 < d && xs[end + 1] == xs[pos] {
        end += 1;
    }
    let in_equality_block = end > start;
    let tail = if in_equality_block {
        // S_{L_{j-1}+q}: exceed somewhere after K_j, the end of the block
        end + 1
    } else {
        // S_{K_j+q}: exceed somewhere after the coordinate itself
        pos + 1
    };
    Ok(Some(ys[pos] < xs[pos] || exceeds_from(tail)))
}
