//! The semispaces `S_0(p), ..., S_d(p)` at a point, their complements
//! (sectors), closures, and max-min hyperplanes.
//!
//! With the anchor sorted non-increasingly, `S_0` collects the points that
//! exceed the anchor somewhere, and the semispace attached to coordinate `c`
//! collects the points that fall strictly below `p_c` in coordinate `c` or
//! strictly exceed the anchor in some coordinate sorted after the block of
//! coordinates equal to `p_c`. Which indices are present depends on whether
//! the anchor touches the bounds.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::point::{IntervalBox, Point};
use crate::value::{SemiringBounds, Value};

/// Index of a semispace at a point: `0` for `S_0`, `k >= 1` for the
/// semispace attached to coordinate `k` (one-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemispaceIndex(pub usize);

impl SemispaceIndex {
    pub const UPPER: SemispaceIndex = SemispaceIndex(0);

    /// Zero-based coordinate this index is attached to, `None` for `S_0`.
    pub fn coordinate(self) -> Option<usize> {
        self.0.checked_sub(1)
    }

    pub fn of_coordinate(c: usize) -> SemispaceIndex {
        SemispaceIndex(c + 1)
    }
}

impl fmt::Display for SemispaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SemispaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.0)
    }
}

/// The index set `I(p)`: every coordinate above `lo`, plus `0` unless some
/// coordinate equals `hi`.
pub fn index_set(p: &Point, bounds: &SemiringBounds) -> Vec<SemispaceIndex> {
    indices(p, bounds).collect()
}

/// [`index_set`] without collecting.
pub fn indices<'a>(p: &'a Point, bounds: &SemiringBounds) -> impl Iterator<Item = SemispaceIndex> + 'a {
    let (lo, hi) = (bounds.lo(), bounds.hi());
    let upper = p.coords().iter().all(|&c| c != hi).then_some(SemispaceIndex::UPPER);
    upper.into_iter().chain(
        p.coords()
            .iter()
            .enumerate()
            .filter(move |&(_, &v)| v > lo)
            .map(|(c, _)| SemispaceIndex::of_coordinate(c)),
    )
}

/// Run-length structure of a non-increasing vector: equality runs of length
/// at least two (`k_j`) alternating with stretches of strictly decreasing
/// singletons (`l_j`). `k[0] == 0` when the vector starts strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPattern {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
}

impl BlockPattern {
    fn from_sorted(values: &[Value]) -> BlockPattern {
        let mut k = Vec::new();
        let mut l = Vec::new();
        let (mut cur_k, mut cur_l) = (0usize, 0usize);
        let mut i = 0;
        while i < values.len() {
            let mut j = i + 1;
            while j < values.len() && values[j] == values[i] {
                j += 1;
            }
            if j - i >= 2 {
                if cur_k > 0 || cur_l > 0 {
                    k.push(cur_k);
                    l.push(cur_l);
                }
                cur_k = j - i;
                cur_l = 0;
            } else {
                cur_l += 1;
            }
            i = j;
        }
        k.push(cur_k);
        l.push(cur_l);
        BlockPattern { k, l }
    }

    /// `K_j = k_1 + l_1 + ... + l_{j-1} + k_j`, one-based `j`.
    pub fn big_k(&self, j: usize) -> usize {
        self.big_l(j - 1) + self.k[j - 1]
    }

    /// `L_j = K_j + l_j`, with `L_0 = 0`.
    pub fn big_l(&self, j: usize) -> usize {
        (0..j).map(|t| self.k[t] + self.l[t]).sum()
    }
}

/// One semispace `S_i(p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SemispaceId {
    anchor: Point,
    index: SemispaceIndex,
    bounds: SemiringBounds,
    /// `sort_perm[pos]` is the coordinate at sorted position `pos`; stable,
    /// non-increasing anchor values.
    sort_perm: Vec<usize>,
    /// For each sorted position, the last position of its equality run.
    run_end: Vec<usize>,
}

impl SemispaceId {
    pub fn new(anchor: Point, index: SemispaceIndex, bounds: SemiringBounds) -> Result<SemispaceId> {
        anchor.check_bounds(&bounds)?;
        if !indices(&anchor, &bounds).any(|i| i == index) {
            return Err(Error::Precondition(format!(
                "index {index} is not in I({anchor})"
            )));
        }
        let mut sort_perm: Vec<usize> = (0..anchor.dim()).collect();
        sort_perm.sort_by(|&a, &b| anchor.get(b).cmp(&anchor.get(a)));
        let mut run_end = vec![0; anchor.dim()];
        let mut pos = anchor.dim();
        while pos > 0 {
            let end = pos - 1;
            let value = anchor.get(sort_perm[end]);
            let mut start = end;
            while start > 0 && anchor.get(sort_perm[start - 1]) == value {
                start -= 1;
            }
            for slot in &mut run_end[start..=end] {
                *slot = end;
            }
            pos = start;
        }
        Ok(SemispaceId {
            anchor,
            index,
            bounds,
            sort_perm,
            run_end,
        })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn index(&self) -> SemispaceIndex {
        self.index
    }

    pub fn bounds(&self) -> &SemiringBounds {
        &self.bounds
    }

    pub fn sort_perm(&self) -> &[usize] {
        &self.sort_perm
    }

    pub fn block_pattern(&self) -> BlockPattern {
        let sorted: Vec<Value> = self.sort_perm.iter().map(|&c| self.anchor.get(c)).collect();
        BlockPattern::from_sorted(&sorted)
    }

    /// Coordinates (original numbering) sorted after the equality block of
    /// the attached coordinate; for `S_0`, all coordinates.
    fn trailing_coordinates(&self) -> &[usize] {
        match self.index.coordinate() {
            None => &self.sort_perm,
            Some(c) => {
                let pos = self.sort_perm.iter().position(|&x| x == c).expect("permutation");
                &self.sort_perm[self.run_end[pos] + 1..]
            }
        }
    }

    fn eval(&self, q: &Point, strict: bool) -> Result<bool> {
        check_dim(self.anchor.dim(), q.dim())?;
        let above = |a: Value, b: Value| if strict { a > b } else { a >= b };
        if let Some(c) = self.index.coordinate() {
            if above(self.anchor.get(c), q.get(c)) {
                return Ok(true);
            }
        }
        Ok(self
            .trailing_coordinates()
            .iter()
            .any(|&k| above(q.get(k), self.anchor.get(k))))
    }

    pub fn contains(&self, q: &Point) -> Result<bool> {
        self.eval(q, true)
    }

    pub fn sector_contains(&self, q: &Point) -> Result<bool> {
        Ok(!self.eval(q, true)?)
    }

    /// Membership in the set obtained by relaxing every strict inequality.
    pub fn closure_contains(&self, q: &Point) -> Result<bool> {
        self.eval(q, false)
    }

    /// The sector as a box inside the bounds: `[p_c, hi]` in the attached
    /// coordinate, `[lo, p_k]` in the trailing ones, `[lo, hi]` elsewhere.
    pub fn sector_box(&self) -> IntervalBox {
        let d = self.anchor.dim();
        let mut lower = vec![self.bounds.lo(); d];
        let mut upper = vec![self.bounds.hi(); d];
        if let Some(c) = self.index.coordinate() {
            lower[c] = self.anchor.get(c);
        }
        for &k in self.trailing_coordinates() {
            upper[k] = self.anchor.get(k);
        }
        IntervalBox::new(Point::from_vec(lower), Point::from_vec(upper))
            .expect("sector box is non-empty")
    }

    /// Is this sector a subset of `other`'s sector?
    pub fn sector_within(&self, other: &SemispaceId) -> Result<bool> {
        check_dim(self.anchor.dim(), other.anchor.dim())?;
        let (a, b) = (self.sector_box(), other.sector_box());
        Ok(b.lower().le(a.lower()) && a.upper().le(b.upper()))
    }
}

impl fmt::Debug for SemispaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.index, self.anchor)
    }
}

/// All semispaces at `p`, in index order.
pub fn semispace_family(p: &Point, bounds: &SemiringBounds) -> Result<Vec<SemispaceId>> {
    p.check_bounds(bounds)?;
    index_set(p, bounds)
        .into_iter()
        .map(|i| SemispaceId::new(p.clone(), i, *bounds))
        .collect()
}

pub fn semispace_contains(s: &SemispaceId, q: &Point) -> Result<bool> {
    s.contains(q)
}

pub fn sector_contains(s: &SemispaceId, q: &Point) -> Result<bool> {
    s.sector_contains(q)
}

pub fn semispace_closure_contains(s: &SemispaceId, q: &Point) -> Result<bool> {
    s.closure_contains(q)
}

/// Solution set of
/// `max(min(a_1,x_1), ..., min(a_d,x_d), a_{d+1}) = max(min(b_1,x_1), ..., b_{d+1})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    a: Vec<Value>,
    b: Vec<Value>,
}

impl Hyperplane {
    /// Both coefficient vectors have `d + 1` entries; the last is the constant term.
    pub fn new(a: Vec<Value>, b: Vec<Value>) -> Result<Hyperplane> {
        if a.len() < 2 {
            return Err(Error::Precondition("hyperplane needs d + 1 >= 2 coefficients".into()));
        }
        check_dim(a.len(), b.len())?;
        Ok(Hyperplane { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.len() - 1
    }

    pub fn lhs_coeffs(&self) -> &[Value] {
        &self.a
    }

    pub fn rhs_coeffs(&self) -> &[Value] {
        &self.b
    }

    pub fn check_bounds(&self, bounds: &SemiringBounds) -> Result<()> {
        self.a.iter().chain(&self.b).try_for_each(|&c| bounds.check(c).map(|_| ()))
    }

    fn side(coeffs: &[Value], x: &Point) -> Value {
        let d = coeffs.len() - 1;
        (0..d).fold(coeffs[d], |acc, i| acc.max(coeffs[i].min(x.get(i))))
    }

    /// `(lhs, rhs)` at `x`.
    pub fn eval(&self, x: &Point) -> Result<(Value, Value)> {
        check_dim(self.dim(), x.dim())?;
        Ok((Self::side(&self.a, x), Self::side(&self.b, x)))
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        let (l, r) = self.eval(x)?;
        Ok(l == r)
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperplane {{ a: {:?}, b: {:?} }}", self.a, self.b)
    }
}

pub fn hyperplane_eval(h: &Hyperplane, x: &Point) -> Result<(Value, Value)> {
    h.eval(x)
}

pub fn hyperplane_contains(h: &Hyperplane, x: &Point) -> Result<bool> {
    h.contains(x)
}

/// Hyperplane whose solution set is the closure of the semispace with the given
/// index at the diagonal point `(level, ..., level)`:
///
/// * index 0: `max_k x_k >= level`, written `max_k x_k = max(max_k x_k, level)`;
/// * index `c + 1`: `x_c <= level`, written `min(level, x_c) = x_c`.
///
/// No index-set check is made, so the level may sit on the bounds.
pub fn closure_hyperplane_at_level(
    level: Value,
    index: SemispaceIndex,
    dim: usize,
    bounds: &SemiringBounds,
) -> Result<Hyperplane> {
    bounds.check(level)?;
    let (lo, hi) = (bounds.lo(), bounds.hi());
    match index.coordinate() {
        None => {
            let mut a = vec![hi; dim];
            a.push(lo);
            let mut b = vec![hi; dim];
            b.push(level);
            Hyperplane::new(a, b)
        }
        Some(c) => {
            if c >= dim {
                return Err(Error::Precondition(format!("index {index} exceeds dimension {dim}")));
            }
            let mut a = vec![lo; dim + 1];
            a[c] = level;
            let mut b = vec![lo; dim + 1];
            b[c] = hi;
            Hyperplane::new(a, b)
        }
    }
}

/// Hyperplane equal to the closure of `S_i(p)` for a diagonal anchor `p`.
pub fn diagonal_closure_hyperplane(
    p: &Point,
    index: SemispaceIndex,
    bounds: &SemiringBounds,
) -> Result<Hyperplane> {
    if !p.is_diagonal() {
        return Err(Error::NotOnDiagonal(p.to_string()));
    }
    // validates bounds and membership of the index in I(p)
    SemispaceId::new(p.clone(), index, *bounds)?;
    closure_hyperplane_at_level(p.get(0), index, p.dim(), bounds)
}
