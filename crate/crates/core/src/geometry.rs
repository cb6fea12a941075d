//! Max-min segments.
//!
//! For comparable endpoints `x <= y` the segment is the image of
//! `z(β) = x ⊕ (β ⊗ y)`; coordinate `i` follows `β` while `x_i <= β <= y_i`
//! and is frozen at `x_i` or `y_i` otherwise. Sorting all endpoint
//! coordinates cuts the parameter range into intervals on which the set of
//! moving coordinates is constant, and each such interval traces an ordinary
//! straight piece. Incomparable endpoints are joined through `x ⊕ y`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::point::Point;
use crate::value::Value;

/// One parameter interval `[start, end]` between consecutive sorted breakpoints,
/// with the index classification that holds on its interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamInterval {
    pub start: Value,
    pub end: Value,
    /// Coordinates equal to `β` (`x_i <= β <= y_i`).
    pub middle: Vec<usize>,
    /// Coordinates frozen at the lower endpoint (`β <= x_i`).
    pub low: Vec<usize>,
    /// Coordinates frozen at the upper endpoint (`β >= y_i`).
    pub high: Vec<usize>,
    /// `start == end`; kept so interval numbering matches the breakpoint list.
    pub degenerate: bool,
}

/// A straight piece of a max-min segment. The direction `end - start` is the
/// indicator vector of `active`, scaled by the parameter length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryPiece {
    pub start: Point,
    pub end: Point,
    pub active: Vec<usize>,
    /// Parameter range `[lo, hi]` of the comparable chain this piece belongs to.
    pub beta_range: (Value, Value),
}

impl ElementaryPiece {
    pub fn length_parameter(&self) -> Value {
        // exact: all active coordinates move by the same amount
        let i = self.active[0];
        self.end.get(i).checked_sub(&self.start.get(i)).unwrap_or(Value::ZERO).abs()
    }

    /// Exact test for `z` lying on the closed piece.
    pub fn contains(&self, z: &Point) -> bool {
        if z.dim() != self.start.dim() {
            return false;
        }
        let mut offset: Option<Value> = None;
        for i in 0..z.dim() {
            let (s, e, c) = (self.start.get(i), self.end.get(i), z.get(i));
            if self.active.contains(&i) {
                let (a, b) = if s <= e { (s, e) } else { (e, s) };
                if c < a || c > b {
                    return false;
                }
                let Ok(delta) = c.checked_sub(&s) else {
                    return false;
                };
                match offset {
                    None => offset = Some(delta),
                    Some(o) if o != delta => return false,
                    Some(_) => {}
                }
            } else if c != s {
                return false;
            }
        }
        true
    }

    fn reversed(&self) -> ElementaryPiece {
        ElementaryPiece {
            start: self.end.clone(),
            end: self.start.clone(),
            active: self.active.clone(),
            beta_range: self.beta_range,
        }
    }
}

/// Decomposition of `[lower, upper]` for comparable `lower <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparableChain {
    pub lower: Point,
    pub upper: Point,
    /// Sorted multiset `{lower_i, upper_i}`, length `2d`.
    pub breakpoints: Vec<Value>,
    /// The `2d - 1` intervals between consecutive breakpoints.
    pub intervals: Vec<ParamInterval>,
    /// Maximal straight pieces, in order of increasing parameter.
    pub pieces: Vec<ElementaryPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentMode {
    Comparable,
    /// Incomparable endpoints, joined through `apex = x ⊕ y`.
    Concatenated { apex: Point },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub x: Point,
    pub y: Point,
    pub mode: SegmentMode,
    /// One chain for comparable endpoints; `[x, x⊕y]` and `[y, x⊕y]` otherwise.
    pub legs: Vec<ComparableChain>,
    /// Pieces in traversal order from `x` to `y`.
    pub pieces: Vec<ElementaryPiece>,
}

impl SegmentDecomposition {
    /// Corner points of the traversal `x = c_0 -> c_1 -> ... -> y`.
    pub fn corners(&self) -> Vec<Point> {
        let mut out = vec![self.x.clone()];
        for piece in &self.pieces {
            out.push(piece.end.clone());
        }
        if self.pieces.is_empty() && self.x != self.y {
            out.push(self.y.clone());
        }
        out
    }

    pub fn contains(&self, z: &Point) -> bool {
        if self.pieces.is_empty() {
            return *z == self.x;
        }
        self.pieces.iter().any(|p| p.contains(z))
    }
}

fn classify(lower: &Point, upper: &Point, beta: Value) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut middle = Vec::new();
    let mut low = Vec::new();
    let mut high = Vec::new();
    for i in 0..lower.dim() {
        let (x, y) = (lower.get(i), upper.get(i));
        if x <= beta && beta <= y {
            middle.push(i);
        }
        if beta <= x {
            low.push(i);
        }
        if beta >= y {
            high.push(i);
        }
    }
    (middle, low, high)
}

/// `z(β)` on a segment with comparable endpoints `x <= y`:
/// `β` on the middle indices, `x_i` below them, `y_i` above.
pub fn segment_point(x: &Point, y: &Point, beta: Value) -> Result<Point> {
    check_dim(x.dim(), y.dim())?;
    if !x.le(y) {
        return Err(Error::Precondition(format!(
            "segment_point needs comparable endpoints x <= y, got {x} and {y}"
        )));
    }
    let (middle, low, _) = classify(x, y, beta);
    let coords = (0..x.dim())
        .map(|i| {
            if middle.contains(&i) {
                beta
            } else if low.contains(&i) {
                x.get(i)
            } else {
                y.get(i)
            }
        })
        .collect();
    Ok(Point::from_vec(coords))
}

fn chain(lower: &Point, upper: &Point) -> Result<ComparableChain> {
    let mut breakpoints: Vec<Value> = lower
        .coords()
        .iter()
        .chain(upper.coords())
        .copied()
        .collect();
    breakpoints.sort();

    let mut intervals = Vec::with_capacity(breakpoints.len().saturating_sub(1));
    let mut pieces: Vec<ElementaryPiece> = Vec::new();
    for w in breakpoints.windows(2) {
        let (start, end) = (w[0], w[1]);
        let degenerate = start == end;
        let probe = if degenerate { start } else { start.midpoint(&end)? };
        let (middle, low, high) = classify(lower, upper, probe);
        intervals.push(ParamInterval {
            start,
            end,
            middle: middle.clone(),
            low,
            high,
            degenerate,
        });
        // moving coordinates; a frozen coordinate with lower_i == upper_i never moves
        let active: Vec<usize> = middle
            .into_iter()
            .filter(|&i| lower.get(i) < upper.get(i))
            .collect();
        if degenerate || active.is_empty() {
            continue;
        }
        let a = segment_point(lower, upper, start)?;
        let b = segment_point(lower, upper, end)?;
        match pieces.last_mut() {
            Some(last) if last.active == active && last.end == a => {
                last.end = b;
                last.beta_range.1 = end;
            }
            _ => pieces.push(ElementaryPiece {
                start: a,
                end: b,
                active,
                beta_range: (start, end),
            }),
        }
    }
    Ok(ComparableChain {
        lower: lower.clone(),
        upper: upper.clone(),
        breakpoints,
        intervals,
        pieces,
    })
}

/// Splits `[x, y]⊕` into elementary pieces.
pub fn segment_decompose(x: &Point, y: &Point) -> Result<SegmentDecomposition> {
    check_dim(x.dim(), y.dim())?;
    if x.le(y) {
        let leg = chain(x, y)?;
        let pieces = leg.pieces.clone();
        return Ok(SegmentDecomposition {
            x: x.clone(),
            y: y.clone(),
            mode: SegmentMode::Comparable,
            legs: vec![leg],
            pieces,
        });
    }
    if y.le(x) {
        let leg = chain(y, x)?;
        let pieces = leg.pieces.iter().rev().map(ElementaryPiece::reversed).collect();
        return Ok(SegmentDecomposition {
            x: x.clone(),
            y: y.clone(),
            mode: SegmentMode::Comparable,
            legs: vec![leg],
            pieces,
        });
    }
    let apex = x.join(y)?;
    let up = chain(x, &apex)?;
    let down = chain(y, &apex)?;
    let mut pieces = up.pieces.clone();
    pieces.extend(down.pieces.iter().rev().map(ElementaryPiece::reversed));
    Ok(SegmentDecomposition {
        x: x.clone(),
        y: y.clone(),
        mode: SegmentMode::Concatenated { apex },
        legs: vec![up, down],
        pieces,
    })
}

/// Is `z` on the max-min segment between `x` and `y`?
pub fn segment_contains(x: &Point, y: &Point, z: &Point) -> Result<bool> {
    check_dim(x.dim(), z.dim())?;
    Ok(segment_decompose(x, y)?.contains(z))
}

/// An exact non-negative sum `Σ c_m · √m` with rational `c_m`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SqrtSum {
    terms: BTreeMap<u32, Value>,
}

impl SqrtSum {
    pub fn zero() -> SqrtSum {
        SqrtSum::default()
    }

    pub fn add_term(&mut self, coeff: Value, radicand: u32) -> Result<()> {
        if coeff.is_zero() || radicand == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(radicand).or_insert(Value::ZERO);
        *slot = slot.checked_add(&coeff)?;
        if slot.is_zero() {
            self.terms.remove(&radicand);
        }
        Ok(())
    }

    pub fn add(&self, other: &SqrtSum) -> Result<SqrtSum> {
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(c, m)?;
        }
        Ok(out)
    }

    /// `(radicand, coefficient)` pairs, radicands ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Value)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when every radicand is a perfect square.
    pub fn as_rational(&self) -> Option<Value> {
        let mut total = Value::ZERO;
        for (&m, c) in &self.terms {
            let r = isqrt(m as u128);
            if r * r != m as u128 {
                return None;
            }
            total = total.checked_add(&c.checked_mul(&Value::from_int(r as i128)).ok()?).ok()?;
        }
        Some(total)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&m, c)| c.to_f64() * (m as f64).sqrt())
            .sum()
    }

    /// Rational `[lower, upper]` enclosing the exact value; each square root is
    /// bracketed to within `1 / scale`.
    pub fn enclosure(&self, scale: u64) -> Result<(Value, Value)> {
        let s = scale as u128;
        let mut lo = Value::ZERO;
        let mut hi = Value::ZERO;
        for (&m, c) in &self.terms {
            let root = isqrt(m as u128 * s * s);
            let exact = root * root == m as u128 * s * s;
            let below = Value::new(root as i128, s as i128);
            let above = if exact {
                below
            } else {
                Value::new(root as i128 + 1, s as i128)
            };
            // coefficients are non-negative for lengths, but keep the bracket honest
            let (a, b) = (c.checked_mul(&below)?, c.checked_mul(&above)?);
            lo = lo.checked_add(&a.min(b))?;
            hi = hi.checked_add(&a.max(b))?;
        }
        Ok((lo, hi))
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({m})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Euclidean length of the max-min segment joining `x` and `y`.
pub fn geodesic_distance(x: &Point, y: &Point) -> Result<SqrtSum> {
    let dec = segment_decompose(x, y)?;
    let mut total = SqrtSum::zero();
    for piece in &dec.pieces {
        total.add_term(piece.length_parameter(), piece.active.len() as u32)?;
    }
    Ok(total)
}
