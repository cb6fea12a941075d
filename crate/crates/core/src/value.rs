//! Exact rational scalars and the bounds of the ambient max-min semiring.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational scalar.
///
/// All arithmetic is exact. The few operations that can grow numerators and
/// denominators (sums, products, quotients) are checked and report
/// [`Error::Overflow`] instead of wrapping.
#[derive(Clone, Copy, Eq, Hash)]
pub struct Value(Ratio<i128>);

// every Value is kept in lowest terms with a positive denominator
impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        self.0.numer() == other.0.numer() && self.0.denom() == other.0.denom()
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Value) -> std::cmp::Ordering {
        let (a, b) = (&self.0, &other.0);
        if a.denom() == b.denom() {
            return a.numer().cmp(b.numer());
        }
        // denominators are positive, so cross products keep the order
        let small = |x: i128| i64::try_from(x).is_ok();
        if small(*a.numer()) && small(*a.denom()) && small(*b.numer()) && small(*b.denom()) {
            return (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()));
        }
        match (i128::checked_mul(*a.numer(), *b.denom()), i128::checked_mul(*b.numer(), *a.denom())) {
            (Some(l), Some(r)) => l.cmp(&r),
            _ => a.cmp(b),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Value {
    pub const ZERO: Value = Value(Ratio::new_raw(0, 1));
    pub const ONE: Value = Value(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Value {
        Value(Ratio::new(numer, denom))
    }

    pub fn from_int(n: i128) -> Value {
        Value(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn max(self, other: Value) -> Value {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Value) -> Value {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn checked_add(&self, other: &Value) -> Result<Value> {
        self.0.checked_add(&other.0).map(Value).ok_or(Error::Overflow)
    }

    pub fn checked_sub(&self, other: &Value) -> Result<Value> {
        self.0.checked_sub(&other.0).map(Value).ok_or(Error::Overflow)
    }

    pub fn checked_mul(&self, other: &Value) -> Result<Value> {
        self.0.checked_mul(&other.0).map(Value).ok_or(Error::Overflow)
    }

    pub fn checked_div(&self, other: &Value) -> Result<Value> {
        if other.0.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        self.0.checked_div(&other.0).map(Value).ok_or(Error::Overflow)
    }

    pub fn abs(&self) -> Value {
        Value(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Midpoint of two values.
    pub fn midpoint(&self, other: &Value) -> Result<Value> {
        self.checked_add(other)?.checked_div(&Value::from_int(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses a decimal (`0.35`, `-1`, `2.`) or fraction (`7/20`) literal exactly.
    pub fn parse(text: &str) -> Result<Value> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Parse(format!("empty numeral {text:?}")));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let d: i128 = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            return Ok(Value::new(n, d));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(format!("no digits in {text:?}")));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::Parse(format!("not a decimal or p/q numeral: {text:?}")));
        }
        if frac_part.len() > 30 {
            return Err(Error::Parse(format!("too many decimal places in {text:?}")));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: i128 = if digits.is_empty() {
            0
        } else {
            digits
                .parse()
                .map_err(|_| Error::Parse(format!("numeral out of range: {text:?}")))?
        };
        if neg {
            numer = -numer;
        }
        let denom = 10i128
            .checked_pow(frac_part.len() as u32)
            .ok_or(Error::Overflow)?;
        Ok(Value::new(numer, denom))
    }
}

impl From<i32> for Value {
    fn from(n: i32) -> Value {
        Value::from_int(n as i128)
    }
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Value> {
        Value::parse(s)
    }
}

/// Formats as `p/q`, or `p` when the denominator is one.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for `Value::new(n, d)`, handy in tests and examples.
pub fn v(n: i128, d: i128) -> Value {
    Value::new(n, d)
}

/// Zero (`lo`) and unity (`hi`) of the max-min semiring over `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemiringBounds {
    lo: Value,
    hi: Value,
}

impl SemiringBounds {
    pub fn new(lo: Value, hi: Value) -> Result<SemiringBounds> {
        if lo >= hi {
            return Err(Error::Domain(format!("bounds need lo < hi, got [{lo}, {hi}]")));
        }
        Ok(SemiringBounds { lo, hi })
    }

    /// The unit interval `[0, 1]`.
    pub fn unit() -> SemiringBounds {
        SemiringBounds {
            lo: Value::ZERO,
            hi: Value::ONE,
        }
    }

    pub fn lo(&self) -> Value {
        self.lo
    }

    pub fn hi(&self) -> Value {
        self.hi
    }

    pub fn is_unit(&self) -> bool {
        self.lo == Value::ZERO && self.hi == Value::ONE
    }

    pub fn contains(&self, value: Value) -> bool {
        self.lo <= value && value <= self.hi
    }

    /// Strictly between `lo` and `hi`.
    pub fn is_finite(&self, value: Value) -> bool {
        self.lo < value && value < self.hi
    }

    pub fn check(&self, value: Value) -> Result<Value> {
        if self.contains(value) {
            Ok(value)
        } else {
            Err(Error::Domain(format!(
                "{value} outside bounds [{}, {}]",
                self.lo, self.hi
            )))
        }
    }

    /// Bounds widened by one interval length on each side, e.g. `[0,1]` to `[-1,2]`.
    /// Every value inside `self` is finite with respect to the result.
    pub fn extended(&self) -> Result<SemiringBounds> {
        let width = self.hi.checked_sub(&self.lo)?;
        SemiringBounds::new(self.lo.checked_sub(&width)?, self.hi.checked_add(&width)?)
    }
}

impl Default for SemiringBounds {
    fn default() -> Self {
        SemiringBounds::unit()
    }
}
