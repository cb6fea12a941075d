use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::value::{SemiringBounds, Value};

/// A vector of `d >= 1` exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Value>);

impl Point {
    pub fn new(coords: Vec<Value>) -> Result<Point> {
        if coords.is_empty() {
            return Err(Error::Precondition("points need at least one coordinate".into()));
        }
        Ok(Point(coords))
    }

    /// Like [`Point::new`] but allows the zero-dimensional point, which only
    /// shows up as an intermediate in recursive constructions.
    pub(crate) fn from_vec(coords: Vec<Value>) -> Point {
        Point(coords)
    }

    pub fn parse(coords: &[&str]) -> Result<Point> {
        Point::new(coords.iter().map(|s| Value::parse(s)).collect::<Result<_>>()?)
    }

    pub fn splat(value: Value, dim: usize) -> Result<Point> {
        Point::new(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Value] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Value {
        self.0[i]
    }

    pub fn check_bounds(&self, bounds: &SemiringBounds) -> Result<()> {
        for &c in &self.0 {
            bounds.check(c)?;
        }
        Ok(())
    }

    /// Every coordinate strictly inside the bounds.
    pub fn is_finite(&self, bounds: &SemiringBounds) -> bool {
        self.0.iter().all(|&c| bounds.is_finite(c))
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Point) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn comparable(&self, other: &Point) -> bool {
        self.le(other) || other.le(self)
    }

    /// Componentwise maximum, the semiring sum `x ⊕ y`.
    pub fn join(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect(),
        ))
    }

    /// `min(scalar, x_i)` in every coordinate.
    pub fn scale_min(&self, scalar: Value) -> Point {
        Point(self.0.iter().map(|&c| c.min(scalar)).collect())
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Value::to_f64).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Join of a non-empty list of points.
pub fn join_all<'a>(points: impl IntoIterator<Item = &'a Point>) -> Result<Point> {
    let mut iter = points.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Precondition("join of an empty set".into()))?;
    iter.try_fold(first.clone(), |acc, p| acc.join(p))
}

/// A finite generator list; its max-min (or max-T) hull is implicit.
///
/// Duplicate generators are dropped, keeping the first occurrence, so
/// generator indices refer to the canonical list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    generators: Vec<Point>,
    /// Smallest and largest coordinate over all generators.
    range: (Value, Value),
}

fn coordinate_range(generators: &[Point]) -> (Value, Value) {
    let mut values = generators.iter().flat_map(|g| g.coords().iter().copied());
    // zero-dimensional generators: the full check in check_bounds decides
    let Some(first) = values.next() else {
        return (Value::ZERO, Value::ZERO);
    };
    values.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

impl Polytope {
    pub fn new(points: Vec<Point>) -> Result<Polytope> {
        let first = points
            .first()
            .ok_or_else(|| Error::Precondition("a polytope needs at least one generator".into()))?;
        let dim = first.dim();
        let mut generators: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            check_dim(dim, p.dim())?;
            if !generators.contains(&p) {
                generators.push(p);
            }
        }
        let range = coordinate_range(&generators);
        Ok(Polytope { generators, range })
    }

    pub fn singleton(point: Point) -> Polytope {
        let generators = vec![point];
        let range = coordinate_range(&generators);
        Polytope { generators, range }
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn check_bounds(&self, bounds: &SemiringBounds) -> Result<()> {
        if bounds.contains(self.range.0) && bounds.contains(self.range.1) {
            return Ok(());
        }
        // report the first offending coordinate
        self.generators.iter().try_for_each(|g| g.check_bounds(bounds))
    }

    /// Every coordinate of every generator.
    pub fn coordinate_values(&self) -> impl Iterator<Item = Value> + '_ {
        self.generators.iter().flat_map(|g| g.coords().iter().copied())
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.generators).finish()
    }
}

/// Cartesian product of closed intervals `[lower_i, upper_i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalBox {
    lower: Point,
    upper: Point,
}

impl IntervalBox {
    pub fn new(lower: Point, upper: Point) -> Result<IntervalBox> {
        check_dim(lower.dim(), upper.dim())?;
        if !lower.le(&upper) {
            return Err(Error::Precondition(format!(
                "box lower corner {lower} is not below upper corner {upper}"
            )));
        }
        Ok(IntervalBox { lower, upper })
    }

    pub fn point(p: Point) -> IntervalBox {
        IntervalBox {
            lower: p.clone(),
            upper: p,
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &Point {
        &self.lower
    }

    pub fn upper(&self) -> &Point {
        &self.upper
    }

    pub fn check_bounds(&self, bounds: &SemiringBounds) -> Result<()> {
        self.lower.check_bounds(bounds)?;
        self.upper.check_bounds(bounds)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.lower.le(p) && p.le(&self.upper)
    }

    /// All `2^d` corners (with repeats when an interval is degenerate).
    pub fn corners(&self) -> Vec<Point> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                Point::from_vec(
                    (0..d)
                        .map(|i| {
                            if mask >> i & 1 == 1 {
                                self.upper.get(i)
                            } else {
                                self.lower.get(i)
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Debug for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} .. {}]", self.lower, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::v;

    #[test]
    fn polytope_drops_duplicates() {
        let a = Point::parse(&["0.2", "0.8"]).unwrap();
        let b = Point::parse(&["0.8", "0.2"]).unwrap();
        let poly = Polytope::new(vec![a.clone(), b.clone(), a.clone()]).unwrap();
        assert_eq!(poly.generators(), &[a, b]);
        assert!(Polytope::new(vec![]).is_err());
    }

    #[test]
    fn join_and_order() {
        let a = Point::parse(&["0.7", "0.2"]).unwrap();
        let b = Point::parse(&["0.3", "0.6"]).unwrap();
        assert_eq!(a.join(&b).unwrap(), Point::parse(&["0.7", "0.6"]).unwrap());
        assert!(!a.comparable(&b));
        assert!(a.le(&a.join(&b).unwrap()));
        assert!(Point::splat(v(1, 3), 3).unwrap().is_diagonal());
    }

    #[test]
    fn box_corners() {
        let bx = IntervalBox::new(
            Point::parse(&["0.1", "0.2"]).unwrap(),
            Point::parse(&["0.3", "0.4"]).unwrap(),
        )
        .unwrap();
        let corners = bx.corners();
        assert_eq!(corners.len(), 4);
        assert!(corners.iter().all(|c| bx.contains(c)));
        assert!(IntervalBox::new(
            Point::parse(&["0.5"]).unwrap(),
            Point::parse(&["0.4"]).unwrap()
        )
        .is_err());
    }
}
