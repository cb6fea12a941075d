//! Finite candidate grids for witness searches.
//!
//! Max and min of grid values stay on the grid, and any monotone map that
//! fixes the grid commutes with both. Retracting a max-min witness onto the
//! grid built from every input coordinate (plus the bounds) therefore keeps
//! it a witness, which makes grid search exact for the min norm. Other norms
//! produce values off the grid, so their searches add a uniform refinement
//! and are only as good as its resolution.

use crate::error::{Error, Result};
use crate::point::{IntervalBox, Point};
use crate::value::{SemiringBounds, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessGrid {
    values: Vec<Value>,
}

impl WitnessGrid {
    /// Grid of the given values together with both bounds.
    pub fn new(values: impl IntoIterator<Item = Value>, bounds: &SemiringBounds) -> WitnessGrid {
        let mut values: Vec<Value> = values
            .into_iter()
            .chain([bounds.lo(), bounds.hi()])
            .filter(|v| bounds.contains(*v))
            .collect();
        values.sort();
        values.dedup();
        WitnessGrid { values }
    }

    /// Adds `lo + k * step` for every `k` that stays within the bounds.
    pub fn refined(mut self, step: Value, bounds: &SemiringBounds) -> Result<WitnessGrid> {
        if step <= Value::ZERO {
            return Err(Error::Precondition(format!("grid step must be positive, got {step}")));
        }
        let mut x = bounds.lo();
        while x <= bounds.hi() {
            self.values.push(x);
            x = x.checked_add(&step)?;
        }
        self.values.sort();
        self.values.dedup();
        Ok(self)
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All grid points of dimension `dim`, in lexicographic order.
    pub fn points(&self, dim: usize) -> GridPoints {
        GridPoints::new(vec![self.values.clone(); dim])
    }

    /// Grid points inside `bx`, in lexicographic order.
    pub fn points_in_box(&self, bx: &IntervalBox) -> GridPoints {
        let axes = (0..bx.dim())
            .map(|i| {
                self.values
                    .iter()
                    .copied()
                    .filter(|&v| bx.lower().get(i) <= v && v <= bx.upper().get(i))
                    .collect()
            })
            .collect();
        GridPoints::new(axes)
    }
}

/// Odometer over a product of per-axis value lists.
pub struct GridPoints {
    axes: Vec<Vec<Value>>,
    cursor: Option<Vec<usize>>,
}

impl GridPoints {
    fn new(axes: Vec<Vec<Value>>) -> GridPoints {
        let cursor = if axes.is_empty() || axes.iter().any(Vec::is_empty) {
            None
        } else {
            Some(vec![0; axes.len()])
        };
        GridPoints { axes, cursor }
    }
}

impl Iterator for GridPoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let cursor = self.cursor.as_mut()?;
        let point = Point::from_vec(
            cursor
                .iter()
                .zip(&self.axes)
                .map(|(&i, axis)| axis[i])
                .collect(),
        );
        let mut pos = cursor.len();
        loop {
            if pos == 0 {
                self.cursor = None;
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < self.axes[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
        Some(point)
    }
}
