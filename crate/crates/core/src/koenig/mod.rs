//! Threshold matrices, the bottleneck threshold, König diagrams and the
//! recursive construction of internally separating points.

mod diagram;
mod intsep;
pub mod matching;

use std::fmt;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::value::{SemiringBounds, Value};

pub use diagram::{
    improve_diagram, improve_diagram_traced, koenig_diagram, tight_diagram, Improvement, ImprovementKind,
    KoenigDiagram,
};
pub use intsep::{internal_separation, intsep_sorted, verify_internal_separation, InternalSeparation};

/// A `(d + 1) x d` matrix whose rows are points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vec<Value>>,
}

impl Matrix {
    pub fn new(rows: Vec<Vec<Value>>) -> Result<Matrix> {
        if rows.is_empty() {
            return Err(Error::Precondition("matrix needs at least one row".into()));
        }
        let cols = rows.len() - 1;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Precondition(format!(
                    "row {i} has {} entries, a {}-row matrix needs {cols}",
                    row.len(),
                    rows.len()
                )));
            }
        }
        Ok(Matrix { rows })
    }

    pub fn from_points(points: &[Point]) -> Result<Matrix> {
        Matrix::new(points.iter().map(|p| p.coords().to_vec()).collect())
    }

    pub fn parse(rows: &[&[&str]]) -> Result<Matrix> {
        Matrix::new(
            rows.iter()
                .map(|r| r.iter().map(|s| Value::parse(s)).collect::<Result<_>>())
                .collect::<Result<_>>()?,
        )
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> Value {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn check_bounds(&self, bounds: &SemiringBounds) -> Result<()> {
        self.rows.iter().flatten().try_for_each(|&c| bounds.check(c).map(|_| ()))
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        Matrix::new(rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j]).collect()).collect())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

/// `A^(h)`: entry true iff `a_ij >= h`.
pub fn threshold_matrix(a: &Matrix, h: Value) -> Vec<Vec<bool>> {
    a.rows.iter().map(|r| r.iter().map(|&x| x >= h).collect()).collect()
}

fn has_full_matching(a: &Matrix, h: Value) -> bool {
    let m = matching::max_matching(a.n_rows(), a.n_cols(), |i, j| a.get(i, j) >= h);
    matching::matching_size(&m) == a.n_cols()
}

/// Greatest `h` such that `A^(h)` has a `d x d` submatrix with non-zero
/// permanent, i.e. a matching of size `d` on entries `>= h`.
pub fn bottleneck_threshold(a: &Matrix) -> Result<Value> {
    if a.n_cols() == 0 {
        return Err(Error::Precondition("bottleneck of a matrix without columns".into()));
    }
    let mut levels: Vec<Value> = a.rows.iter().flatten().copied().collect();
    levels.sort();
    levels.dedup();
    // the smallest entry always admits a full matching
    let (mut good, mut bad) = (0, levels.len());
    while bad - good > 1 {
        let mid = (good + bad) / 2;
        if has_full_matching(a, levels[mid]) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(levels[good])
}
