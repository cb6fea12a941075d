//! Exact computational geometry in the max-min semiring and its max-T
//! relatives.
//!
//! Values are exact rationals. Points live in a box `[lo, hi]^d` (the unit
//! cube by default), where max acts as addition and min (or a T-norm) as
//! multiplication.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod hull;
pub mod koenig;
pub mod maxt;
pub mod oracle;
pub mod point;
pub mod semispace;
pub mod separation;
pub mod tnorm;
pub mod value;

pub use error::{Error, Result};
pub use point::{IntervalBox, Point, Polytope};
pub use semispace::{Hyperplane, SemispaceId, SemispaceIndex};
pub use tnorm::{TNorm, TNormRegistry};
pub use value::{SemiringBounds, Value};
