//! Separating points and boxes from max-min polytopes by semispaces, and
//! diagonal points by hyperplanes.

use crate::error::{check_dim, Error, Result};
use crate::grid::WitnessGrid;
use crate::hull::{hull_member, in_hull, HullMembership};
use crate::point::{join_all, IntervalBox, Point, Polytope};
use crate::semispace::{closure_hyperplane_at_level, Hyperplane, SemispaceId, SemispaceIndex};
use crate::value::SemiringBounds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSeparation {
    InHull,
    Separated(SemispaceId),
}

pub fn separate_point(p: &Point, c: &Polytope, bounds: &SemiringBounds) -> Result<PointSeparation> {
    match hull_member(p, c, bounds)? {
        HullMembership::Member { .. } => Ok(PointSeparation::InHull),
        HullMembership::Outside { separating } => {
            let s = SemispaceId::new(p.clone(), separating, *bounds)?;
            for g in c.generators() {
                if !s.contains(g)? {
                    return Err(Error::Invariant(format!("{s:?} misses generator {g}")));
                }
            }
            Ok(PointSeparation::Separated(s))
        }
    }
}

fn check_box(b: &IntervalBox, c: &Polytope, bounds: &SemiringBounds) -> Result<()> {
    check_dim(c.dim(), b.dim())?;
    b.check_bounds(bounds)?;
    c.check_bounds(bounds)
}

/// Lexicographically smallest grid point of `B ∩ conv(C)`, if any.
pub fn box_hull_meet(b: &IntervalBox, c: &Polytope, bounds: &SemiringBounds) -> Result<Option<Point>> {
    check_box(b, c, bounds)?;
    let values = c
        .coordinate_values()
        .chain(b.lower().coords().iter().copied())
        .chain(b.upper().coords().iter().copied());
    for q in WitnessGrid::new(values, bounds).points_in_box(b) {
        if in_hull(&q, c, bounds)? {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

fn require_disjoint(b: &IntervalBox, c: &Polytope, bounds: &SemiringBounds) -> Result<()> {
    match box_hull_meet(b, c, bounds)? {
        Some(q) => Err(Error::Precondition(format!("box meets the hull at {q}"))),
        None => Ok(()),
    }
}

/// Coordinates sorted by upper corner, non-increasing and stable, and the
/// largest prefix length `t(B)` whose last upper value dominates every lower
/// value in the prefix.
pub fn box_order(b: &IntervalBox) -> (Vec<usize>, usize) {
    let up = b.upper();
    let mut order: Vec<usize> = (0..b.dim()).collect();
    order.sort_by(|&i, &j| up.get(j).cmp(&up.get(i)));
    let t = (1..=b.dim())
        .filter(|&t| {
            let top = up.get(order[t - 1]);
            order[..t].iter().all(|&i| top >= b.lower().get(i))
        })
        .max()
        .expect("t = 1 always qualifies");
    (order, t)
}

/// Whether the box condition for semispace separation holds. Violations are
/// upward closed inside `conv(C)`, so it suffices to test the join of the
/// generators, which is the greatest point of the hull.
pub fn sep_condition(b: &IntervalBox, c: &Polytope, bounds: &SemiringBounds) -> Result<bool> {
    require_disjoint(b, c, bounds)?;
    let (order, t) = box_order(b);
    if b.upper().get(order[0]) != bounds.hi() {
        return Ok(true);
    }
    let y = join_all(c.generators())?;
    let violated = b.lower().le(&y) && order[..t].iter().any(|&l| y.get(l) > b.upper().get(l));
    Ok(!violated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxSeparation {
    Separated(SemispaceId),
    NonSeparable,
}

/// Semispaces that could separate the box. Any separating semispace can be
/// replaced by one of these: `S_0` at the upper corner, or the semispace of
/// coordinate `c` at the upper corner with coordinate `c` lowered to the
/// lower corner.
pub fn box_candidates(b: &IntervalBox, bounds: &SemiringBounds) -> Result<Vec<SemispaceId>> {
    let top = b.upper();
    let mut out = Vec::new();
    if top.coords().iter().all(|&v| v != bounds.hi()) {
        out.push(SemispaceId::new(top.clone(), SemispaceIndex::UPPER, *bounds)?);
    }
    for c in 0..b.dim() {
        let low = b.lower().get(c);
        if low > bounds.lo() {
            let mut anchor = top.coords().to_vec();
            anchor[c] = low;
            out.push(SemispaceId::new(Point::new(anchor)?, SemispaceIndex::of_coordinate(c), *bounds)?);
        }
    }
    Ok(out)
}

/// Does `s` contain every generator and avoid the whole box?
pub fn separates_box(s: &SemispaceId, b: &IntervalBox, c: &Polytope) -> Result<bool> {
    for g in c.generators() {
        if !s.contains(g)? {
            return Ok(false);
        }
    }
    for corner in b.corners() {
        if !s.sector_contains(&corner)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn separate_box(b: &IntervalBox, c: &Polytope, bounds: &SemiringBounds) -> Result<BoxSeparation> {
    if !sep_condition(b, c, bounds)? {
        return Ok(BoxSeparation::NonSeparable);
    }
    for s in box_candidates(b, bounds)? {
        if separates_box(&s, b, c)? {
            return Ok(BoxSeparation::Separated(s));
        }
    }
    Err(Error::Invariant(format!(
        "separation condition holds for {b:?} but no semispace separates"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperplaneSeparation {
    Separated {
        hyperplane: Hyperplane,
        /// The semispace at `p` whose closure is shifted onto the generators.
        index: SemispaceIndex,
    },
    InHull,
    NotOnDiagonal,
}

/// Separates a diagonal point from `conv(C)` by a hyperplane.
///
/// The closure of `S_i(p)` passes through `p`, so the hyperplane used is the
/// closure of the same semispace anchored at the diagonal level of the
/// nearest generator: `max_k x_k >= L` with `L` the least generator maximum
/// for `S_0`, or `x_c <= L` with `L` the largest generator value at `c`.
pub fn separate_by_hyperplane(p: &Point, c: &Polytope, bounds: &SemiringBounds) -> Result<HyperplaneSeparation> {
    check_dim(c.dim(), p.dim())?;
    if !p.is_diagonal() {
        return Ok(HyperplaneSeparation::NotOnDiagonal);
    }
    let s = match separate_point(p, c, bounds)? {
        PointSeparation::InHull => return Ok(HyperplaneSeparation::InHull),
        PointSeparation::Separated(s) => s,
    };
    let index = s.index();
    let gens = c.generators();
    let level = match index.coordinate() {
        None => gens
            .iter()
            .map(|g| *g.coords().iter().max().expect("non-empty"))
            .min()
            .expect("non-empty"),
        Some(col) => gens.iter().map(|g| g.get(col)).max().expect("non-empty"),
    };
    let hyperplane = closure_hyperplane_at_level(level, index, p.dim(), bounds)?;
    if hyperplane.contains(p)? {
        return Err(Error::Invariant(format!("{p} lies on its separating hyperplane")));
    }
    for g in gens {
        if !hyperplane.contains(g)? {
            return Err(Error::Invariant(format!("generator {g} is off the hyperplane")));
        }
    }
    Ok(HyperplaneSeparation::Separated { hyperplane, index })
}
