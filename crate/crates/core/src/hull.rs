//! Max-min hull membership and the Carathéodory-type theorems.
//!
//! Membership uses the multiorder principle: `p` lies in `conv(X)` exactly
//! when every sector at `p` contains a generator. When a sector is empty its
//! semispace contains all of `X`, and therefore all of `conv(X)`.

use crate::error::{check_dim, Error, Result};
use crate::grid::WitnessGrid;
use crate::koenig::internal_separation;
use crate::point::{Point, Polytope};
use crate::semispace::{index_set, indices, SemispaceId, SemispaceIndex};
use crate::value::SemiringBounds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullMembership {
    /// One generator index per sector at `p`, smallest index first.
    Member {
        witnesses: Vec<(SemispaceIndex, usize)>,
    },
    /// `S_separating(p)` contains every generator and misses `p`.
    Outside { separating: SemispaceIndex },
}

impl HullMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, HullMembership::Member { .. })
    }
}

fn check_inputs(p: &Point, x: &Polytope, bounds: &SemiringBounds) -> Result<()> {
    check_dim(x.dim(), p.dim())?;
    p.check_bounds(bounds)?;
    x.check_bounds(bounds)
}

/// Sector membership written out directly: the sector of coordinate `c` at
/// `p` is `q_c >= p_c` together with `q_k <= p_k` wherever `p_k < p_c`;
/// the sector of `S_0` is `q <= p`.
fn in_sector(p: &Point, index: SemispaceIndex, q: &Point) -> bool {
    let (p, q) = (p.coords(), q.coords());
    match index.coordinate() {
        None => p.iter().zip(q).all(|(a, b)| b <= a),
        Some(c) => q[c] >= p[c] && p.iter().zip(q).all(|(a, b)| *a >= p[c] || b <= a),
    }
}

pub fn hull_member(p: &Point, x: &Polytope, bounds: &SemiringBounds) -> Result<HullMembership> {
    check_inputs(p, x, bounds)?;
    let mut witnesses = Vec::new();
    for index in indices(p, bounds) {
        let found = x.generators().iter().position(|g| in_sector(p, index, g));
        match found {
            Some(g) => witnesses.push((index, g)),
            None => return Ok(HullMembership::Outside { separating: index }),
        }
    }
    Ok(HullMembership::Member { witnesses })
}

pub fn in_hull(p: &Point, x: &Polytope, bounds: &SemiringBounds) -> Result<bool> {
    check_inputs(p, x, bounds)?;
    Ok(indices(p, bounds).all(|index| x.generators().iter().any(|g| in_sector(p, index, g))))
}

/// A sub-polytope of at most `d + 1` generators whose hull still holds `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Indices into the canonical generator list of the input.
    pub indices: Vec<usize>,
    pub polytope: Polytope,
}

pub fn caratheodory_reduce(p: &Point, x: &Polytope, bounds: &SemiringBounds) -> Result<Reduction> {
    let HullMembership::Member { witnesses } = hull_member(p, x, bounds)? else {
        return Err(Error::Precondition(format!("{p} is not in the hull")));
    };
    // a generator equal to p sits in every sector at p
    if let Some(g) = x.generators().iter().position(|g| g == p) {
        return Ok(Reduction {
            indices: vec![g],
            polytope: Polytope::singleton(p.clone()),
        });
    }
    let mut indices: Vec<usize> = witnesses.iter().map(|&(_, g)| g).collect();
    indices.sort_unstable();
    indices.dedup();
    let polytope = Polytope::new(indices.iter().map(|&g| x.generators()[g].clone()).collect())?;
    if !in_hull(p, &polytope, bounds)? {
        return Err(Error::Invariant("reduced polytope lost the point".into()));
    }
    Ok(Reduction { indices, polytope })
}

/// A point picked from one color class, and the sector at the target point it occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorPick {
    pub color: usize,
    pub sector: SemispaceIndex,
    pub point: Point,
}

fn require_colors(colors: &[Polytope], dim: usize) -> Result<()> {
    if colors.len() != dim + 1 {
        return Err(Error::Precondition(format!(
            "expected {} color classes, got {}",
            dim + 1,
            colors.len()
        )));
    }
    for c in colors {
        check_dim(dim, c.dim())?;
    }
    Ok(())
}

/// Weak colorful Carathéodory: `p` in every color hull gives a transversal
/// (one point from each of `|I(p)|` colors) whose hull holds `p`.
pub fn colorful_weak(p: &Point, colors: &[Polytope], bounds: &SemiringBounds) -> Result<Vec<ColorPick>> {
    require_colors(colors, p.dim())?;
    let mut per_color = Vec::with_capacity(colors.len());
    for (color, x) in colors.iter().enumerate() {
        match hull_member(p, x, bounds)? {
            HullMembership::Member { witnesses } => per_color.push(witnesses),
            HullMembership::Outside { .. } => {
                return Err(Error::Precondition(format!(
                    "color {color} does not contain {p} in its hull"
                )))
            }
        }
    }
    // color k serves the k-th index of I(p)
    let picks: Vec<ColorPick> = index_set(p, bounds)
        .into_iter()
        .enumerate()
        .map(|(color, sector)| {
            let g = per_color[color]
                .iter()
                .find(|(s, _)| *s == sector)
                .map(|&(_, g)| g)
                .expect("every sector has a witness");
            ColorPick {
                color,
                sector,
                point: colors[color].generators()[g].clone(),
            }
        })
        .collect();
    let transversal = Polytope::new(picks.iter().map(|c| c.point.clone()).collect())?;
    if !in_hull(p, &transversal, bounds)? {
        return Err(Error::Invariant("weak colorful transversal misses the point".into()));
    }
    Ok(picks)
}

/// Outcome of the strong colorful theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongTransversal {
    /// One pick per color, in color order.
    pub picks: Vec<ColorPick>,
    /// A point of `C` inside the hull of the picked points.
    pub witness: Point,
    /// The intersection points `p^i` of `C` and each color hull that were used.
    pub anchors: Vec<Point>,
    /// Bounds the internal separation ran in; wider than the input bounds when
    /// some anchor touched them.
    pub working_bounds: SemiringBounds,
}

/// Lexicographically smallest grid point of `conv(a) ∩ conv(b)`.
pub fn find_common_point(a: &Polytope, b: &Polytope, bounds: &SemiringBounds) -> Result<Option<Point>> {
    check_dim(a.dim(), b.dim())?;
    let grid = WitnessGrid::new(a.coordinate_values().chain(b.coordinate_values()), bounds);
    for q in grid.points(a.dim()) {
        if in_hull(&q, a, bounds)? && in_hull(&q, b, bounds)? {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Strong colorful Carathéodory: if the convex set `conv(C)` meets every
/// color hull, some transversal's hull meets `conv(C)`.
///
/// `anchors`, when given, supplies a point of `conv(C) ∩ conv(X^i)` per color;
/// otherwise they are located by exact grid search.
pub fn colorful_strong(
    c: &Polytope,
    colors: &[Polytope],
    anchors: Option<&[Point]>,
    bounds: &SemiringBounds,
) -> Result<StrongTransversal> {
    let d = c.dim();
    require_colors(colors, d)?;
    c.check_bounds(bounds)?;
    let anchors: Vec<Point> = match anchors {
        Some(given) => {
            if given.len() != colors.len() {
                return Err(Error::Precondition(format!(
                    "expected {} intersection points, got {}",
                    colors.len(),
                    given.len()
                )));
            }
            for (i, q) in given.iter().enumerate() {
                if !in_hull(q, c, bounds)? || !in_hull(q, &colors[i], bounds)? {
                    return Err(Error::Precondition(format!(
                        "intersection point {q} for color {i} is not in both hulls"
                    )));
                }
            }
            given.to_vec()
        }
        None => colors
            .iter()
            .enumerate()
            .map(|(i, x)| {
                find_common_point(c, x, bounds)?.ok_or_else(|| {
                    Error::Precondition(format!("color {i} hull does not meet C"))
                })
            })
            .collect::<Result<_>>()?,
    };

    let working = if anchors.iter().all(|q| q.is_finite(bounds)) {
        *bounds
    } else {
        bounds.extended()?
    };
    let sep = internal_separation(&anchors, &working)?;
    let q = sep.point;

    let mut picks = Vec::with_capacity(colors.len());
    for (color, x) in colors.iter().enumerate() {
        let target = SemispaceId::new(q.clone(), sep.assignment[color], working)?;
        // some sector at the anchor refines the target sector at q
        let mut pick = None;
        let anchor = &anchors[color];
        let HullMembership::Member { witnesses } = hull_member(anchor, x, &working)? else {
            return Err(Error::Invariant("anchor left its color hull".into()));
        };
        for (j, g) in witnesses {
            let source = SemispaceId::new(anchor.clone(), j, working)?;
            if source.sector_within(&target)? {
                pick = Some(g);
                break;
            }
        }
        let g = pick.ok_or_else(|| {
            Error::Invariant(format!("no sector at {anchor} refines {target:?}"))
        })?;
        let point = x.generators()[g].clone();
        if !target.sector_contains(&point)? {
            return Err(Error::Invariant("picked point is outside its target sector".into()));
        }
        picks.push(ColorPick {
            color,
            sector: target.index(),
            point,
        });
    }

    let transversal = Polytope::new(picks.iter().map(|p| p.point.clone()).collect())?;
    if !in_hull(&q, &transversal, bounds)? || !in_hull(&q, c, bounds)? {
        return Err(Error::Invariant("strong colorful witness failed verification".into()));
    }
    Ok(StrongTransversal {
        picks,
        witness: q,
        anchors,
        working_bounds: working,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[&str]) -> Point {
        Point::parse(c).unwrap()
    }

    fn poly(points: &[&[&str]]) -> Polytope {
        Polytope::new(points.iter().map(|c| p(c)).collect()).unwrap()
    }

    fn unit() -> SemiringBounds {
        SemiringBounds::unit()
    }

    #[test]
    fn direct_sector_test_matches_semispaces() {
        let vals = ["0", "1/3", "2/3", "1"];
        let pts: Vec<Point> = (0..27)
            .map(|n| p(&[vals[n % 3 + 1], vals[n / 3 % 3], vals[n / 9]]))
            .collect();
        for a in &pts {
            for index in index_set(a, &unit()) {
                let s = SemispaceId::new(a.clone(), index, unit()).unwrap();
                for q in &pts {
                    assert_eq!(in_sector(a, index, q), s.sector_contains(q).unwrap(), "{a} {index} {q}");
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let x = poly(&[&["0.2", "0.8"], &["0.8", "0.2"]]);
        assert_eq!(
            hull_member(&p(&["0.5", "0.5"]), &x, &unit()).unwrap(),
            HullMembership::Outside {
                separating: SemispaceIndex(0)
            }
        );
        assert!(in_hull(&p(&["0.8", "0.8"]), &x, &unit()).unwrap());
        assert!(in_hull(&p(&["0.2", "0.8"]), &x, &unit()).unwrap());
        assert!(hull_member(&p(&["0.5"]), &x, &unit()).is_err());
    }

    #[test]
    fn reduction_of_generator_is_itself() {
        let x = poly(&[&["0.1", "0.9"], &["0.4", "0.4"], &["0.9", "0.3"], &["0.6", "0.7"]]);
        let red = caratheodory_reduce(&p(&["0.4", "0.4"]), &x, &unit()).unwrap();
        assert_eq!(red.indices, [1]);
        assert!(caratheodory_reduce(&p(&["1", "1"]), &x, &unit()).is_err());
    }

    #[test]
    fn weak_colorful_one_dimensional() {
        let colors = [poly(&[&["0.3"], &["0.8"]]), poly(&[&["0.1"], &["0.6"]])];
        let picks = colorful_weak(&p(&["0.5"]), &colors, &unit()).unwrap();
        let pts: Vec<Point> = picks.iter().map(|c| c.point.clone()).collect();
        assert_eq!(pts, [p(&["0.3"]), p(&["0.6"])]);
        let bad = [poly(&[&["0.3"]]), poly(&[&["0.1"], &["0.6"]])];
        assert!(matches!(
            colorful_weak(&p(&["0.5"]), &bad, &unit()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn strong_colorful_degenerate_point() {
        let x = poly(&[&["0.2", "0.7"], &["0.6", "0.3"], &["0.9", "0.9"]]);
        let target = p(&["0.6", "0.7"]);
        assert!(in_hull(&target, &x, &unit()).unwrap());
        let colors = vec![x.clone(), x.clone(), x];
        let c = Polytope::singleton(target.clone());
        let out = colorful_strong(&c, &colors, None, &unit()).unwrap();
        assert_eq!(out.witness, target);
        assert_eq!(out.picks.len(), 3);
    }
}
