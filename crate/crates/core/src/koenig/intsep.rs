use super::{tight_diagram, Matrix};
use crate::error::{check_dim, Error, Result};
use crate::point::Point;
use crate::semispace::{SemispaceId, SemispaceIndex};
use crate::value::{SemiringBounds, Value};

/// A point `p` and, for each input point, the sector at `p` holding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalSeparation {
    pub point: Point,
    pub assignment: Vec<SemispaceIndex>,
}

fn check_instance(points: &[Point], bounds: &SemiringBounds) -> Result<usize> {
    let d = points
        .first()
        .ok_or_else(|| Error::Precondition("no points given".into()))?
        .dim();
    if points.len() != d + 1 {
        return Err(Error::Precondition(format!(
            "internal separation needs d + 1 = {} points, got {}",
            d + 1,
            points.len()
        )));
    }
    for (i, p) in points.iter().enumerate() {
        check_dim(d, p.dim())?;
        p.check_bounds(bounds)?;
        if !p.is_finite(bounds) {
            return Err(Error::Precondition(format!(
                "point {i} = {p} touches the bounds; extend the bounds first"
            )));
        }
    }
    Ok(d)
}

/// Returns the point and each row's sector (`0`, or column + 1).
fn separate_matrix(a: &Matrix) -> Result<(Vec<Value>, Vec<usize>)> {
    if a.n_cols() == 0 {
        return Ok((Vec::new(), vec![0]));
    }
    let diagram = tight_diagram(a)?;
    let t = diagram.t();
    let pi = diagram.pi();
    let n2 = diagram.n2();
    let mut sub_rows = vec![diagram.free_row()];
    sub_rows.extend(
        diagram
            .m1()
            .into_iter()
            .filter(|&i| matches!(pi[i], Some(c) if n2.contains(&c))),
    );
    sub_rows.sort_unstable();
    let (z, sub_assign) = separate_matrix(&a.submatrix(&sub_rows, &n2)?)?;

    let mut x = vec![t; a.n_cols()];
    for (k, &col) in n2.iter().enumerate() {
        x[col] = z[k];
    }
    let mut assign: Vec<usize> = pi.iter().map(|c| c.map_or(0, |c| c + 1)).collect();
    for (k, &row) in sub_rows.iter().enumerate() {
        assign[row] = match sub_assign[k] {
            0 => 0,
            j => n2[j - 1] + 1,
        };
    }
    Ok((x, assign))
}

/// A point of `conv(X)` that internally separates the `d + 1` finite points:
/// each point lies in a different sector.
pub fn internal_separation(points: &[Point], bounds: &SemiringBounds) -> Result<InternalSeparation> {
    check_instance(points, bounds)?;
    let (x, assign) = separate_matrix(&Matrix::from_points(points)?)?;
    let sep = InternalSeparation {
        point: Point::new(x)?,
        assignment: assign.into_iter().map(SemispaceIndex).collect(),
    };
    if !verify_internal_separation(points, &sep, bounds)? {
        return Err(Error::Invariant(format!("{:?} does not separate the points", sep)));
    }
    Ok(sep)
}

/// The construction for points that are all non-increasing: partial maxima
/// swept from the last coordinate, then the largest non-increasing vector below them.
pub fn intsep_sorted(points: &[Point], bounds: &SemiringBounds) -> Result<InternalSeparation> {
    let d = check_instance(points, bounds)?;
    for (i, p) in points.iter().enumerate() {
        if p.coords().windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("point {i} = {p} is not non-increasing")));
        }
    }
    let mut remaining: Vec<usize> = (0..=d).collect();
    let mut assignment = vec![SemispaceIndex(0); d + 1];
    let mut y = vec![Value::ZERO; d];
    for t in (1..=d).rev() {
        let (slot, &row) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &a), (_, &b)| points[a].get(t - 1).cmp(&points[b].get(t - 1)).then(b.cmp(&a)))
            .expect("rows remain");
        y[t - 1] = points[row].get(t - 1);
        assignment[row] = SemispaceIndex(t);
        remaining.remove(slot);
    }
    let mut p = y.clone();
    for t in 1..d {
        p[t] = p[t - 1].min(y[t]);
    }
    let sep = InternalSeparation {
        point: Point::new(p)?,
        assignment,
    };
    if !verify_internal_separation(points, &sep, bounds)? {
        return Err(Error::Invariant(format!("{:?} does not separate the points", sep)));
    }
    Ok(sep)
}

/// The assignment is a bijection onto `{0, ..., d}` and every point lies in
/// its sector.
pub fn verify_internal_separation(
    points: &[Point],
    sep: &InternalSeparation,
    bounds: &SemiringBounds,
) -> Result<bool> {
    let d = sep.point.dim();
    if points.len() != d + 1 || sep.assignment.len() != d + 1 {
        return Ok(false);
    }
    let mut seen = vec![false; d + 1];
    for (x, &idx) in points.iter().zip(&sep.assignment) {
        if idx.0 > d || seen[idx.0] {
            return Ok(false);
        }
        seen[idx.0] = true;
        let Ok(sector) = SemispaceId::new(sep.point.clone(), idx, *bounds) else {
            return Ok(false);
        };
        if !sector.sector_contains(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::in_hull;
    use crate::point::Polytope;

    fn pts(rows: &[&[&str]]) -> Vec<Point> {
        rows.iter().map(|r| Point::parse(r).unwrap()).collect()
    }

    #[test]
    fn one_dimensional_base_case() {
        let x = pts(&[&["0.3"], &["0.7"]]);
        let sep = internal_separation(&x, &SemiringBounds::unit()).unwrap();
        assert_eq!(sep.point, Point::parse(&["0.7"]).unwrap());
        assert_eq!(sep.assignment, [SemispaceIndex(0), SemispaceIndex(1)]);
    }

    #[test]
    fn sorted_example() {
        let x = pts(&[&["0.9", "0.1"], &["0.8", "0.3"], &["0.5", "0.4"]]);
        let b = SemiringBounds::unit();
        let general = internal_separation(&x, &b).unwrap();
        assert_eq!(general.point, Point::parse(&["0.9", "0.4"]).unwrap());
        let sorted = intsep_sorted(&x, &b).unwrap();
        assert_eq!(sorted.point, Point::parse(&["0.9", "0.4"]).unwrap());
        assert!(in_hull(&general.point, &Polytope::new(x).unwrap(), &b).unwrap());
    }

    #[test]
    fn equal_rows() {
        let x = pts(&[&["0.6", "0.2"], &["0.6", "0.2"], &["0.6", "0.2"]]);
        let b = SemiringBounds::unit();
        assert_eq!(intsep_sorted(&x, &b).unwrap().point, x[0]);
        assert_eq!(internal_separation(&x, &b).unwrap().point, x[0]);
    }

    #[test]
    fn rejects_boundary_and_unsorted() {
        let b = SemiringBounds::unit();
        assert!(matches!(
            internal_separation(&pts(&[&["0"], &["0.5"]]), &b),
            Err(Error::Precondition(_))
        ));
        assert!(intsep_sorted(&pts(&[&["0.1", "0.5"], &["0.5", "0.5"], &["0.2", "0.1"]]), &b).is_err());
    }
}
