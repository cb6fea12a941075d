use std::collections::VecDeque;

use super::matching::{koenig_cover, max_matching, matching_size};
use super::{bottleneck_threshold, Matrix};
use crate::error::{Error, Result};
use crate::value::Value;

/// A König diagram: a block `M1 x N1` of entries `<= t` together with a
/// partial permutation `π` on entries `>= t` that leaves one free row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KoenigDiagram {
    matrix: Matrix,
    t: Value,
    in_m1: Vec<bool>,
    in_n1: Vec<bool>,
    pi: Vec<Option<usize>>,
    free: usize,
}

fn members(flags: &[bool], want: bool) -> Vec<usize> {
    flags.iter().enumerate().filter(|(_, &f)| f == want).map(|(i, _)| i).collect()
}

impl KoenigDiagram {
    /// Builds a diagram from raw parts and validates it.
    pub fn from_parts(
        matrix: Matrix,
        t: Value,
        m1: &[usize],
        n1: &[usize],
        pi: Vec<Option<usize>>,
    ) -> Result<KoenigDiagram> {
        let mut in_m1 = vec![false; matrix.n_rows()];
        let mut in_n1 = vec![false; matrix.n_cols()];
        for &i in m1 {
            *in_m1.get_mut(i).ok_or_else(|| Error::Precondition(format!("row {i} out of range")))? = true;
        }
        for &j in n1 {
            *in_n1.get_mut(j).ok_or_else(|| Error::Precondition(format!("column {j} out of range")))? = true;
        }
        let free_rows = members(&pi.iter().map(Option::is_none).collect::<Vec<_>>(), true);
        if pi.len() != matrix.n_rows() || free_rows.len() != 1 {
            return Err(Error::Invariant("π must leave exactly one free row".into()));
        }
        let d = KoenigDiagram {
            matrix,
            t,
            in_m1,
            in_n1,
            pi,
            free: free_rows[0],
        };
        d.validate()?;
        Ok(d)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn t(&self) -> Value {
        self.t
    }

    pub fn m1(&self) -> Vec<usize> {
        members(&self.in_m1, true)
    }

    pub fn m2(&self) -> Vec<usize> {
        members(&self.in_m1, false)
    }

    pub fn n1(&self) -> Vec<usize> {
        members(&self.in_n1, true)
    }

    pub fn n2(&self) -> Vec<usize> {
        members(&self.in_n1, false)
    }

    pub fn pi(&self) -> &[Option<usize>] {
        &self.pi
    }

    pub fn free_row(&self) -> usize {
        self.free
    }

    fn count_pi(&self, row_side: bool, col_side: bool) -> usize {
        self.pi
            .iter()
            .enumerate()
            .filter(|(i, c)| matches!(c, Some(c) if self.in_m1[*i] == row_side && self.in_n1[*c] == col_side))
            .count()
    }

    /// `π`-entries inside `M1 x N1`.
    pub fn r(&self) -> usize {
        self.count_pi(true, true)
    }

    /// `π`-entries inside `M2 x N2`.
    pub fn s(&self) -> usize {
        self.count_pi(false, false)
    }

    /// `m1 + n1 - d - 1 - r`, never positive.
    pub fn tightness(&self) -> i64 {
        let m1 = self.m1().len() as i64;
        let n1 = self.n1().len() as i64;
        let d = self.matrix.n_cols() as i64;
        m1 + n1 - d - 1 - self.r() as i64
    }

    pub fn is_tight(&self) -> bool {
        self.tightness() == 0
    }

    /// Checks every structural invariant, including the row/column count
    /// identity `r + (m1 - r - [f in M1]) + (n1 - r) + s = d`.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("König diagram: {msg}")));
        let d = self.matrix.n_cols();
        let mut used = vec![false; d];
        for (i, c) in self.pi.iter().enumerate() {
            match c {
                None if i != self.free => return fail(format!("row {i} unmatched but not free")),
                None => {}
                Some(c) => {
                    if *c >= d || used[*c] {
                        return fail(format!("π is not injective at column {c}"));
                    }
                    used[*c] = true;
                    if self.matrix.get(i, *c) < self.t {
                        return fail(format!("π entry ({i}, {c}) is below t"));
                    }
                }
            }
        }
        if used.iter().any(|u| !u) {
            return fail("π does not cover every column".into());
        }
        for i in self.m1() {
            for j in self.n1() {
                if self.matrix.get(i, j) > self.t {
                    return fail(format!("block entry ({i}, {j}) exceeds t"));
                }
            }
        }
        let (m1, n1) = (self.m1().len(), self.n1().len());
        if m1 + n1 <= d + 1 {
            return fail(format!("m1 + n1 = {} is not above d + 1 = {}", m1 + n1, d + 1));
        }
        let r = self.r();
        let f_in = usize::from(self.in_m1[self.free]);
        if r + (m1 - r - f_in) + (n1 - r) + self.s() != d {
            return fail("row/column count identity fails".into());
        }
        let tight = self.tightness();
        if tight > 0 {
            return fail(format!("tightness {tight} is positive"));
        }
        if (tight == 0) != (f_in == 1 && self.s() == 0) {
            return fail("tightness disagrees with the free-row/s criterion".into());
        }
        Ok(())
    }
}

/// Diagram from a minimum vertex cover of the graph of entries `> t`.
pub fn koenig_diagram(a: &Matrix) -> Result<KoenigDiagram> {
    let t = bottleneck_threshold(a)?;
    let (rows, cols) = (a.n_rows(), a.n_cols());
    let above = |i: usize, j: usize| a.get(i, j) > t;
    let high = max_matching(rows, cols, above);
    let (row_cover, col_cover) = koenig_cover(rows, cols, above, &high);
    let pi = max_matching(rows, cols, |i, j| a.get(i, j) >= t);
    if matching_size(&pi) != cols {
        return Err(Error::Invariant("no full matching at the bottleneck level".into()));
    }
    let m1 = members(&row_cover, false);
    let n1 = members(&col_cover, false);
    KoenigDiagram::from_parts(a.clone(), t, &m1, &n1, pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImprovementKind {
    /// The trajectory reached the free row; `π` shifted along it.
    FreeRow,
    /// The trajectory closed a cycle back to its starting row.
    Cycle,
    /// The trajectory got stuck; the block moved to the rows it could not
    /// reach and the columns it used.
    Retarget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub diagram: KoenigDiagram,
    pub kind: ImprovementKind,
    /// Number of `π`-entries pushed out of the block by the trajectory.
    pub turns: usize,
}

pub fn improve_diagram(d: &KoenigDiagram) -> Result<KoenigDiagram> {
    Ok(improve_diagram_traced(d)?.diagram)
}

/// One improvement step. A trajectory starts at the smallest row whose
/// `π`-entry lies in the block and moves from row `k` to any row `k'` with
/// `a[k'][π(k)] > t`, visiting rows breadth-first in index order.
pub fn improve_diagram_traced(d: &KoenigDiagram) -> Result<Improvement> {
    if d.is_tight() {
        return Err(Error::Precondition("diagram is already tight".into()));
    }
    let a = &d.matrix;
    let t = d.t;
    let rows = a.n_rows();
    let k0 = (0..rows)
        .find(|&i| d.in_m1[i] && matches!(d.pi[i], Some(c) if d.in_n1[c]))
        .ok_or_else(|| Error::Invariant("non-tight diagram without block entries".into()))?;

    let mut parent: Vec<Option<usize>> = vec![None; rows];
    let mut visited = vec![false; rows];
    visited[k0] = true;
    let mut queue = VecDeque::from([k0]);
    let path_to = |end: usize, parent: &[Option<usize>]| {
        let mut path = vec![end];
        let mut cur = end;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    };

    let mut outcome = None;
    'search: while let Some(k) = queue.pop_front() {
        let col = d.pi[k].expect("visited rows are matched");
        if k != k0 && a.get(k0, col) > t {
            outcome = Some((ImprovementKind::Cycle, path_to(k, &parent)));
            break;
        }
        for next in 0..rows {
            if visited[next] || a.get(next, col) <= t {
                continue;
            }
            visited[next] = true;
            parent[next] = Some(k);
            if next == d.free {
                outcome = Some((ImprovementKind::FreeRow, path_to(next, &parent)));
                break 'search;
            }
            queue.push_back(next);
        }
    }

    let r_before = d.r();
    let diagram = match outcome {
        Some((kind, path)) => {
            let mut pi = d.pi.clone();
            for w in path.windows(2) {
                pi[w[1]] = d.pi[w[0]];
            }
            pi[k0] = match kind {
                ImprovementKind::Cycle => d.pi[*path.last().expect("non-empty")],
                _ => None,
            };
            let out = KoenigDiagram::from_parts(a.clone(), t, &d.m1(), &d.n1(), pi)?;
            let turns = r_before - out.r();
            return finish(d, Improvement { diagram: out, kind, turns });
        }
        None => {
            let reached = members(&visited, true);
            let mut m1: Vec<usize> = members(&visited, false);
            m1.push(k0);
            m1.sort_unstable();
            let n1: Vec<usize> = reached.iter().map(|&k| d.pi[k].expect("matched")).collect();
            KoenigDiagram::from_parts(a.clone(), t, &m1, &n1, d.pi.clone())?
        }
    };
    finish(
        d,
        Improvement {
            turns: r_before.saturating_sub(diagram.r()),
            diagram,
            kind: ImprovementKind::Retarget,
        },
    )
}

fn finish(before: &KoenigDiagram, step: Improvement) -> Result<Improvement> {
    if step.diagram.tightness() <= before.tightness() {
        return Err(Error::Invariant("improvement did not increase tightness".into()));
    }
    Ok(step)
}

/// Improves the initial diagram until it is tight.
pub fn tight_diagram(a: &Matrix) -> Result<KoenigDiagram> {
    let mut d = koenig_diagram(a)?;
    let budget = -d.tightness();
    for _ in 0..budget {
        if d.is_tight() {
            break;
        }
        d = improve_diagram(&d)?;
    }
    if !d.is_tight() {
        return Err(Error::Invariant("tightening did not terminate within its bound".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::v;

    fn example() -> Matrix {
        Matrix::parse(&[&["0.9", "0.1"], &["0.8", "0.3"], &["0.5", "0.4"]]).unwrap()
    }

    #[test]
    fn example_diagram_is_valid() {
        let d = koenig_diagram(&example()).unwrap();
        assert_eq!(d.t(), v(4, 10));
        // the second column never exceeds 0.4
        assert!(d.n1().contains(&1));
        d.validate().unwrap();
        let t = tight_diagram(&example()).unwrap();
        assert!(t.is_tight());
    }

    #[test]
    fn one_dimensional_is_tight() {
        let a = Matrix::parse(&[&["0.3"], &["0.7"]]).unwrap();
        let d = koenig_diagram(&a).unwrap();
        assert!(d.is_tight());
        assert_eq!(d.free_row(), 0);
        assert!(improve_diagram(&d).is_err());
    }

    #[test]
    fn constant_matrix_is_tight_at_once() {
        let a = Matrix::new(vec![vec![v(1, 2); 2]; 3]).unwrap();
        assert!(koenig_diagram(&a).unwrap().is_tight());
    }

    fn loose(a: Matrix) -> KoenigDiagram {
        // π uses only entries equal to t and the free row sits outside M1
        let d = KoenigDiagram::from_parts(a, v(6, 10), &[0, 1], &[0, 1], vec![Some(0), Some(1), None]).unwrap();
        assert_eq!(d.tightness(), -1);
        d
    }

    #[test]
    fn stuck_trajectory_retargets_block() {
        let start = loose(Matrix::parse(&[&["0.6", "0.6"], &["0.6", "0.6"], &["0.6", "0.9"]]).unwrap());
        let step = improve_diagram_traced(&start).unwrap();
        assert_eq!(step.kind, ImprovementKind::Retarget);
        assert!(step.diagram.is_tight());
        assert_eq!(step.diagram.m1(), [0, 1, 2]);
        assert_eq!(step.diagram.n1(), [0]);
        assert_eq!(step.turns, 1);
    }

    #[test]
    fn trajectory_reaching_free_row_shifts_pi() {
        let start = loose(Matrix::parse(&[&["0.6", "0.6"], &["0.6", "0.6"], &["0.9", "0.6"]]).unwrap());
        let step = improve_diagram_traced(&start).unwrap();
        assert_eq!(step.kind, ImprovementKind::FreeRow);
        assert_eq!(step.diagram.free_row(), 0);
        assert_eq!(step.diagram.pi(), &[None, Some(1), Some(0)]);
        assert!(step.diagram.is_tight());
    }

    #[test]
    fn trajectory_closing_cycle_rotates_pi() {
        let a = Matrix::parse(&[
            &["0.5", "0.9", "0.5"],
            &["0.9", "0.5", "0.5"],
            &["0.5", "0.5", "0.5"],
            &["0.5", "0.5", "0.5"],
        ])
        .unwrap();
        let start =
            KoenigDiagram::from_parts(a, v(5, 10), &[0, 2, 3], &[0, 2], vec![Some(0), Some(1), Some(2), None]).unwrap();
        assert_eq!(start.tightness(), -1);
        assert!(!start.is_tight());
        let step = improve_diagram_traced(&start).unwrap();
        assert_eq!(step.kind, ImprovementKind::Cycle);
        assert_eq!(step.diagram.pi(), &[Some(1), Some(0), Some(2), None]);
        assert!(step.diagram.is_tight());
    }
}
