//! Bipartite matching by augmenting paths, and the König vertex cover.

/// Maximum matching of a bipartite graph given by `edge(row, col)`.
/// Rows are tried in index order and columns in index order, so the result
/// is deterministic. Returns `row -> col`.
pub fn max_matching(rows: usize, cols: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<Option<usize>> {
    let mut col_owner: Vec<Option<usize>> = vec![None; cols];
    for row in 0..rows {
        let mut seen = vec![false; cols];
        augment(row, cols, &edge, &mut seen, &mut col_owner);
    }
    let mut row_match = vec![None; rows];
    for (col, owner) in col_owner.iter().enumerate() {
        if let Some(row) = owner {
            row_match[*row] = Some(col);
        }
    }
    row_match
}

fn augment(
    row: usize,
    cols: usize,
    edge: &impl Fn(usize, usize) -> bool,
    seen: &mut [bool],
    col_owner: &mut [Option<usize>],
) -> bool {
    for col in 0..cols {
        if seen[col] || !edge(row, col) {
            continue;
        }
        seen[col] = true;
        let free = match col_owner[col] {
            None => true,
            Some(other) => augment(other, cols, edge, seen, col_owner),
        };
        if free {
            col_owner[col] = Some(row);
            return true;
        }
    }
    false
}

pub fn matching_size(m: &[Option<usize>]) -> usize {
    m.iter().filter(|c| c.is_some()).count()
}

/// Minimum vertex cover from a maximum matching: with `Z` the vertices
/// reachable from unmatched rows along alternating paths, the cover is the
/// rows outside `Z` and the columns inside `Z`. Returns
/// `(row_in_cover, col_in_cover)`.
pub fn koenig_cover(
    rows: usize,
    cols: usize,
    edge: impl Fn(usize, usize) -> bool,
    matching: &[Option<usize>],
) -> (Vec<bool>, Vec<bool>) {
    let mut col_owner = vec![None; cols];
    for (row, col) in matching.iter().enumerate() {
        if let Some(c) = col {
            col_owner[*c] = Some(row);
        }
    }
    let mut row_z = vec![false; rows];
    let mut col_z = vec![false; cols];
    let mut stack: Vec<usize> = (0..rows).filter(|&r| matching[r].is_none()).collect();
    for &r in &stack {
        row_z[r] = true;
    }
    while let Some(r) = stack.pop() {
        for c in 0..cols {
            if col_z[c] || !edge(r, c) || matching[r] == Some(c) {
                continue;
            }
            col_z[c] = true;
            if let Some(next) = col_owner[c] {
                if !row_z[next] {
                    row_z[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    (row_z.iter().map(|z| !z).collect(), col_z)
}
