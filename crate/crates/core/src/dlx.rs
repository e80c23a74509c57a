//! Dancing-links exact cover (Knuth's Algorithm X).
//!
//! The matrix is the usual torus of doubly linked lists stored as
//! struct-of-arrays over u32 indices: node 0 is the head, nodes 1..=ncols the
//! column headers, body nodes follow in row order. Column selection is
//! minimum-remaining-candidates with ties broken by the smallest column
//! index, which the header ring preserves because unlink/relink are exact
//! inverses.
//!
//! The solver stops at the first solution. A [`SearchControl`] counts row
//! trials ("nodes"), enforces an optional deadline and an optional external
//! stop flag; runs are deterministic for fixed input when neither fires.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

#[derive(Clone)]
pub struct Dlx {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    /// Column header of a body node; headers and the head map to themselves.
    col_of: Vec<u32>,
    /// Live body nodes per column, indexed by header (entry 0 unused).
    size: Vec<u32>,
    /// Row id by node index; head and headers carry a sentinel.
    row_of: Vec<u32>,
    /// First body node of each row.
    row_start: Vec<u32>,
    ncols: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// A solution was found; the partial stack holds its rows.
    Found,
    /// The subtree was fully explored without a solution.
    Exhausted,
    /// The control asked to stop (deadline or external flag).
    Aborted,
}

impl Dlx {
    /// An empty matrix over columns 1..=ncols.
    pub fn new(ncols: usize) -> Dlx {
        let total = ncols + 1;
        let mut dlx = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col_of: Vec::with_capacity(total),
            size: vec![0; total],
            row_of: Vec::new(),
            row_start: Vec::new(),
            ncols: ncols as u32,
        };
        for i in 0..total as u32 {
            let prev = if i == 0 { ncols as u32 } else { i - 1 };
            let next = if i == ncols as u32 { 0 } else { i + 1 };
            dlx.left.push(prev);
            dlx.right.push(next);
            dlx.up.push(i);
            dlx.down.push(i);
            dlx.col_of.push(i);
            dlx.row_of.push(u32::MAX);
        }
        dlx
    }

    pub fn ncols(&self) -> usize {
        self.ncols as usize
    }

    pub fn nrows(&self) -> usize {
        self.row_start.len()
    }

    /// Appends a row covering the given columns (1-based, strictly
    /// increasing, nonempty) and returns its row id.
    pub fn add_row(&mut self, cols: &[usize]) -> usize {
        assert!(!cols.is_empty(), "empty exact-cover row");
        assert!(
            cols.windows(2).all(|w| w[0] < w[1]),
            "row columns must be strictly increasing"
        );
        let row_id = self.row_start.len() as u32;
        let first = self.left.len() as u32;
        self.row_start.push(first);
        for &c in cols {
            assert!(
                c >= 1 && c <= self.ncols as usize,
                "column {c} out of range"
            );
            let c = c as u32;
            let node = self.left.len() as u32;
            // append at the bottom of column c
            let above = self.up[c as usize];
            self.up.push(above);
            self.down.push(c);
            self.down[above as usize] = node;
            self.up[c as usize] = node;
            self.size[c as usize] += 1;
            self.col_of.push(c);
            self.row_of.push(row_id);
            // row ring, closed below
            self.left.push(node - 1);
            self.right.push(node + 1);
        }
        let last = self.left.len() as u32 - 1;
        self.left[first as usize] = last;
        self.right[last as usize] = first;
        row_id as usize
    }

    fn cover(&mut self, c: u32) {
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = r;
        self.left[r as usize] = l;
        let mut i = self.down[c as usize];
        while i != c {
            let mut j = self.right[i as usize];
            while j != i {
                let (u, d) = (self.up[j as usize], self.down[j as usize]);
                self.down[u as usize] = d;
                self.up[d as usize] = u;
                self.size[self.col_of[j as usize] as usize] -= 1;
                j = self.right[j as usize];
            }
            i = self.down[i as usize];
        }
    }

    fn uncover(&mut self, c: u32) {
        let mut i = self.up[c as usize];
        while i != c {
            let mut j = self.left[i as usize];
            while j != i {
                self.size[self.col_of[j as usize] as usize] += 1;
                self.down[self.up[j as usize] as usize] = j;
                self.up[self.down[j as usize] as usize] = j;
                j = self.left[j as usize];
            }
            i = self.up[i as usize];
        }
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = c;
        self.left[r as usize] = c;
    }

    /// Commits a row into the partial solution by covering all its columns.
    /// There is no undo; use this for normalization or branch fan-out only.
    pub fn preselect_row(&mut self, row: usize) {
        let start = self.row_start[row];
        let mut j = start;
        loop {
            self.cover(self.col_of[j as usize]);
            j = self.right[j as usize];
            if j == start {
                break;
            }
        }
    }

    /// Live column with the fewest candidates (smallest index on ties), or
    /// None when every column is covered.
    pub fn min_column(&self) -> Option<usize> {
        let mut best: Option<u32> = None;
        let mut c = self.right[0];
        while c != 0 {
            if best.is_none_or(|b| self.size[c as usize] < self.size[b as usize]) {
                best = Some(c);
            }
            c = self.right[c as usize];
        }
        best.map(|b| b as usize)
    }

    /// Row ids of the live candidates in a column, top to bottom.
    pub fn column_rows(&self, col: usize) -> Vec<usize> {
        let c = col as u32;
        let mut rows = Vec::with_capacity(self.size[col] as usize);
        let mut i = self.down[col];
        while i != c {
            rows.push(self.row_of[i as usize] as usize);
            i = self.down[i as usize];
        }
        rows
    }

    /// Depth-first search for the first exact cover of the live columns.
    /// Rows chosen along the way are pushed onto `solution`; on `Found` the
    /// stack holds them (preselected rows are not included).
    pub fn search_first(
        &mut self,
        control: &mut SearchControl,
        solution: &mut Vec<usize>,
    ) -> RunOutcome {
        let c = match self.min_column() {
            None => return RunOutcome::Found,
            Some(c) => c as u32,
        };
        if self.size[c as usize] == 0 {
            return RunOutcome::Exhausted;
        }
        self.cover(c);
        let mut outcome = RunOutcome::Exhausted;
        let mut r = self.down[c as usize];
        while r != c {
            if !control.tick() {
                outcome = RunOutcome::Aborted;
                break;
            }
            solution.push(self.row_of[r as usize] as usize);
            let mut j = self.right[r as usize];
            while j != r {
                self.cover(self.col_of[j as usize]);
                j = self.right[j as usize];
            }
            let sub = self.search_first(control, solution);
            let mut j = self.left[r as usize];
            while j != r {
                self.uncover(self.col_of[j as usize]);
                j = self.left[j as usize];
            }
            match sub {
                RunOutcome::Found => {
                    outcome = RunOutcome::Found;
                    break;
                }
                RunOutcome::Aborted => {
                    solution.pop();
                    outcome = RunOutcome::Aborted;
                    break;
                }
                RunOutcome::Exhausted => {
                    solution.pop();
                }
            }
            r = self.down[r as usize];
        }
        self.uncover(c);
        outcome
    }
}

/// Node counting plus the two ways a run can be interrupted.
pub struct SearchControl<'a> {
    /// Row trials so far. Deterministic for a fixed matrix when no
    /// interruption fires.
    pub nodes: u64,
    deadline: Option<Instant>,
    stop: Option<&'a AtomicBool>,
}

const CHECK_INTERVAL: u64 = 4096;

impl<'a> SearchControl<'a> {
    pub fn new(deadline: Option<Instant>, stop: Option<&'a AtomicBool>) -> Self {
        SearchControl {
            nodes: 0,
            deadline,
            stop,
        }
    }

    pub fn unbounded() -> Self {
        SearchControl::new(None, None)
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        // a deadline is honored per node so short budgets interrupt even
        // small trees; the cross-thread stop flag may lag a little
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                return false;
            }
        }
        if self.nodes.is_multiple_of(CHECK_INTERVAL) {
            if let Some(stop) = self.stop {
                if stop.load(Ordering::Relaxed) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(ncols: usize, rows: &[&[usize]]) -> Option<Vec<usize>> {
        let mut dlx = Dlx::new(ncols);
        for r in rows {
            dlx.add_row(r);
        }
        let mut control = SearchControl::unbounded();
        let mut solution = Vec::new();
        match dlx.search_first(&mut control, &mut solution) {
            RunOutcome::Found => {
                solution.sort_unstable();
                Some(solution)
            }
            _ => None,
        }
    }

    #[test]
    fn knuth_example() {
        // the classic 7-column instance; unique cover {0, 3, 4}
        let rows: &[&[usize]] = &[
            &[3, 5, 6],
            &[1, 4, 7],
            &[2, 3, 6],
            &[1, 4],
            &[2, 7],
            &[4, 5, 7],
        ];
        assert_eq!(solve(7, rows), Some(vec![0, 3, 4]));
    }

    #[test]
    fn infeasible() {
        let rows: &[&[usize]] = &[&[1, 2], &[2, 3]];
        assert_eq!(solve(3, rows), None);
    }

    #[test]
    fn duplicate_rows_are_kept() {
        let mut dlx = Dlx::new(2);
        dlx.add_row(&[1, 2]);
        dlx.add_row(&[1, 2]);
        assert_eq!(dlx.nrows(), 2);
        let mut control = SearchControl::unbounded();
        let mut solution = Vec::new();
        assert_eq!(
            dlx.search_first(&mut control, &mut solution),
            RunOutcome::Found
        );
        assert_eq!(solution, vec![0]); // first candidate in column order wins
    }

    #[test]
    fn preselection() {
        let mut dlx = Dlx::new(4);
        dlx.add_row(&[1, 2]);
        dlx.add_row(&[3]);
        dlx.add_row(&[4]);
        dlx.add_row(&[3, 4]);
        dlx.preselect_row(0);
        let mut control = SearchControl::unbounded();
        let mut solution = Vec::new();
        assert_eq!(
            dlx.search_first(&mut control, &mut solution),
            RunOutcome::Found
        );
        solution.sort_unstable();
        assert_eq!(solution, vec![1, 2]);
    }

    #[test]
    fn empty_matrix_is_solved() {
        let mut dlx = Dlx::new(0);
        let mut control = SearchControl::unbounded();
        let mut solution = Vec::new();
        assert_eq!(
            dlx.search_first(&mut control, &mut solution),
            RunOutcome::Found
        );
        assert!(solution.is_empty());
    }

    #[test]
    fn state_restored_after_exhausted_run() {
        let mut dlx = Dlx::new(3);
        dlx.add_row(&[1, 2]);
        dlx.add_row(&[2, 3]);
        let snapshot = (
            dlx.left.clone(),
            dlx.right.clone(),
            dlx.up.clone(),
            dlx.down.clone(),
            dlx.size.clone(),
        );
        let mut control = SearchControl::unbounded();
        let mut solution = Vec::new();
        assert_eq!(
            dlx.search_first(&mut control, &mut solution),
            RunOutcome::Exhausted
        );
        assert!(solution.is_empty());
        assert_eq!(snapshot.0, dlx.left);
        assert_eq!(snapshot.1, dlx.right);
        assert_eq!(snapshot.2, dlx.up);
        assert_eq!(snapshot.3, dlx.down);
        assert_eq!(snapshot.4, dlx.size);
    }

    #[test]
    fn min_column_prefers_smallest_index_on_ties() {
        let mut dlx = Dlx::new(3);
        dlx.add_row(&[1]);
        dlx.add_row(&[2]);
        dlx.add_row(&[3]);
        assert_eq!(dlx.min_column(), Some(1));
        assert_eq!(dlx.column_rows(2), vec![1]);
    }
}
