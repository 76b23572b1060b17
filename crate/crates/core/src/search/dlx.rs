use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

/// Toroidal doubly linked lists over an incidence matrix. Node 0 is the
/// root, nodes `1..=cols` are column headers, the rest are 1-entries.
#[derive(Debug, Clone)]
pub(crate) struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    /// First node of each row.
    row_head: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
    Cancelled,
}

/// Shared search limits: a node budget counted across every worker, and an
/// optional "a lower-numbered subtree already succeeded" signal.
pub(crate) struct Limits<'a> {
    pub budget: u64,
    pub nodes: &'a AtomicU64,
    pub cancel: Option<(&'a AtomicUsize, usize)>,
}

impl Limits<'_> {
    fn tick(&self) -> Option<Outcome> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Some(Outcome::OutOfBudget);
        }
        match self.cancel {
            Some((best, mine)) if best.load(Ordering::Relaxed) < mine => Some(Outcome::Cancelled),
            _ => None,
        }
    }
}

impl Dlx {
    pub(crate) fn new(cols: usize, rows: &[Vec<usize>]) -> Self {
        let total = 1 + cols + rows.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; cols + 1],
            row_head: Vec::with_capacity(rows.len()),
        };
        for i in 0..=cols {
            d.left.push(if i == 0 { cols } else { i - 1 });
            d.right.push(if i == cols { 0 } else { i + 1 });
            d.up.push(i);
            d.down.push(i);
            d.col.push(i);
            d.row.push(usize::MAX);
        }
        for (r, entries) in rows.iter().enumerate() {
            let first = d.col.len();
            d.row_head.push(first);
            for (k, &c) in entries.iter().enumerate() {
                let node = d.col.len();
                let header = c + 1;
                d.col.push(header);
                d.row.push(r);
                d.up.push(d.up[header]);
                d.down.push(header);
                let above = d.up[header];
                d.down[above] = node;
                d.up[header] = node;
                d.size[header] += 1;
                d.left.push(if k == 0 { node } else { node - 1 });
                d.right.push(first);
                if k > 0 {
                    d.right[node - 1] = node;
                    d.left[first] = node;
                }
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    fn select_node(&mut self, node: usize) {
        let mut j = self.right[node];
        while j != node {
            self.cover(self.col[j]);
            j = self.right[j];
        }
    }

    fn unselect_node(&mut self, node: usize) {
        let mut j = self.left[node];
        while j != node {
            self.uncover(self.col[j]);
            j = self.left[j];
        }
    }

    /// Commits to row `r` before searching: covers every column it meets.
    pub(crate) fn force_row(&mut self, r: usize) {
        let head = self.row_head[r];
        self.cover(self.col[head]);
        self.select_node(head);
    }

    /// Column with fewest remaining rows, lowest index on ties.
    pub(crate) fn choose_column(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut c = self.right[0];
        while c != 0 {
            if best.is_none_or(|b| self.size[c] < self.size[b]) {
                best = Some(c);
            }
            c = self.right[c];
        }
        best
    }

    /// Rows remaining in column `c`, top to bottom.
    pub(crate) fn column_rows(&self, c: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size[c]);
        let mut i = self.down[c];
        while i != c {
            out.push(i);
            i = self.down[i];
        }
        out
    }

    pub(crate) fn row_of(&self, node: usize) -> usize {
        self.row[node]
    }

    /// Commits to the row through `node`, a node of column `c`.
    pub(crate) fn commit(&mut self, c: usize, node: usize) {
        self.cover(c);
        self.select_node(node);
    }

    /// Depth-first search stopping at the first exact cover; `sol` holds it on success.
    pub(crate) fn search_first(&mut self, sol: &mut Vec<usize>, limits: &Limits) -> Outcome {
        if let Some(stop) = limits.tick() {
            return stop;
        }
        let Some(c) = self.choose_column() else {
            return Outcome::Found;
        };
        if self.size[c] == 0 {
            return Outcome::Exhausted;
        }
        self.cover(c);
        let mut i = self.down[c];
        while i != c {
            sol.push(self.row[i]);
            self.select_node(i);
            match self.search_first(sol, limits) {
                Outcome::Exhausted => {}
                other => return other,
            }
            self.unselect_node(i);
            sol.pop();
            i = self.down[i];
        }
        self.uncover(c);
        Outcome::Exhausted
    }

    /// Counts every exact cover; `None` when the budget runs out.
    pub(crate) fn count_all(&mut self, limits: &Limits) -> Option<u64> {
        limits.tick().map_or(Some(()), |_| None)?;
        let Some(c) = self.choose_column() else {
            return Some(1);
        };
        let mut total = 0;
        self.cover(c);
        let mut i = self.down[c];
        while i != c {
            self.select_node(i);
            let sub = self.count_all(limits);
            self.unselect_node(i);
            match sub {
                Some(k) => total += k,
                None => {
                    self.uncover(c);
                    return None;
                }
            }
            i = self.down[i];
        }
        self.uncover(c);
        Some(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unlimited(nodes: &AtomicU64) -> Limits<'_> {
        Limits { budget: u64::MAX, nodes, cancel: None }
    }

    // Knuth's example: rows 1, 4 and 5 (0-based 0, 3, 4) form the only cover
    fn knuth() -> Vec<Vec<usize>> {
        vec![vec![2, 4, 5], vec![0, 3, 6], vec![1, 2, 5], vec![0, 3], vec![1, 6], vec![3, 4, 6]]
    }

    #[test]
    fn finds_knuth_cover() {
        let nodes = AtomicU64::new(0);
        let mut d = Dlx::new(7, &knuth());
        let mut sol = Vec::new();
        assert_eq!(d.search_first(&mut sol, &unlimited(&nodes)), Outcome::Found);
        sol.sort();
        assert_eq!(sol, vec![0, 3, 4]);
        let mut d = Dlx::new(7, &knuth());
        assert_eq!(d.count_all(&unlimited(&nodes)), Some(1));
    }

    #[test]
    fn structure_restored_after_exhaustion() {
        let rows = vec![vec![0, 1], vec![1, 2], vec![1]];
        let nodes = AtomicU64::new(0);
        let mut d = Dlx::new(3, &rows);
        let before = d.clone();
        assert_eq!(d.search_first(&mut Vec::new(), &unlimited(&nodes)), Outcome::Exhausted);
        assert_eq!((d.left, d.right, d.up, d.down, d.size), (before.left, before.right, before.up, before.down, before.size));
    }

    #[test]
    fn counts_all_covers() {
        // all subsets of a 3-set as rows: covers correspond to set partitions, Bell(3) = 5
        let rows = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
        let nodes = AtomicU64::new(0);
        assert_eq!(Dlx::new(3, &rows).count_all(&unlimited(&nodes)), Some(5));
    }

    #[test]
    fn budget_stops_search() {
        let nodes = AtomicU64::new(0);
        let limits = Limits { budget: 1, nodes: &nodes, cancel: None };
        let mut d = Dlx::new(7, &knuth());
        assert_eq!(d.search_first(&mut Vec::new(), &limits), Outcome::OutOfBudget);
    }
}
