//! Exact cover with primary and secondary items (dancing links).
//!
//! Primary items must be covered exactly once, secondary items at most once.
//! Branching always picks the primary item with the fewest remaining options,
//! lowest index first, so the first solution found is deterministic.

pub struct ExactCover {
    // node 0 is the root, nodes 1..=items are headers
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    top: Vec<usize>,
    len: Vec<usize>,
    row_of: Vec<usize>,
    row_nodes: Vec<std::ops::Range<usize>>,
    nodes_visited: u64,
}

impl ExactCover {
    /// `options[r]` lists the item indices of option `r`; items below
    /// `primary` are primary.
    pub fn new(primary: usize, secondary: usize, options: &[Vec<usize>]) -> Self {
        let items = primary + secondary;
        let mut dl = ExactCover {
            left: Vec::new(),
            right: Vec::new(),
            up: Vec::new(),
            down: Vec::new(),
            top: Vec::new(),
            len: vec![0; items + 1],
            row_of: Vec::new(),
            row_nodes: Vec::with_capacity(options.len()),
            nodes_visited: 0,
        };
        for h in 0..=items {
            dl.up.push(h);
            dl.down.push(h);
            dl.top.push(h);
            dl.row_of.push(usize::MAX);
            if h <= primary {
                dl.left.push(if h == 0 { primary } else { h - 1 });
                dl.right.push(if h == primary { 0 } else { h + 1 });
            } else {
                dl.left.push(h);
                dl.right.push(h);
            }
        }
        for (r, opt) in options.iter().enumerate() {
            let start = dl.top.len();
            for &item in opt {
                let header = item + 1;
                let node = dl.top.len();
                let last = dl.up[header];
                dl.top.push(header);
                dl.up.push(last);
                dl.down.push(header);
                dl.left.push(node);
                dl.right.push(node);
                dl.row_of.push(r);
                dl.down[last] = node;
                dl.up[header] = node;
                dl.len[header] += 1;
            }
            dl.row_nodes.push(start..dl.top.len());
        }
        dl
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let range = self.row_nodes[self.row_of[i]].clone();
            for j in range.filter(|&j| j != i) {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.len[self.top[j]] -= 1;
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let range = self.row_nodes[self.row_of[i]].clone();
            for j in range.rev().filter(|&j| j != i) {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                self.len[self.top[j]] += 1;
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// First solution as a list of option indices, or `None`.
    pub fn solve(&mut self) -> Option<Vec<usize>> {
        let mut chosen = Vec::new();
        self.search(&mut chosen).then_some(chosen)
    }

    /// Search nodes visited by the last [`solve`](Self::solve).
    pub fn nodes_visited(&self) -> u64 {
        self.nodes_visited
    }

    fn search(&mut self, chosen: &mut Vec<usize>) -> bool {
        self.nodes_visited += 1;
        if self.right[0] == 0 {
            return true;
        }
        let mut best = self.right[0];
        let mut c = best;
        while c != 0 {
            if self.len[c] < self.len[best] {
                best = c;
            }
            c = self.right[c];
        }
        if self.len[best] == 0 {
            return false;
        }
        self.cover(best);
        let mut i = self.down[best];
        while i != best {
            let row = self.row_of[i];
            chosen.push(row);
            let range = self.row_nodes[row].clone();
            for j in range.clone().filter(|&j| j != i) {
                self.cover(self.top[j]);
            }
            if self.search(chosen) {
                return true;
            }
            for j in range.rev().filter(|&j| j != i) {
                self.uncover(self.top[j]);
            }
            chosen.pop();
            i = self.down[i];
        }
        self.uncover(best);
        false
    }
}
