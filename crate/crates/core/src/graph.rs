//! Exact clique search on small dense graphs.

use alloc::vec::Vec;

/// Symmetric adjacency matrix without self loops.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = alloc::vec![alloc::vec![false; n]; n];
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        for (i, j) in pairs.filter(|&(i, j)| edge(i, j)) {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        Self { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    #[cfg(test)]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// A maximum clique among cliques containing `forced` (which must itself
    /// be a clique). Search stops early once a clique of size `stop_at` is
    /// found. The result depends only on the graph and vertex numbering.
    pub fn max_clique(&self, forced: &[usize], stop_at: Option<usize>) -> Vec<usize> {
        self.max_clique_budgeted(forced, stop_at, u64::MAX).0
    }

    /// As [`Graph::max_clique`], visiting at most `budget` search nodes. The
    /// flag is `false` when the budget ran out before the search finished,
    /// in which case the clique is the largest found so far.
    pub fn max_clique_budgeted(&self, forced: &[usize], stop_at: Option<usize>, budget: u64) -> (Vec<usize>, bool) {
        let cand: Vec<usize> =
            (0..self.len()).filter(|&v| !forced.contains(&v) && forced.iter().all(|&f| self.adj[f][v])).collect();
        let mut state =
            Search { g: self, best: forced.to_vec(), stop_at: stop_at.unwrap_or(usize::MAX), budget, nodes: 0 };
        let mut current = forced.to_vec();
        state.expand(&mut current, cand);
        let complete = state.nodes <= state.budget;
        let mut best = state.best;
        best.sort_unstable();
        (best, complete)
    }

    /// Greedy sequential colouring; returns vertices sorted by colour and the
    /// colour (starting at 1) of each.
    fn colour_sort(&self, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            match classes.iter_mut().find(|c| c.iter().all(|&w| !self.adj[v][w])) {
                Some(c) => c.push(v),
                None => classes.push(alloc::vec![v]),
            }
        }
        let mut order = Vec::with_capacity(cand.len());
        let mut colours = Vec::with_capacity(cand.len());
        for (k, c) in classes.into_iter().enumerate() {
            for v in c {
                order.push(v);
                colours.push(k + 1);
            }
        }
        (order, colours)
    }
}

/// Branch and bound with colouring bounds: a set that can be properly
/// coloured with `k` colours holds no clique larger than `k`.
struct Search<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    stop_at: usize,
    budget: u64,
    nodes: u64,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.stop_at || self.nodes > self.budget
    }

    fn expand(&mut self, current: &mut Vec<usize>, cand: Vec<usize>) {
        self.nodes += 1;
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        let (order, colours) = self.g.colour_sort(&cand);
        for i in (0..order.len()).rev() {
            if self.done() || current.len() + colours[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            let next: Vec<usize> = order[..i].iter().copied().filter(|&w| self.g.adj[v][w]).collect();
            current.push(v);
            self.expand(current, next);
            current.pop();
        }
    }
}
