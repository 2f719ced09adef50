//! Exact maximum clique by branch and bound with greedy colouring bounds.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[cfg(test)]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn difference_in_place(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

/// Undirected graph on `0..n` given as adjacency bitsets.
pub(crate) struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![BitSet::new(n); n] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    /// Largest clique, or the first clique of size `stop_at` when given.
    pub fn max_clique(&self, stop_at: Option<usize>) -> Vec<usize> {
        let n = self.len();
        let mut all = BitSet::new(n);
        for v in 0..n {
            all.insert(v);
        }
        let mut search = Search { graph: self, best: Vec::new(), stop_at };
        let mut current = Vec::new();
        search.expand(&mut current, all);
        search.best
    }
}

struct Search<'a> {
    graph: &'a Graph,
    best: Vec<usize>,
    stop_at: Option<usize>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.stop_at.is_some_and(|k| self.best.len() >= k)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: BitSet) {
        if candidates.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        let order = self.colour(&candidates);
        for &(v, colour) in order.iter().rev() {
            if current.len() + colour <= self.best.len() || self.done() {
                return;
            }
            current.push(v);
            let next = candidates.intersect(&self.graph.adj[v]);
            self.expand(current, next);
            current.pop();
            candidates.remove(v);
        }
    }

    /// Greedy sequential colouring; returns vertices in non-decreasing colour
    /// order together with their colour number (starting at 1).
    fn colour(&self, candidates: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = candidates.clone();
        let mut out = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                out.push((v, colour));
                uncoloured.remove(v);
                class.remove(v);
                class.difference_in_place(&self.graph.adj[v]);
            }
        }
        out
    }
}
