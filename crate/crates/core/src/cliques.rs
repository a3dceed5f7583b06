//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting) over a
//! dense undirected graph stored as adjacency bitsets.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[cfg(test)]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    fn intersection_len(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// Simple graph without self loops.
pub struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(len: usize) -> Self {
        Graph {
            adj: vec![BitSet::new(len); len],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    /// Calls `emit` with each maximal clique (vertex indices ascending).
    /// Stops early and returns `false` once `limit` cliques were emitted and
    /// another one was found.
    pub fn for_each_maximal_clique(&self, limit: usize, mut emit: impl FnMut(Vec<usize>)) -> bool {
        let mut emitted = 0usize;
        let mut clique = Vec::new();
        let p = BitSet::full(self.len());
        let x = BitSet::new(self.len());
        self.expand(&mut clique, p, x, limit, &mut emitted, &mut emit)
    }

    fn expand(
        &self,
        clique: &mut Vec<usize>,
        mut p: BitSet,
        mut x: BitSet,
        limit: usize,
        emitted: &mut usize,
        emit: &mut impl FnMut(Vec<usize>),
    ) -> bool {
        if p.is_empty() {
            if x.is_empty() {
                if *emitted == limit {
                    return false;
                }
                *emitted += 1;
                let mut found = clique.clone();
                found.sort_unstable();
                emit(found);
            }
            return true;
        }
        // pivot maximizing |P ∩ N(u)| over u in P ∪ X
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| p.intersection_len(&self.adj[u]))
            .expect("P is nonempty");
        let candidates: Vec<usize> = p.difference(&self.adj[pivot]).iter().collect();
        for v in candidates {
            clique.push(v);
            let ok = self.expand(
                clique,
                p.intersect(&self.adj[v]),
                x.intersect(&self.adj[v]),
                limit,
                emitted,
                emit,
            );
            clique.pop();
            if !ok {
                return false;
            }
            p.remove(v);
            x.insert(v);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cliques(g: &Graph) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        assert!(g.for_each_maximal_clique(usize::MAX, |c| out.push(c)));
        out.sort();
        out
    }

    #[test]
    fn bitset_basics() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64) && s.contains(129));
        assert_eq!(BitSet::full(70).len(), 70);
    }

    #[test]
    fn triangle_with_tail() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        assert_eq!(cliques(&g), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn isolated_vertices_are_cliques() {
        let g = Graph::new(3);
        assert_eq!(cliques(&g), vec![vec![0], vec![1], vec![2]]);
        let empty = Graph::new(0);
        assert_eq!(cliques(&empty), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        // K_{2,2,2}: opposite vertices (i, i+3) are not adjacent
        let mut g = Graph::new(6);
        for u in 0..6 {
            for v in u + 1..6 {
                if v != u + 3 {
                    g.add_edge(u, v);
                }
            }
        }
        assert_eq!(cliques(&g).len(), 8);
    }

    #[test]
    fn limit_stops_enumeration() {
        let g = Graph::new(5);
        let mut seen = 0;
        assert!(!g.for_each_maximal_clique(3, |_| seen += 1));
        assert_eq!(seen, 3);
    }
}
