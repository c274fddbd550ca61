//! Simple undirected graphs on vertices `0..n`, stored as per-vertex bitset rows.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn new(n: usize) -> Graph {
        let words = words_for(n);
        Graph { n, words, rows: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// The cycle `C_n`; for `n < 3` this degenerates to the path.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// Star `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        g
    }

    /// Erdős–Rényi sample: each pair is an edge with probability `p`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Panics on out-of-range vertices; use `from_edges` for checked input.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u},{v})");
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence(self.degrees())
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// `|N(u) ∩ N(v)|`.
    pub fn common(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `w`; vertex `i` of the result is `w[i]` of `self`,
    /// so the slice doubles as the map back to the parent's labels.
    pub fn induced(&self, w: &[usize]) -> Result<Graph> {
        for &v in w {
            self.check(v)?;
        }
        let mut g = Graph::new(w.len());
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] == w[j] {
                    return Err(Error::Parse(format!("repeated vertex {}", w[i])));
                }
                if self.has_edge(w[i], w[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Removes one vertex and shifts the higher labels down.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep).expect("in range")
    }

    /// `self` on `0..n`, `other` shifted to `n..n+m`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n;
        let mut g = Graph::new(n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(n + u, n + v);
        }
        g
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v);
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Adds a new vertex adjacent to `nbrs`; returns the new graph.
    pub fn with_vertex(&self, nbrs: &[usize]) -> Graph {
        let mut g = Graph::new(self.n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for &u in nbrs {
            g.add_edge(u, self.n);
        }
        g
    }

    pub fn is_universal(&self, v: usize) -> bool {
        self.degree(v) + 1 == self.n
    }

    /// BFS distances from `s`; `None` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.distances_from(u)[v])
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// K₀ counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `None` means infinite (disconnected).
    pub fn eccentricity(&self, v: usize) -> Option<usize> {
        let d = self.distances_from(v);
        d.iter().try_fold(0, |m, x| x.map(|x| m.max(x)))
    }

    /// `None` means infinite. K₀ has diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        (0..self.n).try_fold(0, |m, v| self.eccentricity(v).map(|e| m.max(e)))
    }

    /// Length of a shortest cycle; `None` for acyclic graphs.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_forest(&self) -> bool {
        self.size() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.size() + 1 == self.n
    }

    pub fn is_unicyclic(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.size() == self.n
    }

    /// Vertices of the unique cycle of a unicyclic graph, in cyclic order.
    pub fn unique_cycle(&self) -> Option<Vec<usize>> {
        if !self.is_unicyclic() {
            return None;
        }
        // strip leaves until only the cycle is left
        let mut deg = self.degrees();
        let mut alive = vec![true; self.n];
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        let start = (0..self.n).find(|&v| alive[v])?;
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.neighbors(cur).find(|&u| alive[u] && u != prev)?;
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterates the set bits of a bitset row.
pub fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Degree sequence indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(pub Vec<usize>);

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

impl DegreeSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Terms sorted in non-increasing order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut d = self.0.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `n − 1 − d_v` for each vertex.
    pub fn dual(&self) -> DegreeSequence {
        let n = self.0.len();
        DegreeSequence(self.0.iter().map(|&d| n - 1 - d).collect())
    }

    /// Erdős–Gallai test.
    pub fn is_graphical(&self) -> bool {
        let n = self.0.len();
        if self.0.iter().any(|&d| d >= n.max(1)) && n > 0 {
            return false;
        }
        if self.sum() % 2 == 1 {
            return false;
        }
        let d = self.sorted();
        let mut lhs = 0;
        for k in 1..=n {
            lhs += d[k - 1];
            let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
            if lhs > rhs {
                return false;
            }
        }
        true
    }

    /// Number of unordered pairs of disjoint edges in any realization.
    pub fn dpe(&self) -> usize {
        let m = self.sum() / 2;
        choose2(m) - self.0.iter().map(|&d| choose2(d)).sum::<usize>()
    }

    /// Havel–Hakimi realization on vertices `0..n` with vertex `v` of degree `d_v`.
    pub fn realize(&self) -> Result<Graph> {
        let n = self.0.len();
        if !self.is_graphical() {
            return Err(Error::NotGraphical);
        }
        let mut g = Graph::new(n);
        let mut rem: Vec<(usize, usize)> = self.0.iter().copied().zip(0..n).collect();
        while !rem.is_empty() {
            rem.sort_unstable_by(|a, b| b.cmp(a));
            let (d, v) = rem[0];
            if d == 0 {
                break;
            }
            rem[0].0 = 0;
            for item in rem.iter_mut().skip(1).take(d) {
                if item.0 == 0 {
                    return Err(Error::NotGraphical);
                }
                item.0 -= 1;
                g.add_edge(v, item.1);
            }
        }
        Ok(g)
    }

    /// Compact power notation, e.g. `3^1 2^4 1^1`.
    pub fn compact(&self) -> String {
        let d = self.sorted();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < d.len() {
            let mut j = i;
            while j < d.len() && d[j] == d[i] {
                j += 1;
            }
            parts.push(format!("{}^{}", d[i], j - i));
            i = j;
        }
        parts.join(" ")
    }

    /// Parses `2,2,1`, `2 2 1`, or power notation `2^3 1^2` (also `2^3,1^2`).
    pub fn parse(s: &str) -> Result<DegreeSequence> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let bad = || Error::Parse(format!("bad sequence term `{tok}`"));
            if let Some((d, k)) = tok.split_once('^') {
                let d: usize = d.parse().map_err(|_| bad())?;
                let k: usize = k.parse().map_err(|_| bad())?;
                out.extend(std::iter::repeat_n(d, k));
            } else {
                out.push(tok.parse().map_err(|_| bad())?);
            }
        }
        Ok(DegreeSequence(out))
    }
}
