//! Loop-free multigraphs (edge multiplicities) and digraphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absent pairs have multiplicity 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    mult: BTreeMap<(usize, usize), u64>,
}

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Multigraph {
        Multigraph { n, mult: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Multigraph> {
        let mut m = Multigraph::new(n);
        for &(u, v, k) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            m.add(u, v, k);
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Total multiplicity.
    pub fn size(&self) -> u64 {
        self.mult.values().sum()
    }

    /// Increases the multiplicity of `uv` by `k`.
    pub fn add(&mut self, u: usize, v: usize, k: u64) {
        assert!(u != v && u < self.n && v < self.n);
        if k > 0 {
            *self.mult.entry(key(u, v)).or_insert(0) += k;
        }
    }

    pub fn sigma(&self, u: usize, v: usize) -> u64 {
        self.mult.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        self.mult.iter().map(|(&(u, v), &k)| (u, v, k)).collect()
    }

    pub fn distinct_edges(&self) -> usize {
        self.mult.len()
    }

    /// Underlying simple graph, ignoring multiplicities.
    pub fn simple(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for &(u, v) in self.mult.keys() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut m = Multigraph::new(self.n + other.n);
        for (u, v, k) in self.edges() {
            m.add(u, v, k);
        }
        for (u, v, k) in other.edges() {
            m.add(self.n + u, self.n + v, k);
        }
        m
    }

    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        let mut m = Multigraph::new(self.n);
        for (u, v, k) in self.edges() {
            m.add(perm[u], perm[v], k);
        }
        m
    }

    /// Isomorphism-invariant key by minimizing the multiplicity matrix over
    /// all vertex orders; meant for the handful of vertices a factor
    /// multigraph has at desk scale.
    pub fn canonical_key(&self) -> Result<Vec<u64>> {
        const LIMIT: usize = 9;
        if self.n > LIMIT {
            return Err(Error::OrderTooLarge { n: self.n, limit: LIMIT });
        }
        let n = self.n;
        let mut best: Option<Vec<u64>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            // p[i] = original vertex placed at position i
            let mut code = Vec::with_capacity(n * n / 2 + 1);
            code.push(n as u64);
            for i in 0..n {
                for j in i + 1..n {
                    code.push(self.sigma(p[i], p[j]));
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        Ok(best.unwrap_or_else(|| vec![0]))
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> Result<bool> {
        if self.n != other.n || self.size() != other.size() {
            return Ok(false);
        }
        Ok(self.canonical_key()? == other.canonical_key()?)
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Arc set on vertices `0..n`; `(u,v)` and `(v,u)` may coexist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Digraph {
        Digraph { n, arcs: BTreeSet::new() }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        let mut d = Digraph::new(n);
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.arcs.insert((u, v));
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().copied().collect()
    }

    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for &(u, v) in &self.arcs {
            g.add_edge(u, v);
        }
        g
    }
}
