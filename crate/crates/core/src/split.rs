//! Split graphs, their bipartitions, inversion, composition, the A₄ graph
//! and decomposition into irreducible factors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::switch::{active_vertices, for_each_quad, quad_kind};

/// A split graph with a chosen clique side `k` and independent side `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitBipartition {
    pub graph: Graph,
    pub k: Vec<usize>,
    pub i: Vec<usize>,
}

impl SplitBipartition {
    /// Validates that `k` is a clique and its complement independent.
    pub fn new(graph: Graph, k: Vec<usize>) -> Result<SplitBipartition> {
        let mut in_k = vec![false; graph.order()];
        for &v in &k {
            graph.check(v)?;
            if in_k[v] {
                return Err(Error::InvalidBipartition(format!("vertex {v} repeated")));
            }
            in_k[v] = true;
        }
        let mut k = k;
        k.sort_unstable();
        let i: Vec<usize> = (0..graph.order()).filter(|&v| !in_k[v]).collect();
        for (x, &u) in k.iter().enumerate() {
            for &v in &k[x + 1..] {
                if !graph.has_edge(u, v) {
                    return Err(Error::InvalidBipartition(format!("{u} and {v} in K are not adjacent")));
                }
            }
        }
        for (x, &u) in i.iter().enumerate() {
            for &v in &i[x + 1..] {
                if graph.has_edge(u, v) {
                    return Err(Error::InvalidBipartition(format!("{u} and {v} in I are adjacent")));
                }
            }
        }
        Ok(SplitBipartition { graph, k, i })
    }

    /// K = `0..k_size`, and independent vertex `k_size + j` adjacent to `nbrs[j]`.
    pub fn from_neighborhoods(k_size: usize, nbrs: &[Vec<usize>]) -> SplitBipartition {
        let mut g = Graph::complete(k_size).disjoint_union(&Graph::new(nbrs.len()));
        for (j, nb) in nbrs.iter().enumerate() {
            for &u in nb {
                assert!(u < k_size, "neighbor {u} outside K");
                g.add_edge(u, k_size + j);
            }
        }
        SplitBipartition { graph: g, k: (0..k_size).collect(), i: (k_size..k_size + nbrs.len()).collect() }
    }

    /// The bipartition with the largest clique side, ties broken by the
    /// lexicographically least clique side.
    pub fn canonical(graph: &Graph) -> Result<SplitBipartition> {
        let parts = bipartitions(graph)?;
        let (k, _) = parts.into_iter().next().expect("split graphs have a bipartition");
        SplitBipartition::new(graph.clone(), k)
    }

    pub fn in_k(&self, v: usize) -> bool {
        self.k.binary_search(&v).is_ok()
    }

    pub fn in_i(&self, v: usize) -> bool {
        self.i.binary_search(&v).is_ok()
    }

    /// Neighborhood of `v` inside K.
    pub fn k_neighbors(&self, v: usize) -> Vec<usize> {
        self.k.iter().copied().filter(|&u| u != v && self.graph.has_edge(u, v)).collect()
    }

    pub fn is_balanced(&self) -> bool {
        interchangeable_vertices(self).is_empty()
    }
}

/// Forbidden-subgraph test: no induced 2K₂, C₄ or C₅.
pub fn is_split_forbidden(g: &Graph) -> bool {
    let mut ok = true;
    for_each_quad(g.order(), |q| {
        if ok {
            if let Some(kind) = quad_kind(g, q) {
                if kind != crate::switch::QuadKind::P4 {
                    ok = false;
                }
            }
        }
    });
    if !ok {
        return false;
    }
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let w = [a, b, c, d, e];
                        let h = g.induced(&w).unwrap();
                        if h.size() == 5 && h.degrees().iter().all(|&x| x == 2) && h.is_connected() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// A clique side found from the degree order, if the graph is split.
fn degree_clique(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut m = 0;
    for (idx, &v) in order.iter().enumerate() {
        if g.degree(v) >= idx {
            m = idx + 1;
        }
    }
    let mut k: Vec<usize> = order[..m].to_vec();
    k.sort_unstable();
    SplitBipartition::new(g.clone(), k.clone()).ok().map(|_| k)
}

pub fn is_split(g: &Graph) -> bool {
    degree_clique(g).is_some()
}

/// Every `(K, I)` bipartition, largest K first, then lexicographic.
pub fn bipartitions(g: &Graph) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let k0 = degree_clique(g).ok_or(Error::NotSplit)?;
    let n = g.order();
    let in_k0: Vec<bool> = (0..n).map(|v| k0.binary_search(&v).is_ok()).collect();
    let mut cands: Vec<Vec<usize>> = vec![k0.clone()];
    let i0: Vec<usize> = (0..n).filter(|&v| !in_k0[v]).collect();
    for &w in &k0 {
        let base: Vec<usize> = k0.iter().copied().filter(|&u| u != w).collect();
        cands.push(base.clone());
        for &v in &i0 {
            let mut k = base.clone();
            k.push(v);
            cands.push(k);
        }
    }
    for &v in &i0 {
        let mut k = k0.clone();
        k.push(v);
        cands.push(k);
    }
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = cands
        .into_iter()
        .filter_map(|k| SplitBipartition::new(g.clone(), k).ok())
        .map(|s| (s.k, s.i))
        .collect();
    out.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    out.dedup();
    Ok(out)
}

pub fn is_balanced(g: &Graph) -> Result<bool> {
    Ok(bipartitions(g)?.len() == 1)
}

/// K-vertices with no neighbor in I, and I-vertices adjacent to all of K.
pub fn interchangeable_vertices(s: &SplitBipartition) -> Vec<usize> {
    let g = &s.graph;
    let mut out: Vec<usize> = s
        .k
        .iter()
        .copied()
        .filter(|&w| s.i.iter().all(|&v| !g.has_edge(w, v)))
        .chain(s.i.iter().copied().filter(|&v| s.k.iter().all(|&u| g.has_edge(u, v))))
        .collect();
    out.sort_unstable();
    out
}

/// K becomes independent, I becomes a clique, cross edges stay.
pub fn invert(s: &SplitBipartition) -> SplitBipartition {
    let mut g = s.graph.clone();
    for (x, &u) in s.k.iter().enumerate() {
        for &v in &s.k[x + 1..] {
            g.remove_edge(u, v);
        }
    }
    for (x, &u) in s.i.iter().enumerate() {
        for &v in &s.i[x + 1..] {
            g.add_edge(u, v);
        }
    }
    SplitBipartition { graph: g, k: s.i.clone(), i: s.k.clone() }
}

/// Complement, with the old independent side as the new clique side.
pub fn complement_split(s: &SplitBipartition) -> SplitBipartition {
    SplitBipartition { graph: s.graph.complement(), k: s.i.clone(), i: s.k.clone() }
}

/// `S ∘ G` with S on `0..|S|` and G shifted to `|S|..`.
pub fn compose(s: &SplitBipartition, g: &Graph) -> Graph {
    let ns = s.graph.order();
    let mut h = s.graph.disjoint_union(g);
    for &u in &s.k {
        for v in 0..g.order() {
            h.add_edge(u, ns + v);
        }
    }
    h
}

/// Two vertices are adjacent when some induced P₄, C₄ or 2K₂ holds both.
pub fn a4_graph(g: &Graph) -> Graph {
    let mut a = Graph::new(g.order());
    for_each_quad(g.order(), |q| {
        if quad_kind(g, q).is_some() {
            for x in 0..4 {
                for y in x + 1..4 {
                    a.add_edge(q[x], q[y]);
                }
            }
        }
    });
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    /// Vertices in the parent's labels; factor vertex `x` is `vertices[x]`.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    pub graph: Graph,
    /// `(K, I)` in the parent's labels; `None` for the innermost factor.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Outermost first.
    pub factors: Vec<Factor>,
    /// Recomposition reproduced the input exactly.
    pub validated: bool,
}

fn peel_side(g: &Graph, comp: &[usize], rest: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut k = Vec::new();
    let mut i = Vec::new();
    for &c in comp {
        let hits = rest.iter().filter(|&&r| g.has_edge(c, r)).count();
        if hits == rest.len() {
            k.push(c);
        } else if hits == 0 {
            i.push(c);
        } else {
            return None;
        }
    }
    let clique = k.iter().enumerate().all(|(x, &u)| k[x + 1..].iter().all(|&v| g.has_edge(u, v)));
    let indep = i.iter().enumerate().all(|(x, &u)| i[x + 1..].iter().all(|&v| !g.has_edge(u, v)));
    (clique && indep).then_some((k, i))
}

/// Factors are the components of A₄(G), peeled from the outside in.
pub fn decompose(g: &Graph) -> Decomposition {
    let mut comps = a4_graph(g).components();
    let mut rest: Vec<usize> = (0..g.order()).collect();
    let mut factors = Vec::new();
    while comps.len() > 1 {
        let mut peeled = None;
        for (idx, c) in comps.iter().enumerate() {
            let others: Vec<usize> = rest.iter().copied().filter(|v| c.binary_search(v).is_err()).collect();
            if let Some(side) = peel_side(g, c, &others) {
                peeled = Some((idx, side, others));
                break;
            }
        }
        let Some((idx, side, others)) = peeled else { break };
        let c = comps.remove(idx);
        factors.push(Factor { graph: g.induced(&c).unwrap(), vertices: c, bipartition: Some(side) });
        rest = others;
    }
    if !rest.is_empty() {
        factors.push(Factor { graph: g.induced(&rest).unwrap(), vertices: rest, bipartition: None });
    }
    let mut d = Decomposition { factors, validated: false };
    d.validated = recompose(&d, g.order()) == *g;
    d
}

/// Rebuilds the graph from its factors in the parent's labels.
pub fn recompose(d: &Decomposition, n: usize) -> Graph {
    let mut h = Graph::new(n);
    for (x, f) in d.factors.iter().enumerate() {
        for (u, v) in f.graph.edges() {
            h.add_edge(f.vertices[u], f.vertices[v]);
        }
        if let Some((k, _)) = &f.bipartition {
            for inner in &d.factors[x + 1..] {
                for &u in k {
                    for &v in &inner.vertices {
                        h.add_edge(u, v);
                    }
                }
            }
        }
    }
    h
}

/// Active and irreducible.
pub fn is_prime(g: &Graph) -> bool {
    g.order() > 0 && active_vertices(g).len() == g.order() && decompose(g).factors.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{enumerate_unlabeled, is_isomorphic};
    use crate::switch::degree;

    fn p3() -> Graph {
        // 5-6-7 with center 6 as 0-1-2 with center 1
        Graph::path(3)
    }

    #[test]
    fn recognition() {
        assert!(is_split(&Graph::path(4)));
        assert!(!is_split(&Graph::cycle(4)));
        assert!(!is_split(&Graph::cycle(5)));
        assert!(is_split(&Graph::star(5)));
        for n in 0..=7 {
            for g in enumerate_unlabeled(n).unwrap() {
                assert_eq!(is_split(&g), is_split_forbidden(&g), "{g:?}");
                assert_eq!(is_split(&g), is_split(&g.complement()));
            }
        }
    }

    #[test]
    fn bipartition_lists() {
        let parts = bipartitions(&p3()).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.contains(&(vec![0, 1], vec![2])));
        assert!(parts.contains(&(vec![1], vec![0, 2])));
        assert_eq!(bipartitions(&Graph::new(1)).unwrap(), vec![(vec![0], vec![]), (vec![], vec![0])]);
        assert_eq!(bipartitions(&Graph::path(4)).unwrap().len(), 1);
        assert!(bipartitions(&Graph::cycle(4)).is_err());
        let s = SplitBipartition::canonical(&p3()).unwrap();
        assert_eq!(s.k, vec![0, 1]);
    }

    #[test]
    fn balance() {
        assert!(is_balanced(&Graph::path(4)).unwrap());
        assert!(!is_balanced(&Graph::star(5)).unwrap());
        for n in 1..=7 {
            for g in enumerate_unlabeled(n).unwrap() {
                if !is_split(&g) {
                    continue;
                }
                let s = SplitBipartition::canonical(&g).unwrap();
                assert_eq!(s.is_balanced(), is_balanced(&g).unwrap());
                if s.is_balanced() {
                    assert!(degree(&g) >= 1 && s.k.len() >= 2 && s.i.len() >= 2);
                }
                if degree(&g) == 0 {
                    assert!(!s.is_balanced());
                }
            }
        }
    }

    #[test]
    fn inversion() {
        let s = SplitBipartition::from_neighborhoods(3, &[vec![0], vec![1, 2]]);
        let t = invert(&s);
        assert!(SplitBipartition::new(t.graph.clone(), t.k.clone()).is_ok());
        assert_eq!(invert(&t), s);
        assert_eq!(complement_split(&invert(&s)), invert(&complement_split(&s)));
        assert_eq!(active_vertices(&s.graph), active_vertices(&t.graph));
    }

    #[test]
    fn composition_depends_on_bipartition() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let a = SplitBipartition::new(p3(), vec![1, 2]).unwrap();
        let b = SplitBipartition::new(p3(), vec![1]).unwrap();
        let ga = compose(&a, &two_k2);
        let gb = compose(&b, &two_k2);
        assert!(!is_isomorphic(&ga, &gb).unwrap());
        let p4 = SplitBipartition::canonical(&Graph::path(4)).unwrap();
        assert_eq!(degree(&compose(&p4, &Graph::cycle(4))), 3);
        assert_eq!(compose(&p4, &Graph::new(0)), p4.graph);
    }

    #[test]
    fn a4_examples() {
        assert_eq!(a4_graph(&Graph::path(4)), Graph::complete(4));
        assert_eq!(a4_graph(&Graph::star(6)).size(), 0);
        let p4 = SplitBipartition::canonical(&Graph::path(4)).unwrap();
        let p4sq = compose(&p4, &Graph::path(4));
        assert_eq!(a4_graph(&p4sq).components().len(), 2);
    }

    #[test]
    fn decomposition_examples() {
        let p4 = SplitBipartition::canonical(&Graph::path(4)).unwrap();
        let d = decompose(&compose(&p4, &Graph::path(4)));
        assert!(d.validated);
        assert_eq!(d.factors.len(), 2);
        for f in &d.factors {
            assert!(is_isomorphic(&f.graph, &Graph::path(4)).unwrap());
        }
        assert_eq!(decompose(&Graph::cycle(4)).factors.len(), 1);
        assert_eq!(decompose(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()).factors.len(), 1);
        let t = decompose(&Graph::star(5));
        assert!(t.validated);
        assert_eq!(t.factors.len(), 5);
        assert!(decompose(&Graph::new(0)).factors.is_empty());
    }

    #[test]
    fn decomposition_always_validates() {
        for n in 0..=7 {
            for g in enumerate_unlabeled(n).unwrap() {
                let d = decompose(&g);
                assert!(d.validated, "{g:?}");
                for f in &d.factors[..d.factors.len().saturating_sub(1)] {
                    assert!(is_split(&f.graph));
                }
            }
        }
    }

    #[test]
    fn primes() {
        assert!(is_prime(&Graph::path(4)));
        assert!(is_prime(&Graph::cycle(4)));
        assert!(!is_prime(&Graph::complete(4)));
        // a tree of diameter 3 and one of diameter 4
        assert!(is_prime(&Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]).unwrap()));
        assert!(is_prime(&Graph::path(5)));
    }
}
