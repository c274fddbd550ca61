//! Twin classes (`N(u) − v = N(v) − u`), the twin quotient, and the
//! quotient index.

use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::split::{compose, SplitBipartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Singleton,
    Clique,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    /// Sorted classes, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub kinds: Vec<ClassKind>,
    /// Class index of each vertex.
    pub class_of: Vec<usize>,
}

pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let (wu, wv) = (u / 64, v / 64);
    g.row(u).iter().zip(g.row(v)).enumerate().all(|(w, (&a, &b))| {
        let a = if w == wv { a & !(1 << (v % 64)) } else { a };
        let b = if w == wu { b & !(1 << (u % 64)) } else { b };
        a == b
    })
}

pub fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.order();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for v in 0..n {
        // twinness is an equivalence, so comparing with the least member suffices
        match classes.iter().position(|c| are_twins(g, c[0], v)) {
            Some(c) => {
                classes[c].push(v);
                class_of[v] = c;
            }
            None => {
                class_of[v] = classes.len();
                classes.push(vec![v]);
            }
        }
    }
    let kinds = classes
        .iter()
        .map(|c| match c.len() {
            1 => ClassKind::Singleton,
            _ if g.has_edge(c[0], c[1]) => ClassKind::Clique,
            _ => ClassKind::Independent,
        })
        .collect();
    TwinPartition { classes, kinds, class_of }
}

pub fn is_twin_free(g: &Graph) -> bool {
    twin_partition(g).classes.len() == g.order()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    /// Least member of each class; quotient vertex `x` stands for `reps[x]`.
    pub reps: Vec<usize>,
    pub class_of: Vec<usize>,
}

/// One vertex per twin class; two classes adjacent when some edge crosses.
pub fn quotient(g: &Graph) -> Quotient {
    let tp = twin_partition(g);
    let mut q = Graph::new(tp.classes.len());
    for (u, v) in g.edges() {
        let (a, b) = (tp.class_of[u], tp.class_of[v]);
        if a != b {
            q.add_edge(a, b);
        }
    }
    Quotient { graph: q, reps: tp.classes.iter().map(|c| c[0]).collect(), class_of: tp.class_of }
}

/// `[G]^0 = G, [G]^1, …` up to and including the first twin-free graph.
pub fn quotient_tower(g: &Graph) -> Vec<Graph> {
    let mut tower = vec![g.clone()];
    while !is_twin_free(tower.last().unwrap()) {
        let next = quotient(tower.last().unwrap()).graph;
        tower.push(next);
    }
    tower
}

/// Number of quotient steps until the graph is twin-free.
pub fn quotient_index(g: &Graph) -> usize {
    quotient_tower(g).len() - 1
}

/// Least `k` with `[G]^k ≈ [G]^{k+1}`, by isomorphism tests.
pub fn quotient_index_by_isomorphism(g: &Graph) -> Result<usize> {
    let mut cur = g.clone();
    let mut k = 0;
    loop {
        let next = quotient(&cur).graph;
        if is_isomorphic(&cur, &next)? {
            return Ok(k);
        }
        cur = next;
        k += 1;
    }
}

/// `[S]` with the bipartition induced by S; classes of a balanced split
/// graph never straddle the two sides.
pub fn quotient_split(s: &SplitBipartition) -> Result<SplitBipartition> {
    if !s.is_balanced() {
        return Err(Error::Unbalanced);
    }
    let q = quotient(&s.graph);
    let k: Vec<usize> = (0..q.reps.len()).filter(|&x| s.in_k(q.reps[x])).collect();
    SplitBipartition::new(q.graph, k)
}

/// Checks `[S∘G] ≈ [S]∘[G]` and `i(S∘G) = max(i(S), i(G))`.
pub fn quotient_compose_check(s: &SplitBipartition, g: &Graph) -> Result<bool> {
    let qs = quotient_split(s)?;
    let whole = compose(s, g);
    let left = quotient(&whole).graph;
    let right = compose(&qs, &quotient(g).graph);
    let index_ok = quotient_index(&whole) == quotient_index(&s.graph).max(quotient_index(g));
    Ok(index_ok && is_isomorphic(&left, &right)?)
}

/// Threshold graph from its building word: vertex `v` is added isolated
/// (`false`) or dominating (`true`).
pub fn threshold_from_word(word: &[bool]) -> Graph {
    let mut g = Graph::new(word.len());
    for (v, &dom) in word.iter().enumerate() {
        if dom {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// The threshold graph of order `n` with word `0101…` (n even) or
/// `00101…` (n odd), whose quotient index is `n − 1`.
pub fn threshold_family(n: usize) -> Graph {
    let word: Vec<bool> = if n.is_multiple_of(2) {
        (0..n).map(|i| i % 2 == 1).collect()
    } else {
        (0..n).map(|i| i >= 2 && i % 2 == 0).collect()
    };
    threshold_from_word(&word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::enumerate_unlabeled;
    use crate::switch::{active_vertices, degree};

    #[test]
    fn partitions() {
        let k5 = twin_partition(&Graph::complete(5));
        assert_eq!(k5.classes.len(), 1);
        assert_eq!(k5.kinds, vec![ClassKind::Clique]);
        let p4 = twin_partition(&Graph::path(4));
        assert_eq!(p4.classes.len(), 4);
        let c4 = twin_partition(&Graph::cycle(4));
        assert_eq!(c4.kinds, vec![ClassKind::Independent, ClassKind::Independent]);
    }

    #[test]
    fn relation_is_an_equivalence() {
        for n in 0..=7 {
            for g in enumerate_unlabeled(n).unwrap() {
                let tp = twin_partition(&g);
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(are_twins(&g, u, v), tp.class_of[u] == tp.class_of[v]);
                    }
                }
            }
        }
    }

    #[test]
    fn inactive_equal_degree_are_twins() {
        for n in 1..=7 {
            for g in enumerate_unlabeled(n).unwrap() {
                let act = active_vertices(&g);
                let inactive: Vec<usize> = (0..n).filter(|v| !act.contains(v)).collect();
                for &u in &inactive {
                    for &v in &inactive {
                        if g.degree(u) == g.degree(v) {
                            assert!(are_twins(&g, u, v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        assert!(is_isomorphic(&quotient(&Graph::cycle(4)).graph, &Graph::complete(2)).unwrap());
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(quotient(&two_k2).graph, Graph::new(2));
        let p4 = Graph::path(4);
        assert_eq!(quotient(&p4).graph, p4);
    }

    #[test]
    fn quotient_matches_induced_representatives() {
        for n in 0..=6 {
            for g in enumerate_unlabeled(n).unwrap() {
                let q = quotient(&g);
                assert_eq!(q.graph, g.induced(&q.reps).unwrap());
                let qc = quotient(&g.complement()).graph;
                assert!(is_isomorphic(&qc, &q.graph.complement()).unwrap());
                assert_eq!(quotient_index(&g), quotient_index(&g.complement()));
                assert_eq!(quotient_index(&g), quotient_index_by_isomorphism(&g).unwrap());
            }
        }
    }

    #[test]
    fn indices() {
        assert_eq!(quotient_index(&Graph::cycle(4)), 2);
        assert_eq!(quotient_index(&Graph::complete(3)), 1);
        for n in 1..=8 {
            let g = threshold_family(n);
            assert_eq!(degree(&g), 0);
            assert_eq!(quotient_index(&g), n - 1, "n = {n}");
            if n >= 2 {
                assert!(is_isomorphic(&quotient(&g).graph, &threshold_family(n - 1)).unwrap());
            }
        }
    }

    #[test]
    fn balanced_split_quotient() {
        let p4 = SplitBipartition::canonical(&Graph::path(4)).unwrap();
        assert!(quotient_compose_check(&p4, &Graph::cycle(4)).unwrap());
        let star = SplitBipartition::canonical(&Graph::star(4)).unwrap();
        assert!(matches!(quotient_compose_check(&star, &Graph::new(1)), Err(Error::Unbalanced)));
    }
}
