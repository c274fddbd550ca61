//! 2-switches, active vertices, and the switch degree by brute force and by
//! closed formula, including the forest and unicyclic variants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};

/// Action matrix with rows `(a b)` and `(c d)`: removes `ab, cd`, adds `ac, bd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoSwitch {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl TwoSwitch {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Result<TwoSwitch> {
        let v = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if v[i] == v[j] {
                    return Err(Error::RepeatedSwitchVertex);
                }
            }
        }
        Ok(TwoSwitch { a, b, c, d })
    }

    pub fn inverse(&self) -> TwoSwitch {
        TwoSwitch { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    /// Least of the four matrices denoting the same operation.
    pub fn canonical(&self) -> TwoSwitch {
        let TwoSwitch { a, b, c, d } = *self;
        [
            TwoSwitch { a, b, c, d },
            TwoSwitch { a: c, b: d, c: a, d: b },
            TwoSwitch { a: b, b: a, c: d, d: c },
            TwoSwitch { a: d, b: c, c: b, d: a },
        ]
        .into_iter()
        .min()
        .unwrap()
    }

    pub fn removed(&self) -> [(usize, usize); 2] {
        [(self.a, self.b), (self.c, self.d)]
    }

    pub fn added(&self) -> [(usize, usize); 2] {
        [(self.a, self.c), (self.b, self.d)]
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

pub fn is_active(g: &Graph, t: &TwoSwitch) -> bool {
    let TwoSwitch { a, b, c, d } = *t;
    g.has_edge(a, b) && g.has_edge(c, d) && !g.has_edge(a, c) && !g.has_edge(b, d)
}

/// Inactive switches return `g` unchanged.
pub fn apply(g: &Graph, t: &TwoSwitch) -> Result<Graph> {
    for v in t.vertices() {
        g.check(v)?;
    }
    let mut h = g.clone();
    if is_active(g, t) {
        for (u, v) in t.removed() {
            h.remove_edge(u, v);
        }
        for (u, v) in t.added() {
            h.add_edge(u, v);
        }
    }
    Ok(h)
}

/// Every active switch once, in canonical orientation, sorted.
pub fn active_switches(g: &Graph) -> Vec<TwoSwitch> {
    let edges = g.edges();
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            for t in [TwoSwitch { a, b, c, d }, TwoSwitch { a, b, c: d, d: c }] {
                if is_active(g, &t) {
                    out.push(t.canonical());
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadKind {
    P4,
    C4,
    TwoK2,
}

impl QuadKind {
    /// Switch degree of the 4-vertex graph itself.
    pub fn degree(self) -> u64 {
        match self {
            QuadKind::P4 => 1,
            QuadKind::C4 | QuadKind::TwoK2 => 2,
        }
    }
}

/// Kind of the subgraph induced by four distinct vertices, if it carries an
/// active switch.
pub fn quad_kind(g: &Graph, q: [usize; 4]) -> Option<QuadKind> {
    let mut deg = [0u8; 4];
    let mut e = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
                e += 1;
            }
        }
    }
    match e {
        2 if deg.iter().all(|&x| x == 1) => Some(QuadKind::TwoK2),
        3 if deg.iter().all(|&x| x == 1 || x == 2) => Some(QuadKind::P4),
        4 if deg.iter().all(|&x| x == 2) => Some(QuadKind::C4),
        _ => None,
    }
}

/// Calls `f` on every 4-subset of `0..n` in lexicographic order.
pub fn for_each_quad(n: usize, mut f: impl FnMut([usize; 4])) {
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    f([a, b, c, d]);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuadCensus {
    pub q_p4: u64,
    pub q_c4: u64,
    pub q_2k2: u64,
    pub p4: u64,
    pub c4: u64,
    pub k3: u64,
    pub k4: u64,
    pub dpe: u64,
}

fn c2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

pub fn census(g: &Graph) -> QuadCensus {
    let mut out = QuadCensus::default();
    for_each_quad(g.order(), |q| match quad_kind(g, q) {
        Some(QuadKind::P4) => out.q_p4 += 1,
        Some(QuadKind::C4) => out.q_c4 += 1,
        Some(QuadKind::TwoK2) => out.q_2k2 += 1,
        None => {}
    });
    let n = g.order();
    let deg: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let edges = g.edges();
    let mut tri = 0;
    let mut k4x6 = 0;
    let mut path_sum = 0;
    for &(u, v) in &edges {
        path_sum += (deg[u] - 1) * (deg[v] - 1);
        let common: Vec<usize> = (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).collect();
        tri += common.len() as u64;
        for (i, &x) in common.iter().enumerate() {
            for &y in &common[i + 1..] {
                if g.has_edge(x, y) {
                    k4x6 += 1;
                }
            }
        }
    }
    out.k3 = tri / 3;
    out.k4 = k4x6 / 6;
    out.p4 = path_sum - 3 * out.k3;
    let mut c4x2 = 0;
    for u in 0..n {
        for v in u + 1..n {
            c4x2 += c2(g.common(u, v) as u64);
        }
    }
    out.c4 = c4x2 / 2;
    out.dpe = g.degree_sequence().dpe() as u64;
    out
}

/// `2·q(2K₂) + 2·q(C₄) + q(P₄)` over induced 4-vertex subgraphs.
pub fn degree_brute(g: &Graph) -> u64 {
    let c = census(g);
    2 * c.q_2k2 + 2 * c.q_c4 + c.q_p4
}

/// `2·dpe + 2·c₄ − p₄`. Each K₄ holds 3 four-cycles, 3 disjoint edge pairs
/// and 12 paths, so cliques of order 4 contribute nothing.
pub fn degree_formula(g: &Graph) -> u64 {
    let c = census(g);
    let v = 2 * c.dpe as i64 + 2 * c.c4 as i64 - c.p4 as i64;
    assert!(v >= 0, "negative switch degree {v}");
    v as u64
}

/// The switch degree, by the closed formula.
pub fn degree(g: &Graph) -> u64 {
    degree_formula(g)
}

/// Contribution to the degree of the quads containing `v`; stops early once
/// the running total exceeds `cap`.
pub fn degree_through(g: &Graph, v: usize, cap: u64) -> u64 {
    let others: Vec<usize> = (0..g.order()).filter(|&u| u != v).collect();
    let mut total = 0;
    let m = others.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if let Some(kind) = quad_kind(g, [v, others[i], others[j], others[k]]) {
                    total += kind.degree();
                    if total > cap {
                        return total;
                    }
                }
            }
        }
    }
    total
}

/// First and second Zagreb indices.
pub fn zagreb(g: &Graph) -> (u64, u64) {
    let deg: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let z1 = deg.iter().map(|d| d * d).sum();
    let z2 = g.edges().iter().map(|&(u, v)| deg[u] * deg[v]).sum();
    (z1, z2)
}

/// Vertices lying in some induced P₄, C₄ or 2K₂, sorted.
pub fn active_vertices(g: &Graph) -> Vec<usize> {
    let mut act = vec![false; g.order()];
    for_each_quad(g.order(), |q| {
        if !q.iter().all(|&v| act[v]) && quad_kind(g, q).is_some() {
            for v in q {
                act[v] = true;
            }
        }
    });
    (0..g.order()).filter(|&v| act[v]).collect()
}

pub fn is_active_graph(g: &Graph) -> bool {
    active_vertices(g).len() == g.order()
}

/// Subgraph induced by the active vertices, with the map to `g`'s labels.
pub fn active_part(g: &Graph) -> (Graph, Vec<usize>) {
    let act = active_vertices(g);
    (g.induced(&act).expect("in range"), act)
}

/// Degree of a disjoint union from the degrees and sizes of its parts.
pub fn degree_disconnected_formula(components: &[Graph]) -> u64 {
    let mut total: u64 = components.iter().map(degree).sum();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            total += 2 * (components[i].size() * components[j].size()) as u64;
        }
    }
    total
}

/// Number of switches keeping a tree a tree; equals `dpe(s)`.
pub fn f_degree(t: &Graph) -> Result<u64> {
    if !t.is_tree() {
        return Err(Error::WrongShape("tree"));
    }
    Ok(t.degree_sequence().dpe() as u64)
}

pub fn f_degree_brute(t: &Graph) -> Result<u64> {
    if !t.is_tree() {
        return Err(Error::WrongShape("tree"));
    }
    Ok(active_switches(t).iter().filter(|s| apply(t, s).unwrap().is_tree()).count() as u64)
}

/// `deg(U) − deg(C) + dpe(C) − dpe(F) + p₄(F)` for the cycle `C` of `U` and
/// the forest `F` hanging off it.
pub fn u_degree(u: &Graph) -> Result<u64> {
    let cycle = u.unique_cycle().ok_or(Error::WrongShape("unicyclic graph"))?;
    let c = cycle.len();
    let cyc = Graph::cycle(c);
    let dpe_c = (c * (c - 1) / 2 - c) as i64;
    let mut on_cycle = vec![false; u.order()];
    for &v in &cycle {
        on_cycle[v] = true;
    }
    let mut rest = u.clone();
    for i in 0..c {
        rest.remove_edge(cycle[i], cycle[(i + 1) % c]);
    }
    let keep: Vec<usize> = (0..u.order()).filter(|&v| !(on_cycle[v] && u.degree(v) == 2)).collect();
    let f = rest.induced(&keep)?;
    let cf = census(&f);
    let v = degree(u) as i64 - degree(&cyc) as i64 + dpe_c - cf.dpe as i64 + cf.p4 as i64;
    Ok(v as u64)
}

pub fn u_degree_brute(u: &Graph) -> Result<u64> {
    if !u.is_unicyclic() {
        return Err(Error::WrongShape("unicyclic graph"));
    }
    Ok(active_switches(u).iter().filter(|s| apply(u, s).unwrap().is_unicyclic()).count() as u64)
}

/// `dpe` of a sequence, exposed here next to the degree formulas.
pub fn dpe(s: &DegreeSequence) -> u64 {
    s.dpe() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{enumerate_unlabeled, is_isomorphic};

    fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn switch_algebra() {
        let t = TwoSwitch::new(0, 1, 2, 3).unwrap();
        assert_eq!(t.inverse(), TwoSwitch::new(0, 2, 1, 3).unwrap());
        assert!(TwoSwitch::new(0, 1, 1, 3).is_err());
        let forms = [
            TwoSwitch::new(3, 2, 1, 0).unwrap(),
            TwoSwitch::new(1, 0, 3, 2).unwrap(),
            TwoSwitch::new(2, 3, 0, 1).unwrap(),
        ];
        for f in forms {
            assert_eq!(f.canonical(), t);
        }
    }

    #[test]
    fn p5_switch_gives_triangle_plus_edge() {
        // a b x c d = 0 1 2 3 4
        let p5 = Graph::path(5);
        let t = TwoSwitch::new(0, 1, 4, 3).unwrap();
        let h = apply(&p5, &t).unwrap();
        let k3k2 = Graph::complete(3).disjoint_union(&Graph::complete(2));
        assert!(is_isomorphic(&h, &k3k2).unwrap());
        assert_eq!(degree(&p5), 4);
        assert_eq!(degree(&h), 6);
        assert_eq!(apply(&h, &t.inverse()).unwrap(), p5);
    }

    #[test]
    fn inactive_on_complete() {
        let k4 = Graph::complete(4);
        let t = TwoSwitch::new(0, 1, 2, 3).unwrap();
        assert_eq!(apply(&k4, &t).unwrap(), k4);
        assert!(apply(&k4, &TwoSwitch::new(0, 1, 2, 9).unwrap()).is_err());
    }

    #[test]
    fn small_degrees() {
        assert_eq!(active_switches(&Graph::path(4)).len(), 1);
        assert_eq!(active_switches(&two_k2()).len(), 2);
        assert_eq!(active_switches(&Graph::cycle(4)).len(), 2);
        assert!(active_switches(&Graph::star(6)).is_empty());
        assert_eq!(degree(&Graph::new(0)), 0);
    }

    #[test]
    fn census_examples() {
        assert_eq!(census(&Graph::cycle(5)).p4, 5);
        let k4 = census(&Graph::complete(4));
        assert_eq!((k4.k4, k4.k3, k4.q_p4), (1, 4, 0));
        let c4 = census(&Graph::cycle(4));
        assert_eq!((c4.c4, c4.dpe), (1, 2));
        let p4 = census(&Graph::path(4));
        assert_eq!((p4.dpe, p4.c4, p4.p4, p4.k4), (1, 0, 1, 0));
    }

    #[test]
    fn closed_forms() {
        for n in 3..=12 {
            assert_eq!(degree_brute(&Graph::path(n)), ((n - 3) * (n - 3)) as u64);
        }
        for n in 5..=12 {
            assert_eq!(degree_brute(&Graph::cycle(n)), (n * (n - 4)) as u64);
        }
        assert_eq!(degree_brute(&Graph::cycle(4)), 2);
        assert_eq!(degree_brute(&Graph::cycle(3)), 0);
        assert_eq!(degree(&Graph::complete(7)), 0);
    }

    #[test]
    fn k4_term_would_break_complete_graphs() {
        let c = census(&Graph::complete(4));
        assert_eq!((c.dpe, c.c4, c.p4, c.k4), (3, 3, 12, 1));
        assert_eq!(2 * c.dpe + 2 * c.c4 - c.p4, 0);
    }

    #[test]
    fn zagreb_values() {
        assert_eq!(zagreb(&Graph::path(4)), (10, 8));
        assert_eq!(zagreb(&Graph::new(1)), (0, 0));
    }

    #[test]
    fn active_vertex_examples() {
        assert_eq!(active_vertices(&Graph::path(4)), vec![0, 1, 2, 3]);
        assert!(active_vertices(&Graph::star(5)).is_empty());
        // P4 joined with K2: both new vertices are universal
        let g = Graph::path(4).join(&Graph::complete(2));
        assert_eq!(active_vertices(&g), vec![0, 1, 2, 3]);
        assert_eq!(degree(&g), 1);
        let (h, map) = active_part(&g);
        assert!(is_isomorphic(&h, &Graph::path(4)).unwrap());
        assert_eq!(map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn disconnected_formula() {
        assert_eq!(degree_disconnected_formula(&[Graph::complete(2), Graph::complete(2)]), 2);
        assert_eq!(degree_disconnected_formula(&[Graph::complete(2), Graph::new(1)]), 0);
        let k3 = Graph::complete(3);
        assert_eq!(degree_disconnected_formula(&[k3.clone(), k3.clone()]), 18);
        assert_eq!(active_switches(&k3.disjoint_union(&k3)).len(), 18);
    }

    #[test]
    fn forest_degrees() {
        assert_eq!(f_degree(&Graph::path(4)).unwrap(), 1);
        assert_eq!(f_degree(&Graph::star(7)).unwrap(), 0);
        // star on 5 vertices with a K2 glued at a leaf
        let y6 = Graph::star(5).with_vertex(&[4]);
        assert_eq!(y6.degree_sequence().compact(), "4^1 2^1 1^4");
        assert_eq!(f_degree(&y6).unwrap(), f_degree_brute(&y6).unwrap());
        assert!(f_degree(&Graph::cycle(4)).is_err());
    }

    #[test]
    fn unicyclic_degrees() {
        // triangle 0 1 2 with a P4 glued at 0 through 3 4 5
        let u = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)]).unwrap();
        // C4 0 1 2 3 with a P3 glued at 0 through 4 5
        let w = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        assert_eq!(u.degree_sequence().compact(), "3^1 2^4 1^1");
        assert_eq!(w.degree_sequence().compact(), "3^1 2^4 1^1");
        assert_eq!(u_degree(&u).unwrap(), 11);
        assert_eq!(u_degree(&w).unwrap(), 10);
        assert_eq!(u_degree_brute(&u).unwrap(), 11);
        assert_eq!(u_degree_brute(&w).unwrap(), 10);
        assert_eq!(u_degree(&Graph::cycle(5)).unwrap(), 5);
        assert!(u_degree(&Graph::path(5)).is_err());
    }

    #[test]
    fn order_four_degrees() {
        let mut degs: Vec<u64> = enumerate_unlabeled(4).unwrap().iter().map(degree_brute).collect();
        degs.sort();
        assert_eq!(degs, vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 2]);
    }
}
