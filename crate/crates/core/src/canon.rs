//! Canonical forms by equitable refinement and individualization, and
//! enumeration of unlabeled graphs by canonical vertex extension.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by `canonical_form`: the upper triangle of the
/// relabeled adjacency matrix must fit in a `u128`.
pub const CANON_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: usize,
    pub code: u128,
}

impl CanonicalForm {
    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        let n = self.order;
        let mut g = Graph::new(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.code >> (127 - k) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

fn encode(g: &Graph, pos: &[usize]) -> u128 {
    let n = g.order();
    let mut code = 0u128;
    for (u, v) in g.edges() {
        let (i, j) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
        let k = i * (2 * n - i - 1) / 2 + (j - i - 1);
        code |= 1u128 << (127 - k);
    }
    code
}

fn mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Splits cells by neighbor counts into earlier cells until stable.
fn refine(rows: &[u64], cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let m = mask(&cells[s]);
            let mut c = 0;
            while c < cells.len() {
                if cells[c].len() == 1 {
                    c += 1;
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cells[c].iter().map(|&v| ((rows[v] & m).count_ones(), v)).collect();
                keyed.sort_unstable();
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    c += 1;
                    continue;
                }
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = u32::MAX;
                for (k, v) in keyed {
                    if k != last {
                        parts.push(Vec::new());
                        last = k;
                    }
                    parts.last_mut().unwrap().push(v);
                }
                let np = parts.len();
                cells.splice(c..c + 1, parts);
                c += np;
                changed = true;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    rows: Vec<u64>,
    twin: Vec<usize>,
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<Vec<usize>>) {
        refine(&self.rows, &mut cells);
        let n = self.g.order();
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let mut pos = vec![0; n];
                for (i, c) in cells.iter().enumerate() {
                    pos[c[0]] = i;
                }
                let code = encode(self.g, &pos);
                if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                    self.best = Some((code, pos));
                }
            }
            Some(t) => {
                let mut tried: Vec<usize> = Vec::new();
                for &v in &cells[t] {
                    // twins give automorphic subtrees
                    if tried.contains(&self.twin[v]) {
                        continue;
                    }
                    tried.push(self.twin[v]);
                    let mut next = cells.clone();
                    let rest: Vec<usize> = cells[t].iter().copied().filter(|&u| u != v).collect();
                    next.splice(t..t + 1, [vec![v], rest]);
                    self.run(next);
                }
            }
        }
    }
}

/// Twin class id (least member) per vertex: `N(u) − v = N(v) − u`.
fn twin_ids(g: &Graph, rows: &[u64]) -> Vec<usize> {
    let n = g.order();
    let mut id: Vec<usize> = (0..n).collect();
    for u in 0..n {
        if id[u] != u {
            continue;
        }
        for v in u + 1..n {
            let a = rows[u] & !(1 << v);
            let b = rows[v] & !(1 << u);
            if a == b {
                id[v] = u;
            }
        }
    }
    id
}

/// Canonical form and the canonical position of each vertex.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > CANON_LIMIT {
        return Err(Error::OrderTooLarge { n, limit: CANON_LIMIT });
    }
    if n == 0 {
        return Ok((CanonicalForm { order: 0, code: 0 }, Vec::new()));
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let twin = twin_ids(g, &rows);
    let mut s = Search { g, rows, twin, best: None };
    s.run(vec![(0..n).collect()]);
    let (code, pos) = s.best.expect("at least one leaf");
    Ok((CanonicalForm { order: n, code }, pos))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(f, _)| f)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let mut a = g.degrees();
    let mut b = h.degrees();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// One representative per isomorphism class of one-vertex extensions of
/// `graphs` accepted by `keep`, sorted by canonical form.
pub fn extend_unlabeled<F>(graphs: &[Graph], keep: F) -> Vec<Graph>
where
    F: Fn(&Graph) -> bool + Sync,
{
    let mut forms: Vec<CanonicalForm> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let m = g.order();
            let mut local = HashSet::new();
            for s in 0u64..1 << m {
                let nbrs: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 1).collect();
                let h = g.with_vertex(&nbrs);
                if keep(&h) {
                    local.insert(canonical_form(&h).expect("order within limit"));
                }
            }
            local.into_iter()
        })
        .collect();
    forms.par_sort_unstable();
    forms.dedup();
    forms.iter().map(|f| f.graph()).collect()
}

/// All unlabeled graphs of order `n` (one canonical representative each).
pub fn enumerate_unlabeled(n: usize) -> Result<Vec<Graph>> {
    if n > CANON_LIMIT {
        return Err(Error::OrderTooLarge { n, limit: CANON_LIMIT });
    }
    let mut level = vec![Graph::new(0)];
    for _ in 0..n {
        level = extend_unlabeled(&level, |_| true);
    }
    Ok(level)
}
