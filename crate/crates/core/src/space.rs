//! Transition spaces: labeled graphs sharing a degree sequence, adjacent
//! when one active 2-switch turns one into the other.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};
use crate::switch::{active_part, active_switches, apply};

pub const DEFAULT_MAX_MEMBERS: usize = 1_000_000;

/// Member cap, overridable through `SWITCHLAB_MAX_MEMBERS`.
pub fn member_cap() -> usize {
    std::env::var("SWITCHLAB_MAX_MEMBERS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_MEMBERS)
}

#[derive(Clone, Debug)]
pub struct TransitionSpace {
    pub members: Vec<Graph>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl TransitionSpace {
    fn from_adjacency(members: Vec<Graph>, adj: &[Vec<usize>]) -> TransitionSpace {
        let mut edges: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        TransitionSpace { members, edges }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The space itself as a simple graph on member indices.
    pub fn as_graph(&self) -> Graph {
        let mut g = Graph::new(self.members.len());
        for &(i, j) in &self.edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.members.len()];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    /// Space degree → number of members with it.
    pub fn degree_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for d in self.degrees() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let p = self.degree_profile();
        if p.len() == 1 {
            p.keys().next().copied()
        } else {
            None
        }
    }

    pub fn is_connected(&self) -> bool {
        self.as_graph().is_connected()
    }

    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        self.members.iter().position(|m| m == g)
    }

    /// Checks that `f` maps members bijectively onto `other`'s members and
    /// carries edges exactly onto edges.
    pub fn is_isomorphism(&self, other: &TransitionSpace, f: impl Fn(&Graph) -> Graph) -> bool {
        if self.len() != other.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let index: HashMap<&Graph, usize> = other.members.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut image = Vec::with_capacity(self.len());
        let mut hit = vec![false; other.len()];
        for m in &self.members {
            match index.get(&f(m)) {
                Some(&j) if !hit[j] => {
                    hit[j] = true;
                    image.push(j);
                }
                _ => return false,
            }
        }
        let target = other.as_graph();
        self.edges.iter().all(|&(i, j)| target.has_edge(image[i], image[j]))
    }

    /// Induced subspace on the members accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(&Graph) -> bool) -> TransitionSpace {
        let mut new_index = vec![usize::MAX; self.len()];
        let mut members = Vec::new();
        for (i, g) in self.members.iter().enumerate() {
            if keep(g) {
                new_index[i] = members.len();
                members.push(g.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| new_index[i] != usize::MAX && new_index[j] != usize::MAX)
            .map(|&(i, j)| (new_index[i], new_index[j]))
            .collect();
        TransitionSpace { members, edges }
    }
}

/// All labeled realizations of `s`, found by closing one realization under
/// active switches.
pub fn realization_space(s: &DegreeSequence) -> Result<TransitionSpace> {
    realization_space_capped(s, member_cap())
}

pub fn realization_space_capped(s: &DegreeSequence, cap: usize) -> Result<TransitionSpace> {
    let start = s.realize()?;
    let mut index: HashMap<Graph, usize> = HashMap::new();
    let mut members = vec![start.clone()];
    index.insert(start, 0);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut i = 0;
    while i < members.len() {
        let g = members[i].clone();
        for t in active_switches(&g) {
            let h = apply(&g, &t)?;
            let j = match index.get(&h) {
                Some(&j) => j,
                None => {
                    if members.len() >= cap {
                        return Err(Error::SpaceTooLarge(cap));
                    }
                    let j = members.len();
                    index.insert(h.clone(), j);
                    members.push(h);
                    adj.push(Vec::new());
                    j
                }
            };
            adj[i].push(j);
        }
        i += 1;
    }
    Ok(TransitionSpace::from_adjacency(members, &adj))
}

/// Forests realizing `s`, as an induced subspace.
pub fn forest_space(s: &DegreeSequence) -> Result<TransitionSpace> {
    let sp = realization_space(s)?.restrict(|g| g.is_forest());
    if sp.is_empty() {
        return Err(Error::NoRealizer("forest"));
    }
    Ok(sp)
}

/// Unicyclic graphs realizing `s`, as an induced subspace.
pub fn unicyclic_space(s: &DegreeSequence) -> Result<TransitionSpace> {
    let sp = realization_space(s)?.restrict(|g| g.is_unicyclic());
    if sp.is_empty() {
        return Err(Error::NoRealizer("unicyclic graph"));
    }
    Ok(sp)
}

/// Members replaced by their active parts, edges kept.
pub fn active_space(space: &TransitionSpace) -> TransitionSpace {
    TransitionSpace {
        members: space.members.iter().map(|g| active_part(g).0).collect(),
        edges: space.edges.clone(),
    }
}

/// Every degree sequence of order `n` realized by some graph, sorted
/// non-increasingly and deduplicated.
pub fn graphical_sequences(n: usize) -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == n {
            let s = DegreeSequence(cur.clone());
            if s.is_graphical() {
                out.push(s);
            }
            return;
        }
        for d in (0..=max).rev() {
            cur.push(d);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    rec(n, n.saturating_sub(1), &mut cur, &mut out);
    out
}
