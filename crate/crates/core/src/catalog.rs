//! Named small graphs of low switch degree, built from their split
//! bipartition data, plus compositions and complements.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use crate::split::{complement_split, compose, SplitBipartition};

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    /// Clique/independent sides when the graph is split.
    pub split: Option<SplitBipartition>,
    /// Switch degree the name stands for.
    pub degree: u64,
}

pub const DEGREE_1: &[&str] = &["P4"];
pub const DEGREE_2: &[&str] = &["C4", "2K2", "D5", "co-D5", "P4^2"];
pub const DEGREE_3_REDUCIBLE: &[&str] =
    &["P4.D5", "D5.P4", "P4.co-D5", "co-D5.P4", "P4^3", "P4.C4", "P4.2K2"];
pub const DEGREE_3_PRIME: &[&str] = &["T6", "co-T6", "D6", "co-D6", "U6", "co-U6"];
pub const DEGREE_4_SPLIT_PRIME: &[&str] = &[
    "D41", "co-D41", "D22", "co-D22", "F311", "co-F311", "F331", "co-F331", "R211", "co-R211", "R321",
    "co-R321",
];

fn split(k: usize, nbrs: &[&[usize]]) -> SplitBipartition {
    let nbrs: Vec<Vec<usize>> = nbrs.iter().map(|n| n.to_vec()).collect();
    SplitBipartition::from_neighborhoods(k, &nbrs)
}

/// Split primes with their degrees; complements are added by `build`.
fn split_primes() -> Vec<(&'static str, u64, SplitBipartition)> {
    vec![
        ("P4", 1, split(2, &[&[0], &[1]])),
        ("D5", 2, split(3, &[&[0], &[1, 2]])),
        ("T6", 3, split(3, &[&[0], &[1], &[2]])),
        ("D6", 3, split(4, &[&[0], &[1, 2, 3]])),
        ("U6", 3, split(3, &[&[0], &[1, 2], &[0, 1]])),
        ("D41", 4, split(5, &[&[0], &[1, 2, 3, 4]])),
        ("D22", 4, split(4, &[&[0, 1], &[2, 3]])),
        ("F311", 4, split(4, &[&[1], &[0], &[1, 2, 3]])),
        ("F331", 4, split(4, &[&[0, 1, 2], &[1, 2, 3], &[0]])),
        ("R211", 4, split(3, &[&[0], &[1, 2], &[0]])),
        ("R321", 4, split(4, &[&[0], &[2, 3], &[0, 1, 2]])),
    ]
}

fn build() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    let mut splits: HashMap<String, SplitBipartition> = HashMap::new();
    for (name, degree, s) in split_primes() {
        let co = complement_split(&s);
        if name != "P4" {
            out.push(NamedGraph { name: format!("co-{name}"), graph: co.graph.clone(), split: Some(co.clone()), degree });
            splits.insert(format!("co-{name}"), co);
        }
        out.push(NamedGraph { name: name.to_string(), graph: s.graph.clone(), split: Some(s.clone()), degree });
        splits.insert(name.to_string(), s);
    }
    let p4 = splits["P4"].clone();
    let c4 = Graph::cycle(4);
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    out.push(NamedGraph { name: "C4".into(), graph: c4.clone(), split: None, degree: 2 });
    out.push(NamedGraph { name: "2K2".into(), graph: two_k2.clone(), split: None, degree: 2 });

    let p4_2 = compose(&p4, &p4.graph);
    let p4_2_split = SplitBipartition::canonical(&p4_2).expect("composition of split graphs is split");
    out.push(NamedGraph { name: "P4^2".into(), graph: p4_2.clone(), split: Some(p4_2_split), degree: 2 });
    let mut push_comp = |name: &str, s: &SplitBipartition, g: &Graph| {
        let h = compose(s, g);
        let sp = SplitBipartition::canonical(&h).ok();
        out.push(NamedGraph { name: name.into(), graph: h, split: sp, degree: 3 });
    };
    let d5 = &splits["D5"];
    let cd5 = &splits["co-D5"];
    push_comp("P4.D5", &p4, &d5.graph);
    push_comp("D5.P4", d5, &p4.graph);
    push_comp("P4.co-D5", &p4, &cd5.graph);
    push_comp("co-D5.P4", cd5, &p4.graph);
    push_comp("P4^3", &p4, &p4_2);
    push_comp("P4.C4", &p4, &c4);
    push_comp("P4.2K2", &p4, &two_k2);
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn catalog() -> &'static [NamedGraph] {
    static CATALOG: OnceLock<Vec<NamedGraph>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn get(name: &str) -> Option<&'static NamedGraph> {
    catalog().iter().find(|g| g.name == name)
}

/// Name of the catalog entry isomorphic to `g`, if any.
pub fn identify(g: &Graph) -> Option<&'static str> {
    static INDEX: OnceLock<HashMap<CanonicalForm, &'static str>> = OnceLock::new();
    let index = INDEX.get_or_init(|| {
        catalog().iter().map(|e| (canonical_form(&e.graph).unwrap(), e.name.as_str())).collect()
    });
    index.get(&canonical_form(g).ok()?).copied()
}

/// Canonical forms of the named graphs listed in `names`, sorted.
pub fn forms(names: &[&str]) -> Vec<CanonicalForm> {
    let mut v: Vec<CanonicalForm> = names
        .iter()
        .map(|n| canonical_form(&get(n).unwrap_or_else(|| panic!("unknown name {n}")).graph).unwrap())
        .collect();
    v.sort_unstable();
    v
}
