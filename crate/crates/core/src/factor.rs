//! The factor multigraph of a split graph: one vertex per independent
//! vertex, `σ_uv = (d_u − η_uv)(d_v − η_uv)` parallel edges between `u` and
//! `v`, where `η_uv` counts common neighbors. Also the flow digraph, linear
//! split graphs, structural validators, a split graph built from a divisor
//! witness, and intersecting set families.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::multi::{Digraph, Multigraph};
use crate::split::{complement_split, invert, SplitBipartition};
use crate::switch::{for_each_quad, quad_kind, QuadKind};

#[derive(Clone, Debug)]
pub struct FactorGraph {
    pub base: SplitBipartition,
    /// Vertex `x` of `phi` is `base.i[x]`.
    pub phi: Multigraph,
    /// Common-neighbor counts, indexed like `phi`.
    pub eta: Vec<Vec<usize>>,
    /// Degrees in the base graph, indexed like `phi`.
    pub degrees: Vec<usize>,
}

impl FactorGraph {
    pub fn order(&self) -> usize {
        self.degrees.len()
    }

    pub fn sigma(&self, x: usize, y: usize) -> u64 {
        self.phi.sigma(x, y)
    }

    pub fn simple(&self) -> Graph {
        self.phi.simple()
    }

    /// Total multiplicity, which is the switch degree of the base graph.
    pub fn size(&self) -> u64 {
        self.phi.size()
    }

    /// Position of an independent vertex of the base graph.
    pub fn index(&self, v: usize) -> Result<usize> {
        self.base.i.binary_search(&v).map_err(|_| Error::NotInIndependentSide(v))
    }
}

fn sigma_from(du: usize, dv: usize, eta: usize) -> u64 {
    ((du - eta) * (dv - eta)) as u64
}

/// `σ_uv` for two independent vertices given by their labels in S.
pub fn sigma(s: &SplitBipartition, u: usize, v: usize) -> Result<u64> {
    for x in [u, v] {
        s.graph.check(x)?;
        if !s.in_i(x) {
            return Err(Error::NotInIndependentSide(x));
        }
    }
    if u == v {
        return Err(Error::RepeatedSwitchVertex);
    }
    let g = &s.graph;
    Ok(sigma_from(g.degree(u), g.degree(v), g.common(u, v)))
}

/// Induced P₄'s of S holding both `u` and `v`.
pub fn sigma_brute(s: &SplitBipartition, u: usize, v: usize) -> u64 {
    let mut count = 0;
    for_each_quad(s.graph.order(), |q| {
        if q.contains(&u) && q.contains(&v) && quad_kind(&s.graph, q) == Some(QuadKind::P4) {
            count += 1;
        }
    });
    count
}

pub fn factor_graph(s: &SplitBipartition) -> FactorGraph {
    let g = &s.graph;
    let a = s.i.len();
    let degrees: Vec<usize> = s.i.iter().map(|&v| g.degree(v)).collect();
    let mut eta = vec![vec![0; a]; a];
    let mut phi = Multigraph::new(a);
    for x in 0..a {
        eta[x][x] = degrees[x];
        for y in x + 1..a {
            let e = g.common(s.i[x], s.i[y]);
            eta[x][y] = e;
            eta[y][x] = e;
            phi.add(x, y, sigma_from(degrees[x], degrees[y], e));
        }
    }
    FactorGraph { base: s.clone(), phi, eta, degrees }
}

/// Factor graph under the canonical bipartition.
pub fn factor_graph_of(g: &Graph) -> Result<FactorGraph> {
    Ok(factor_graph(&SplitBipartition::canonical(g)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleType {
    /// All three degrees distinct.
    Transitive,
    /// One bidirected pair, both pointing into the third vertex.
    PairBelow,
    /// One bidirected pair, both fed by the third vertex.
    PairAbove,
    /// All bidirected.
    Balanced,
}

#[derive(Clone, Debug)]
pub struct FlowConfiguration {
    /// Arc `x → y` when `d_x ≤ d_y` and `σ_xy > 0`.
    pub digraph: Digraph,
    pub triangles: Vec<([usize; 3], Option<TriangleType>)>,
    /// Induced 4-cycles of the simple projection with their level names.
    pub squares: Vec<([usize; 4], Option<String>)>,
}

pub fn flow_digraph(f: &FactorGraph) -> Digraph {
    let mut d = Digraph::new(f.order());
    for (x, y, _) in f.phi.edges() {
        if f.degrees[x] <= f.degrees[y] {
            d.add_arc(x, y);
        }
        if f.degrees[y] <= f.degrees[x] {
            d.add_arc(y, x);
        }
    }
    d
}

/// Reads the type off the arcs alone; `None` means no allowed type fits.
pub fn triangle_type(d: &Digraph, t: [usize; 3]) -> Option<TriangleType> {
    let pairs = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
    if pairs.iter().any(|&(u, v)| !d.has_arc(u, v) && !d.has_arc(v, u)) {
        return None;
    }
    let both: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(u, v)| d.has_arc(u, v) && d.has_arc(v, u)).collect();
    match both.len() {
        3 => Some(TriangleType::Balanced),
        1 => {
            let (p, q) = both[0];
            let r = t.iter().copied().find(|&w| w != p && w != q).unwrap();
            let into_r = d.has_arc(p, r) && d.has_arc(q, r) && !d.has_arc(r, p) && !d.has_arc(r, q);
            let from_r = d.has_arc(r, p) && d.has_arc(r, q) && !d.has_arc(p, r) && !d.has_arc(q, r);
            if into_r {
                Some(TriangleType::PairBelow)
            } else if from_r {
                Some(TriangleType::PairAbove)
            } else {
                None
            }
        }
        0 => {
            // acyclic orientation: exactly one source
            let out = |u: usize| t.iter().filter(|&&w| w != u && d.has_arc(u, w)).count();
            let mut outs: Vec<usize> = t.iter().map(|&u| out(u)).collect();
            outs.sort_unstable();
            (outs == [0, 1, 2]).then_some(TriangleType::Transitive)
        }
        _ => None,
    }
}

/// Level code of a directed 4-cycle given in cyclic order: bidirected pairs
/// share a level, a one-way arc climbs at least one level, and each vertex
/// sits at the length of the longest climb reaching it. The name is the
/// least code over rotations and reflections. `None` when the arcs close a
/// strict cycle, which no degree assignment produces.
pub fn c4_level_name(d: &Digraph, c: [usize; 4]) -> Option<String> {
    // rel[i]: relation from c[i] to c[i+1]; -1 down, 0 equal, 1 up
    let mut rel = [0i32; 4];
    for i in 0..4 {
        let (u, v) = (c[i], c[(i + 1) % 4]);
        rel[i] = match (d.has_arc(u, v), d.has_arc(v, u)) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => -1,
            (false, false) => return None,
        };
    }
    let ups = rel.iter().filter(|&&r| r > 0).count();
    let downs = rel.iter().filter(|&&r| r < 0).count();
    if (ups == 0) != (downs == 0) {
        return None;
    }
    let mut level = [0i32; 4];
    for _ in 0..4 {
        for i in 0..4 {
            let j = (i + 1) % 4;
            match rel[i] {
                0 => {
                    let m = level[i].max(level[j]);
                    level[i] = m;
                    level[j] = m;
                }
                1 => level[j] = level[j].max(level[i] + 1),
                _ => level[i] = level[i].max(level[j] + 1),
            }
        }
    }
    let base = *level.iter().min().unwrap();
    let digits: Vec<i32> = level.iter().map(|l| l - base).collect();
    let mut best: Option<String> = None;
    for start in 0..4 {
        for dir in [1i32, 3] {
            let s: String = (0..4)
                .map(|k| {
                    let idx = (start + dir * k).rem_euclid(4) as usize;
                    char::from_digit(digits[idx] as u32, 10).unwrap()
                })
                .collect();
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.map(|s| format!("C4({s})"))
}

pub fn flow_configuration(f: &FactorGraph) -> FlowConfiguration {
    let digraph = flow_digraph(f);
    let simple = f.simple();
    let mut triangles = Vec::new();
    let mut squares = Vec::new();
    for c in induced_cycles(&simple) {
        match c.len() {
            3 => {
                let t = [c[0], c[1], c[2]];
                triangles.push((t, triangle_type(&digraph, t)));
            }
            4 => {
                let q = [c[0], c[1], c[2], c[3]];
                squares.push((q, c4_level_name(&digraph, q)));
            }
            _ => {}
        }
    }
    FlowConfiguration { digraph, triangles, squares }
}

/// Induced cycles, each once: least vertex first, and second vertex less
/// than the last.
pub fn induced_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in 0..g.order() {
        let mut path = vec![s];
        cycle_dfs(g, &mut path, &mut out);
    }
    out
}

fn cycle_dfs(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().unwrap();
    for w in g.neighbors(last) {
        if w <= s || path.contains(&w) {
            continue;
        }
        // w may touch `last`, and `s` only when it closes the cycle
        let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        if interior.iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        if path.len() >= 2 && g.has_edge(w, s) {
            if path[1] < w {
                let mut c = path.clone();
                c.push(w);
                out.push(c);
            }
            continue;
        }
        path.push(w);
        cycle_dfs(g, path, out);
        path.pop();
    }
}

/// Induced paths on at least two vertices, each once (first < last).
pub fn induced_paths(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in 0..g.order() {
        let mut path = vec![s];
        path_dfs(g, &mut path, &mut out);
    }
    out
}

fn path_dfs(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    for w in g.neighbors(last) {
        if path.contains(&w) || path[..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        path.push(w);
        if path[0] < w {
            out.push(path.clone());
        }
        path_dfs(g, path, out);
        path.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    /// Common value of all nonzero σ, when there is one.
    pub n_simple: Option<u64>,
    pub square_free: bool,
    /// Common degree gap across all Φ-edges, when positive and constant.
    pub epsilon: Option<usize>,
    /// For linear S with connected Φ: the twin classes of Φ in path order.
    pub class_path: Option<Vec<Vec<usize>>>,
    /// `deg(S) = Σ σ_{i,i+1} |[v_i]| |[v_{i+1}]|` along the class path.
    pub class_path_degree_ok: Option<bool>,
    /// `dist_Φ(u,v) = |d_u − d_v| / ε` for Φ-non-twins.
    pub distance_ok: Option<bool>,
}

fn is_square(n: u64) -> bool {
    n.isqrt().pow(2) == n
}

pub fn linearity_report(f: &FactorGraph) -> LinearityReport {
    let edges = f.phi.edges();
    let values: BTreeSet<u64> = edges.iter().map(|e| e.2).collect();
    let n_simple = (values.len() == 1).then(|| *values.iter().next().unwrap());
    let square_free = values.iter().all(|&s| !is_square(s));
    let gaps: BTreeSet<usize> = edges.iter().map(|&(x, y, _)| f.degrees[x].abs_diff(f.degrees[y])).collect();
    let epsilon = match gaps.len() {
        1 => Some(*gaps.iter().next().unwrap()).filter(|&e| e > 0),
        _ => None,
    };
    let mut report = LinearityReport {
        n_simple,
        square_free,
        epsilon,
        class_path: None,
        class_path_degree_ok: None,
        distance_ok: None,
    };
    let simple = f.simple();
    let Some(eps) = epsilon else { return report };
    if !simple.is_connected() {
        return report;
    }
    let (classes, class_of) = open_classes(&simple);
    let mut q = Graph::new(classes.len());
    for (x, y) in simple.edges() {
        q.add_edge(class_of[x], class_of[y]);
    }
    if let Some(order) = path_order(&q) {
        let classes: Vec<Vec<usize>> = order.iter().map(|&c| classes[c].clone()).collect();
        let total: u64 = classes
            .windows(2)
            .map(|w| f.sigma(w[0][0], w[1][0]) * (w[0].len() * w[1].len()) as u64)
            .sum();
        report.class_path_degree_ok = Some(total == f.size());
        report.class_path = Some(classes);
    }
    let mut ok = true;
    for x in 0..f.order() {
        let dist = simple.distances_from(x);
        for y in 0..f.order() {
            if class_of[x] != class_of[y] {
                let gap = f.degrees[x].abs_diff(f.degrees[y]);
                ok &= gap.is_multiple_of(eps) && dist[y] == Some(gap / eps);
            }
        }
    }
    report.distance_ok = Some(ok);
    report
}

/// Classes of vertices with equal open neighborhoods. In a linear split
/// graph adjacent vertices differ in degree, so only non-adjacent twins of
/// the factor graph can share a class.
fn open_classes(g: &Graph) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; g.order()];
    for v in 0..g.order() {
        match classes.iter().position(|c| g.row(c[0]) == g.row(v)) {
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
    (classes, class_of)
}

/// Vertices of a path graph from one end to the other.
fn path_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n == 0 || !g.is_connected() || g.size() != n - 1 || (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..n).find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = g.neighbors(cur).find(|&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LongInducedCycle { cycle: Vec<usize> },
    InternalSimpleEdge { path: Vec<usize> },
    PathMaxDegree { path: Vec<usize> },
    Diameter { diameter: usize, bound: u64 },
    Triangle { triangle: Vec<usize> },
    Square { cycle: Vec<usize> },
    Homogeneous { detail: String },
    SimpleConnected { detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// Induced cycle length → count.
    pub cycle_lengths: BTreeMap<usize, usize>,
    pub induced_paths: usize,
    pub homogeneous: bool,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Balanced, with every independent vertex of the same degree.
pub fn is_homogeneous(s: &SplitBipartition) -> bool {
    let d: BTreeSet<usize> = s.i.iter().map(|&v| s.graph.degree(v)).collect();
    d.len() <= 1 && s.is_balanced()
}

fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, cur: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(cur.len());
        for v in from..g.order() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                grow(g, cur, v + 1, best);
                cur.pop();
            }
        }
    }
    let mut best = 0;
    grow(g, &mut Vec::new(), 0, &mut best);
    best
}

pub fn validate_structure(f: &FactorGraph) -> StructureReport {
    let simple = f.simple();
    let mut violations = Vec::new();
    let mut cycle_lengths = BTreeMap::new();
    for c in induced_cycles(&simple) {
        *cycle_lengths.entry(c.len()).or_insert(0) += 1;
        if c.len() > 4 {
            violations.push(Violation::LongInducedCycle { cycle: c });
        }
    }
    let flow = flow_configuration(f);
    for (t, ty) in &flow.triangles {
        if ty.is_none() {
            violations.push(Violation::Triangle { triangle: t.to_vec() });
        }
    }
    for (q, name) in &flow.squares {
        if name.is_none() {
            violations.push(Violation::Square { cycle: q.to_vec() });
        }
    }
    let paths = induced_paths(&simple);
    for p in &paths {
        let len = p.len();
        for i in 1..len.saturating_sub(2) {
            if f.sigma(p[i], p[i + 1]) == 1 {
                violations.push(Violation::InternalSimpleEdge { path: p.clone() });
                break;
            }
        }
        let d: Vec<usize> = p.iter().map(|&x| f.degrees[x]).collect();
        let max = *d.iter().max().unwrap();
        if ![d[0], d[1], d[len - 2], d[len - 1]].contains(&max) {
            violations.push(Violation::PathMaxDegree { path: p.clone() });
        }
    }
    let deg = f.size();
    if simple.is_connected() {
        let diameter = simple.diameter().unwrap_or(0);
        let bound = (deg + 2) / 2;
        if diameter as u64 > bound {
            violations.push(Violation::Diameter { diameter, bound });
        }
    }
    let homogeneous = is_homogeneous(&f.base);
    if homogeneous {
        let g = &f.base.graph;
        for x in 0..f.order() {
            for y in x + 1..f.order() {
                let s = f.sigma(x, y);
                let twins = crate::twins::are_twins(g, f.base.i[x], f.base.i[y]);
                if (s == 0) != twins || !is_square(s) {
                    violations.push(Violation::Homogeneous { detail: format!("pair {x},{y} with σ = {s}") });
                }
            }
        }
        if f.order() >= 2 && simple.diameter().is_none_or(|d| d > 2) {
            violations.push(Violation::Homogeneous { detail: "diameter above 2".into() });
        }
    }
    let active = crate::switch::is_active_graph(&f.base.graph);
    let simple_phi = f.phi.edges().iter().all(|e| e.2 == 1);
    if active && simple_phi && simple.is_connected() && f.order() >= 1 {
        let (omega, alpha) = (f.base.k.len(), f.order());
        if omega != clique_number(&simple) || omega > alpha {
            violations.push(Violation::SimpleConnected { detail: format!("ω = {omega}, α = {alpha}") });
        }
    }
    StructureReport { cycle_lengths, induced_paths: paths.len(), homogeneous, violations }
}

/// The pendant model of S: same clique size, every independent vertex of
/// degree 1, two independent vertices sharing their neighbor exactly when
/// `σ_uv(S) = 0`. Defined only when there are at least two independent
/// vertices, `σ = 0` is an equivalence on them with at least two classes,
/// and those classes match the clique vertices one to one.
pub fn pendant_model(s: &SplitBipartition) -> Option<SplitBipartition> {
    let f = factor_graph(s);
    let a = f.order();
    let mut class = vec![usize::MAX; a];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..a {
        match reps.iter().position(|&r| f.sigma(r, x) == 0) {
            Some(c) => class[x] = c,
            None => {
                class[x] = reps.len();
                reps.push(x);
            }
        }
    }
    for x in 0..a {
        for y in x + 1..a {
            if (f.sigma(x, y) == 0) != (class[x] == class[y]) {
                return None;
            }
        }
    }
    if reps.len() < 2 || reps.len() != s.k.len() {
        return None;
    }
    let nbrs: Vec<Vec<usize>> = class.iter().map(|&c| vec![c]).collect();
    Some(SplitBipartition::from_neighborhoods(s.k.len(), &nbrs))
}

/// `complement(invert(S))`, which has the same factor graph as S.
pub fn co_inverse(s: &SplitBipartition) -> SplitBipartition {
    complement_split(&invert(s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaWitness {
    pub n: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl DeltaWitness {
    /// Checks `1 < x < y ≤ z < √n`, divisibility, and
    /// `n/x − x = (n/y − y) + (n/z − z)`.
    pub fn new(n: u64, x: u64, y: u64, z: u64) -> Result<DeltaWitness> {
        let bad = |why: &str| Err(Error::InvalidWitness(format!("({x},{y},{z}) for {n}: {why}")));
        if !(1 < x && x < y && y <= z && z.checked_mul(z).is_some_and(|zz| zz < n)) {
            return bad("needs 1 < x < y <= z < sqrt(n)");
        }
        if !n.is_multiple_of(x) || !n.is_multiple_of(y) || !n.is_multiple_of(z) {
            return bad("not divisors");
        }
        if n / x - x != (n / y - y) + (n / z - z) {
            return bad("differences do not add up");
        }
        Ok(DeltaWitness { n, x, y, z })
    }
}

/// Three independent vertices `a, b, c` (labels `|K|`, `|K|+1`, `|K|+2`)
/// over a clique laid out in consecutive blocks: a only, a∩b only, a∩b∩c,
/// a∩c only, b∩c only, b only, c only. The triple block has size
/// `max(0, d_a − x − z)`.
pub fn build_split_from_delta(w: &DeltaWitness, d_a: u64) -> Result<SplitBipartition> {
    let DeltaWitness { n, x, y, z } = *w;
    if d_a < z {
        return Err(Error::InvalidWitness(format!("d_a = {d_a} is below z = {z}")));
    }
    let d_b = d_a + n / z - z;
    let d_c = d_a + n / x - x;
    let (e_ab, e_bc, e_ac) = (d_a - z, d_a + n / z - z - y, d_a - x);
    let t = d_a.saturating_sub(x + z);
    let blocks = [
        (d_a + t) - e_ab - e_ac,
        e_ab - t,
        t,
        e_ac - t,
        e_bc - t,
        (d_b + t) - e_ab - e_bc,
        (d_c + t) - e_ac - e_bc,
    ];
    let member = [
        [true, false, false],
        [true, true, false],
        [true, true, true],
        [true, false, true],
        [false, true, true],
        [false, true, false],
        [false, false, true],
    ];
    let mut nbrs = vec![Vec::new(); 3];
    let mut next = 0usize;
    for (size, m) in blocks.iter().zip(member) {
        for _ in 0..*size {
            for side in 0..3 {
                if m[side] {
                    nbrs[side].push(next);
                }
            }
            next += 1;
        }
    }
    Ok(SplitBipartition::from_neighborhoods(next, &nbrs))
}

/// A finite family of finite sets indexed `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetFamily {
    pub sets: Vec<BTreeSet<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyBranch {
    /// Every intersection of two or more members has `d − 1` elements.
    CommonCore,
    /// Every intersection of `A` members has `d + 1 − |A|` elements.
    Shrinking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub d: usize,
    pub alpha: usize,
    pub omega: usize,
    pub branch: FamilyBranch,
    pub witness: [usize; 3],
    /// Every subset intersection size and the union size follow the branch.
    pub consistent: bool,
}

fn intersection_size(sets: &[BTreeSet<usize>], members: impl Iterator<Item = usize>) -> usize {
    let mut acc: Option<BTreeSet<usize>> = None;
    for m in members {
        acc = Some(match acc {
            None => sets[m].clone(),
            Some(a) => a.intersection(&sets[m]).copied().collect(),
        });
    }
    acc.map_or(0, |a| a.len())
}

/// Members of size `d`, pairwise meeting in `d − 1` elements, at least
/// three of them. The branch is read off one triple and then checked on
/// every subfamily (up to 20 members).
pub fn analyze_set_family(f: &SetFamily) -> Result<FamilyReport> {
    let sets = &f.sets;
    let alpha = sets.len();
    if alpha < 3 {
        return Err(Error::SetFamily("needs at least three members".into()));
    }
    if alpha > 20 {
        return Err(Error::SetFamily("more than 20 members".into()));
    }
    let d = sets[0].len();
    if d == 0 || sets.iter().any(|s| s.len() != d) {
        return Err(Error::SetFamily("members must share a positive size".into()));
    }
    for u in 0..alpha {
        for v in u + 1..alpha {
            if sets[u].intersection(&sets[v]).count() != d - 1 {
                return Err(Error::SetFamily(format!("members {u} and {v} do not meet in d - 1")));
            }
        }
    }
    let witness = [0, 1, 2];
    let branch = if intersection_size(sets, witness.into_iter()) == d - 1 {
        FamilyBranch::CommonCore
    } else {
        FamilyBranch::Shrinking
    };
    let omega = sets.iter().flatten().collect::<BTreeSet<_>>().len();
    let mut consistent = match branch {
        FamilyBranch::CommonCore => omega == alpha + d - 1,
        FamilyBranch::Shrinking => omega == d + 1,
    };
    for mask in 1u32..(1 << alpha) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let got = intersection_size(sets, (0..alpha).filter(|&v| mask >> v & 1 == 1));
        let want = match branch {
            FamilyBranch::CommonCore => Some(d - 1),
            FamilyBranch::Shrinking => (d + 1).checked_sub(size),
        };
        consistent &= want == Some(got);
    }
    Ok(FamilyReport { d, alpha, omega, branch, witness, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{enumerate_unlabeled, is_isomorphic};
    use crate::split::{is_prime, is_split};
    use crate::switch::{degree, is_active_graph};

    /// K = 0..5; a ~ {0,3,4}, b ~ {0,1,2}, c ~ {1,2}.
    fn worked() -> SplitBipartition {
        SplitBipartition::from_neighborhoods(5, &[vec![0, 3, 4], vec![0, 1, 2], vec![1, 2]])
    }

    fn splits(max_n: usize) -> Vec<SplitBipartition> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for g in enumerate_unlabeled(n).unwrap() {
                if is_split(&g) {
                    out.push(SplitBipartition::canonical(&g).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn worked_multiplicities() {
        let s = worked();
        let (a, b, c) = (5, 6, 7);
        assert_eq!(sigma(&s, a, b).unwrap(), 4);
        assert_eq!(sigma(&s, a, c).unwrap(), 6);
        assert_eq!(sigma(&s, b, c).unwrap(), 0);
        assert_eq!(degree(&s.graph), 10);
        assert_eq!(factor_graph(&s).size(), 10);
        assert!(matches!(sigma(&s, 0, a), Err(Error::NotInIndependentSide(0))));
    }

    #[test]
    fn sigma_matches_p4_count() {
        for s in splits(7) {
            let f = factor_graph(&s);
            assert_eq!(f.size(), degree(&s.graph));
            for x in 0..f.order() {
                for y in x + 1..f.order() {
                    assert_eq!(f.sigma(x, y), sigma_brute(&s, s.i[x], s.i[y]));
                }
            }
        }
    }

    #[test]
    fn structure_is_clean() {
        for s in splits(7) {
            let r = validate_structure(&factor_graph(&s));
            assert!(r.is_clean(), "{:?}: {:?}", s.graph, r.violations);
        }
    }

    #[test]
    fn prime_iff_connected() {
        for s in splits(7) {
            if is_active_graph(&s.graph) {
                let f = factor_graph(&s);
                assert_eq!(is_prime(&s.graph), f.simple().is_connected());
            }
        }
    }

    #[test]
    fn connected_without_connected_a4() {
        // the converse of "A₄ connected ⇒ Φ connected" fails on balanced inactive graphs
        let mut found = false;
        for s in splits(7) {
            let phi_conn = factor_graph(&s).simple().is_connected();
            let a4_conn = crate::split::a4_graph(&s.graph).is_connected();
            if a4_conn {
                assert!(phi_conn);
            }
            if s.is_balanced() && !is_active_graph(&s.graph) && phi_conn && !a4_conn && s.i.len() >= 2 {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn co_inverse_shares_phi() {
        for s in splits(6) {
            assert_eq!(factor_graph(&s).phi, factor_graph(&co_inverse(&s)).phi);
        }
    }

    #[test]
    fn cycles_and_paths() {
        let c5 = Graph::cycle(5);
        assert_eq!(induced_cycles(&c5), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(induced_cycles(&Graph::complete(4)).len(), 4);
        assert_eq!(induced_cycles(&Graph::path(4)).len(), 0);
        // K4 minus an edge: two triangles, no induced 4-cycle
        let mut g = Graph::complete(4);
        g.remove_edge(0, 2);
        assert_eq!(induced_cycles(&g).len(), 2);
        assert_eq!(induced_paths(&Graph::path(4)).len(), 6);
        assert_eq!(induced_paths(&Graph::complete(3)).len(), 3);
    }

    #[test]
    fn c4_names() {
        let mut names = BTreeSet::new();
        let mut orbits = BTreeSet::new();
        for code in 0..81u32 {
            let mut d = Digraph::new(4);
            let mut rel = [0u32; 4];
            for (i, r) in rel.iter_mut().enumerate() {
                *r = code / 3u32.pow(i as u32) % 3;
                let (u, v) = (i, (i + 1) % 4);
                if *r != 1 {
                    d.add_arc(u, v);
                }
                if *r != 0 {
                    d.add_arc(v, u);
                }
            }
            // orbit of the edge pattern under rotations and reflections
            let mut best = Vec::new();
            for s in 0..4 {
                let rot: Vec<u32> = (0..4).map(|k| rel[(s + k) % 4]).collect();
                let refl: Vec<u32> = (0..4).map(|k| [1, 0, 2][rel[(s + 4 - k) % 4] as usize]).collect();
                for cand in [rot, refl] {
                    if best.is_empty() || cand < best {
                        best = cand;
                    }
                }
            }
            orbits.insert(best);
            if let Some(n) = c4_level_name(&d, [0, 1, 2, 3]) {
                names.insert(n);
            }
        }
        assert_eq!(orbits.len(), 15);
        assert_eq!(names.len(), 10);
        let mut d = Digraph::new(4);
        for (u, v) in [(0, 1), (0, 3), (1, 2), (3, 2)] {
            d.add_arc(u, v);
        }
        assert_eq!(c4_level_name(&d, [0, 1, 2, 3]).unwrap(), "C4(0121)");
        let mut d = Digraph::new(4);
        for (u, v) in [(0, 1), (0, 3), (2, 1), (2, 3)] {
            d.add_arc(u, v);
        }
        assert_eq!(c4_level_name(&d, [0, 1, 2, 3]).unwrap(), "C4(0101)");
    }

    #[test]
    fn triangle_types() {
        let mk = |arcs: &[(usize, usize)]| Digraph::from_arcs(3, arcs).unwrap();
        let t = [0, 1, 2];
        assert_eq!(triangle_type(&mk(&[(0, 1), (1, 2), (0, 2)]), t), Some(TriangleType::Transitive));
        assert_eq!(triangle_type(&mk(&[(0, 1), (2, 1), (0, 2), (2, 0)]), t), Some(TriangleType::PairBelow));
        assert_eq!(triangle_type(&mk(&[(1, 0), (1, 2), (0, 2), (2, 0)]), t), Some(TriangleType::PairAbove));
        assert_eq!(triangle_type(&mk(&[(0, 1), (1, 2), (2, 0)]), t), None);
    }

    #[test]
    fn delta_construction() {
        let w = DeltaWitness::new(24, 2, 3, 3).unwrap();
        let s = build_split_from_delta(&w, 3).unwrap();
        assert_eq!(s.k.len(), 18);
        let f = factor_graph(&s);
        assert_eq!(f.degrees, vec![3, 8, 13]);
        assert_eq!((f.eta[0][1], f.eta[1][2], f.eta[0][2]), (0, 5, 1));
        assert_eq!(f.phi.edges(), vec![(0, 1, 24), (0, 2, 24), (1, 2, 24)]);
        assert!(s.is_balanced());
        assert!(is_active_graph(&s.graph));
        let flow = flow_configuration(&f);
        assert_eq!(flow.triangles, vec![([0, 1, 2], Some(TriangleType::Transitive))]);
        // the worked layout: a ~ 0..3, b ~ 3..11, c ~ 2..8 and 11..18
        assert_eq!(s.k_neighbors(18), vec![0, 1, 2]);
        assert_eq!(s.k_neighbors(19), (3..11).collect::<Vec<_>>());
        let big = build_split_from_delta(&w, 6).unwrap();
        assert!((0..big.graph.order()).any(|v| big.graph.is_universal(v)));
        assert!(DeltaWitness::new(24, 2, 3, 4).is_err());
        assert!(build_split_from_delta(&w, 2).is_err());
    }

    #[test]
    fn pendant_models() {
        for s in splits(7) {
            if s.k.len() > s.i.len() {
                continue;
            }
            let f = factor_graph(&s);
            let lhs = is_active_graph(&s.graph)
                && f.phi.edges().iter().all(|e| e.2 == 1)
                && f.simple().is_connected();
            let rhs = pendant_model(&s).is_some_and(|r| {
                is_isomorphic(&s.graph, &r.graph).unwrap()
                    || is_isomorphic(&s.graph, &co_inverse(&r).graph).unwrap()
            });
            assert_eq!(lhs, rhs, "{:?}", s.graph);
        }
    }

    #[test]
    fn set_family_branches() {
        let sunflower = SetFamily { sets: (0..4).map(|v| [10, 11, v].into_iter().collect()).collect() };
        let r = analyze_set_family(&sunflower).unwrap();
        assert_eq!((r.branch, r.omega, r.consistent), (FamilyBranch::CommonCore, 6, true));
        let punctured = SetFamily {
            sets: (0..4).map(|v| (0..5).filter(|&e| e != v).collect()).collect(),
        };
        let r = analyze_set_family(&punctured).unwrap();
        assert_eq!((r.branch, r.omega, r.consistent), (FamilyBranch::Shrinking, 5, true));
        let bad = SetFamily { sets: vec![[0, 1].into(), [2, 3].into(), [0, 2].into()] };
        assert!(analyze_set_family(&bad).is_err());
    }

    #[test]
    fn linear_reports() {
        // P4 as a split graph: one Φ-edge with σ = 1 and equal degrees
        let p4 = SplitBipartition::canonical(&Graph::path(4)).unwrap();
        let r = linearity_report(&factor_graph(&p4));
        assert_eq!(r.n_simple, Some(1));
        assert_eq!(r.epsilon, None);
        // σ = 2 (prime): degrees 1 and 2 with disjoint neighborhoods
        let s = SplitBipartition::from_neighborhoods(3, &[vec![0], vec![1, 2]]);
        let r = linearity_report(&factor_graph(&s));
        assert_eq!((r.n_simple, r.epsilon), (Some(2), Some(1)));
        assert_eq!(r.class_path_degree_ok, Some(true));
        assert_eq!(r.distance_ok, Some(true));
    }
}
