//! Exhaustive classification of active graphs of switch degree at most 3
//! and of split primes of degree 4, plus the regularity audit of their
//! realization spaces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, enumerate_unlabeled, extend_unlabeled, is_isomorphic, CanonicalForm};
use crate::catalog::{self, identify};
use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};
use crate::multi::Multigraph;
use crate::space::realization_space;
use crate::split::{decompose, is_prime, SplitBipartition};
use crate::switch::{active_switches, active_vertices, apply, degree};

/// All unlabeled active graphs of switch degree `k`.
///
/// Grows graphs one vertex at a time. Every active graph of degree `k` is
/// covered by at most `k` induced quads, so adding it quad by quad keeps at
/// most three inactive vertices in every prefix, and degree never drops
/// when vertices are added. Orders run up to `4k`.
pub fn classify_active(k: u64) -> Result<Vec<CanonicalForm>> {
    if !(1..=3).contains(&k) {
        return Err(Error::UnsupportedDegree(k as usize));
    }
    let mut level = vec![Graph::new(0)];
    let mut found = Vec::new();
    for _ in 0..4 * k {
        level = extend_unlabeled(&level, |h| {
            degree(h) <= k && h.order() - active_vertices(h).len() <= 3
        });
        for g in &level {
            if degree(g) == k && active_vertices(g).len() == g.order() {
                found.push(canonical_form(g)?);
            }
        }
    }
    found.sort_unstable();
    Ok(found)
}

/// Connected loopless multigraphs with total multiplicity `size`, one per
/// isomorphism class.
pub fn connected_multigraphs(size: u64) -> Vec<Multigraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 2..=size as usize + 1 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut mult = vec![0u64; pairs.len()];
        distribute(&mut mult, 0, size, &mut |m| {
            let mut g = Multigraph::new(n);
            for (p, &k) in pairs.iter().zip(m) {
                if k > 0 {
                    g.add(p.0, p.1, k);
                }
            }
            if g.simple().is_connected() && seen.insert(g.canonical_key().expect("small order")) {
                out.push(g);
            }
        });
    }
    out
}

fn distribute(m: &mut Vec<u64>, at: usize, left: u64, f: &mut impl FnMut(&[u64])) {
    if at == m.len() {
        if left == 0 {
            f(m);
        }
        return;
    }
    for k in 0..=left {
        m[at] = k;
        distribute(m, at + 1, left - k, f);
    }
    m[at] = 0;
}

fn mask_sigma(a: u32, b: u32) -> u64 {
    let eta = (a & b).count_ones();
    ((a.count_ones() - eta) * (b.count_ones() - eta)) as u64
}

fn split_from_masks(omega: usize, masks: &[u32]) -> SplitBipartition {
    let nbrs: Vec<Vec<usize>> =
        masks.iter().map(|&m| (0..omega).filter(|&x| m >> x & 1 == 1).collect()).collect();
    SplitBipartition::from_neighborhoods(omega, &nbrs)
}

/// Every clique vertex must see some independent vertex and miss another,
/// or it lies in no induced P₄.
fn covers(omega: usize, masks: &[u32]) -> bool {
    let full = (1u32 << omega) - 1;
    masks.iter().fold(0, |acc, m| acc | m) == full && masks.iter().fold(full, |acc, m| acc & m) == 0
}

/// Degree-`deg` split primes with `|K|, |I| ≤ bound`, by listing every
/// multiset of neighborhoods.
pub fn split_primes_exhaustive(deg: u64, bound: usize) -> Vec<CanonicalForm> {
    let jobs: Vec<(usize, usize)> = (1..=bound).flat_map(|w| (1..=bound).map(move |a| (w, a))).collect();
    let mut out: Vec<CanonicalForm> = jobs
        .par_iter()
        .flat_map_iter(|&(omega, alpha)| {
            let subsets: Vec<u32> = (1..(1u32 << omega) - 1).collect();
            let mut local = BTreeSet::new();
            let mut pick = vec![0usize; alpha];
            multisets(&mut pick, 0, 0, subsets.len(), &mut |idx| {
                let masks: Vec<u32> = idx.iter().map(|&i| subsets[i]).collect();
                let total: u64 = (0..alpha)
                    .flat_map(|x| (x + 1..alpha).map(move |y| (x, y)))
                    .map(|(x, y)| mask_sigma(masks[x], masks[y]))
                    .sum();
                if total != deg || !covers(omega, &masks) {
                    return;
                }
                let s = split_from_masks(omega, &masks);
                if is_prime(&s.graph) {
                    local.insert(canonical_form(&s.graph).expect("small order"));
                }
            });
            local.into_iter()
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn multisets(pick: &mut Vec<usize>, at: usize, from: usize, n: usize, f: &mut impl FnMut(&[usize])) {
    if at == pick.len() {
        f(pick);
        return;
    }
    for i in from..n {
        pick[at] = i;
        multisets(pick, at + 1, i, n, f);
    }
}

/// Split graphs whose factor multigraph is exactly `phi` (vertex `x` of
/// `phi` is independent vertex `x`), with clique size `omega`. The first
/// neighborhood is fixed to the lowest bits, which loses nothing up to
/// relabeling the clique.
pub fn solve_factor_constraints(phi: &Multigraph, omega: usize) -> Vec<SplitBipartition> {
    let alpha = phi.order();
    let mut out = Vec::new();
    if alpha == 0 || omega == 0 || omega > 16 {
        return out;
    }
    let mut masks = Vec::with_capacity(alpha);
    for d in 1..omega {
        masks.push((1u32 << d) - 1);
        extend_masks(phi, omega, &mut masks, &mut out);
        masks.pop();
    }
    out
}

fn extend_masks(phi: &Multigraph, omega: usize, masks: &mut Vec<u32>, out: &mut Vec<SplitBipartition>) {
    let x = masks.len();
    if x == phi.order() {
        if covers(omega, masks) {
            out.push(split_from_masks(omega, masks));
        }
        return;
    }
    for m in 1..(1u32 << omega) - 1 {
        if (0..x).all(|y| mask_sigma(masks[y], m) == phi.sigma(y, x)) {
            masks.push(m);
            extend_masks(phi, omega, masks, out);
            masks.pop();
        }
    }
}

/// Degree-`deg` split primes found by solving for each connected
/// multigraph of size `deg` as the factor graph, with `|K| ≤ 2·deg`
/// (each induced P₄ holds two clique vertices).
pub fn split_primes_by_constraints(deg: u64) -> Vec<CanonicalForm> {
    let candidates = connected_multigraphs(deg);
    let jobs: Vec<(usize, usize)> =
        (0..candidates.len()).flat_map(|c| (1..=2 * deg as usize).map(move |w| (c, w))).collect();
    let mut out: Vec<CanonicalForm> = jobs
        .par_iter()
        .flat_map_iter(|&(c, omega)| {
            solve_factor_constraints(&candidates[c], omega)
                .into_iter()
                .filter(|s| is_prime(&s.graph))
                .map(|s| canonical_form(&s.graph).expect("small order"))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct SplitPrimeReport {
    pub by_constraints: Vec<CanonicalForm>,
    pub exhaustive: Vec<CanonicalForm>,
    pub agree: bool,
}

/// Both derivations of the degree-4 split primes.
pub fn classify_split_primes_deg4() -> SplitPrimeReport {
    let by_constraints = split_primes_by_constraints(4);
    let exhaustive = split_primes_exhaustive(4, 5);
    let agree = by_constraints == exhaustive;
    SplitPrimeReport { by_constraints, exhaustive, agree }
}

#[derive(Clone, Debug, Serialize)]
pub struct U6Exception {
    pub profile: BTreeMap<usize, usize>,
    /// Catalog name of a member with space degree 4.
    pub degree4_member: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeJump {
    pub before: u64,
    pub after: u64,
    pub image: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityAudit {
    pub k: u64,
    pub max_order: usize,
    pub graphs: usize,
    pub sequences: usize,
    /// Degree sequences of graphs without U₆-type factors whose space is
    /// not `k`-regular. Expected empty.
    pub irregular_plain: Vec<String>,
    /// Graphs with a U₆ or co-U₆ factor whose space is not `k`-regular.
    pub irregular_with_u6: usize,
    pub u6: U6Exception,
    /// A switch raising the degree of P₅.
    pub p5_jump: Option<DegreeJump>,
}

impl RegularityAudit {
    pub fn passed(&self) -> bool {
        self.irregular_plain.is_empty()
    }
}

fn has_u6_factor(g: &Graph) -> bool {
    let u6 = &catalog::get("U6").unwrap().graph;
    let co = &catalog::get("co-U6").unwrap().graph;
    decompose(g).factors.iter().any(|f| {
        f.graph.order() == 6
            && (is_isomorphic(&f.graph, u6).unwrap() || is_isomorphic(&f.graph, co).unwrap())
    })
}

/// Realization spaces of every degree-`k` graph with at most `max_order`
/// vertices.
pub fn regularity_audit(k: u64, max_order: usize) -> Result<RegularityAudit> {
    if k > 3 {
        return Err(Error::UnsupportedDegree(k as usize));
    }
    let mut graphs = Vec::new();
    for n in 0..=max_order {
        graphs.extend(enumerate_unlabeled(n)?.into_iter().filter(|g| degree(g) == k));
    }
    let mut by_seq: HashMap<Vec<usize>, Vec<&Graph>> = HashMap::new();
    for g in &graphs {
        by_seq.entry(g.degree_sequence().sorted()).or_default().push(g);
    }
    let seqs: Vec<(&Vec<usize>, &Vec<&Graph>)> = by_seq.iter().collect();
    let results: Vec<Result<(String, bool, Vec<bool>)>> = seqs
        .par_iter()
        .map(|(s, gs)| {
            let seq = DegreeSequence((*s).clone());
            let regular = realization_space(&seq)?.regular_degree() == Some(k as usize);
            Ok((seq.compact(), regular, gs.iter().map(|g| has_u6_factor(g)).collect()))
        })
        .collect();
    let mut irregular_plain = Vec::new();
    let mut irregular_with_u6 = 0;
    for r in results {
        let (name, regular, u6) = r?;
        if !regular {
            if u6.iter().any(|&x| !x) {
                irregular_plain.push(name);
            }
            irregular_with_u6 += u6.iter().filter(|&&x| x).count();
        }
    }
    irregular_plain.sort();
    Ok(RegularityAudit {
        k,
        max_order,
        graphs: graphs.len(),
        sequences: by_seq.len(),
        irregular_plain,
        irregular_with_u6,
        u6: u6_exception()?,
        p5_jump: p5_jump(),
    })
}

pub fn u6_exception() -> Result<U6Exception> {
    let sp = realization_space(&catalog::get("U6").unwrap().graph.degree_sequence())?;
    let degree4_member = sp
        .members
        .iter()
        .zip(sp.degrees())
        .find(|&(_, d)| d == 4)
        .map(|(g, _)| identify(g).map_or_else(|| "unnamed".to_string(), str::to_string));
    Ok(U6Exception { profile: sp.degree_profile(), degree4_member })
}

/// First active switch on P₅ whose image has a different degree.
pub fn p5_jump() -> Option<DegreeJump> {
    let p5 = Graph::path(5);
    let before = degree(&p5);
    active_switches(&p5).iter().find_map(|t| {
        let h = apply(&p5, t).ok()?;
        let after = degree(&h);
        let k3_k2 = Graph::complete(3).disjoint_union(&Graph::complete(2));
        (after != before).then(|| DegreeJump {
            before,
            after,
            image: is_isomorphic(&h, &k3_k2).unwrap().then(|| "K3+K2".to_string()),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{forms, DEGREE_1, DEGREE_2, DEGREE_3_PRIME, DEGREE_3_REDUCIBLE, DEGREE_4_SPLIT_PRIME};

    #[test]
    fn multigraph_census() {
        assert_eq!(connected_multigraphs(1).len() + connected_multigraphs(2).len(), 3);
        assert_eq!(connected_multigraphs(3).len(), 5);
        assert_eq!(connected_multigraphs(4).len(), 12);
    }

    #[test]
    fn low_degrees() {
        assert_eq!(classify_active(1).unwrap(), forms(DEGREE_1));
        assert_eq!(classify_active(2).unwrap(), forms(DEGREE_2));
        assert!(classify_active(0).is_err());
        assert!(classify_active(4).is_err());
    }

    #[test]
    fn degree_three() {
        let names: Vec<&str> = DEGREE_3_REDUCIBLE.iter().chain(DEGREE_3_PRIME).copied().collect();
        assert_eq!(classify_active(3).unwrap(), forms(&names));
    }

    #[test]
    fn audits() {
        for k in 1..=3 {
            let a = regularity_audit(k, 8).unwrap();
            assert!(a.passed(), "k = {k}: {:?}", a.irregular_plain);
            assert_eq!(a.irregular_with_u6 > 0, k == 3);
        }
    }

    #[test]
    fn constraint_solver_recovers_d5() {
        let phi = Multigraph::from_edges(2, &[(0, 1, 2)]).unwrap();
        let sols = solve_factor_constraints(&phi, 3);
        assert!(!sols.is_empty());
        let d5 = &catalog::get("D5").unwrap().graph;
        assert!(sols.iter().all(|s| is_isomorphic(&s.graph, d5).unwrap()));
    }

    #[test]
    fn degree4_split_primes() {
        let r = classify_split_primes_deg4();
        assert!(r.agree);
        assert_eq!(r.exhaustive, forms(DEGREE_4_SPLIT_PRIME));
    }

    #[test]
    fn exceptions() {
        let u6 = u6_exception().unwrap();
        assert_eq!(u6.degree4_member.as_deref(), Some("co-R211"));
        let j = p5_jump().unwrap();
        assert_eq!((j.before, j.after), (4, 6));
        assert_eq!(j.image.as_deref(), Some("K3+K2"));
    }
}
