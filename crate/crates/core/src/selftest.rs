//! The twelve end-to-end acceptance checks, shared by the `acceptance` test
//! target and the `selftest` subcommand. Every tolerance is exact except
//! the wall-clock budgets, which are pinned below.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, enumerate_unlabeled, is_isomorphic, CanonicalForm};
use crate::catalog::{forms, DEGREE_1, DEGREE_2, DEGREE_3_PRIME, DEGREE_3_REDUCIBLE, DEGREE_4_SPLIT_PRIME};
use crate::classify::{classify_active, classify_split_primes_deg4, regularity_audit};
use crate::delta::{has_delta, has_delta_raw, is_delta_primitive, non_delta_predicates};
use crate::factor::{
    analyze_set_family, build_split_from_delta, factor_graph, sigma_brute, validate_structure, DeltaWitness,
    FamilyBranch, SetFamily,
};
use crate::graph::{DegreeSequence, Graph};
use crate::space::{graphical_sequences, realization_space};
use crate::split::{a4_graph, compose, decompose, is_prime, is_split, SplitBipartition};
use crate::switch::{active_switches, degree, degree_brute, degree_formula, is_active_graph};
use crate::twins::{quotient, quotient_compose_check, quotient_index, threshold_family};

pub const FORMULA_BUDGET: Duration = Duration::from_secs(120);
pub const DELTA_BUDGET: Duration = Duration::from_secs(30);
pub const CLASSIFY_BUDGET: Duration = Duration::from_secs(600);
const SEED: u64 = 0x5eed_2025;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Outcome = (bool, String);

pub const CHECKS: [(u8, &str, fn() -> Outcome); 12] = [
    (1, "formula equals brute force and switch count", formula_oracle),
    (2, "closed forms for paths and cycles", closed_forms),
    (3, "complement duality", complement_duality),
    (4, "realization spaces", realization_spaces),
    (5, "composition law", composition_law),
    (6, "factor graph validators", factor_validators),
    (7, "divisor property ground truth", delta_ground_truth),
    (8, "split graph from a divisor witness", delta_construction),
    (9, "classification of low degrees", classification),
    (10, "regularity audit", regularity),
    (11, "quotient suite", quotient_suite),
    (12, "intersecting set families", set_families),
];

pub fn run(id: u8) -> Option<Check> {
    let &(id, name, f) = CHECKS.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = f();
    Some(Check { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() })
}

pub fn run_all() -> Vec<Check> {
    CHECKS.iter().filter_map(|c| run(c.0)).collect()
}

fn all_graphs(max: usize) -> Vec<Graph> {
    (0..=max).flat_map(|n| enumerate_unlabeled(n).expect("within limit")).collect()
}

fn formula_oracle() -> Outcome {
    let start = Instant::now();
    let mut graphs = all_graphs(7);
    let exhaustive = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..500 {
        graphs.push(Graph::random(8 + i % 2, rng.gen_range(0.2..0.8), &mut rng));
    }
    let bad = graphs
        .par_iter()
        .filter(|g| {
            let f = degree_formula(g);
            f != degree_brute(g) || f != active_switches(g).len() as u64
        })
        .count();
    let t = start.elapsed();
    (
        bad == 0 && exhaustive >= 1044 && t <= FORMULA_BUDGET,
        format!("{exhaustive} exhaustive + 500 random graphs, {bad} mismatches, {:.1}s", t.as_secs_f64()),
    )
}

fn closed_forms() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=12u64 {
        let p = Graph::path(n as usize);
        let c = Graph::cycle(n as usize);
        let (dp, dc) = (degree_brute(&p), degree_brute(&c));
        if dp != (n - 3).pow(2) || degree(&p) != dp {
            bad.push(format!("P{n}: {dp}"));
        }
        // n(n−4) only holds from n = 5; C₃ and C₄ have degrees 0 and 2
        let want_c = match n {
            3 => 0,
            4 => 2,
            _ => n * (n - 4),
        };
        if dc != want_c || degree(&c) != dc {
            bad.push(format!("C{n}: {dc}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "n = 3..12 exact".into() } else { bad.join(", ") })
}

fn complement_duality() -> Outcome {
    let graphs = all_graphs(7);
    let deg_bad = graphs.par_iter().filter(|g| degree(g) != degree(&g.complement())).count();
    let seqs: Vec<DegreeSequence> = (1..=6).flat_map(graphical_sequences).collect();
    let space_bad = seqs
        .par_iter()
        .filter(|s| {
            let a = realization_space(s).expect("small space");
            let b = realization_space(&s.dual()).expect("small space");
            !a.is_isomorphism(&b, |g| g.complement())
        })
        .count();
    (
        deg_bad == 0 && space_bad == 0,
        format!(
            "{} graphs ({deg_bad} bad), {} sequences ({space_bad} bad)",
            graphs.len(),
            seqs.len()
        ),
    )
}

fn realization_spaces() -> Outcome {
    let seven = realization_space(&DegreeSequence::parse("2^3 1^2").unwrap()).map(|s| s.len()).unwrap_or(0);
    let seqs: Vec<DegreeSequence> = (1..=7).flat_map(graphical_sequences).collect();
    let failures: Vec<String> = seqs
        .par_iter()
        .filter_map(|s| {
            let sp = realization_space(s).ok()?;
            let mut why = Vec::new();
            if !sp.is_connected() {
                why.push("space");
            }
            let forests = sp.restrict(|g| g.is_forest());
            if !forests.is_empty() && !forests.is_connected() {
                why.push("forests");
            }
            let uni = sp.restrict(|g| g.is_unicyclic());
            if !uni.is_empty() && !uni.is_connected() {
                why.push("unicyclic");
            }
            let n = s.len();
            if n >= 2 && s.sum() == 2 * (n - 1) && s.0.iter().all(|&d| d >= 1)
                && forests.regular_degree() != Some(s.dpe())
            {
                why.push("tree regularity");
            }
            (!why.is_empty()).then(|| format!("{}: {}", s.compact(), why.join("+")))
        })
        .collect();
    let uni = realization_space(&DegreeSequence::parse("3 2^4 1").unwrap())
        .map(|sp| sp.restrict(|g| g.is_unicyclic()).degree_profile())
        .unwrap_or_default();
    let uni_ok = uni.contains_key(&11) && uni.contains_key(&10);
    (
        seven == 7 && failures.is_empty() && uni_ok,
        format!(
            "|G(2^3 1^2)| = {seven}; {} sequences, failures {:?}; unicyclic degrees {:?}",
            seqs.len(),
            failures,
            uni.keys().collect::<Vec<_>>()
        ),
    )
}

/// Random balanced split graph with at most three vertices per side, by
/// rejection.
fn random_balanced_split<R: Rng>(rng: &mut R) -> SplitBipartition {
    loop {
        let k = rng.gen_range(1..=3);
        let i = rng.gen_range(1..=3);
        let nbrs: Vec<Vec<usize>> = (0..i).map(|_| (0..k).filter(|_| rng.gen_bool(0.5)).collect()).collect();
        let s = SplitBipartition::from_neighborhoods(k, &nbrs);
        if s.is_balanced() {
            return s;
        }
    }
}

fn a4_factor_forms(g: &Graph) -> Vec<CanonicalForm> {
    let mut v: Vec<CanonicalForm> = a4_graph(g)
        .components()
        .iter()
        .map(|c| canonical_form(&g.induced(c).unwrap()).unwrap())
        .collect();
    v.sort_unstable();
    v
}

fn composition_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut bad = Vec::new();
    for trial in 0..200 {
        let s = random_balanced_split(&mut rng);
        let g = Graph::random(rng.gen_range(1..=6), 0.5, &mut rng);
        let h = compose(&s, &g);
        if degree(&h) != degree(&s.graph) + degree(&g) {
            bad.push(format!("#{trial} degree"));
        }
        if !quotient_compose_check(&s, &g).unwrap_or(false) {
            bad.push(format!("#{trial} quotient"));
        }
        let mut parts = a4_factor_forms(&s.graph);
        parts.extend(a4_factor_forms(&g));
        parts.sort_unstable();
        if a4_factor_forms(&h) != parts || !decompose(&h).validated {
            bad.push(format!("#{trial} factors"));
        }
    }
    (bad.is_empty(), format!("200 pairs with balanced S, failures {bad:?}"))
}

fn factor_validators() -> Outcome {
    let splits: Vec<SplitBipartition> = all_graphs(8)
        .into_iter()
        .filter(|g| g.order() > 0 && is_split(g))
        .map(|g| SplitBipartition::canonical(&g).unwrap())
        .collect();
    let failures: Vec<String> = splits
        .par_iter()
        .filter_map(|s| {
            let f = factor_graph(s);
            let mut why = Vec::new();
            let a = f.order();
            let sigma_ok = (0..a).all(|x| (x + 1..a).all(|y| f.sigma(x, y) == sigma_brute(s, s.i[x], s.i[y])));
            if !sigma_ok {
                why.push("sigma".to_string());
            }
            let r = validate_structure(&f);
            if !r.is_clean() {
                why.push(format!("{:?}", r.violations));
            }
            if is_active_graph(&s.graph) && is_prime(&s.graph) != f.simple().is_connected() {
                why.push("prime vs connected".into());
            }
            (!why.is_empty()).then(|| format!("{:?}: {}", s.graph, why.join("; ")))
        })
        .collect();
    (
        failures.is_empty(),
        format!("{} split graphs, {} with violations {:?}", splits.len(), failures.len(), failures.iter().take(3).collect::<Vec<_>>()),
    )
}

fn delta_ground_truth() -> Outcome {
    let start = Instant::now();
    let mut why = Vec::new();
    let members: Vec<u64> = (1..200).filter(|&n| has_delta(n)).collect();
    let raw: Vec<u64> = (1..200).filter(|&n| has_delta_raw(n)).collect();
    if members != raw {
        why.push("witness and raw tests disagree below 200".to_string());
    }
    if members.get(..2) != Some(&[24, 40][..]) {
        why.push(format!("first members {:?}", members.get(..2)));
    }
    let first_odd = (1..).find(|&n| n % 2 == 1 && has_delta(n));
    let first_square = (1u64..).map(|r| r * r).find(|&n| has_delta(n));
    if first_odd != Some(105) || first_square != Some(900) {
        why.push(format!("first odd {first_odd:?}, first square {first_square:?}"));
    }
    if (25..=39).any(has_delta) {
        why.push("member in [25, 39]".into());
    }
    let prim: Vec<u64> = (1..400).filter(|&n| is_delta_primitive(n)).collect();
    if ![24, 40, 105, 385].iter().all(|n| prim.contains(n)) || prim.contains(&96) {
        why.push(format!("primitives below 400: {prim:?}"));
    }
    let tag_bad: Vec<u64> =
        (1..=5000).filter(|&n| !non_delta_predicates(n).is_empty() && has_delta(n)).collect();
    if !tag_bad.is_empty() {
        why.push(format!("tagged members {tag_bad:?}"));
    }
    let t = start.elapsed();
    if t > DELTA_BUDGET {
        why.push("over time budget".into());
    }
    (
        why.is_empty(),
        if why.is_empty() {
            format!("{} members below 200, {:.1}s", members.len(), t.as_secs_f64())
        } else {
            why.join("; ")
        },
    )
}

fn delta_construction() -> Outcome {
    let s = DeltaWitness::new(24, 2, 3, 3).and_then(|w| build_split_from_delta(&w, 3));
    let Ok(s) = s else { return (false, "construction rejected".into()) };
    let f = factor_graph(&s);
    let eta = (f.eta[0][1], f.eta[1][2], f.eta[0][2]);
    let sig = (f.sigma(0, 1), f.sigma(1, 2), f.sigma(0, 2));
    let ok = s.k.len() == 18 && f.degrees == [3, 8, 13] && eta == (0, 5, 1) && sig == (24, 24, 24);
    (ok, format!("|K| = {}, d = {:?}, eta = {eta:?}, sigma = {sig:?}", s.k.len(), f.degrees))
}

fn classification() -> Outcome {
    let start = Instant::now();
    let mut why = Vec::new();
    let three: Vec<&str> = DEGREE_3_REDUCIBLE.iter().chain(DEGREE_3_PRIME).copied().collect();
    let mut sizes = Vec::new();
    for (k, names) in [(1, DEGREE_1), (2, DEGREE_2), (3, &three[..])] {
        let got = classify_active(k).unwrap_or_default();
        sizes.push(got.len());
        if got != forms(names) {
            why.push(format!("degree {k}: {} graphs", got.len()));
        }
    }
    let r = classify_split_primes_deg4();
    if !r.agree {
        why.push(format!("pipelines disagree: {} vs {}", r.by_constraints.len(), r.exhaustive.len()));
    }
    if r.exhaustive != forms(DEGREE_4_SPLIT_PRIME) {
        why.push(format!("degree-4 split primes: {}", r.exhaustive.len()));
    }
    let t = start.elapsed();
    if t > CLASSIFY_BUDGET {
        why.push("over time budget".into());
    }
    (
        why.is_empty(),
        format!(
            "active counts {sizes:?}, degree-4 split primes {}, {:.1}s {}",
            r.exhaustive.len(),
            t.as_secs_f64(),
            why.join("; ")
        ),
    )
}

fn regularity() -> Outcome {
    let mut why = Vec::new();
    let mut u6 = None;
    let mut jump = None;
    for k in 1..=3 {
        match regularity_audit(k, 8) {
            Ok(a) => {
                if !a.passed() {
                    why.push(format!("degree {k}: irregular {:?}", a.irregular_plain));
                }
                if k <= 2 && a.irregular_with_u6 > 0 {
                    why.push(format!("degree {k} has U6-type irregularity"));
                }
                u6 = Some(a.u6);
                jump = a.p5_jump;
            }
            Err(e) => why.push(e.to_string()),
        }
    }
    let u6_ok = u6.as_ref().is_some_and(|u| u.degree4_member.as_deref() == Some("co-R211"));
    let jump_ok = jump.as_ref().is_some_and(|j| (j.before, j.after) == (4, 6));
    (
        why.is_empty() && u6_ok && jump_ok,
        format!(
            "U6 space profile {:?}, degree-4 member {:?}, P5 jump {:?} {}",
            u6.as_ref().map(|u| &u.profile),
            u6.as_ref().and_then(|u| u.degree4_member.clone()),
            jump.map(|j| (j.before, j.after)),
            why.join("; ")
        ),
    )
}

fn quotient_suite() -> Outcome {
    let mut why = Vec::new();
    for n in 1..=8 {
        let i = quotient_index(&threshold_family(n));
        if i != n - 1 {
            why.push(format!("threshold family n = {n}: {i}"));
        }
    }
    let (c4, k3) = (quotient_index(&Graph::cycle(4)), quotient_index(&Graph::complete(3)));
    if (c4, k3) != (2, 1) {
        why.push(format!("i(C4) = {c4}, i(K3) = {k3}"));
    }
    let stars: BTreeMap<usize, usize> = (4..=8).map(|n| (n, quotient_index(&Graph::star(n)))).collect();
    if stars.values().any(|&i| i != 3) {
        why.push(format!("star indices by order {stars:?}, expected 3"));
    }
    let comm_bad = all_graphs(6)
        .iter()
        .filter(|g| {
            !is_isomorphic(&quotient(&g.complement()).graph, &quotient(g).graph.complement()).unwrap()
        })
        .count();
    if comm_bad > 0 {
        why.push(format!("{comm_bad} graphs where quotient and complement do not commute"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let mut dist_bad = 0;
    let mut pairs = 0;
    for _ in 0..300 {
        let g = Graph::random(rng.gen_range(4..=12), rng.gen_range(0.1..0.5), &mut rng);
        let q = quotient(&g);
        for u in 0..g.order() {
            let du = g.distances_from(u);
            let dq = q.graph.distances_from(q.class_of[u]);
            for v in 0..g.order() {
                if let Some(d) = du[v].filter(|&d| d >= 3) {
                    pairs += 1;
                    if dq[q.class_of[v]] != Some(d) {
                        dist_bad += 1;
                    }
                }
            }
        }
    }
    if dist_bad > 0 {
        why.push(format!("{dist_bad} of {pairs} far pairs change distance"));
    }
    (
        why.is_empty(),
        if why.is_empty() { format!("all exact, {pairs} far pairs checked") } else { why.join("; ") },
    )
}

fn random_family<R: Rng>(rng: &mut R) -> (SetFamily, FamilyBranch) {
    let shrinking = rng.gen_bool(0.5);
    let d = rng.gen_range(2..=6);
    let (sets, branch): (Vec<Vec<usize>>, _) = if shrinking {
        let alpha = rng.gen_range(3..=d + 1);
        let mut drop: Vec<usize> = (0..=d).collect();
        drop.shuffle(rng);
        let sets = drop[..alpha].iter().map(|&x| (0..=d).filter(|&y| y != x).collect()).collect();
        (sets, FamilyBranch::Shrinking)
    } else {
        let alpha = rng.gen_range(3..=8);
        let sets = (0..alpha).map(|p| (0..d - 1).chain([d - 1 + p]).collect()).collect();
        (sets, FamilyBranch::CommonCore)
    };
    let mut relabel: Vec<usize> = (0..40).collect();
    relabel.shuffle(rng);
    let sets = sets.into_iter().map(|s: Vec<usize>| s.into_iter().map(|x| relabel[x]).collect()).collect();
    (SetFamily { sets }, branch)
}

fn set_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 12);
    let mut bad = Vec::new();
    let mut counts = [0usize; 2];
    for trial in 0..100 {
        let (f, expected) = random_family(&mut rng);
        let union: std::collections::BTreeSet<usize> = f.sets.iter().flatten().copied().collect();
        let all_meet = f.sets.iter().skip(1).fold(f.sets[0].clone(), |acc, s| acc.intersection(s).copied().collect());
        match analyze_set_family(&f) {
            Ok(r) => {
                counts[(r.branch == FamilyBranch::Shrinking) as usize] += 1;
                let omega_ok = match r.branch {
                    FamilyBranch::CommonCore => r.omega == r.alpha + r.d - 1 && all_meet.len() == r.d - 1,
                    FamilyBranch::Shrinking => r.omega == r.d + 1 && all_meet.len() == r.d + 1 - r.alpha,
                };
                if r.branch != expected || r.omega != union.len() || !omega_ok || !r.consistent {
                    bad.push(trial);
                }
            }
            Err(_) => bad.push(trial),
        }
    }
    (bad.is_empty(), format!("common core {}, shrinking {}, failures {bad:?}", counts[0], counts[1]))
}
