use proptest::prelude::*;

use switchlab::canon::{canonical_form, is_isomorphic};
use switchlab::delta::{certificate, has_delta, has_delta_raw, is_delta_primitive, non_delta_predicates};
use switchlab::factor::{factor_graph, sigma_brute, validate_structure};
use switchlab::io::{graph_json, multigraph_json, parse_graph, parse_multigraph, to_json_string};
use switchlab::split::{compose, decompose, recompose, SplitBipartition};
use switchlab::switch::{active_switches, apply, degree, degree_brute, degree_formula};
use switchlab::twins::{quotient, quotient_index};
use switchlab::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn split_graph() -> impl Strategy<Value = SplitBipartition> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(k, i)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), k), i).prop_map(move |rows| {
            let nbrs: Vec<Vec<usize>> =
                rows.iter().map(|r| (0..k).filter(|&x| r[x]).collect()).collect();
            SplitBipartition::from_neighborhoods(k, &nbrs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_formula_matches_oracles(g in graph(9)) {
        let f = degree_formula(&g);
        prop_assert_eq!(f, degree_brute(&g));
        prop_assert_eq!(f, active_switches(&g).len() as u64);
    }

    #[test]
    fn degree_is_complement_invariant(g in graph(9)) {
        prop_assert_eq!(degree(&g), degree(&g.complement()));
    }

    #[test]
    fn active_switches_keep_degrees_and_invert(g in graph(8)) {
        for t in active_switches(&g).into_iter().take(10) {
            let h = apply(&g, &t).unwrap();
            prop_assert_eq!(h.degrees(), g.degrees());
            prop_assert_eq!(apply(&h, &t.inverse()).unwrap(), g.clone());
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(10), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn composition_adds_degrees(s in split_graph(), g in graph(6)) {
        let h = compose(&s, &g);
        prop_assert_eq!(degree(&h), degree(&s.graph) + degree(&g));
        let d = decompose(&h);
        prop_assert!(d.validated);
        prop_assert_eq!(recompose(&d, h.order()), h);
    }

    #[test]
    fn factor_graph_counts_p4s(s in split_graph()) {
        let f = factor_graph(&s);
        for x in 0..f.order() {
            for y in x + 1..f.order() {
                prop_assert_eq!(f.sigma(x, y), sigma_brute(&s, s.i[x], s.i[y]));
            }
        }
        prop_assert_eq!(f.size(), degree(&s.graph));
        prop_assert!(validate_structure(&f).is_clean());
    }

    #[test]
    fn quotient_commutes_with_complement(g in graph(8)) {
        let a = quotient(&g.complement()).graph;
        let b = quotient(&g).graph.complement();
        prop_assert!(is_isomorphic(&a, &b).unwrap());
        prop_assert_eq!(quotient_index(&g), quotient_index(&g.complement()));
    }

    #[test]
    fn quotient_keeps_far_distances(g in graph(10)) {
        let q = quotient(&g);
        for u in 0..g.order() {
            let du = g.distances_from(u);
            let dq = q.graph.distances_from(q.class_of[u]);
            for v in 0..g.order() {
                if let Some(d) = du[v].filter(|&d| d >= 3) {
                    prop_assert_eq!(dq[q.class_of[v]], Some(d));
                }
            }
        }
    }

    #[test]
    fn json_round_trip(g in graph(12)) {
        prop_assert_eq!(parse_graph(&to_json_string(&graph_json(&g))).unwrap(), g);
    }

    #[test]
    fn multigraph_json_round_trip(s in split_graph()) {
        let phi = factor_graph(&s).phi;
        prop_assert_eq!(parse_multigraph(&to_json_string(&multigraph_json(&phi))).unwrap(), phi);
    }

    #[test]
    fn delta_tests_agree(n in 1u64..20_000) {
        prop_assert_eq!(has_delta(n), has_delta_raw(n));
        if !non_delta_predicates(n).is_empty() {
            prop_assert!(!has_delta(n));
        }
        let c = certificate(n);
        if let Some([x, y, z]) = c.witness {
            prop_assert!(1 < x && x < y && y <= z && z * z < n);
            prop_assert_eq!(n / x - x, (n / y - y) + (n / z - z));
        }
        if let Some((alpha, m)) = c.decomposition {
            prop_assert_eq!(alpha * alpha * m, n);
            prop_assert!(is_delta_primitive(m));
        }
    }
}
