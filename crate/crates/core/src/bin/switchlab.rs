use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use switchlab::canon::CanonicalForm;
use switchlab::catalog::{self, identify};
use switchlab::classify::{classify_active, classify_split_primes_deg4};
use switchlab::delta::{certificate, generator_polynomial, is_delta_primitive, non_delta_predicates, sieve};
use switchlab::error::{Error, Result};
use switchlab::factor::{
    build_split_from_delta, factor_graph, flow_configuration, linearity_report, pendant_model, validate_structure,
    DeltaWitness,
};
use switchlab::io::{digraph_json, graph_dot, graph_json, multigraph_dot, multigraph_json, parse_graph};
use switchlab::selftest;
use switchlab::space::{active_space, realization_space, TransitionSpace};
use switchlab::split::{bipartitions, compose, decompose, interchangeable_vertices, is_prime, SplitBipartition};
use switchlab::switch::{active_vertices, apply, census, degree, is_active, zagreb, TwoSwitch};
use switchlab::twins::{quotient, quotient_index, quotient_tower};
use switchlab::{DegreeSequence, Graph};

#[derive(Parser)]
#[command(name = "switchlab", version, about = "2-switch calculus on small graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    All,
    Forest,
    Unicyclic,
}

/// Graph arguments take a JSON file, `-` for stdin, or `catalog:NAME`.
#[derive(Subcommand)]
enum Command {
    /// Switch degree and quad census.
    Deg { graph: String },
    /// Apply the 2-switch ab, cd -> ac, bd.
    Switch { graph: String, a: usize, b: usize, c: usize, d: usize },
    /// Realization space of a degree sequence such as "2^3 1^2".
    Space {
        sequence: String,
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        /// Include every member graph.
        #[arg(long)]
        members: bool,
        /// Replace members by their active parts.
        #[arg(long)]
        active: bool,
    },
    /// Split recognition and bipartitions.
    Split { graph: String },
    /// Factors of the composition decomposition.
    Decompose { graph: String },
    /// Compose a split graph with a graph.
    Compose {
        split: String,
        graph: String,
        /// Clique side of the split graph, comma separated.
        #[arg(long, value_delimiter = ',')]
        clique: Option<Vec<usize>>,
    },
    /// Twin quotient, its tower and the quotient index.
    Quotient { graph: String },
    /// Factor multigraph of a split graph.
    Phi {
        graph: String,
        #[arg(long, value_delimiter = ',')]
        clique: Option<Vec<usize>>,
    },
    /// Divisor property: certificate, sieve, or generator table.
    Delta {
        n: Option<u64>,
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with_all = ["n", "poly"])]
        sieve: Option<Vec<u64>>,
        /// With --sieve, list only primitive members.
        #[arg(long, requires = "sieve")]
        primitive: bool,
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true, conflicts_with = "n")]
        poly: Option<Vec<i64>>,
        #[arg(long, num_args = 2, value_names = ["X0", "X1"], requires = "poly")]
        range: Option<Vec<i64>>,
    },
    /// Split graph with three independent vertices from a divisor witness.
    DeltaBuild { n: u64, x: u64, y: u64, z: u64, d_a: u64 },
    /// Named active graphs of degree 1 to 3, or degree-4 split primes.
    Classify {
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long)]
        split_primes: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Only these criteria, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
    },
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

enum Output {
    Json(Value),
    /// JSON plus the DOT rendering used by `--format dot`.
    WithDot(Value, String),
    /// Already printed; carries the exit status.
    Done(bool),
}

fn read_graph(arg: &str) -> Result<Graph> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog::get(name)
            .map(|e| e.graph.clone())
            .ok_or_else(|| Error::Parse(format!("no catalog graph named {name}")));
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    parse_graph(&text)
}

fn gjson(g: &Graph) -> Value {
    serde_json::to_value(graph_json(g)).unwrap()
}

fn split_of(g: &Graph, clique: Option<Vec<usize>>) -> Result<SplitBipartition> {
    match clique {
        Some(k) => SplitBipartition::new(g.clone(), k),
        None => SplitBipartition::canonical(g),
    }
}

fn space_dot(sp: &TransitionSpace) -> String {
    graph_dot(&sp.as_graph())
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Deg { graph } => {
            let g = read_graph(&graph)?;
            let (z1, z2) = zagreb(&g);
            Output::Json(json!({
                "deg": degree(&g),
                "n": g.order(),
                "m": g.size(),
                "active_vertices": active_vertices(&g),
                "census": census(&g),
                "zagreb": [z1, z2],
            }))
        }
        Command::Switch { graph, a, b, c, d } => {
            let g = read_graph(&graph)?;
            let t = TwoSwitch::new(a, b, c, d)?;
            for v in t.vertices() {
                g.check(v)?;
            }
            if !is_active(&g, &t) {
                return Err(Error::InactiveSwitch);
            }
            let h = apply(&g, &t)?;
            Output::WithDot(gjson(&h), graph_dot(&h))
        }
        Command::Space { sequence, family, members, active } => {
            let s = DegreeSequence::parse(&sequence)?;
            let mut sp = realization_space(&s)?;
            sp = match family {
                Family::All => sp,
                Family::Forest => sp.restrict(|g| g.is_forest()),
                Family::Unicyclic => sp.restrict(|g| g.is_unicyclic()),
            };
            if active {
                sp = active_space(&sp);
            }
            let mut v = json!({
                "sequence": s.compact(),
                "members": sp.len(),
                "edges": sp.edges.len(),
                "connected": sp.is_connected(),
                "profile": sp.degree_profile(),
                "regular": sp.regular_degree(),
            });
            if members {
                v["graphs"] = Value::Array(sp.members.iter().map(gjson).collect());
                v["adjacency"] = json!(sp.edges);
            }
            Output::WithDot(v, space_dot(&sp))
        }
        Command::Split { graph } => {
            let g = read_graph(&graph)?;
            match bipartitions(&g) {
                Ok(parts) => {
                    let s = SplitBipartition::canonical(&g)?;
                    Output::Json(json!({
                        "split": true,
                        "bipartitions": parts.iter().map(|(k, i)| json!({"k": k, "i": i})).collect::<Vec<_>>(),
                        "balanced": parts.len() == 1,
                        "interchangeable": interchangeable_vertices(&s),
                    }))
                }
                Err(Error::NotSplit) => Output::Json(json!({"split": false})),
                Err(e) => return Err(e),
            }
        }
        Command::Decompose { graph } => {
            let g = read_graph(&graph)?;
            let d = decompose(&g);
            let factors: Vec<Value> = d
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "vertices": f.vertices,
                        "bipartition": f.bipartition,
                        "graph": gjson(&f.graph),
                        "name": identify(&f.graph),
                    })
                })
                .collect();
            let dot: String = d.factors.iter().map(|f| graph_dot(&f.graph)).collect();
            Output::WithDot(json!({"factors": factors, "validated": d.validated, "prime": is_prime(&g)}), dot)
        }
        Command::Compose { split, graph, clique } => {
            let s = split_of(&read_graph(&split)?, clique)?;
            let h = compose(&s, &read_graph(&graph)?);
            Output::WithDot(gjson(&h), graph_dot(&h))
        }
        Command::Quotient { graph } => {
            let g = read_graph(&graph)?;
            let q = quotient(&g);
            let classes: Vec<Vec<usize>> = (0..q.reps.len())
                .map(|c| (0..g.order()).filter(|&v| q.class_of[v] == c).collect())
                .collect();
            Output::WithDot(
                json!({
                    "graph": gjson(&q.graph),
                    "classes": classes,
                    "index": quotient_index(&g),
                    "tower_orders": quotient_tower(&g).iter().map(Graph::order).collect::<Vec<_>>(),
                }),
                graph_dot(&q.graph),
            )
        }
        Command::Phi { graph, clique } => {
            let s = split_of(&read_graph(&graph)?, clique)?;
            let f = factor_graph(&s);
            let flow = flow_configuration(&f);
            let v = json!({
                "independent": s.i,
                "phi": multigraph_json(&f.phi),
                "degrees": f.degrees,
                "eta": f.eta,
                "size": f.size(),
                "flow": {
                    "digraph": digraph_json(&flow.digraph),
                    "triangles": flow.triangles.iter().map(|(t, k)| json!({"vertices": t, "type": k.map(|k| format!("{k:?}"))})).collect::<Vec<_>>(),
                    "squares": flow.squares.iter().map(|(c, n)| json!({"vertices": c, "name": n})).collect::<Vec<_>>(),
                },
                "linearity": linearity_report(&f),
                "structure": validate_structure(&f),
                "pendant_model": pendant_model(&s).map(|r| gjson(&r.graph)),
            });
            Output::WithDot(v, multigraph_dot(&f.phi))
        }
        Command::Delta { n, sieve: range, primitive, poly, range: xs } => {
            if let Some(r) = range {
                let (lo, hi) = (r[0], r[1]);
                for m in sieve(lo, hi) {
                    let p = is_delta_primitive(m);
                    if !primitive || p {
                        out!("{}\n", json!({"n": m, "primitive": p}));
                    }
                }
                Output::Done(true)
            } else if let Some(p) = poly {
                let g = generator_polynomial(p[0], p[1], p[2])?;
                let (x0, x1) = xs.map_or((g.n0 as i64, g.n0 as i64 + 9), |r| (r[0], r[1]));
                let rows: Vec<Value> = (x0..=x1)
                    .map(|x| {
                        json!({
                            "x": x,
                            "n": g.eval(x).to_string(),
                            "factors": g.factors(x).map(|f| f.to_string()),
                            "witness": g.witness(x),
                        })
                    })
                    .collect();
                Output::Json(json!({"generator": g, "rows": rows}))
            } else if let Some(n) = n {
                let mut v = serde_json::to_value(certificate(n))?;
                v["non_delta_tags"] = json!(non_delta_predicates(n));
                Output::Json(v)
            } else {
                return Err(Error::Parse("delta needs N, --sieve A B, or --poly A B C".into()));
            }
        }
        Command::DeltaBuild { n, x, y, z, d_a } => {
            let s = build_split_from_delta(&DeltaWitness::new(n, x, y, z)?, d_a)?;
            let f = factor_graph(&s);
            let v = json!({
                "graph": gjson(&s.graph),
                "k_size": s.k.len(),
                "independent": s.i,
                "degrees": f.degrees,
                "eta": {"ab": f.eta[0][1], "bc": f.eta[1][2], "ac": f.eta[0][2]},
                "sigma": {"ab": f.sigma(0, 1), "bc": f.sigma(1, 2), "ac": f.sigma(0, 2)},
            });
            Output::WithDot(v, graph_dot(&s.graph))
        }
        Command::Classify { degree: k, split_primes } => {
            let found: Vec<CanonicalForm> = if split_primes {
                let r = classify_split_primes_deg4();
                if !r.agree {
                    return Err(Error::Parse("the two derivations disagree".into()));
                }
                r.exhaustive
            } else {
                classify_active(k.unwrap_or(1))?
            };
            let mut dot = String::new();
            let entries: Vec<Value> = found
                .iter()
                .map(|f| {
                    let g = f.graph();
                    let d = graph_dot(&g);
                    dot.push_str(&format!("// {}\n{d}", identify(&g).unwrap_or("unnamed")));
                    json!({
                        "name": identify(&g),
                        "order": g.order(),
                        "degree": degree(&g),
                        "degree_sequence": g.degree_sequence().compact(),
                        "graph": gjson(&g),
                        "dot": d,
                    })
                })
                .collect();
            Output::WithDot(json!({"count": entries.len(), "graphs": entries}), dot)
        }
        Command::Selftest { only } => {
            let ids: Vec<u8> = only.unwrap_or_else(|| selftest::CHECKS.iter().map(|c| c.0).collect());
            let mut ok = true;
            for id in ids {
                let c = selftest::run(id).ok_or_else(|| Error::Parse(format!("no criterion {id}")))?;
                ok &= c.passed;
                out!(
                    "criterion {:>2} {}: {} ({:.1}s) {}\n",
                    c.id,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.seconds,
                    c.detail
                );
            }
            Output::Done(ok)
        }
    })
}

fn text(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}"),
                _ => format!("{k}: {x}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if cli.format == Format::Dot
        && matches!(cli.command, Command::Deg { .. } | Command::Split { .. } | Command::Delta { .. })
    {
        eprintln!("error: this subcommand has no DOT output");
        return ExitCode::from(2);
    }
    if let Command::Classify { degree: Some(k), split_primes: true } = cli.command {
        if k != 4 {
            eprintln!("error: --split-primes classifies degree 4 only");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Output::Done(ok)) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Json(v)) | Ok(Output::WithDot(v, _)) if cli.format != Format::Dot => {
            match cli.format {
                Format::Text => out!("{}\n", text(&v)),
                _ => out!("{v}\n"),
            }
            ExitCode::SUCCESS
        }
        Ok(Output::WithDot(_, dot)) => {
            out!("{dot}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(_)) => unreachable!("rejected above"),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
