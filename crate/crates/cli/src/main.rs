//! `vtgraph` command-line front end.
//!
//! Exit codes: 0 found / holds, 1 absent / fails, 2 error, 3 undecided.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use vtgraph::budget::{Deadline, Search};
use vtgraph::catalog::{connected_vt_catalog, lookup, parse_family, vt_catalog};
use vtgraph::cayley::{cayley_graph, is_cayley_within, ConnectionSet};
use vtgraph::conjecture::{
    check_certificate, classify_within, compose_hamiltonian_path_within, find_decomposition_within, survey,
    ClassificationReport, DecompositionCertificate, DecompositionEvidence, Status,
};
use vtgraph::connectivity::{check_connectivity_bound, vertex_connectivity};
use vtgraph::group::{groups_of_order, FiniteGroup, MAX_BUILTIN_ORDER};
use vtgraph::hamilton::{
    hamiltonian_cycle_within, hamiltonian_path_between_within, hamiltonian_path_within, prime_pipeline,
    HamCertificate,
};
use vtgraph::iso::is_vertex_transitive;
use vtgraph::minor::{cycle_pair_minor_within, is_homogeneous_minor_within, is_minor_within, BranchDecomposition};
use vtgraph::{ConjectureError, Graph};

const FOUND: u8 = 0;
const ABSENT: u8 = 1;
const ERROR: u8 = 2;
const UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(name = "vtgraph", version)]
#[command(about = "Homogeneous minors, Cayley graphs and Hamiltonian paths in small vertex-transitive graphs")]
struct Cli {
    /// Time budget per search, in seconds
    #[arg(long, global = true, default_value_t = 30.0)]
    budget: f64,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

/// Graph arguments are a file in the `n`/`e` text format, `family:<name>[:params]`
/// (e.g. `family:cycle:9`, `family:circulant:6:2,3`) or `catalog:<entry>`.
#[derive(Subcommand)]
enum Command {
    /// Vertex-transitivity and the orbit partition
    Vt { graph: String },
    /// Emit the Cayley graph of a group and connection set (`1,4`, or `-` for none)
    Cayley { group: String, connset: String },
    /// Search for a group of order |X| and connection set with Cay(G, C) = X
    Iscayley { graph: String },
    /// Classical minor H <= G
    Minor { h: String, g: String },
    /// Homogeneous minor (H, H') <=_1 G
    Hminor { h: String, hprime: String, g: String },
    /// Homogeneous minor (C_m, C_n) <=_1 X
    Cyclepair { graph: String, m: usize, n: usize },
    /// Hamiltonian path (default), cycle, or path between two vertices
    Ham {
        graph: String,
        #[arg(long, conflicts_with = "between")]
        cycle: bool,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        between: Option<Vec<usize>>,
    },
    /// Circulant form and arithmetic Hamiltonian cycle of a prime-order graph
    PrimePipeline { graph: String },
    /// Vertex connectivity and the transitivity lower bound
    Connectivity { graph: String },
    /// Search for a cycle-pair minor or a decomposition certificate
    Decompose { graph: String },
    /// Check a `ham` certificate or a decomposition certificate against a graph
    Certcheck { graph: String, cert: String },
    /// Compose a Hamiltonian path from a decomposition certificate
    Compose { graph: String, cert: String },
    /// Classify a vertex-transitive graph and produce a Hamiltonian path
    Classify { graph: String },
    /// Classify every connected catalog graph up to a given order
    Survey {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List or emit catalog graphs
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names of all catalog entries up to an order
    List {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// A catalog entry or family in the graph text format
    Emit {
        name: String,
        #[arg(long, default_value_t = MAX_BUILTIN_ORDER)]
        max_n: usize,
    },
}

/// Result of one verb: exit code plus the same data as text and JSON.
struct Output {
    code: u8,
    text: String,
    json: Value,
}

impl Output {
    fn new(code: u8, text: String, json: Value) -> Self {
        Output { code, text, json }
    }
}

type CliResult = Result<Output, String>;

fn read_graph(arg: &str) -> Result<Graph, String> {
    if let Some(spec) = arg.strip_prefix("family:") {
        return parse_family(spec).map_err(|e| e.to_string());
    }
    if let Some(name) = arg.strip_prefix("catalog:") {
        return lookup(name, MAX_BUILTIN_ORDER).map(|e| e.graph).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
    Graph::parse(&text).map_err(|e| format!("{arg}: {e}"))
}

fn read_text(arg: &str) -> Result<String, String> {
    std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))
}

fn read_group(arg: &str) -> Result<FiniteGroup, String> {
    if Path::new(arg).is_file() {
        let text = read_text(arg)?;
        return text.parse::<FiniteGroup>().map_err(|e| format!("{arg}: {e}"));
    }
    FiniteGroup::builtin(arg).map_err(|e| e.to_string())
}

fn search_code<T>(s: &Search<T>) -> u8 {
    match s {
        Search::Found(_) => FOUND,
        Search::Absent => ABSENT,
        Search::Undecided => UNDECIDED,
    }
}

fn search_word<T>(s: &Search<T>) -> &'static str {
    match s {
        Search::Found(_) => "found",
        Search::Absent => "absent",
        Search::Undecided => "undecided",
    }
}

fn vertex_list(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn witness_output(result: Search<BranchDecomposition>) -> Output {
    let code = search_code(&result);
    let word = search_word(&result);
    let witness = result.found();
    let mut text = format!("result {word}\n");
    if let Some(w) = &witness {
        text.push_str(&w.to_text());
    }
    Output::new(code, text, json!({ "result": word, "witness": witness }))
}

fn ham_output(result: Search<HamCertificate>) -> Output {
    let code = search_code(&result);
    let word = search_word(&result);
    let cert = result.found();
    let mut text = format!("result {word}\n");
    if let Some(c) = &cert {
        let _ = writeln!(text, "{c}");
    }
    Output::new(code, text, json!({ "result": word, "certificate": cert }))
}

fn run(cli: &Cli) -> CliResult {
    let budget = Duration::try_from_secs_f64(cli.budget).map_err(|e| format!("invalid --budget: {e}"))?;
    let deadline = Deadline::after(budget);
    match &cli.command {
        Command::Vt { graph } => {
            let g = read_graph(graph)?;
            let (vt, orbits) = is_vertex_transitive(&g);
            let mut text = format!("vertex_transitive {vt}\norbits {}\n", orbits.len());
            for o in orbits.orbits() {
                let _ = writeln!(text, "orbit {}", vertex_list(o));
            }
            let json = json!({ "vertex_transitive": vt, "orbits": orbits.orbits() });
            Ok(Output::new(if vt { FOUND } else { ABSENT }, text, json))
        }
        Command::Cayley { group, connset } => {
            let grp = read_group(group)?;
            let c = ConnectionSet::parse(&grp, connset).map_err(|e| e.to_string())?;
            let g = cayley_graph(&grp, &c);
            let json = json!({ "group": grp.name(), "connection": c, "graph": g });
            Ok(Output::new(FOUND, g.to_text(), json))
        }
        Command::Iscayley { graph } => {
            let g = read_graph(graph)?;
            if g.order() == 0 || g.order() > MAX_BUILTIN_ORDER {
                return Err(format!("group list covers orders 1..={MAX_BUILTIN_ORDER}, graph has {}", g.order()));
            }
            let r = is_cayley_within(&g, &groups_of_order(g.order()), &deadline).map_err(|e| e.to_string())?;
            let code = search_code(&r);
            let word = search_word(&r);
            let mut text = format!("result {word}\n");
            let json = match r.found() {
                Some((grp, c)) => {
                    let _ = writeln!(text, "group {}\nconnection {c}", grp.name());
                    json!({ "result": word, "group": grp.name(), "connection": c })
                }
                None => json!({ "result": word }),
            };
            Ok(Output::new(code, text, json))
        }
        Command::Minor { h, g } => Ok(witness_output(is_minor_within(&read_graph(h)?, &read_graph(g)?, &deadline))),
        Command::Hminor { h, hprime, g } => {
            let r = is_homogeneous_minor_within(&read_graph(h)?, &read_graph(hprime)?, &read_graph(g)?, false, &deadline)
                .map_err(|e| e.to_string())?;
            Ok(witness_output(r))
        }
        Command::Cyclepair { graph, m, n } => {
            let r = cycle_pair_minor_within(&read_graph(graph)?, *m, *n, &deadline).map_err(|e| e.to_string())?;
            Ok(witness_output(r))
        }
        Command::Ham { graph, cycle, between } => {
            let g = read_graph(graph)?;
            let r = match (cycle, between.as_deref()) {
                (true, _) => hamiltonian_cycle_within(&g, &deadline).map_err(|e| e.to_string())?,
                (false, Some(&[x, y])) => {
                    hamiltonian_path_between_within(&g, x, y, &deadline).map_err(|e| e.to_string())?
                }
                _ => hamiltonian_path_within(&g, &deadline),
            };
            Ok(ham_output(r))
        }
        Command::PrimePipeline { graph } => {
            let g = read_graph(graph)?;
            let (form, cert) = prime_pipeline(&g).map_err(|e| e.to_string())?;
            let text = format!(
                "p {}\nconnection {}\nrelabeling {}\n{cert}\n",
                form.p,
                form.connection,
                vertex_list(form.relabeling.images())
            );
            Ok(Output::new(FOUND, text, json!({ "form": form, "certificate": cert })))
        }
        Command::Connectivity { graph } => {
            let g = read_graph(graph)?;
            let c = vertex_connectivity(&g);
            let cut = c.cut.map(|s| s.to_vec());
            let mut text = format!(
                "kappa {}\ncut {}\n",
                c.kappa,
                cut.as_deref().map_or("none".to_string(), vertex_list)
            );
            let (code, bound) = match check_connectivity_bound(&g) {
                Ok(b) => {
                    let _ = writeln!(text, "valency {}\nbound {}\nseparable {}\nholds {}", b.valency, b.bound, b.separable, b.holds);
                    (if b.holds { FOUND } else { ABSENT }, json!(b))
                }
                Err(e) => {
                    let _ = writeln!(text, "bound not applicable: {e}");
                    (ERROR, json!({ "not_applicable": e.to_string() }))
                }
            };
            Ok(Output::new(code, text, json!({ "kappa": c.kappa, "cut": cut, "bound": bound })))
        }
        Command::Decompose { graph } => {
            let g = read_graph(graph)?;
            let r = find_decomposition_within(&g, &deadline).map_err(|e| e.to_string())?;
            let code = search_code(&r);
            let word = search_word(&r);
            let mut text = format!("result {word}\n");
            let json = match r.found() {
                Some(DecompositionEvidence::CyclePair { m, n, witness }) => {
                    let _ = write!(text, "cycle-pair m {m} n {n}\n{}", witness.to_text());
                    json!({ "result": word, "kind": "cycle_pair", "m": m, "n": n, "witness": witness })
                }
                Some(DecompositionEvidence::Decomposition { certificate }) => {
                    text.push_str(&certificate.to_text());
                    json!({ "result": word, "kind": "decomposition", "certificate": certificate })
                }
                None => json!({ "result": word }),
            };
            Ok(Output::new(code, text, json))
        }
        Command::Certcheck { graph, cert } => {
            let g = read_graph(graph)?;
            let body = read_text(cert)?;
            let outcome = if body.starts_with("ham ") {
                let c: HamCertificate = body.trim_end().parse().map_err(|e| format!("{cert}: {e}"))?;
                c.verify(&g).map_err(|e| e.to_string())
            } else if body.starts_with("decomposition ") {
                let c = DecompositionCertificate::parse(&g, &body).map_err(|e| format!("{cert}: {e}"))?;
                check_certificate(&c).map_err(|v| v.to_string())
            } else {
                return Err(format!("{cert}: line 1: expected a `ham` or `decomposition` certificate"));
            };
            Ok(match outcome {
                Ok(()) => Output::new(FOUND, "valid true\n".into(), json!({ "valid": true })),
                Err(v) => Output::new(
                    ABSENT,
                    format!("valid false\nviolation {v}\n"),
                    json!({ "valid": false, "violation": v }),
                ),
            })
        }
        Command::Compose { graph, cert } => {
            let g = read_graph(graph)?;
            let c = DecompositionCertificate::parse(&g, &read_text(cert)?).map_err(|e| format!("{cert}: {e}"))?;
            match compose_hamiltonian_path_within(&c, &deadline) {
                Ok(h) => Ok(ham_output(Search::Found(h))),
                Err(ConjectureError::CompositionFailed) => Ok(Output::new(
                    ABSENT,
                    "result composition-failed\n".into(),
                    json!({ "result": "composition-failed" }),
                )),
                Err(ConjectureError::Undecided) => Ok(ham_output(Search::Undecided)),
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Classify { graph } => {
            let g = read_graph(graph)?;
            let r = classify_within(graph, &g, &deadline).map_err(|e| e.to_string())?;
            Ok(Output::new(report_code(&r), r.to_text(), json!(r)))
        }
        Command::Survey { max_n, jobs } => {
            let graphs: Vec<(String, Graph)> = connected_vt_catalog(*max_n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|e| (e.name, e.graph))
                .collect();
            let report = survey(&graphs, Some(budget), (*jobs).max(1));
            let mut text = String::new();
            for entry in &report.entries {
                match entry {
                    Ok(r) => text.push_str(&r.to_text()),
                    Err(f) => {
                        let _ = writeln!(text, "graph_id {}\nerror {}", f.graph_id, f.error);
                    }
                }
                text.push('\n');
            }
            for (case, k) in &report.counts {
                let _ = writeln!(text, "count {case} {k}");
            }
            let _ = writeln!(text, "resolved {} of {}", report.resolved(), graphs.len());
            let _ = writeln!(text, "errors {}", report.errors);
            let code = if report.errors > 0 {
                ERROR
            } else if report.reports().any(|r| r.status == Status::Undecided) {
                UNDECIDED
            } else {
                FOUND
            };
            let json = json!({
                "entries": report.entries.iter().map(|e| match e {
                    Ok(r) => json!(r),
                    Err(f) => json!(f),
                }).collect::<Vec<_>>(),
                "counts": report.counts,
                "resolved": report.resolved(),
                "total": graphs.len(),
                "errors": report.errors,
            });
            Ok(Output::new(code, text, json))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { max_n } => {
                let entries = vt_catalog(*max_n).map_err(|e| e.to_string())?;
                let mut text = String::new();
                for e in &entries {
                    let _ = writeln!(text, "{} {} {}", e.name, e.graph.order(), e.graph.edge_count());
                }
                let json: Vec<Value> = entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "n": e.graph.order(), "edges": e.graph.edge_count() }))
                    .collect();
                Ok(Output::new(FOUND, text, json!(json)))
            }
            CatalogAction::Emit { name, max_n } => {
                let e = lookup(name, *max_n).map_err(|e| e.to_string())?;
                Ok(Output::new(FOUND, e.graph.to_text(), json!(e)))
            }
        },
    }
}

fn report_code(r: &ClassificationReport) -> u8 {
    match r.status {
        Status::Verified | Status::VerifiedBySearch => FOUND,
        Status::NoPath | Status::CompositionFailed => ABSENT,
        Status::Undecided => UNDECIDED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(ERROR)
        }
    }
}
