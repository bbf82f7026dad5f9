//! Command-line front end: classification, solving, ordering, certificate
//! verification, reduction instance generation, seeded instance generation,
//! and a reduced-scale self-test.
//!
//! All I/O is JSON on files, with `-` standing for stdin/stdout. Exit codes:
//! 0 success, 1 infeasible or NP-hard without a solve, 2 usage error
//! (including malformed files), 3 verification or internal failure.

mod selftest;

use std::ffi::OsString;
use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use minhom_core::{
    classify_wpl, random_semicomplete_wpl, reduce_mis_gadget, reduce_mis_rprime, solve,
    solve_bruteforce, verify_hom, Classification, CostMatrix, Digraph, Graph, HardnessWitness,
    PatternKind, PigWitnessKind, ReductionInstance, SolveOutcome, SolverError, VertexOrdering,
    check_minmax, slices_are_intervals,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Parser)]
#[command(name = "minhom", version, about = "Minimum cost homomorphisms to semicomplete digraphs with possible loops: dichotomy classification with certificates and exact solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the target admits polynomial-time solving; emit the
    /// verdict with its certificate.
    Classify {
        /// Target digraph file ({"n": .., "arcs": [[u,v], ..]})
        #[arg(long = "h")]
        h: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Solve an instance exactly along the route the classification
    /// prescribes.
    Solve {
        #[arg(long = "h")]
        h: String,
        /// Input digraph file
        #[arg(long = "d")]
        d: String,
        /// Cost matrix file ({"costs": [[int|null, ..], ..]})
        #[arg(long)]
        costs: String,
        /// Force the brute-force oracle regardless of the classification
        #[arg(long)]
        oracle: bool,
        /// Node budget for the oracle
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Emit a Min-Max ordering of the target, when one exists.
    Order {
        #[arg(long = "h")]
        h: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-verify an artifact (verdict report, homomorphism, or ordering)
    /// read from stdin against the given files.
    Verify {
        #[arg(long = "h")]
        h: String,
        #[arg(long = "d")]
        d: Option<String>,
        #[arg(long)]
        costs: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate a hardness-reduction instance from an undirected graph.
    Reduce {
        /// One of: rprime, rprime-loop, gadget
        #[arg(long)]
        lemma: String,
        /// Source graph file ({"n": .., "edges": [[u,v], ..]})
        #[arg(long = "g")]
        g: String,
        /// Prefix for the emitted instance files; omit to print one bundle
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate a seeded random semicomplete digraph with possible loops.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "sym-prob", default_value_t = 0.3)]
        sym_prob: f64,
        #[arg(long = "loop-prob", default_value_t = 0.3)]
        loop_prob: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the reduced-scale verification suite.
    Selftest,
}

enum CliError {
    Usage(String),
    Verify(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verify(m) => m,
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

fn load<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

fn emit(out: &Option<String>, body: &str) -> Result<(), CliError> {
    match out.as_deref() {
        None | Some("-") => {
            println!("{body}");
            Ok(())
        }
        Some(path) => fs::write(path, format!("{body}\n"))
            .map_err(|e| CliError::Usage(format!("{path}: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable report")
}

/// Classification plus a human-readable account of the certificate.
#[derive(Serialize, Deserialize)]
struct VerdictReport {
    #[serde(flatten)]
    classification: Classification,
    #[serde(default)]
    reason: String,
}

impl VerdictReport {
    fn new(classification: Classification) -> Self {
        let reason = reason_for(&classification);
        VerdictReport {
            classification,
            reason,
        }
    }
}

fn pattern_name(kind: PatternKind) -> &'static str {
    match kind {
        PatternKind::R => "reflexive triangle with one symmetric pair",
        PatternKind::RPrime => "triangle with a symmetric arc and two loops",
        PatternKind::W => "symmetric pair with a single loop",
        PatternKind::ReflexiveC3 => "reflexive directed triangle",
        PatternKind::C3WithLoop => "directed triangle carrying a loop",
    }
}

fn reason_for(c: &Classification) -> String {
    match c {
        Classification::PolynomialCycle { k } => format!(
            "target is exactly the loopless directed {k}-cycle; label propagation solves instances exactly"
        ),
        Classification::PolynomialMinMax { .. } => {
            "Min-Max ordering with interval out-slices reduces instances to a minimum cut".into()
        }
        Classification::NpHard { witness } => match witness {
            HardnessWitness::Pattern { hit } => format!(
                "induced {} on vertices {:?}",
                pattern_name(hit.kind),
                hit.vertices
            ),
            HardnessWitness::NotProperInterval { witness } => {
                let shape = match witness.kind {
                    PigWitnessKind::LongInducedCycle => "chordless cycle",
                    PigWitnessKind::Claw => "claw",
                    PigWitnessKind::Net => "net",
                    PigWitnessKind::Tent => "tent",
                };
                format!(
                    "symmetric structure of the reflexive part contains a {shape} on {:?}",
                    witness.vertices
                )
            }
            HardnessWitness::LooplessCycle { cycle } => format!(
                "loopless part contains the cycle {cycle:?} without being a short directed cycle"
            ),
            HardnessWitness::LooplessNotTransitive { triangle } => format!(
                "loopless tournament contains the directed triangle {triangle:?}"
            ),
            HardnessWitness::CycleBesideLoop { cycle, loop_vertex } => format!(
                "loopless part is exactly the cycle {cycle:?} while vertex {loop_vertex} has a loop"
            ),
        },
    }
}

#[derive(Serialize, Deserialize)]
struct SolveReport {
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cost: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct OrderReport {
    ordering: VertexOrdering,
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Classify { h, out } => {
            let target: Digraph = load(&h)?;
            let classification =
                classify_wpl(&target).map_err(|e| CliError::Usage(format!("{h}: {e}")))?;
            emit(&out, &to_json(&VerdictReport::new(classification)))?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            h,
            d,
            costs,
            oracle,
            budget,
            out,
        } => {
            let target: Digraph = load(&h)?;
            let input: Digraph = load(&d)?;
            let matrix: CostMatrix = load(&costs)?;
            if oracle {
                let result = solve_bruteforce(&target, &input, &matrix, budget)
                    .map_err(|e| solver_error(&costs, e))?;
                return finish_solve(&out, result.map(|hom| (hom.cost, hom.map)));
            }
            match solve(&target, &input, &matrix).map_err(|e| solver_error(&costs, e))? {
                SolveOutcome::Optimal(hom) => finish_solve(&out, Some((hom.cost, hom.map))),
                SolveOutcome::Infeasible => finish_solve(&out, None),
                SolveOutcome::NotPolynomial(witness) => {
                    emit(
                        &out,
                        &to_json(&VerdictReport::new(Classification::NpHard { witness })),
                    )?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Order { h, out } => {
            let target: Digraph = load(&h)?;
            match classify_wpl(&target).map_err(|e| CliError::Usage(format!("{h}: {e}")))? {
                Classification::PolynomialMinMax { ordering } => {
                    emit(&out, &to_json(&OrderReport { ordering }))?;
                    Ok(EXIT_OK)
                }
                other => {
                    emit(&out, &to_json(&VerdictReport::new(other)))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Verify { h, d, costs, out } => {
            let target: Digraph = load(&h)?;
            let artifact = read_input("-")?;
            let value: serde_json::Value = serde_json::from_str(&artifact)
                .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            let result = verify_artifact(&target, d.as_deref(), costs.as_deref(), &value)?;
            match result {
                Ok(()) => {
                    emit(&out, &to_json(&VerifyReport { valid: true, reason: None }))?;
                    Ok(EXIT_OK)
                }
                Err(reason) => {
                    emit(
                        &out,
                        &to_json(&VerifyReport {
                            valid: false,
                            reason: Some(reason),
                        }),
                    )?;
                    Ok(EXIT_VERIFY)
                }
            }
        }
        Command::Reduce { lemma, g, out } => {
            let graph: Graph = load(&g)?;
            let instance = match lemma.as_str() {
                "rprime" => reduce_mis_rprime(&graph, false),
                "rprime-loop" => reduce_mis_rprime(&graph, true),
                "gadget" => reduce_mis_gadget(&graph),
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown lemma '{other}' (expected rprime, rprime-loop, or gadget)"
                    )))
                }
            }
            .map_err(|e| CliError::Usage(format!("{g}: {e}")))?;
            emit_reduction(&out, &instance)?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            seed,
            n,
            sym_prob,
            loop_prob,
            out,
        } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            for (name, p) in [("--sym-prob", sym_prob), ("--loop-prob", loop_prob)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(CliError::Usage(format!("{name} must lie in [0, 1]")));
                }
            }
            let h = random_semicomplete_wpl(seed, n, sym_prob, loop_prob);
            emit(&out, &to_json(&h))?;
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            if selftest::run_all() {
                Ok(EXIT_OK)
            } else {
                Err(CliError::Verify("selftest failed".into()))
            }
        }
    }
}

fn solver_error(costs_path: &str, e: SolverError) -> CliError {
    match e {
        SolverError::DimensionMismatch { .. } => CliError::Usage(format!("{costs_path}: {e}")),
        SolverError::Classify(inner) => CliError::Usage(inner.to_string()),
        SolverError::BudgetExceeded { .. } => CliError::Verify(e.to_string()),
        other => CliError::Verify(other.to_string()),
    }
}

fn finish_solve(out: &Option<String>, result: Option<(u64, Vec<usize>)>) -> Result<i32, CliError> {
    match result {
        Some((cost, map)) => {
            emit(
                out,
                &to_json(&SolveReport {
                    feasible: true,
                    cost: Some(cost),
                    map: Some(map),
                }),
            )?;
            Ok(EXIT_OK)
        }
        None => {
            emit(
                out,
                &to_json(&SolveReport {
                    feasible: false,
                    cost: None,
                    map: None,
                }),
            )?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

/// Dispatches on the artifact's shape: a verdict report carries "verdict", a
/// solve report carries "map", an ordering report carries "ordering".
fn verify_artifact(
    target: &Digraph,
    d_path: Option<&str>,
    costs_path: Option<&str>,
    value: &serde_json::Value,
) -> Result<Result<(), String>, CliError> {
    if value.get("verdict").is_some() {
        let report: VerdictReport = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(report.classification.verify(target));
    }
    if value.get("map").is_some() {
        let report: SolveReport = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        let d_path = d_path.ok_or_else(|| {
            CliError::Usage("verifying a homomorphism needs --d and --costs".into())
        })?;
        let costs_path = costs_path.ok_or_else(|| {
            CliError::Usage("verifying a homomorphism needs --costs".into())
        })?;
        let input: Digraph = load(d_path)?;
        let matrix: CostMatrix = load(costs_path)?;
        let map = match report.map {
            Some(map) => map,
            None => return Ok(Err("homomorphism report lacks a map".into())),
        };
        if map.len() != input.n() {
            return Ok(Err(format!(
                "map covers {} vertices, input has {}",
                map.len(),
                input.n()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&c| c >= target.n()) {
            return Ok(Err(format!("map value {bad} is not a target vertex")));
        }
        if matrix.rows() != input.n() || matrix.cols() != target.n() {
            return Err(CliError::Usage(format!(
                "{costs_path}: cost matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                input.n(),
                target.n()
            )));
        }
        if let Some((u, v)) = verify_hom(&input, target, &map) {
            return Ok(Err(format!("arc ({u}, {v}) is not preserved")));
        }
        let mut total: u128 = 0;
        for (u, &c) in map.iter().enumerate() {
            match matrix.get(u, c).finite() {
                Some(f) => total += f as u128,
                None => return Ok(Err(format!("vertex {u} takes a forbidden color"))),
            }
        }
        return Ok(match report.cost {
            Some(claimed) if u128::from(claimed) == total => Ok(()),
            Some(claimed) => Err(format!("claimed cost {claimed}, recomputed {total}")),
            None => Err("homomorphism report lacks a cost".into()),
        });
    }
    if value.get("ordering").is_some() {
        let perm: Vec<usize> = serde_json::from_value(value["ordering"].clone())
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        let ordering = match VertexOrdering::new(perm) {
            Ok(o) => o,
            Err(e) => return Ok(Err(e.to_string())),
        };
        if ordering.len() != target.n() {
            return Ok(Err("ordering does not cover the target".into()));
        }
        if let Some(v) = check_minmax(target, &ordering) {
            return Ok(Err(format!("not a Min-Max ordering: {v:?}")));
        }
        if !slices_are_intervals(target, &ordering) {
            return Ok(Err("an out-slice is not an interval".into()));
        }
        return Ok(Ok(()));
    }
    Err(CliError::Usage(
        "stdin artifact has none of the keys 'verdict', 'map', 'ordering'".into(),
    ))
}

fn emit_reduction(out: &Option<String>, instance: &ReductionInstance) -> Result<(), CliError> {
    match out.as_deref() {
        None | Some("-") => {
            println!("{}", to_json(instance));
            Ok(())
        }
        Some(prefix) => {
            let files = [
                (format!("{prefix}.h.json"), to_json(&instance.h)),
                (format!("{prefix}.d.json"), to_json(&instance.d)),
                (format!("{prefix}.costs.json"), to_json(&instance.costs)),
                (format!("{prefix}.origins.json"), to_json(&instance.origins)),
            ];
            for (path, body) in &files {
                fs::write(path, format!("{body}\n"))
                    .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            }
            let summary = serde_json::json!({
                "kind": instance.kind,
                "d_vertices": instance.d.n(),
                "d_arcs": instance.d.arc_count(),
                "files": files.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
            });
            println!("{summary}");
            Ok(())
        }
    }
}
