//! Command-line surface.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qlogic::filters::{closure_descent, refine_incompatible, FiniteFilter, SubspaceFilter};
use qlogic::hilbert::random_subspace_with;
use qlogic::language::{
    decide_explicit, decide_projector, decide_sasaki, decide_simulation_lattice, equivalence_harness,
    lattice_harness, simulate, EquivalenceReport, HarnessConfig, Word,
};
use qlogic::models::{check_axioms, mutants, Axiom, AxiomOutcome, AxiomReport, HilbertGraph, LatticeGraph, Sampling};
use qlogic::observables::refuting_observable;
use qlogic::{CVec, Error, FiniteOml, HilbertLattice, LatticeElement, OrthoLattice, Subspace, Tolerances};

use crate::error::{CliError, CliResult};
use crate::schema::{FilterKind, Label};
use crate::workspace::{self, element_name, Graph, Labels, Workspace};

/// Environment variable holding default tolerance overrides, e.g. `eq=1e-9,spec=1e-6`.
pub const TOL_ENV: &str = "QLOGIC_TOL";

#[derive(Debug, Parser)]
#[command(name = "qlogic", version, about = "Measurement logic over orthomodular and Hilbert lattices")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override (`rank`, `orth`, `spec`, `eq`, `degeneracy`); repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Workspace file whose subspaces serve as probe labels for infinite lattices.
    #[arg(long, global = true, value_name = "FILE")]
    pub probe: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a workspace file.
    Validate { workspace: PathBuf },
    /// Print the canonical form of a workspace file.
    Normalize { workspace: PathBuf },
    /// Decide whether a word of outcomes is possible.
    CheckWord {
        workspace: PathBuf,
        /// Word name; may be omitted when the workspace holds exactly one word.
        word: Option<String>,
        /// Also search this explicit graph for a path carrying the word.
        #[arg(long)]
        graph: Option<String>,
        /// Run the decider-equivalence harness over the word's letters.
        #[arg(long)]
        harness: bool,
        /// Longest harness word.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Check the model axioms on a graph.
    CheckModel {
        workspace: PathBuf,
        /// Graph name; may be omitted when the workspace holds exactly one graph.
        graph: Option<String>,
        /// Sampled vertices for graphs that cannot be enumerated.
        #[arg(long, default_value_t = 64)]
        vertices: usize,
    },
    /// Compatibility of two labels.
    Compat {
        workspace: PathBuf,
        p: String,
        q: String,
        #[command(flatten)]
        ctx: LabelContext,
    },
    /// Sasaki projection `p & q`.
    Sasaki {
        workspace: PathBuf,
        p: String,
        q: String,
        #[command(flatten)]
        ctx: LabelContext,
    },
    /// Witness rays and plane for two incompatible subspaces.
    Witness { workspace: PathBuf, p: String, q: String },
    /// Closure, consistency, minimum and atoms of a filter.
    Filter { workspace: PathBuf, filter: String },
    /// An observable none of whose parts contains the given subspace.
    RefuteKs {
        workspace: PathBuf,
        subspace: String,
        /// Ambient dimension, when the label does not name a subspace.
        #[arg(long)]
        ambient: Option<usize>,
    },
    /// List the axioms, or with `--mutate` run the mutant graphs through the checker.
    Axioms {
        #[arg(long)]
        mutate: bool,
        /// Restrict to the mutant for one axiom letter.
        #[arg(long)]
        only: Option<char>,
    },
}

/// Labels given on the command line are names, or inline JSON labels.
#[derive(Debug, Clone, clap::Args)]
pub struct LabelContext {
    /// Resolve labels as elements of this finite lattice.
    #[arg(long)]
    pub lattice: Option<String>,
    /// Ambient dimension, when no label names a subspace.
    #[arg(long)]
    pub ambient: Option<usize>,
}

/// Result of one command: the JSON document, its text rendering and the exit code.
#[derive(Debug, Clone)]
pub struct Output {
    pub value: Value,
    pub text: String,
    pub code: u8,
}

impl Output {
    fn new(value: Value, text: impl Into<String>, code: u8) -> Self {
        Self { value, text: text.into(), code }
    }
}

/// Runs a command line and returns the exit code and the text for standard output.
pub fn run<I, T>(args: I) -> (u8, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(TOL_ENV).ok())
}

pub fn run_with_env<I, T>(args: I, tol_env: Option<String>) -> (u8, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let json = cli.json;
    match execute(&cli, tol_env.as_deref()) {
        Ok(out) => {
            let text = if json { pretty(&out.value) } else { out.text };
            (out.code, text)
        }
        Err(e) => {
            let text = if json {
                pretty(&json!({ "error": e.to_string(), "kind": e.kind() }))
            } else {
                format!("error: {e}\n")
            };
            (e.exit_code(), text)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn tolerances(cli_overrides: &[String], env: Option<&str>) -> CliResult<Tolerances> {
    let mut tol = Tolerances::default();
    let env_items = env.into_iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty());
    for (source, item) in env_items.map(|s| (TOL_ENV, s)).chain(cli_overrides.iter().map(|s| ("--tol", s.as_str()))) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{source}: expected NAME=VALUE, found `{item}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{source}: `{value}` is not a number")))?;
        tol.set(name.trim(), value)
            .map_err(|e| CliError::Usage(format!("{source}: {e}")))?;
    }
    Ok(tol)
}

fn execute(cli: &Cli, tol_env: Option<&str>) -> CliResult<Output> {
    let tol = tolerances(&cli.tol, tol_env)?;
    let load = |p: &Path| workspace::load(p, tol);
    match &cli.command {
        Command::Validate { workspace } => validate(&load(workspace)?),
        Command::Normalize { workspace } => {
            let file = load(workspace)?.to_file();
            let value = serde_json::to_value(&file).expect("workspace files always serialize");
            Ok(Output::new(value.clone(), pretty(&value), 0))
        }
        Command::CheckWord { workspace, word, graph, harness, max_len } => {
            let ws = load(workspace)?;
            let word = only_name(&ws.words, word.as_deref(), "word")?;
            check_word(cli, &ws, &word, graph.as_deref(), *harness, *max_len)
        }
        Command::CheckModel { workspace, graph, vertices } => {
            let ws = load(workspace)?;
            let graph = only_name(&ws.graphs, graph.as_deref(), "graph")?;
            check_model(cli, &ws, &graph, *vertices)
        }
        Command::Compat { workspace, p, q, ctx } => compat(&load(workspace)?, p, q, ctx),
        Command::Sasaki { workspace, p, q, ctx } => sasaki(&load(workspace)?, p, q, ctx),
        Command::Witness { workspace, p, q } => witness(&load(workspace)?, p, q),
        Command::Filter { workspace, filter } => filter_command(&load(workspace)?, filter),
        Command::RefuteKs { workspace, subspace, ambient } => refute(&load(workspace)?, subspace, *ambient),
        Command::Axioms { mutate, only } => axioms(*mutate, *only),
    }
}

fn only_name<T>(map: &std::collections::BTreeMap<String, T>, given: Option<&str>, what: &str) -> CliResult<String> {
    match given {
        Some(n) => Ok(n.to_string()),
        None if map.len() == 1 => Ok(map.keys().next().cloned().unwrap_or_default()),
        None => Err(CliError::Usage(format!("the workspace holds {} {what}s; name one", map.len()))),
    }
}

// ---- rendering ------------------------------------------------------------------------

/// Rounds to 12 decimals so that output does not depend on the last bits of the
/// floating-point computation.
fn num(x: f64) -> Value {
    let r = (x * 1e12).round() / 1e12;
    json!(if r == 0.0 { 0.0 } else { r })
}

fn vector_json(v: &CVec) -> Value {
    Value::Array(v.iter().map(|z| json!([num(z.re), num(z.im)])).collect())
}

fn subspace_json(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient_dim(),
        "dim": s.dim(),
        "basis": s.basis().column_iter().map(|c| vector_json(&c.into_owned())).collect::<Vec<_>>(),
    })
}

fn verdict(b: bool) -> &'static str {
    if b {
        "possible"
    } else {
        "impossible"
    }
}

fn counterexample_json<V, E>(
    o: &AxiomOutcome<V, E>,
    rv: &dyn Fn(&V) -> Value,
    re: &dyn Fn(&E) -> Value,
) -> Value {
    match &o.counterexample {
        None => Value::Null,
        Some(c) => json!({
            "vertex": c.vertex.as_ref().map(rv),
            "labels": c.labels.iter().map(re).collect::<Vec<_>>(),
            "edge": c.edge.as_ref().map(|(a, p, b)| json!([rv(a), re(p), rv(b)])),
        }),
    }
}

fn axiom_report_json<V, E>(r: &AxiomReport<V, E>, rv: &dyn Fn(&V) -> Value, re: &dyn Fn(&E) -> Value) -> Value {
    let axioms: Vec<Value> = r
        .outcomes
        .iter()
        .map(|(a, o)| {
            json!({
                "axiom": a.letter().to_string(),
                "statement": a.statement(),
                "passed": o.passed,
                "counterexample": counterexample_json(o, rv, re),
            })
        })
        .collect();
    json!({
        "model": r.passed(),
        "exhaustive": r.exhaustive,
        "vertices_checked": r.vertices_checked,
        "labels_checked": r.labels_checked,
        "edges_checked": r.edges_checked,
        "axioms": axioms,
        "derived": {
            "statement": "M(s, q, t) implies t ⊨ q",
            "passed": r.derived.passed,
            "counterexample": counterexample_json(&r.derived, rv, re),
        },
    })
}

fn axiom_text<V, E>(r: &AxiomReport<V, E>) -> String {
    let mut s = String::new();
    for (a, o) in &r.outcomes {
        s.push_str(&format!("{} {a}\n", if o.passed { "pass" } else { "FAIL" }));
    }
    s.push_str(&format!(
        "{} ({} vertices, {} labels, {} edges{})\n",
        if r.passed() { "model" } else { "not a model" },
        r.vertices_checked,
        r.labels_checked,
        r.edges_checked,
        if r.exhaustive { ", exhaustive" } else { ", sampled" },
    ));
    s
}

// ---- label arguments ------------------------------------------------------------------

fn parse_label(arg: &str) -> CliResult<Label> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('"') {
        serde_json::from_str(t).map_err(|e| CliError::Usage(format!("label `{arg}`: {e}")))
    } else {
        Ok(Label::Name(arg.to_string()))
    }
}

fn label_ambient(ws: &Workspace, label: &Label) -> Option<usize> {
    match label {
        Label::Name(n) => ws.subspaces.get(n).map(Subspace::ambient_dim),
        Label::Ortho { ortho } => label_ambient(ws, ortho),
        Label::Inline(def) => Some(def.ambient),
    }
}

enum Pair<'a> {
    Finite(&'a FiniteOml, LatticeElement, LatticeElement),
    Hilbert(HilbertLattice, Subspace, Subspace),
}

fn resolve_pair<'a>(ws: &'a Workspace, p: &str, q: &str, ctx: &LabelContext) -> CliResult<Pair<'a>> {
    let (lp, lq) = (parse_label(p)?, parse_label(q)?);
    if let Some(name) = &ctx.lattice {
        let l = ws.lattice(name)?;
        return Ok(Pair::Finite(l, ws.element(l, &lp, "p")?, ws.element(l, &lq, "q")?));
    }
    let d = ctx
        .ambient
        .or_else(|| label_ambient(ws, &lp))
        .or_else(|| label_ambient(ws, &lq))
        .ok_or_else(|| CliError::Usage("cannot infer the lattice; pass --lattice or --ambient".into()))?;
    let space = ws.space(d)?;
    let sp = ws.subspace(&space, &lp, "p")?;
    let sq = ws.subspace(&space, &lq, "q")?;
    Ok(Pair::Hilbert(space, sp, sq))
}

fn hilbert_pair(ws: &Workspace, p: &str, q: &str) -> CliResult<(HilbertLattice, Subspace, Subspace)> {
    match resolve_pair(ws, p, q, &LabelContext { lattice: None, ambient: None })? {
        Pair::Hilbert(space, a, b) => Ok((space, a, b)),
        Pair::Finite(..) => unreachable!("no lattice was requested"),
    }
}

// ---- commands ---------------------------------------------------------------------------

fn validate(ws: &Workspace) -> CliResult<Output> {
    let value = json!({
        "valid": true,
        "lattices": ws.lattices.keys().collect::<Vec<_>>(),
        "subspaces": ws.subspaces.keys().collect::<Vec<_>>(),
        "observables": ws.observables.keys().collect::<Vec<_>>(),
        "graphs": ws.graphs.keys().collect::<Vec<_>>(),
        "words": ws.words.keys().collect::<Vec<_>>(),
        "filters": ws.filters.keys().collect::<Vec<_>>(),
    });
    let text = format!(
        "valid: {} lattices, {} subspaces, {} observables, {} graphs, {} words, {} filters\n",
        ws.lattices.len(),
        ws.subspaces.len(),
        ws.observables.len(),
        ws.graphs.len(),
        ws.words.len(),
        ws.filters.len()
    );
    Ok(Output::new(value, text, 0))
}

fn harness_json(r: &EquivalenceReport) -> Value {
    let disagreements: Vec<Value> = r
        .disagreements
        .iter()
        .map(|&i| {
            let v = &r.verdicts[i];
            json!({
                "word": v.word,
                "sasaki": v.sasaki,
                "projector": v.projector,
                "hilbert_simulation": v.hilbert,
                "lattice_simulation": v.lattice,
            })
        })
        .collect();
    json!({
        "words": r.verdicts.len(),
        "enumerated": r.enumerated,
        "accepted": r.verdicts.iter().filter(|v| v.sasaki).count(),
        "outside_hypothesis": r.outside_hypothesis,
        "disagreements": disagreements,
    })
}

fn distinct<E: Clone>(items: &[E], same: impl Fn(&E, &E) -> bool) -> Vec<E> {
    let mut out: Vec<E> = Vec::new();
    for x in items {
        if !out.iter().any(|y| same(x, y)) {
            out.push(x.clone());
        }
    }
    out
}

fn check_word(
    cli: &Cli,
    ws: &Workspace,
    name: &str,
    graph: Option<&str>,
    harness: bool,
    max_len: usize,
) -> CliResult<Output> {
    let labels = ws
        .words
        .get(name)
        .ok_or_else(|| CliError::Usage(format!("no word named `{name}`")))?;
    let graph = graph
        .map(|g| ws.graphs.get(g).ok_or_else(|| CliError::Usage(format!("no graph named `{g}`"))))
        .transpose()?;
    let config = HarnessConfig { max_len, samples: 500, enumeration_limit: 2000, seed: cli.seed };
    let mut value = json!({ "word": name, "length": labels.len() });
    let (verdicts, harness_report) = match labels {
        Labels::Hilbert { ambient, subspaces } => {
            let space = ws.space(*ambient)?;
            let w = Word::new(subspaces.clone());
            let s = decide_sasaki(&space, &w)?;
            let p = decide_projector(&space, &w)?;
            let h = simulate(&HilbertGraph::new(space.clone()), p.start.clone(), &w)?;
            let l = decide_simulation_lattice(&LatticeGraph::new(space.clone()), &w)?;
            value["residual"] = subspace_json(&s.residual);
            value["product_norm"] = num(p.norm);
            value["path"] = h.as_ref().map_or(Value::Null, |path| {
                Value::Array(path.vertices.iter().map(vector_json).collect())
            });
            if let Some(g) = graph {
                let Graph::ExplicitHilbert { ambient: d, graph } = g else {
                    return Err(CliError::Usage("--graph must name an explicit graph over the word's lattice".into()));
                };
                if d != ambient {
                    return Err(CliError::Usage("--graph lives in a different ambient dimension".into()));
                }
                let path = decide_explicit(graph, &w)?;
                value["graph"] = graph_path_json(graph.names(), path.map(|p| p.vertices));
            }
            let verdicts = vec![
                ("sasaki", s.accepted),
                ("projector", p.accepted),
                ("hilbert_simulation", h.is_some()),
                ("lattice_simulation", l.is_some()),
            ];
            let report = if harness {
                let alphabet = distinct(subspaces, |a, b| space.equal(a, b).unwrap_or(false));
                value["alphabet"] = Value::Array(alphabet.iter().map(subspace_json).collect());
                Some(equivalence_harness(&space, &alphabet, &config)?)
            } else {
                None
            };
            (verdicts, report)
        }
        Labels::Finite { lattice, elements } => {
            let l = ws.lattice(lattice)?;
            let w = Word::new(elements.clone());
            let s = decide_sasaki(l, &w)?;
            let lg = LatticeGraph::new(l.clone());
            let sim = decide_simulation_lattice(&lg, &w)?;
            value["residual"] = json!(element_name(l, s.residual));
            value["path"] = sim.as_ref().map_or(Value::Null, |path| {
                json!(path.vertices.iter().map(|e| element_name(l, *e)).collect::<Vec<_>>())
            });
            if let Some(g) = graph {
                let Graph::ExplicitFinite { lattice: gl, graph } = g else {
                    return Err(CliError::Usage("--graph must name an explicit graph over the word's lattice".into()));
                };
                if gl != lattice {
                    return Err(CliError::Usage("--graph is labelled by a different lattice".into()));
                }
                let path = decide_explicit(graph, &w)?;
                value["graph"] = graph_path_json(graph.names(), path.map(|p| p.vertices));
            }
            let verdicts = vec![("sasaki", s.accepted), ("lattice_simulation", sim.is_some())];
            let report = if harness {
                let alphabet = distinct(elements, |a, b| a == b);
                value["alphabet"] = json!(alphabet.iter().map(|e| element_name(l, *e)).collect::<Vec<_>>());
                Some(lattice_harness(l, &alphabet, &config)?)
            } else {
                None
            };
            (verdicts, report)
        }
    };

    let mut v = serde_json::Map::new();
    for (k, b) in &verdicts {
        v.insert(k.to_string(), json!(verdict(*b)));
    }
    value["verdicts"] = Value::Object(v);
    let first = verdicts[0].1;
    let unanimous = verdicts.iter().all(|(_, b)| *b == first);
    let harness_ok = harness_report.as_ref().is_none_or(EquivalenceReport::agreed);
    value["unanimous"] = json!(unanimous);
    value["possible"] = if unanimous { json!(first) } else { Value::Null };
    if let Some(r) = &harness_report {
        value["harness"] = harness_json(r);
    }

    let mut text = String::new();
    for (k, b) in &verdicts {
        text.push_str(&format!("{k}: {}\n", verdict(*b)));
    }
    if let Some(g) = value.get("graph") {
        text.push_str(&format!("graph: {}\n", if g["possible"] == json!(true) { "possible" } else { "impossible" }));
    }
    if let Some(r) = &harness_report {
        text.push_str(&format!("harness: {} words, {} disagreements\n", r.verdicts.len(), r.disagreements.len()));
    }
    let code = if !unanimous || !harness_ok {
        text.push_str("deciders disagree\n");
        3
    } else if first {
        0
    } else {
        1
    };
    Ok(Output::new(value, text, code))
}

fn graph_path_json(names: &[String], path: Option<Vec<usize>>) -> Value {
    json!({
        "possible": path.is_some(),
        "path": path.map(|p| p.iter().map(|&v| names[v].clone()).collect::<Vec<_>>()),
    })
}

/// Probe labels for infinite label lattices: the subspaces of `--probe`, else 32 seeded
/// random proper subspaces.
fn probe_labels(cli: &Cli, ws: &Workspace, d: usize) -> CliResult<(Vec<Subspace>, Value)> {
    if let Some(path) = &cli.probe {
        let probe = workspace::load(path, ws.tolerances)?;
        let labels: Vec<_> = probe.subspaces.values().filter(|s| s.ambient_dim() == d).cloned().collect();
        if labels.is_empty() {
            return Err(CliError::validation(path.display().to_string(), format!("no subspaces of C^{d}")));
        }
        return Ok((labels, json!({ "source": "file", "labels": probe.subspaces.len() })));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut labels = Vec::with_capacity(32);
    while labels.len() < 32 {
        let r = if d > 1 { rng.gen_range(1..d) } else { 1 };
        if let Ok(s) = random_subspace_with(&mut rng, d, r) {
            labels.push(s);
        }
    }
    Ok((labels, json!({ "source": "random", "labels": 32, "seed": cli.seed })))
}

fn check_model(cli: &Cli, ws: &Workspace, name: &str, vertices: usize) -> CliResult<Output> {
    let g = ws
        .graphs
        .get(name)
        .ok_or_else(|| CliError::Usage(format!("no graph named `{name}`")))?;
    let sampling = Sampling { vertices, seed: cli.seed };
    let sub = |s: &Subspace| subspace_json(s);
    let (mut value, text) = match g {
        Graph::ExplicitFinite { lattice, graph } => {
            let l = &ws.lattices[lattice];
            let r = check_axioms(graph, None, sampling)?;
            let names = graph.names();
            let v = axiom_report_json(&r, &|v: &usize| json!(names[*v]), &|e: &LatticeElement| json!(element_name(l, *e)));
            (v, axiom_text(&r))
        }
        Graph::LatticeModelFinite { lattice } => {
            let l = &ws.lattices[lattice];
            let r = check_axioms(&LatticeGraph::new(l.clone()), None, sampling)?;
            let name = |e: &LatticeElement| json!(element_name(l, *e));
            (axiom_report_json(&r, &name, &name), axiom_text(&r))
        }
        Graph::ExplicitHilbert { ambient, graph } => {
            let space = ws.space(*ambient)?;
            let (mut probe, source) = probe_labels(cli, ws, *ambient)?;
            for e in graph.edges() {
                probe.push(e.label.clone());
                probe.push(space.ortho(&e.label)?);
            }
            let r = check_axioms(graph, Some(&probe), sampling)?;
            let names = graph.names();
            let mut v = axiom_report_json(&r, &|v: &usize| json!(names[*v]), &sub);
            v["probe"] = source;
            (v, axiom_text(&r))
        }
        Graph::HilbertModel { ambient } => {
            let space = ws.space(*ambient)?;
            let (probe, source) = probe_labels(cli, ws, *ambient)?;
            let r = check_axioms(&HilbertGraph::new(space), Some(&probe), sampling)?;
            let mut v = axiom_report_json(&r, &|v: &CVec| vector_json(v), &sub);
            v["probe"] = source;
            (v, axiom_text(&r))
        }
        Graph::LatticeModelHilbert { ambient } => {
            let space = ws.space(*ambient)?;
            let (probe, source) = probe_labels(cli, ws, *ambient)?;
            let r = check_axioms(&LatticeGraph::new(space), Some(&probe), sampling)?;
            let mut v = axiom_report_json(&r, &sub, &sub);
            v["probe"] = source;
            (v, axiom_text(&r))
        }
    };
    value["graph"] = json!(name);
    let code = if value["model"] == json!(true) { 0 } else { 1 };
    Ok(Output::new(value, text, code))
}

fn compat(ws: &Workspace, p: &str, q: &str, ctx: &LabelContext) -> CliResult<Output> {
    match resolve_pair(ws, p, q, ctx)? {
        Pair::Finite(l, a, b) => {
            let c = l.compatible(&a, &b)?;
            let value = json!({
                "compatible": c,
                "sasaki": element_name(l, l.sasaki(&a, &b)?),
                "meet": element_name(l, l.meet(&a, &b)?),
            });
            Ok(Output::new(value, format!("{}\n", if c { "compatible" } else { "incompatible" }), u8::from(!c)))
        }
        Pair::Hilbert(space, a, b) => {
            let r = space.compat_report(&a, &b)?;
            let value = json!({
                "compatible": r.compatible,
                "spectrum": r.spectrum.iter().map(|x| num(*x)).collect::<Vec<_>>(),
                "witness_eigenvalue": r.witness.as_ref().map(|(l, _)| num(*l)),
                "commutator_norm": num(space.commutator_norm(&a, &b)?),
            });
            let text = format!("{}\n", if r.compatible { "compatible" } else { "incompatible" });
            Ok(Output::new(value, text, u8::from(!r.compatible)))
        }
    }
}

fn sasaki(ws: &Workspace, p: &str, q: &str, ctx: &LabelContext) -> CliResult<Output> {
    match resolve_pair(ws, p, q, ctx)? {
        Pair::Finite(l, a, b) => {
            let s = element_name(l, l.sasaki(&a, &b)?);
            Ok(Output::new(json!({ "result": s }), format!("{s}\n"), 0))
        }
        Pair::Hilbert(space, a, b) => {
            let image = space.sasaki(&a, &b)?;
            let formula = space.sasaki_formula(&a, &b)?;
            let distance = space.projector_distance(&image, &formula)?;
            let value = json!({ "result": subspace_json(&image), "route_distance": num(distance) });
            Ok(Output::new(value, format!("subspace of dimension {}\n", image.dim()), 0))
        }
    }
}

fn witness(ws: &Workspace, p: &str, q: &str) -> CliResult<Output> {
    let (space, a, b) = hilbert_pair(ws, p, q)?;
    match refine_incompatible(&space, &a, &b) {
        Err(Error::NotIncompatible) => {
            Ok(Output::new(json!({ "incompatible": false }), "compatible: no witness\n", 1))
        }
        Err(e) => Err(e.into()),
        Ok(w) => {
            let r = &w.residuals;
            let value = json!({
                "incompatible": true,
                "eigenvalue": num(w.eigenvalue),
                "u": vector_json(&w.u),
                "v": vector_json(&w.v),
                "c": subspace_json(&w.c),
                "residuals": {
                    "commutator_cp": num(r.commutator_cp),
                    "commutator_cq": num(r.commutator_cq),
                    "p_and_c": num(r.p_and_c),
                    "q_and_c": num(r.q_and_c),
                    "u_outside_q": num(r.u_outside_q),
                    "v_outside_p": num(r.v_outside_p),
                    "p_drop": r.p_drop,
                    "q_drop": r.q_drop,
                },
            });
            Ok(Output::new(value, format!("witness with eigenvalue {:.6}\n", w.eigenvalue), 0))
        }
    }
}

fn filter_command(ws: &Workspace, name: &str) -> CliResult<Output> {
    let f = ws
        .filters
        .get(name)
        .ok_or_else(|| CliError::Usage(format!("no filter named `{name}`")))?;
    let kind = match f.kind {
        FilterKind::Principal => "principal",
        FilterKind::Generated => "generated",
    };
    match &f.generators {
        Labels::Finite { lattice, elements } => {
            let l = &ws.lattices[lattice];
            let filter = match f.kind {
                FilterKind::Principal => FiniteFilter::principal(l, elements[0])?,
                FilterKind::Generated => FiniteFilter::generated(l, elements)?,
            };
            let names = |es: &[LatticeElement]| es.iter().map(|e| element_name(l, *e)).collect::<Vec<_>>();
            let value = json!({
                "filter": name,
                "kind": kind,
                "members": names(&filter.members()),
                "consistent": filter.is_consistent(),
                "minimum": filter.minimum().map(|m| element_name(l, m)),
                "atoms": names(&filter.atoms()),
            });
            let text = format!(
                "{} members, {}, {} atoms\n",
                filter.members().len(),
                if filter.is_consistent() { "consistent" } else { "inconsistent" },
                filter.atoms().len()
            );
            Ok(Output::new(value, text, 0))
        }
        Labels::Hilbert { ambient, subspaces } => {
            let space = ws.space(*ambient)?;
            let (filter, descent) = match f.kind {
                FilterKind::Principal => (SubspaceFilter::Principal(subspaces[0].clone()), None),
                FilterKind::Generated => {
                    let d = closure_descent(&space, subspaces)?;
                    (SubspaceFilter::generated(&space, subspaces)?, Some(d))
                }
            };
            let consistent = filter.is_consistent();
            let atoms = match filter.atoms() {
                Ok(a) => Value::Array(a.iter().map(subspace_json).collect()),
                Err(_) => Value::Null,
            };
            let value = json!({
                "filter": name,
                "kind": kind,
                "consistent": consistent,
                "minimum": filter.minimum().map(subspace_json),
                "atoms": atoms,
                "descent": descent.map(|d| json!({
                    "candidate": subspace_json(&d.candidate),
                    "principal": d.principal,
                    "sweeps": d.sweeps,
                })),
            });
            let text = match consistent {
                Some(true) => "consistent\n",
                Some(false) => "inconsistent\n",
                None => "consistency undetermined: descent found no minimum\n",
            };
            Ok(Output::new(value, text, 0))
        }
    }
}

fn refute(ws: &Workspace, arg: &str, ambient: Option<usize>) -> CliResult<Output> {
    let label = parse_label(arg)?;
    let d = ambient
        .or_else(|| label_ambient(ws, &label))
        .ok_or_else(|| CliError::Usage(format!("`{arg}` does not name a subspace; pass --ambient")))?;
    let space = ws.space(d)?;
    let e = ws.subspace(&space, &label, "subspace")?;
    match refuting_observable(&space, &e) {
        Err(Error::NoRefutation(reason)) => Ok(Output::new(
            json!({ "refuted": false, "reason": reason }),
            format!("no refuting observable: {reason}\n"),
            1,
        )),
        Err(e) => Err(e.into()),
        Ok(o) => {
            let value = json!({
                "refuted": true,
                "parts": o.parts.iter().map(subspace_json).collect::<Vec<_>>(),
            });
            Ok(Output::new(value, format!("refuted by an observable with {} parts\n", o.len()), 0))
        }
    }
}

fn axioms(mutate: bool, only: Option<char>) -> CliResult<Output> {
    let targets: Vec<Axiom> = match only {
        None => Axiom::ALL.to_vec(),
        Some(c) => vec![Axiom::from_letter(c).ok_or_else(|| CliError::Usage(format!("no axiom `{c}`")))?],
    };
    if !mutate {
        let list: Vec<Value> = targets
            .iter()
            .map(|a| json!({ "axiom": a.letter().to_string(), "statement": a.statement() }))
            .collect();
        let text: String = targets.iter().map(|a| format!("{a}\n")).collect();
        return Ok(Output::new(json!({ "axioms": list }), text, 0));
    }
    let mut results = Vec::new();
    let mut text = String::new();
    let mut all_caught = true;
    for target in targets {
        let m = mutants::for_axiom(target)?;
        let r = check_axioms(&m.graph, None, Sampling::default())?;
        let failed = r.failed_axioms();
        let outcome = r.outcome(target);
        let caught = outcome.counterexample.is_some();
        all_caught &= caught;
        let l = m.graph.lattice();
        let names = m.graph.names();
        let rv = |v: &usize| json!(names[*v]);
        let re = |e: &LatticeElement| json!(element_name(l, *e));
        let letters: Vec<String> = failed.iter().map(|a| a.letter().to_string()).collect();
        text.push_str(&format!(
            "({}) {}: fails {}{}\n",
            target.letter(),
            if caught { "caught" } else { "MISSED" },
            letters.join(", "),
            if failed == [target] { "" } else { " (not exactly one)" }
        ));
        results.push(json!({
            "target": target.letter().to_string(),
            "description": m.description,
            "caught": caught,
            "failed": letters,
            "exactly_one": failed == [target],
            "counterexample": counterexample_json(outcome, &rv, &re),
        }));
    }
    Ok(Output::new(json!({ "mutants": results }), text, u8::from(!all_caught)))
}
