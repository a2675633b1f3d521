//! `recon`: batch front end for decks, counts, ball-profile reconstruction and
//! catalog sweeps.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 inconsistency or
//! counterexample.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use recon_core::canon::Canonical;
use recon_core::catalog::{
    enumerate_graphs_with, search_pseudosimilar, GraphCatalog, SearchKind, EXAMPLE_CHECKS,
    GENERATION_LIMIT,
};
use recon_core::count::{
    count, count_at_vertex, count_edge_root_coincident, count_edge_rooted_total,
    count_root_coincident, count_rooted_total, CountReport, Rooting,
};
use recon_core::deck::{deck, edge_deck, Deck, DeckKind};
use recon_core::graph6::{parse_graph6, parse_graph6_lines, write_graph6};
use recon_core::identities::eval_all;
use recon_core::par::with_jobs;
use recon_core::profile::{
    radius_from_edge_deck, s_profile, solve_s_profile, solve_t_profile, t_profile, BallProfile,
    EdgeDeckRadius, SolveTrace,
};
use recon_core::{Distance, Edge, EdgeRootedGraph, Exec, Graph, Mode, VertexRootedGraph};

#[derive(Parser)]
#[command(name = "recon", version, about = "Graph reconstruction toolkit")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Vertex,
    Edge,
}

impl From<KindArg> for DeckKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Vertex => DeckKind::Vertex,
            KindArg::Edge => DeckKind::Edge,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Subgraph,
    Induced,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Subgraph => Mode::Subgraph,
            ModeArg::Induced => Mode::Induced,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the vertex or edge deck of a graph.
    Deck {
        /// graph6 file holding one graph ("-" for stdin).
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Vertex)]
        kind: KindArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count copies of a pattern in a host graph.
    Count(CountArgs),
    /// Recover the radius-k ball profile from a deck file.
    Reconstruct {
        /// Deck file, text or JSON.
        deck: PathBuf,
        #[arg(long)]
        k: usize,
        /// Deck kind when the file does not say.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// graph6 file with the true graph; checks the deck, the radius
        /// precondition and the recovered profile against it.
        #[arg(long)]
        verify: Option<PathBuf>,
        #[arg(long)]
        profile_out: Option<PathBuf>,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Radius read off an edge deck.
    Radius { deck: PathBuf },
    /// Write all graphs of one order, up to isomorphism, as graph6.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run a check over a whole catalog.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Pattern graph6 string.
    #[arg(long)]
    pattern: String,
    /// Host graph6 string.
    #[arg(long)]
    host: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Subgraph)]
    mode: ModeArg,
    /// Root vertex of the pattern.
    #[arg(long, conflicts_with = "root_edge")]
    root: Option<usize>,
    /// Root edge of the pattern, as "a,b".
    #[arg(long, value_parser = parse_edge)]
    root_edge: Option<Edge>,
    /// Host vertex. Without --root, counts copies containing it.
    #[arg(long, conflicts_with = "host_edge")]
    vertex: Option<usize>,
    /// Host root edge, as "a,b"; needs --root-edge.
    #[arg(long, value_parser = parse_edge, requires = "root_edge")]
    host_edge: Option<Edge>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Roundtrip,
    Search,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest order to generate (identities and roundtrip sweep every order
    /// up to it; search uses exactly this order).
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// graph6 catalog to sweep instead of generating one.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Pair kind for the search suite.
    #[arg(long, value_enum, default_value_t = KindArg::Vertex)]
    kind: KindArg,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once(',').ok_or("expected \"a,b\"")?;
    let a = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    if a == b {
        return Err("edge ends must differ".into());
    }
    Ok(Edge::new(a, b))
}

enum Failure {
    Usage(String),
    Found(String),
}

impl From<recon_core::Error> for Failure {
    fn from(e: recon_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Found(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Deck {
            input,
            kind,
            output,
        } => cmd_deck(&input, kind.into(), output.as_deref(), fmt),
        Command::Count(args) => cmd_count(&args, fmt),
        Command::Reconstruct {
            deck,
            k,
            kind,
            verify,
            profile_out,
            trace_out,
        } => cmd_reconstruct(
            &deck,
            k,
            kind.map(Into::into),
            verify.as_deref(),
            profile_out.as_deref(),
            trace_out.as_deref(),
            fmt,
        ),
        Command::Radius { deck } => cmd_radius(&deck, fmt),
        Command::Catalog {
            n,
            connected,
            output,
            jobs,
        } => {
            let cat = with_jobs(jobs, || enumerate_graphs_with(n, connected, exec_for(jobs)))?;
            emit(output.as_deref(), &cat.to_graph6())
        }
        Command::Sweep(args) => with_jobs(args.jobs, || cmd_sweep(&args, fmt)),
    }
}

fn exec_for(jobs: usize) -> Exec {
    if jobs == 1 {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let mut graphs = parse_graph6_lines(&read_input(path)?)?;
    match graphs.len() {
        1 => Ok(graphs.remove(0)),
        n => Err(Failure::Usage(format!(
            "{}: expected one graph, found {n}",
            path.display()
        ))),
    }
}

fn read_deck(path: &Path, kind: Option<DeckKind>) -> Result<Deck, Failure> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok(Deck::from_json(&value)?);
    }
    Ok(Deck::from_text(&text, kind)?)
}

fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn cmd_deck(input: &Path, kind: DeckKind, output: Option<&Path>, fmt: Format) -> Outcome {
    let g = read_graph(input)?;
    let d = match kind {
        DeckKind::Vertex => deck(&g),
        DeckKind::Edge => edge_deck(&g),
    };
    let text = match fmt {
        Format::Text => d.to_text(),
        Format::Json => pretty(&d.to_json()),
    };
    emit(output, &text)
}

fn cmd_count(a: &CountArgs, fmt: Format) -> Outcome {
    let pattern = parse_graph6(&a.pattern)?;
    let host = parse_graph6(&a.host)?;
    let mode = Mode::from(a.mode);
    let (rooted, value) = match (a.root, a.root_edge, a.vertex, a.host_edge) {
        (None, None, None, None) => (Rooting::None, count(&pattern, &host, mode)),
        (None, None, Some(v), None) => (
            Rooting::RootAnywhere,
            count_at_vertex(&pattern, &host, v, mode)?,
        ),
        (Some(r), None, None, None) => {
            let fx = VertexRootedGraph::new(pattern.clone(), r)?;
            (Rooting::None, count_rooted_total(&fx, &host, mode))
        }
        (Some(r), None, Some(v), None) => {
            let fx = VertexRootedGraph::new(pattern.clone(), r)?;
            let gv = VertexRootedGraph::new(host.clone(), v)?;
            (
                Rooting::RootCoincident,
                count_root_coincident(&fx, &gv, mode),
            )
        }
        (None, Some(e), None, None) => {
            let fe = EdgeRootedGraph::new(pattern.clone(), e)?;
            (Rooting::None, count_edge_rooted_total(&fe, &host, mode))
        }
        (None, Some(e), None, Some(h)) => {
            let fe = EdgeRootedGraph::new(pattern.clone(), e)?;
            let ge = EdgeRootedGraph::new(host.clone(), h)?;
            (
                Rooting::RootCoincident,
                count_edge_root_coincident(&fe, &ge, mode),
            )
        }
        _ => {
            return Err(Failure::Usage(
                "an edge-rooted pattern needs --host-edge, not --vertex".into(),
            ))
        }
    };
    let report = CountReport {
        pattern: pattern.canon_key(),
        host: host.canon_key(),
        mode,
        rooted,
        value,
    };
    match fmt {
        Format::Text => println!("{value}"),
        Format::Json => print!(
            "{}",
            pretty(&serde_json::to_value(&report).expect("report serializes"))
        ),
    }
    Ok(())
}

fn profile_text(p: &BallProfile) -> String {
    let mut out = format!("# {} profile k={} total={}\n", p.kind, p.k, p.total());
    for e in p.entries() {
        let root = match e.graph.root_spec() {
            recon_core::profile::RootSpec::Vertex(r) => r.to_string(),
            recon_core::profile::RootSpec::Edge(a, b) => format!("{a},{b}"),
        };
        out.push_str(&format!(
            "{} root={} ×{}\n",
            write_graph6(e.graph.graph()),
            root,
            e.multiplicity
        ));
    }
    out
}

fn trace_text(t: &SolveTrace) -> String {
    let mut out = format!("# trace k={} candidates={}\n", t.k, t.steps.len());
    for (i, s) in t.steps.iter().enumerate() {
        let sub: String = s
            .terms
            .iter()
            .map(|term| format!(" - {}*{}", term.coefficient, term.multiplicity))
            .collect();
        out.push_str(&format!(
            "A{} {} e={} n = {}{} = {}\n",
            i + 1,
            s.graph6,
            s.edges,
            s.lhs,
            sub,
            s.multiplicity
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_reconstruct(
    deck_path: &Path,
    k: usize,
    kind: Option<DeckKind>,
    verify: Option<&Path>,
    profile_out: Option<&Path>,
    trace_out: Option<&Path>,
    fmt: Format,
) -> Outcome {
    let d = read_deck(deck_path, kind)?;
    if d.kind() == DeckKind::Edge && k < 2 {
        return Err(Failure::Usage(
            "edge-ball reconstruction needs k >= 2".into(),
        ));
    }
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    let truth = verify.map(read_graph).transpose()?;
    if let Some(g) = &truth {
        let own = match d.kind() {
            DeckKind::Vertex => deck(g),
            DeckKind::Edge => edge_deck(g),
        };
        if own != d {
            return Err(Failure::Found(
                "verify: the deck is not the deck of the given graph".into(),
            ));
        }
        let radius = g.radius();
        if !g.is_connected() || radius <= Distance::Finite(k) {
            let r = radius
                .finite()
                .map_or("infinite".to_string(), |r| r.to_string());
            eprintln!("warning: precondition fails (radius {r} <= k = {k}); no profile is trusted");
            let verdict =
                json!({ "verdict": "precondition-failed", "radius": radius.finite(), "k": k });
            if fmt == Format::Json {
                print!("{}", pretty(&verdict));
            } else {
                println!("verdict: precondition-failed");
            }
            return Ok(());
        }
    }
    let trace = match d.kind() {
        DeckKind::Vertex => solve_s_profile(&d, k)?,
        DeckKind::Edge => solve_t_profile(&d, k)?,
    };
    let trace_json = trace.to_json();
    if let Some(err) = trace.inconsistency() {
        let text = match fmt {
            Format::Json => pretty(&trace_json),
            Format::Text => trace_text(&trace),
        };
        emit(trace_out, &text)?;
        return Err(Failure::Found(format!("inconsistent deck: {err}")));
    }
    let (profile, _) = match d.kind() {
        DeckKind::Vertex => recon_core::profile::reconstruct_s_profile(&d, k)?,
        DeckKind::Edge => recon_core::profile::reconstruct_t_profile(&d, k)?,
    };
    let verdict = match &truth {
        None => None,
        Some(g) => {
            let direct = match d.kind() {
                DeckKind::Vertex => s_profile(g, k),
                DeckKind::Edge => t_profile(g, k)?,
            };
            Some((same_profile(&profile, &direct), direct))
        }
    };
    match fmt {
        Format::Json => {
            let mut out = json!({ "profile": profile.to_json(), "trace": trace_json });
            if let Some((eq, direct)) = &verdict {
                out["direct"] = direct.to_json();
                out["verdict"] = json!(if *eq { "equal" } else { "different" });
            }
            write_side(profile_out, &pretty(&profile.to_json()))?;
            write_side(trace_out, &pretty(&trace_json))?;
            print!("{}", pretty(&out));
        }
        Format::Text => {
            write_side(profile_out, &profile_text(&profile))?;
            write_side(trace_out, &trace_text(&trace))?;
            if profile_out.is_none() {
                print!("{}", profile_text(&profile));
            }
            if trace_out.is_none() {
                print!("{}", trace_text(&trace));
            }
            if let Some((eq, _)) = &verdict {
                println!("verdict: {}", if *eq { "equal" } else { "different" });
            }
        }
    }
    match verdict {
        Some((false, _)) => Err(Failure::Found(
            "verify: recovered profile differs from the direct one".into(),
        )),
        _ => Ok(()),
    }
}

fn write_side(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => emit(Some(p), text),
        None => Ok(()),
    }
}

fn same_profile(a: &BallProfile, b: &BallProfile) -> bool {
    let key = |p: &BallProfile| {
        p.entries()
            .iter()
            .map(|e| (e.key.clone(), e.multiplicity))
            .collect::<Vec<_>>()
    };
    a.kind == b.kind && a.k == b.k && key(a) == key(b)
}

fn cmd_radius(path: &Path, fmt: Format) -> Outcome {
    let d = read_deck(path, Some(DeckKind::Edge))?;
    let r = radius_from_edge_deck(&d)?;
    match fmt {
        Format::Json => print!(
            "{}",
            pretty(&serde_json::to_value(r).expect("radius serializes"))
        ),
        Format::Text => match r {
            EdgeDeckRadius::Radius(r) => println!("{r}"),
            EdgeDeckRadius::TreeOrDisconnected => println!("tree-or-disconnected"),
        },
    }
    Ok(())
}

fn sweep_catalog(
    args: &SweepArgs,
    exact_order: bool,
    connected: bool,
) -> Result<Vec<Graph>, Failure> {
    if let Some(path) = &args.catalog {
        let cat = GraphCatalog::from_file(path)?;
        return Ok(if connected {
            cat.connected().graphs
        } else {
            cat.graphs
        });
    }
    if args.n > GENERATION_LIMIT {
        return Err(Failure::Usage(format!(
            "generation stops at n = {GENERATION_LIMIT}; pass --catalog for larger orders"
        )));
    }
    let exec = exec_for(args.jobs);
    let orders = if exact_order {
        args.n..=args.n
    } else {
        1..=args.n
    };
    let mut graphs = Vec::new();
    for n in orders {
        graphs.extend(enumerate_graphs_with(n, connected, exec)?.graphs);
    }
    Ok(graphs)
}

struct Summary {
    suite: &'static str,
    graphs: usize,
    checks: usize,
    failures: Vec<Value>,
    extra: Value,
}

fn cmd_sweep(args: &SweepArgs, fmt: Format) -> Outcome {
    let exec = exec_for(args.jobs);
    let summary = match args.suite {
        Suite::Identities => sweep_identities(&sweep_catalog(args, false, false)?, exec)?,
        Suite::Roundtrip => sweep_roundtrip(&sweep_catalog(args, false, true)?, exec)?,
        Suite::Search => sweep_search(&sweep_catalog(args, true, true)?, args.kind, exec)?,
    };
    let first = summary.failures.first().cloned();
    match fmt {
        Format::Json => print!(
            "{}",
            pretty(&json!({
                "suite": summary.suite,
                "graphs": summary.graphs,
                "checks": summary.checks,
                "failures": summary.failures.len(),
                "first_counterexample": first,
                "details": summary.extra,
            }))
        ),
        Format::Text => {
            println!(
                "{}: {} graphs, {} checks, {} failures",
                summary.suite,
                summary.graphs,
                summary.checks,
                summary.failures.len()
            );
            if let Some(f) = &first {
                println!("first counterexample: {f}");
            }
            if !summary.extra.is_null() {
                println!("{}", summary.extra);
            }
        }
    }
    if summary.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Found(format!(
            "{} failures",
            summary.failures.len()
        )))
    }
}

fn sweep_identities(graphs: &[Graph], exec: Exec) -> Result<Summary, Failure> {
    let per_graph = exec.map(graphs, |g| -> recon_core::Result<(usize, Vec<Value>)> {
        let mut checks = 0;
        let mut failures = Vec::new();
        for v in 0..g.order() {
            for rec in eval_all(g, v)? {
                checks += 1;
                if !rec.holds {
                    failures
                        .push(json!({ "graph6": write_graph6(g), "vertex": v, "identity": rec }));
                }
            }
        }
        Ok((checks, failures))
    });
    let mut summary = Summary {
        suite: "identities",
        graphs: graphs.len(),
        checks: 0,
        failures: Vec::new(),
        extra: Value::Null,
    };
    for r in per_graph {
        let (c, f) = r?;
        summary.checks += c;
        summary.failures.extend(f);
    }
    Ok(summary)
}

fn roundtrip_one(g: &Graph) -> recon_core::Result<(usize, Vec<Value>)> {
    let mut checks = 0;
    let mut failures = Vec::new();
    let Some(radius) = g.radius().finite() else {
        return Ok((0, failures));
    };
    let g6 = write_graph6(g);
    if g.order() >= 4 {
        let d = deck(g);
        for k in 1..radius {
            checks += 1;
            let ok = match recon_core::profile::reconstruct_s_profile(&d, k) {
                Ok((p, _)) => same_profile(&p, &s_profile(g, k)),
                Err(_) => false,
            };
            if !ok {
                failures.push(json!({ "graph6": g6, "kind": "vertex", "k": k }));
            }
        }
    }
    if g.size() > 0 {
        let d = edge_deck(g);
        for k in 2..radius {
            checks += 1;
            let ok = match recon_core::profile::reconstruct_t_profile(&d, k) {
                Ok((p, _)) => same_profile(&p, &t_profile(g, k)?),
                Err(_) => false,
            };
            if !ok {
                failures.push(json!({ "graph6": g6, "kind": "edge", "k": k }));
            }
        }
    }
    Ok((checks, failures))
}

fn sweep_roundtrip(graphs: &[Graph], exec: Exec) -> Result<Summary, Failure> {
    let mut summary = Summary {
        suite: "roundtrip",
        graphs: graphs.len(),
        checks: 0,
        failures: Vec::new(),
        extra: Value::Null,
    };
    for r in exec.map(graphs, roundtrip_one) {
        let (c, f) = r?;
        summary.checks += c;
        summary.failures.extend(f);
    }
    Ok(summary)
}

fn sweep_search(graphs: &[Graph], kind: KindArg, exec: Exec) -> Result<Summary, Failure> {
    let cat = GraphCatalog::from_graph6(
        &graphs
            .iter()
            .map(|g| write_graph6(g) + "\n")
            .collect::<String>(),
    )?;
    let kind = match kind {
        KindArg::Vertex => SearchKind::Vertex,
        KindArg::Edge => SearchKind::Edge,
    };
    let reports = search_pseudosimilar(&cat, kind, exec)?;
    let mut failures = Vec::new();
    let mut matching = 0;
    let mut table_matches = 0;
    for r in &reports {
        if !(r.check("isomorphic_cards") && r.check("not_similar")) {
            failures.push(serde_json::to_value(r).expect("report serializes"));
        }
        if kind == SearchKind::Vertex {
            table_matches += r.all(&["paw_table", "path_counts"]) as usize;
            matching += r.all(&EXAMPLE_CHECKS) as usize;
        }
    }
    let extra = match kind {
        SearchKind::Vertex => json!({
            "pairs": reports.len(),
            "paw_table_matches": table_matches,
            "full_matches": matching,
            "best": best_vertex_witness(&reports),
        }),
        SearchKind::Edge => json!({ "pairs": reports.len() }),
    };
    Ok(Summary {
        suite: "search",
        graphs: graphs.len(),
        checks: reports.len(),
        failures,
        extra,
    })
}

fn best_vertex_witness(reports: &[recon_core::catalog::WitnessReport]) -> Value {
    reports
        .iter()
        .max_by_key(|r| {
            let passed = EXAMPLE_CHECKS.iter().filter(|c| r.check(c)).count();
            (passed, std::cmp::Reverse(r.graph6.clone()))
        })
        .map_or(Value::Null, |r| {
            serde_json::to_value(r).expect("report serializes")
        })
}
