use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use cocrit::canon::random_gnp;
use cocrit::construction::{self, ConstructionParams};
use cocrit::percolation::{self, Mode, RunOptions};
use cocrit::report::RunReport;
use cocrit::search::BRUTE_FORCE_EDGE_CAP;
use cocrit::stable::{core_bound_check, hajnal_check, CoreCheck};
use cocrit::verify::{self, with_jobs};
use cocrit::{brute_force_exists, cross_graph, exists_critical_coloring, io, Error, Graph, SearchBudget, SearchStatus};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INDETERMINATE: u8 = 3;

#[derive(Parser)]
#[command(name = "cocrit", version, about = "Construct, verify and certify (K_t, T_k)-co-critical graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "COCRIT_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Node cap per search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    node_cap: u64,

    /// Time cap per search, seconds.
    #[arg(long, global = true, default_value_t = 600.0)]
    time_cap: f64,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build the extremal graph and its distinguished colouring.
    Construct {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Decide co-criticality edge by edge.
    Verify {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// Also run the structural checks on co-critical inputs.
        #[arg(long)]
        structure: bool,
    },
    /// Decide whether every colouring has a red K_t or a blue tree on k vertices.
    Arrows {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
    },
    /// Run the weighted bootstrap percolation on the cross graph.
    Percolate {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        /// Needed unless --construct supplies them.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Starting vertex; defaults to one of minimum degree.
        #[arg(long)]
        start: Option<usize>,
        /// Record failed progress checks instead of stopping.
        #[arg(long)]
        exploratory: bool,
        /// Write the per-iteration trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        verbose: bool,
    },
    /// Smallest co-critical graphs on n vertices, by exhaustive search.
    Minsearch {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Stable-set and oracle property suites over a corpus.
    Props {
        /// graph6 file, one graph per line.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Additional seeded random graphs on 8 to 10 vertices.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Graph6,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Inline graph6 string.
    #[arg(long)]
    graph: Option<String>,
    /// File holding a graph6 line or an adjacency list.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Extremal construction `t,k,n`.
    #[arg(long, value_parser = parse_triple)]
    construct: Option<(usize, usize, usize)>,
    /// Complete graph on this many vertices.
    #[arg(long)]
    complete: Option<usize>,
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("`{p}` is not an integer")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [t, k, n] => Ok((t, k, n)),
        _ => Err("expected t,k,n".into()),
    }
}

struct Loaded {
    graph: Graph,
    construction: Option<ConstructionParams>,
}

impl GraphSource {
    fn load(&self) -> cocrit::Result<Loaded> {
        if let Some(text) = &self.graph {
            return Ok(Loaded { graph: io::parse_graph6(text.trim())?, construction: None });
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
            return Ok(Loaded { graph: io::parse_any(&text)?, construction: None });
        }
        if let Some((t, k, n)) = self.construct {
            let p = ConstructionParams::new(t, k, n)?;
            let (graph, _) = construction::build(&p)?;
            return Ok(Loaded { graph, construction: Some(p) });
        }
        let n = self.complete.expect("clap enforces one source");
        if n == 0 || n > cocrit::MAX_ORDER {
            return Err(Error::InvalidParams(format!("complete graph order {n} out of range")));
        }
        Ok(Loaded { graph: Graph::complete(n), construction: None })
    }

    fn describe(&self) -> Value {
        json!({
            "graph": self.graph,
            "input": self.input.as_ref().map(|p| p.display().to_string()),
            "construct": self.construct.map(|(t, k, n)| [t, k, n]),
            "complete": self.complete,
        })
    }
}

struct Outcome {
    report: RunReport,
    code: u8,
    summary: String,
    /// Lines printed before the report.
    /// Replaces the JSON report on stdout when set.
    raw: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match SearchBudget::new(cli.node_cap, cli.time_cap, SearchBudget::default().enumeration_cap) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let jobs = cli.jobs;
    let seed = cli.seed;
    match with_jobs(jobs, move || dispatch(cli.command, budget, seed)) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let body = out.raw.clone().unwrap_or_else(|| out.report.to_json());
            let _ = writeln!(stdout, "{body}");
            for w in &out.report.warnings {
                eprintln!("warning: {w}");
            }
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Indeterminate { .. } => EXIT_INDETERMINATE,
                Error::Progress { .. } | Error::Invariant { .. } | Error::NotCocritical { .. } => EXIT_FALSE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn dispatch(cmd: Command, budget: SearchBudget, seed: u64) -> cocrit::Result<Outcome> {
    match cmd {
        Command::Construct { t, k, n, emit } => cmd_construct(t, k, n, emit),
        Command::Verify { graph, t, k, structure } => cmd_verify(&graph, t, k, structure, budget),
        Command::Arrows { graph, t, k } => cmd_arrows(&graph, t, k, budget),
        Command::Percolate { graph, q, t, k, start, exploratory, trace, verbose } => {
            let mode = if exploratory { Mode::Exploratory } else { Mode::Strict };
            cmd_percolate(&graph, q, t.zip(k), start, RunOptions { mode, verbose }, trace, budget)
        }
        Command::Minsearch { t, k, n } => cmd_minsearch(t, k, n, budget),
        Command::Props { corpus, random } => cmd_props(corpus, random, seed),
    }
}

fn cmd_construct(t: usize, k: usize, n: usize, emit: Emit) -> cocrit::Result<Outcome> {
    let mut report = RunReport::new("construct", json!({"t": t, "k": k, "n": n}));
    let p = ConstructionParams::new(t, k, n)?;
    let rec = report.time("build", || construction::record(&p))?;
    report.warnings.extend(p.warning.clone());
    let summary = format!("construct: {} vertices, {} edges, upper bound {}", n, rec.edges, rec.upper_bound);
    let raw = match emit {
        Emit::Graph6 => Some(rec.graph6.clone()),
        Emit::Json => None,
    };
    report.results = serde_json::to_value(&rec).expect("record serializes");
    Ok(Outcome { report, code: 0, summary, raw })
}

fn cmd_verify(src: &GraphSource, t: usize, k: usize, structure: bool, budget: SearchBudget) -> cocrit::Result<Outcome> {
    let mut report = RunReport::new("verify", json!({"source": src.describe(), "t": t, "k": k, "structure": structure}));
    let loaded = src.load()?;
    let g = &loaded.graph;
    let verdict = report.time("verify", || verify::is_cocritical(g, t, k, budget))?;
    let mut results = json!({
        "graph6": io::emit_graph6(g),
        "order": g.order(),
        "edges": g.edge_count(),
        "non_edges": g.non_edges().len(),
        "report": verdict,
    });
    if structure && verdict.is_cocritical {
        let base = verdict.base_witness.as_ref().expect("co-critical graphs have a witness");
        let coloring = cocrit::partition_to_coloring(g, base)?;
        let violations = verify::critical_structure_check(g, &coloring, t, k)?;
        results["witness_structure"] = serde_json::to_value(violations).expect("serializes");
        let checks = report.time("structure", || verify::structure_checks_with(g, t, k, budget, &verdict))?;
        results["structure"] = serde_json::to_value(checks).expect("serializes");
    }
    let code = if !verdict.determinate {
        EXIT_INDETERMINATE
    } else if verdict.is_cocritical {
        0
    } else {
        EXIT_FALSE
    };
    let summary = format!(
        "verify: co-critical={} determinate={} ({} of {} non-edges exhausted)",
        verdict.is_cocritical,
        verdict.determinate,
        verdict.exhausted_count(),
        g.non_edges().len()
    );
    report.results = results;
    Ok(Outcome { report, code, summary, raw: None })
}

fn cmd_arrows(src: &GraphSource, t: usize, k: usize, budget: SearchBudget) -> cocrit::Result<Outcome> {
    let mut report = RunReport::new("arrows", json!({"source": src.describe(), "t": t, "k": k}));
    let loaded = src.load()?;
    let out = report.time("search", || exists_critical_coloring(&loaded.graph, t, k, budget))?;
    let arrows = match out.status {
        SearchStatus::Found => Some(false),
        SearchStatus::Exhausted => Some(true),
        SearchStatus::BudgetExceeded => None,
    };
    let code = match arrows {
        Some(true) => 0,
        Some(false) => EXIT_FALSE,
        None => EXIT_INDETERMINATE,
    };
    report.results = json!({"arrows": arrows, "search": out.record()});
    let summary = match arrows {
        Some(a) => format!("arrows: {a}"),
        None => "arrows: indeterminate (budget exceeded)".into(),
    };
    Ok(Outcome { report, code, summary, raw: None })
}

fn cmd_percolate(
    src: &GraphSource,
    q: usize,
    tk: Option<(usize, usize)>,
    start: Option<usize>,
    opts: RunOptions,
    trace: Option<PathBuf>,
    budget: SearchBudget,
) -> cocrit::Result<Outcome> {
    let mut report = RunReport::new(
        "percolate",
        json!({"source": src.describe(), "q": q, "start": start, "mode": opts.mode, "t_k": tk}),
    );
    let loaded = src.load()?;
    let g = &loaded.graph;
    let blocks = match (&loaded.construction, tk) {
        (Some(p), _) => construction::RoleLayout::new(p).distinguished_blocks(),
        (None, Some((t, k))) => report
            .time("max_red", || cocrit::max_red_critical_coloring(g, t, k, budget))?
            .ok_or_else(|| Error::Precondition("the graph has no critical colouring".into()))?
            .blue_blocks(),
        (None, None) => return Err(Error::InvalidParams("--t and --k are required without --construct".into())),
    };
    let h = cross_graph(g, &blocks)?;
    let run = report.time("percolate", || percolation::run(&h, &blocks, q, start, opts))?;
    if let Some(path) = &trace {
        std::fs::write(path, run.trace_jsonl())
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display())))?;
    }
    let c = &run.certificate;
    let summary = format!(
        "percolate: {} iterations, |R| = {}, e(H) = {} >= {}·({} - {}) = {}{}",
        c.iterations,
        c.r_final,
        c.edges,
        q,
        c.order,
        c.r_final,
        c.lower_bound,
        if run.certified { "" } else { " (exploratory: progress checks failed)" }
    );
    report.results = json!({"blocks": blocks.to_lists(), "cross_graph6": io::emit_graph6(&h), "run": run});
    Ok(Outcome { report, code: 0, summary, raw: None })
}

fn cmd_minsearch(t: usize, k: usize, n: usize, budget: SearchBudget) -> cocrit::Result<Outcome> {
    let mut report = RunReport::new("minsearch", json!({"t": t, "k": k, "n": n}));
    let found = report.time("search", || verify::min_cocritical_search(t, k, n, budget))?;
    let summary = match found.min_edges {
        Some(m) => format!("minsearch: {} classes, minimum {m} edges, {} witnesses", found.classes_scanned, found.witnesses.len()),
        None => format!("minsearch: {} classes, no co-critical graph", found.classes_scanned),
    };
    let code = if found.indeterminate > 0 { EXIT_INDETERMINATE } else { 0 };
    report.results = serde_json::to_value(&found).expect("serializes");
    Ok(Outcome { report, code, summary, raw: None })
}

const ORACLE_PAIRS: [(usize, usize); 3] = [(3, 3), (3, 4), (4, 3)];

fn graph_props(g: &Graph) -> cocrit::Result<(Vec<&'static str>, bool, usize)> {
    let mut failed = Vec::new();
    if !hajnal_check(g)? {
        failed.push("hajnal");
    }
    let core = core_bound_check(g)?;
    if core.is_fail() {
        failed.push("core_bound");
    }
    let inapplicable = matches!(core, CoreCheck::Inapplicable { .. });
    let omega = g.clique_number();
    let via_stable = cocrit::stable::clique_core(g, omega)?;
    let direct = g.cliques(omega).into_iter().fold(g.vertices(), |acc, c| acc.intersection(c));
    if via_stable != direct {
        failed.push("clique_core");
    }
    let mut oracle = 0;
    if g.edge_count() <= BRUTE_FORCE_EDGE_CAP {
        for (t, k) in ORACLE_PAIRS {
            let fast = exists_critical_coloring(g, t, k, SearchBudget::default())?;
            let slow = brute_force_exists(g, t, k)?;
            oracle += 1;
            if (fast.status == SearchStatus::Found) != slow || fast.status == SearchStatus::BudgetExceeded {
                failed.push("oracle");
            }
        }
    }
    Ok((failed, inapplicable, oracle))
}

fn cmd_props(corpus: Option<PathBuf>, random: usize, seed: u64) -> cocrit::Result<Outcome> {
    let mut report = RunReport::new(
        "props",
        json!({"corpus": corpus.as_ref().map(|p| p.display().to_string()), "random": random, "seed": seed}),
    );
    let mut graphs = Vec::new();
    if let Some(path) = &corpus {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            graphs.push(io::parse_graph6(line)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let n = rng.gen_range(8..=10);
        let p = rng.gen_range(0.1..0.9);
        graphs.push(random_gnp(&mut rng, n, p));
    }
    if graphs.is_empty() {
        return Err(Error::InvalidParams("no graphs: give --corpus or --random".into()));
    }
    let rows: Vec<_> = report.time("suites", || graphs.par_iter().map(graph_props).collect::<cocrit::Result<Vec<_>>>())?;
    let failures: Vec<Value> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.0.is_empty())
        .map(|(i, r)| json!({"index": i, "graph6": io::emit_graph6(&graphs[i]), "failed": r.0}))
        .collect();
    let inapplicable = rows.iter().filter(|r| r.1).count();
    let oracle_checks: usize = rows.iter().map(|r| r.2).sum();
    let summary = format!(
        "props: {} graphs, {} failures, core bound inapplicable on {}, {} oracle comparisons",
        graphs.len(),
        failures.len(),
        inapplicable,
        oracle_checks
    );
    let code = if failures.is_empty() { 0 } else { EXIT_FALSE };
    report.results = json!({
        "graphs": graphs.len(),
        "all_pass": failures.is_empty(),
        "core_bound_inapplicable": inapplicable,
        "oracle_comparisons": oracle_checks,
        "failures": failures,
    });
    Ok(Outcome { report, code, summary, raw: None })
}
