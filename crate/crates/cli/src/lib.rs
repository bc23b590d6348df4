//! The `antiramsey` command line, as a library so tests can drive it
//! without spawning processes.
//!
//! [`run`] parses arguments, reads the input graph, calls into the
//! `antiramsey` crate and returns a [`CommandResult`]. Nothing here writes
//! to the terminal; `main.rs` does that.

use std::fmt::Write as _;
use std::io::Read;
use std::str::FromStr;

use antiramsey::engine::{colour_graph_with_reports, EngineOptions};
use antiramsey::experiments::{
    dense_subgraph_census, gnp, scan_to_csv, threshold_scan_with, ScanOptions,
};
use antiramsey::k4::{peel_trace_k4, witness_j, K4Ledger};
use antiramsey::oracle::{brute_force_no_rainbow_colouring_with, OracleOptions};
use antiramsey::{
    complete_colouring, densest_subgraph, enumerate_cliques, find_rainbow_clique, kk_components,
    max_2_density, parse_any, peel_trace, stage::stage_profile, structure::badness, Colouring,
    Error, Graph, Rational, Stage,
};
use antiramsey::colouring::ColouringJson;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub level: &'static str,
    pub message: String,
}

/// What one invocation produced.
#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<Diagnostic>,
    /// `payload` rendered in the requested format.
    #[serde(skip)]
    pub output: String,
    #[serde(skip)]
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value, output: String, diagnostics: Vec<Diagnostic>) -> Self {
        CommandResult { status: Status::Ok, payload, diagnostics, output, exit_code: 0 }
    }

    fn failure(exit_code: i32, payload: Value, output: String, message: String) -> Self {
        CommandResult {
            status: Status::Error,
            payload,
            diagnostics: vec![Diagnostic { level: "error", message }],
            output,
            exit_code,
        }
    }

    fn usage(message: String) -> Self {
        CommandResult::failure(2, Value::Null, String::new(), message)
    }

    fn from_error(e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) | Error::Classification { .. } => 3,
            _ => 1,
        };
        CommandResult::failure(code, json!({ "error": e.to_string() }), String::new(), e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "antiramsey", version, about = "Anti-Ramsey colourings of sparse graphs")]
struct Cli {
    /// Clique order.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Graph file (edge list or JSON), `-` for stdin.
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest number of edges the exhaustive oracle accepts.
    #[arg(long, global = true)]
    guard_edges: Option<usize>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact maximum density and 2-density.
    Density,
    /// All k-cliques.
    Cliques,
    /// K_k-components with their badness.
    Components,
    /// Peel trace of every K_k-component.
    Peel,
    /// Colour every K_k-component so that no K_k is rainbow.
    Colour {
        /// Fail on a missed stage promise instead of reporting it.
        #[arg(long)]
        strict: bool,
    },
    /// Check a colouring: proper, and no rainbow K_k once completed.
    Verify {
        /// Colouring file: JSON `{"edges": [[u, v, c], ...]}` or `u v c` lines.
        #[arg(long)]
        colouring: String,
    },
    /// Whether every proper colouring has a rainbow K_k (exhaustive).
    ForceCheck,
    /// The witness graph J.
    WitnessJ,
    /// Dense vertex sets of bounded size.
    Census {
        #[arg(long, default_value_t = 12)]
        vmax: usize,
        #[arg(long, default_value = "15/7")]
        threshold: String,
    },
    /// A sample of G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Presence rates along p = n^(-c).
    Scan {
        #[arg(long)]
        n: usize,
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<f64>,
        /// Skip the colouring pass.
        #[arg(long)]
        no_colour: bool,
        /// Skip the dense-subgraph census.
        #[arg(long)]
        no_census: bool,
    },
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::ok(Value::Null, text, Vec::new())
                }
                _ => CommandResult::usage(text.trim_end().to_string()),
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok(result) => result,
        Err(Failure::Usage(m)) => CommandResult::usage(m),
        Err(Failure::Domain(e)) => CommandResult::from_error(e),
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<CommandResult, Failure>;

fn read_source(path: &str, stdin: &mut dyn Read) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

impl Cli {
    fn graph(&self, stdin: &mut dyn Read) -> std::result::Result<Graph, Failure> {
        let path = self.input.as_deref().ok_or_else(|| Failure::Usage("--input is required".into()))?;
        let text = read_source(path, stdin)?;
        Ok(parse_any(&text).map_err(Error::from)?)
    }

    fn k(&self) -> std::result::Result<usize, Failure> {
        self.k.ok_or_else(|| Failure::Usage("--k is required".into()))
    }

    fn seed(&self) -> std::result::Result<u64, Failure> {
        self.seed.ok_or_else(|| Failure::Usage("--seed is required for random output".into()))
    }

    fn format(&self, default: Format, allowed: &[Format]) -> std::result::Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Usage(format!("format {f:?} is not available for this subcommand").to_lowercase()))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Out {
    use Format::*;
    match &cli.command {
        Command::Density => {
            let fmt = cli.format(Json, &[Json, Text])?;
            let g = cli.graph(stdin)?;
            let (m, set) = densest_subgraph(&g)?;
            let m2 = max_2_density(&g)?;
            let payload = json!({ "m": m, "m2": m2, "densest": set });
            let out = match fmt {
                Text => format!("m  {m}\nm2 {m2}\n"),
                _ => pretty(&payload),
            };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Cliques => {
            let fmt = cli.format(Json, &[Json, Text, Csv])?;
            let (g, k) = (cli.graph(stdin)?, cli.k()?);
            let cliques: Vec<Vec<usize>> = enumerate_cliques(&g, k)
                .into_iter()
                .map(|q| q.into_iter().map(|v| g.label(v)).collect())
                .collect();
            let payload = json!({ "k": k, "count": cliques.len(), "cliques": cliques });
            let out = match fmt {
                Json => pretty(&payload),
                _ => {
                    let sep = if fmt == Csv { "," } else { " " };
                    let mut s = String::new();
                    for q in &cliques {
                        let line: Vec<String> = q.iter().map(usize::to_string).collect();
                        let _ = writeln!(s, "{}", line.join(sep));
                    }
                    s
                }
            };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Components => {
            let fmt = cli.format(Json, &[Json, Text])?;
            let (g, k) = (cli.graph(stdin)?, cli.k()?);
            let comps: Vec<Value> = kk_components(&g, k)
                .iter()
                .map(|c| {
                    let edges: Vec<[usize; 2]> =
                        c.edges().iter().map(|&(u, v)| [c.label(u), c.label(v)]).collect();
                    json!({ "vertices": c.labels(), "edges": edges, "badness": badness(c, k) })
                })
                .collect();
            let payload = json!({ "k": k, "components": comps });
            let out = match fmt {
                Text => {
                    let mut s = String::new();
                    for c in &comps {
                        let _ = writeln!(s, "b={} vertices={}", c["badness"], c["vertices"]);
                    }
                    s
                }
                _ => pretty(&payload),
            };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Peel => {
            let fmt = cli.format(Json, &[Json, Text])?;
            let (g, k) = (cli.graph(stdin)?, cli.k()?);
            let mut traces = Vec::new();
            let mut text = String::new();
            for comp in kk_components(&g, k) {
                let trace = if k == 4 { peel_trace_k4(&comp)? } else { peel_trace(&comp, k)? };
                let mut entry = to_value(&trace);
                if k == 4 {
                    entry["k4Ledger"] = to_value(&K4Ledger::from_trace(&trace));
                }
                let _ = writeln!(text, "component b={}", trace.badness);
                for s in trace.all_steps() {
                    let _ = writeln!(text, "  {} {} edgeDelta={} bDelta={}", s.v, s.config, s.edge_delta, s.b_delta);
                }
                traces.push(entry);
            }
            let payload = json!({ "k": k, "traces": traces });
            let out = if fmt == Text { text } else { pretty(&payload) };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Colour { strict } => {
            let fmt = cli.format(Json, &[Json, Text, Csv])?;
            let (g, k) = (cli.graph(stdin)?, cli.k()?);
            let opts = EngineOptions { strict: *strict, ..EngineOptions::default() };
            let (colouring, reports) = colour_graph_with_reports(&g, k, &opts)?;
            let stage = reports.iter().map(|r| r.stage).max();
            let diagnostics = reports
                .iter()
                .flat_map(|r| &r.findings)
                .map(|f| Diagnostic { level: "finding", message: f.message.clone() })
                .collect();
            let payload = json!({
                "k": k,
                "stage": stage,
                "colouring": colouring.to_json(),
                "reports": reports,
            });
            Ok(CommandResult::ok(payload.clone(), render_colouring(&colouring, fmt, &payload), diagnostics))
        }
        Command::Verify { colouring } => {
            let fmt = cli.format(Json, &[Json, Text])?;
            let (g, k) = (cli.graph(stdin)?, cli.k()?);
            let c = parse_colouring(&read_source(colouring, stdin)?)?;
            if let Err(e) = complete_colouring(&g, &c) {
                let payload = json!({ "proper": false, "rainbow": null, "stage": null });
                let out = if fmt == Text { format!("improper: {e}\n") } else { pretty(&payload) };
                return Ok(CommandResult::failure(1, payload, out, e.to_string()));
            }
            let witness = find_rainbow_clique(&g, &c, k);
            let stage: Option<Stage> = stage_profile(&g, &c, k).ok().map(|p| p.stage);
            let payload = json!({ "proper": true, "rainbow": witness, "stage": stage });
            let out = match (fmt, &witness) {
                (Text, None) => "ok: no rainbow clique\n".to_string(),
                (Text, Some(w)) => format!("rainbow K_{k} on {:?}\n", w.clique),
                _ => pretty(&payload),
            };
            Ok(match witness {
                None => CommandResult::ok(payload, out, Vec::new()),
                Some(w) => CommandResult::failure(1, payload, out, format!("rainbow K_{k} on {:?}", w.clique)),
            })
        }
        Command::ForceCheck => {
            let fmt = cli.format(Json, &[Json, Text])?;
            let (g, k) = (cli.graph(stdin)?, cli.k()?);
            let mut opts = OracleOptions::default();
            if let Some(max) = cli.guard_edges {
                opts.max_edges = max;
            }
            let found = brute_force_no_rainbow_colouring_with(&g, k, &opts)?;
            let payload = json!({
                "forced": found.is_none(),
                "colouring": found.as_ref().map(Colouring::to_json),
            });
            let out = match fmt {
                Text => format!("forced: {}\n", found.is_none()),
                _ => pretty(&payload),
            };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::WitnessJ => {
            let fmt = cli.format(Text, &[Json, Text])?;
            let j = witness_j();
            let payload = to_value(&j);
            let out = if fmt == Text { j.to_edge_list() } else { pretty(&payload) };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Census { vmax, threshold } => {
            let fmt = cli.format(Json, &[Json, Text])?;
            let t = Rational::from_str(threshold)
                .map_err(|e| Failure::Usage(format!("threshold `{threshold}`: {e}")))?;
            let g = cli.graph(stdin)?;
            let sets = dense_subgraph_census(&g, *vmax, t)?;
            let payload = json!({ "threshold": t, "vmax": vmax, "count": sets.len(), "sets": sets });
            let out = match fmt {
                Text => {
                    let mut s = format!("{} sets\n", sets.len());
                    for set in &sets {
                        let _ = writeln!(s, "{set:?}");
                    }
                    s
                }
                _ => pretty(&payload),
            };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Gnp { n, p } => {
            let fmt = cli.format(Json, &[Json, Text])?;
            if !(0.0..=1.0).contains(p) {
                return Err(Failure::Usage(format!("p = {p} is not a probability")));
            }
            let g = gnp(*n, *p, cli.seed()?);
            let payload = to_value(&g);
            let out = if fmt == Text { g.to_edge_list() } else { pretty(&payload) };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
        Command::Scan { n, c, no_colour, no_census } => {
            let fmt = cli.format(Json, &[Json, Csv])?;
            let k = cli.k.unwrap_or(4);
            let trials = cli.trials.ok_or_else(|| Failure::Usage("--trials is required".into()))?;
            let opts = ScanOptions { colour: !no_colour, census: !no_census, ..ScanOptions::default() };
            let rows = threshold_scan_with(k, *n, c, trials, cli.seed()?, &opts)?;
            let payload = to_value(&rows);
            let out = if fmt == Csv { scan_to_csv(&rows) } else { pretty(&payload) };
            Ok(CommandResult::ok(payload, out, Vec::new()))
        }
    }
}

fn render_colouring(c: &Colouring, fmt: Format, payload: &Value) -> String {
    match fmt {
        Format::Json => pretty(payload),
        Format::Text | Format::Csv => {
            let sep = if fmt == Format::Csv { "," } else { " " };
            let mut s = if fmt == Format::Csv { "u,v,colour\n".to_string() } else { String::new() };
            for ((u, v), col) in c.iter() {
                let _ = writeln!(s, "{u}{sep}{v}{sep}{col}");
            }
            s
        }
    }
}

/// JSON colouring, or `u v colour` lines.
fn parse_colouring(text: &str) -> std::result::Result<Colouring, Failure> {
    if text.trim_start().starts_with('{') {
        let json: ColouringJson = serde_json::from_str(text)
            .map_err(|e| Failure::Usage(format!("invalid colouring JSON: {e}")))?;
        return Ok(Colouring::from_json(&json)?);
    }
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<usize> = line
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Failure::Usage(format!("colouring line {}: `{line}`", i + 1)))?;
        match nums[..] {
            [u, v, c] => edges.push([u, v, c]),
            _ => return Err(Failure::Usage(format!("colouring line {}: `{line}`", i + 1))),
        }
    }
    Ok(Colouring::from_json(&ColouringJson { edges })?)
}
