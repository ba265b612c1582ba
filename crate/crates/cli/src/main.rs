use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chibound::bounds::{self, BoundValue};
use chibound::corpus::{enumerate_graphs, parse_graphs, write_edge_list, write_graph6, CorpusSpec, GraphFormat};
use chibound::graph::Graph;
use chibound::patterns::{Pattern, PatternSpec};
use chibound::solvers::{chromatic_number, clique_number, independence_number, SolverError};
use chibound::structures::{
    balloon_layer_max_degree, enumerate_balloons, enumerate_bicliques, in_class_f, in_class_h, in_class_l,
    minimal_cutsets, BindingTable, EnumerationCap, StructureError,
};
use chibound::verify::{run_suite, Check, VerificationReport};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "chibound", version, about = "Structural chi-boundedness toolkit for small graphs")]
struct Cli {
    /// Input file; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::G6)]
    format: Format,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random corpora that do not name one.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for verification and generation.
    #[arg(long, global = true, env = "CHIBOUND_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Largest graph the structure enumerators accept.
    #[arg(long, global = true, default_value_t = 16)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Edges,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::G6 => GraphFormat::Graph6,
            Format::Edges => GraphFormat::Edges,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Chi,
    Omega,
    Alpha,
    Degeneracy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassName {
    H,
    L,
    F,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a pattern in each input graph.
    Detect {
        #[arg(long)]
        pattern: String,
        /// Match as a (not necessarily induced) subgraph.
        #[arg(long)]
        subgraph: bool,
    },
    /// Compute an exact invariant.
    Solve { invariant: Invariant },
    /// List (p, t)-balloons.
    Balloons {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        t: usize,
    },
    /// List maximal t-bicliques.
    Bicliques {
        #[arg(long)]
        t: usize,
    },
    /// List minimal cutsets.
    Cutsets,
    /// Test class membership.
    Class {
        class: ClassName,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Binding table for L: `identity` or `w:value,...`.
        #[arg(long, default_value = "identity")]
        f: String,
    },
    /// Evaluate a bound formula exactly.
    Bound {
        name: String,
        /// Comma-separated `key=value` parameters.
        #[arg(long, default_value = "")]
        params: String,
        /// Decimal digits to print before truncating.
        #[arg(long, default_value_t = 80)]
        digits: usize,
        /// Write the full decimal value here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification checks over a corpus.
    Verify {
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
        /// Corpus spec; when omitted the input graphs are used.
        #[arg(long)]
        corpus: Option<String>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a corpus.
    Generate {
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// An error with the exit code it maps to.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, msg.into())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::TooLarge { .. } | StructureError::Truncated(_) | StructureError::Solver(_) => {
                Failure(EXIT_INCONCLUSIVE, e.to_string())
            }
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        Failure(EXIT_INCONCLUSIVE, e.to_string())
    }
}

struct Ctx {
    input: Option<PathBuf>,
    format: GraphFormat,
    json: bool,
    seed: u64,
    jobs: usize,
    cap: EnumerationCap,
    out: Vec<String>,
}

impl Ctx {
    fn emit(&mut self, line: impl Into<String>) {
        self.out.push(line.into());
    }

    fn read_items(&self) -> Result<Vec<Result<Graph, String>>, Failure> {
        let text = match &self.input {
            Some(path) => fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(e.to_string()))?;
                s
            }
        };
        let items = parse_graphs(&text, self.format);
        if items.is_empty() {
            return Err(Failure::usage("no graphs in input"));
        }
        Ok(items)
    }

    fn read_graphs(&self) -> Result<Vec<Graph>, Failure> {
        self.read_items()?.into_iter().collect::<Result<_, _>>().map_err(Failure::usage)
    }
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable")
}

fn detect(ctx: &mut Ctx, pattern: &str, subgraph: bool) -> Result<u8, Failure> {
    let spec: PatternSpec = pattern.parse().map_err(|e: chibound::patterns::PatternError| Failure::usage(e.to_string()))?;
    let pattern = Pattern::new(spec).map_err(|e| Failure::usage(e.to_string()))?;
    for g in ctx.read_graphs()? {
        let hit = pattern.find_in(&g, !subgraph);
        if ctx.json {
            let line = json!({ "graph": write_graph6(&g), "pattern": pattern.spec.to_string(), "occurrence": hit });
            ctx.emit(line.to_string());
        } else {
            match hit {
                Some(o) => ctx.emit(format!("{} {:?}", pattern.spec, o.mapping)),
                None => ctx.emit("none"),
            }
        }
    }
    Ok(0)
}

fn solve(ctx: &mut Ctx, inv: Invariant) -> Result<u8, Failure> {
    for g in ctx.read_graphs()? {
        let (value, witness) = match inv {
            Invariant::Chi => {
                let c = chromatic_number(&g)?;
                (c.count, to_json(&c.colors))
            }
            Invariant::Omega => {
                let c = clique_number(&g);
                (c.size, to_json(&c.members))
            }
            Invariant::Alpha => {
                let s = independence_number(&g);
                (s.size, to_json(&s.members))
            }
            Invariant::Degeneracy => {
                let d = g.degeneracy();
                (d.value, to_json(&d.order))
            }
        };
        if ctx.json {
            ctx.emit(json!({ "graph": write_graph6(&g), "value": value, "witness": witness }).to_string());
        } else {
            ctx.emit(value.to_string());
        }
    }
    Ok(0)
}

fn balloons(ctx: &mut Ctx, p: usize, t: usize) -> Result<u8, Failure> {
    let mut code = 0;
    for g in ctx.read_graphs()? {
        let list = enumerate_balloons(&g, p, t, &ctx.cap)?;
        if list.truncated {
            code = EXIT_INCONCLUSIVE;
        }
        if ctx.json {
            let items: Vec<Value> = list
                .balloons
                .iter()
                .map(|b| {
                    let mut v = to_json(b);
                    v["layer_max_degree"] = to_json(&balloon_layer_max_degree(&g, b));
                    v
                })
                .collect();
            ctx.emit(json!({ "graph": write_graph6(&g), "balloons": items, "truncated": list.truncated }).to_string());
        } else {
            ctx.emit(format!("{} balloons{}", list.balloons.len(), if list.truncated { " (truncated)" } else { "" }));
            for b in &list.balloons {
                let deg = balloon_layer_max_degree(&g, b).map_or("-".to_string(), |d| d.to_string());
                ctx.emit(format!("path={:?} body={} Z={} value={} layer_max_degree={deg}", b.path, b.body, b.z_set, b.value));
            }
        }
    }
    Ok(code)
}

fn bicliques(ctx: &mut Ctx, t: usize) -> Result<u8, Failure> {
    let mut code = 0;
    for g in ctx.read_graphs()? {
        let list = enumerate_bicliques(&g, t, &ctx.cap)?;
        if list.truncated {
            code = EXIT_INCONCLUSIVE;
        }
        if ctx.json {
            ctx.emit(json!({ "graph": write_graph6(&g), "bicliques": list.bicliques, "truncated": list.truncated }).to_string());
        } else {
            ctx.emit(format!("{} bicliques, max value {}", list.bicliques.len(), list.max_value().unwrap_or(0)));
            for b in &list.bicliques {
                ctx.emit(format!("X={} Y={} value={}", b.x_set, b.y_set, b.value));
            }
        }
    }
    Ok(code)
}

fn cutsets(ctx: &mut Ctx) -> Result<u8, Failure> {
    let mut code = 0;
    for g in ctx.read_graphs()? {
        let list = minimal_cutsets(&g, &ctx.cap)?;
        if list.truncated {
            code = EXIT_INCONCLUSIVE;
        }
        if ctx.json {
            ctx.emit(json!({ "graph": write_graph6(&g), "cutsets": list.cutsets, "truncated": list.truncated }).to_string());
        } else {
            let sets: Vec<String> = list.cutsets.iter().map(|s| s.to_string()).collect();
            ctx.emit(if sets.is_empty() { "none".to_string() } else { sets.join(" ") });
        }
    }
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn class(ctx: &mut Ctx, class: ClassName, p: usize, i: usize, k: usize, t: usize, f: &str) -> Result<u8, Failure> {
    let table: BindingTable = f.parse()?;
    for g in ctx.read_graphs()? {
        let (member, detail) = match class {
            ClassName::H => {
                let c = in_class_h(&g, p)?;
                (c.free, to_json(&c.witness))
            }
            ClassName::L => match in_class_l(&g, i, &table, &ctx.cap) {
                Ok(cert) => (cert.is_some(), to_json(&cert)),
                Err(StructureError::Precondition { reason, witness }) => {
                    return Err(Failure::usage(format!("{reason}: {}", to_json(&witness))))
                }
                Err(e) => return Err(e.into()),
            },
            ClassName::F => {
                let r = in_class_f(&g, k, p, t, &ctx.cap)?;
                (r.member, to_json(&r))
            }
        };
        if ctx.json {
            ctx.emit(json!({ "graph": write_graph6(&g), "member": member, "detail": detail }).to_string());
        } else {
            ctx.emit(if member { "true" } else { "false" });
        }
    }
    Ok(0)
}

fn parse_params(s: &str) -> Result<BTreeMap<String, u64>, Failure> {
    let mut m = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Failure::usage(format!("expected key=value, got `{part}`")))?;
        let v = v.trim().parse().map_err(|_| Failure::usage(format!("`{k}` must be a nonnegative integer")))?;
        m.insert(k.trim().to_string(), v);
    }
    Ok(m)
}

fn bound(ctx: &mut Ctx, name: &str, params: &str, digits: usize, output: Option<PathBuf>) -> Result<u8, Failure> {
    let mut m = parse_params(params)?;
    let mut get = |k: &str| m.remove(k).ok_or_else(|| Failure::usage(format!("`{name}` needs parameter `{k}`")));
    let err = |e: bounds::BoundError| Failure::usage(e.to_string());
    let mut note = None;
    let value: BoundValue = match name {
        "ramsey_upper" => bounds::ramsey_upper(get("s")?, get("t")?).map_err(err)?,
        "phi_upper" => {
            let phi = bounds::phi_upper(get("n")?, get("w")?).map_err(err)?;
            note = Some(format!("{:?}", phi.branch));
            phi.value
        }
        "mgun_bound" => bounds::mgun_bound(get("p")?, get("q")?, get("s")?, get("t")?).map_err(err)?,
        "theorem_f" => bounds::theorem_f(get("p")?, get("t")?, get("d")?).map_err(err)?,
        "theorem_f_two_arm" => bounds::theorem_f_two_arm(get("p")?, get("t")?, get("d")?).map_err(err)?,
        "biclique_value_bound" => bounds::biclique_value_bound(get("p")?, get("t")?).map_err(err)?,
        "degeneracy_bound" => bounds::degeneracy_bound(get("h")?, get("zeta")?, get("t")?, get("eta")?).map_err(err)?,
        "k3t_total_bound" => {
            let (v, branch) = bounds::k3t_total_bound(get("p")?, get("t")?, get("w")?).map_err(err)?;
            note = Some(format!("{branch:?}"));
            v
        }
        other => {
            let entry = bounds::registry_lookup(other).map_err(err)?;
            let arg = match entry.argument {
                bounds::BoundArgument::CliqueNumber => get("w")?,
                bounds::BoundArgument::Degeneracy => get("d")?,
            };
            note = Some(entry.citation.to_string());
            BoundValue::from_u64(entry.evaluate(arg))
        }
    };
    if let Some(k) = m.keys().next() {
        return Err(Failure::usage(format!("unknown parameter `{k}` for `{name}`")));
    }
    if let Some(path) = output {
        fs::write(&path, value.value.to_string()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    if ctx.json {
        ctx.emit(
            json!({
                "bound": name,
                "value": value.to_decimal_capped(digits),
                "digits": value.value.to_string().len(),
                "log2_hint": value.log2_hint,
                "note": note,
            })
            .to_string(),
        );
    } else {
        ctx.emit(value.to_decimal_capped(digits));
        ctx.emit(format!("log2 ~ {:.3}", value.log2_hint));
        if let Some(n) = note {
            ctx.emit(n);
        }
    }
    Ok(0)
}

fn verify(ctx: &mut Ctx, checks: &[String], corpus: Option<String>, output: Option<PathBuf>) -> Result<u8, Failure> {
    let checks: Vec<Check> = checks
        .iter()
        .map(|c| c.parse::<Check>().map_err(|e| Failure::usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    let corpus = match corpus {
        Some(spec) => {
            let spec = CorpusSpec::parse_with_seed(&spec, ctx.seed).map_err(|e| Failure::usage(e.to_string()))?;
            let pool = rayon_pool(ctx.jobs)?;
            pool.install(|| enumerate_graphs(&spec)).map_err(|e| Failure::usage(e.to_string()))?
        }
        None => {
            let name = ctx.input.as_ref().map_or("stdin".to_string(), |p| p.display().to_string());
            chibound::corpus::Corpus { description: name, items: ctx.read_items()? }
        }
    };
    let reports = run_suite(&corpus, &checks, ctx.jobs, &ctx.cap).map_err(|e| Failure::usage(e.to_string()))?;
    let code = exit_code(&reports);
    let rendered = if ctx.json {
        let v = if reports.len() == 1 { reports[0].to_json() } else { to_json(&reports) };
        serde_json::to_string_pretty(&v).expect("serialisable")
    } else {
        reports.iter().map(render_report).collect::<Vec<_>>().join("\n")
    };
    match output {
        Some(path) => {
            fs::write(&path, rendered + "\n").map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            for r in &reports {
                ctx.emit(summary_line(r));
            }
        }
        None => ctx.emit(rendered),
    }
    Ok(code)
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Failure::usage(e.to_string()))
}

fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.totals.fail > 0) {
        EXIT_COUNTEREXAMPLE
    } else if reports.iter().any(|r| r.totals.inconclusive > 0) {
        EXIT_INCONCLUSIVE
    } else {
        0
    }
}

fn summary_line(r: &VerificationReport) -> String {
    format!(
        "{}: pass={} fail={} skipped={} inconclusive={} (hypotheses held on {} of {}, {} ms)",
        r.check_id,
        r.totals.pass,
        r.totals.fail,
        r.totals.skipped,
        r.totals.inconclusive,
        r.hypotheses_satisfied,
        r.corpus_size,
        r.wall_time_ms
    )
}

fn render_report(r: &VerificationReport) -> String {
    let mut lines = vec![summary_line(r)];
    for cx in &r.counterexamples {
        lines.push(format!(
            "  counterexample {}: measured {} vs {} ({}) {}",
            cx.graph_g6,
            cx.measured,
            cx.threshold.short(),
            cx.threshold_kind,
            cx.witnesses
        ));
    }
    for (k, v) in &r.observations.counters {
        lines.push(format!("  {k}: {v}"));
    }
    for (k, v) in &r.observations.maxima {
        lines.push(format!("  {k} (max over corpus): {v}"));
    }
    for (k, h) in &r.observations.histograms {
        let cells: Vec<String> = h.iter().map(|(b, c)| format!("{b}:{c}")).collect();
        lines.push(format!("  {k} histogram: {}", cells.join(" ")));
    }
    lines.join("\n")
}

fn generate(ctx: &mut Ctx, corpus: &str, output: Option<PathBuf>) -> Result<u8, Failure> {
    let spec = CorpusSpec::parse_with_seed(corpus, ctx.seed).map_err(|e| Failure::usage(e.to_string()))?;
    let pool = rayon_pool(ctx.jobs)?;
    let corpus = pool.install(|| enumerate_graphs(&spec)).map_err(|e| Failure::usage(e.to_string()))?;
    let mut text = String::new();
    for g in corpus.graphs() {
        match ctx.format {
            GraphFormat::Graph6 => {
                text.push_str(&write_graph6(g));
                text.push('\n');
            }
            GraphFormat::Edges => text.push_str(&write_edge_list(g)),
        }
    }
    match output {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            ctx.emit(format!("{} graphs written to {}", corpus.len(), path.display()));
        }
        None => ctx.emit(text.trim_end().to_string()),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<(u8, Vec<String>), Failure> {
    let mut ctx = Ctx {
        input: cli.input,
        format: cli.format.into(),
        json: cli.json,
        seed: cli.seed,
        jobs: cli.jobs.max(1),
        cap: EnumerationCap { max_vertices: cli.cap, ..EnumerationCap::default() },
        out: Vec::new(),
    };
    let code = match cli.command {
        Command::Detect { pattern, subgraph } => detect(&mut ctx, &pattern, subgraph)?,
        Command::Solve { invariant } => solve(&mut ctx, invariant)?,
        Command::Balloons { p, t } => balloons(&mut ctx, p, t)?,
        Command::Bicliques { t } => bicliques(&mut ctx, t)?,
        Command::Cutsets => cutsets(&mut ctx)?,
        Command::Class { class: c, p, i, k, t, f } => class(&mut ctx, c, p, i, k, t, &f)?,
        Command::Bound { name, params, digits, output } => bound(&mut ctx, &name, &params, digits, output)?,
        Command::Verify { checks, corpus, output } => verify(&mut ctx, &checks, corpus, output)?,
        Command::Generate { corpus, output } => generate(&mut ctx, &corpus, output)?,
    };
    Ok((code, ctx.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((code, lines)) => {
            let mut stdout = io::stdout().lock();
            for l in lines {
                let _ = writeln!(stdout, "{l}");
            }
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_outrank_inconclusive_runs() {
        let mut clean = VerificationReport::empty("c", "x");
        clean.totals.pass = 3;
        let mut shaky = clean.clone();
        shaky.totals.inconclusive = 1;
        let mut broken = clean.clone();
        broken.totals.fail = 1;
        assert_eq!(exit_code(&[clean.clone()]), 0);
        assert_eq!(exit_code(&[clean.clone(), shaky.clone()]), EXIT_INCONCLUSIVE);
        assert_eq!(exit_code(&[shaky, broken, clean]), EXIT_COUNTEREXAMPLE);
        assert_eq!(exit_code(&[]), 0);
    }
}
