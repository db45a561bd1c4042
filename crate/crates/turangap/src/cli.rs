//! Argument parsing and subcommand dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use turangap_core::constructions::{BlowupMode, BlowupSpec, RecursiveSpec};
use turangap_core::homomorphism::{check_degree_hypothesis, find_homomorphism, min_wheel_type};
use turangap_core::lemmas::{
    verify_condition_of_d, verify_general_upper, verify_lll, verify_minlemma, verify_weak_bound, LemmaReport, Status,
};
use turangap_core::rational::{parse_fraction, to_big};
use turangap_core::solvers::peel;
use turangap_core::{Fraction, Graph};

use crate::experiment::{experiment_delta4, gap, record_rows, Delta4Params, ExperimentError, SolveMode};
use crate::formats::{parse, read_graph, render, GraphFormat};
use crate::report::{checks_csv, csv, render_report, to_json, write_atomic, write_json, Document, Envelope, TOOL, VERSION};
use crate::spec::{spec_from_json, Built, ConstructionSpec, Sidecar};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const THREADS_VAR: &str = "TURANGAP_THREADS";

#[derive(Debug, Parser)]
#[command(name = "turangap", version, about = "Minimum-degree thresholds for P_{r-1} = K_r f: constructions, exact solvers and lemma checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph from a family and parameters, or from a spec/sidecar JSON file.
    Construct(ConstructArgs),
    /// Compare P_{r-1}(G) with K_r f(G) on a graph file.
    Gap(GapArgs),
    /// G_4 at finite n: P_3, K_4 f and the parts certificate against 184/605 n².
    #[command(name = "experiment-delta4")]
    ExperimentDelta4(Delta4Args),
    /// Delete low-degree vertices until the minimum degree exceeds γ times the order.
    Peel(PeelArgs),
    /// Homomorphism search, wheel type, or the degree hypothesis.
    Hom(HomArgs),
    /// Check one of the analytic lemmas.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "f", alias = "F")]
    F,
    #[value(name = "f-plus-k", alias = "F+K")]
    FPlusK,
    Turan,
    Complete,
    Cycle,
    Petersen,
    Pentagon,
    #[value(name = "g4", alias = "G4")]
    G4,
    #[value(name = "gr", alias = "Gr")]
    Gr,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the JSON document here (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a CSV table here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, ignore_case = true, required_unless_present = "spec")]
    pub family: Option<Family>,
    /// Spec or sidecar JSON; flags describing the graph are then ignored.
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Five comma-separated part sizes.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Apex part size(s); `gr` takes r - 3 comma-separated sizes.
    #[arg(long, value_delimiter = ',')]
    pub apex: Option<Vec<usize>>,
    #[arg(long, default_value = "1/8")]
    pub theta: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "seeded-random")]
    pub blowup_mode: BlowupModeArg,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: GraphFormat,
    /// Graph file; the sidecar goes to `<out>.json`. Without it the sidecar is printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlowupModeArg {
    SeededRandom,
    Quasirandom,
}

impl From<BlowupModeArg> for BlowupMode {
    fn from(m: BlowupModeArg) -> Self {
        match m {
            BlowupModeArg::SeededRandom => BlowupMode::SeededRandom,
            BlowupModeArg::Quasirandom => BlowupMode::Quasirandom,
        }
    }
}

#[derive(Debug, Args)]
pub struct ModeFlags {
    /// Exact solvers only; refuse when the graph exceeds their caps.
    #[arg(long, conflicts_with = "bounds")]
    pub exact: bool,
    /// Heuristic lower bounds only.
    #[arg(long)]
    pub bounds: bool,
}

impl ModeFlags {
    fn mode(&self) -> SolveMode {
        if self.exact {
            SolveMode::Exact
        } else if self.bounds {
            SolveMode::Bounds
        } else {
            SolveMode::Auto
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// graph6 or edge-list file (detected from the extension or content).
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub input_format: Option<GraphFormat>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub mode: ModeFlags,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Delta4Args {
    /// Total order; part sizes are apportioned 8:8:8:8:8:15 unless given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',', requires = "apex")]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, requires = "sizes")]
    pub apex: Option<usize>,
    #[arg(long, default_value = "1/8")]
    pub theta: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "seeded-random")]
    pub blowup_mode: BlowupModeArg,
    #[command(flatten)]
    pub mode: ModeFlags,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PeelArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub gamma: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct HomArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Target graph file.
    #[arg(long, conflicts_with_all = ["wheel_type", "hypothesis"])]
    pub target: Option<PathBuf>,
    /// Smallest d ≤ this with a homomorphism into F_d + K_1.
    #[arg(long, value_name = "D_MAX", conflicts_with = "hypothesis")]
    pub wheel_type: Option<usize>,
    /// Check K_{r+1}-freeness and the degree condition, then search into F_d + K_{r-2}.
    #[arg(long, requires_all = ["r", "d"])]
    pub hypothesis: bool,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub which: Verify,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Maximum weighted-wheel energy against its closed-form bound.
    Minlemma {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Constants and inequalities of the δ = 0.9415 argument.
    Lll {
        #[arg(long, default_value_t = 0.9415)]
        delta: f64,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-5)]
        grid_step: f64,
        #[command(flatten)]
        output: Output,
    },
    /// The general upper bound inequality for every r in 4..=rmax, exactly.
    Upper {
        #[arg(long, default_value_t = 1000)]
        rmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The weak bound's quadratic and case thresholds at the given orders.
    Weak {
        #[arg(long, value_delimiter = ',', default_value = "31,49,100,1000,100000")]
        n: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Thresholds and wheel bounds for d = 2, 3, 4 at one γ.
    Conditions {
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// Failure that decides the exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_FAIL,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn experiment_error(e: ExperimentError) -> CliError {
    match e {
        ExperimentError::Invalid(_) | ExperimentError::Construction(_) => usage(e),
        ExperimentError::Solver(_) => runtime(e),
    }
}

/// Value of `TURANGAP_THREADS`, or the available parallelism.
pub fn thread_count(var: Option<&str>) -> Result<usize, CliError> {
    match var {
        Some(s) => match s.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(usage(format!("{THREADS_VAR} must be a positive integer, got {s:?}"))),
        },
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

struct Ctx {
    command: String,
    threads: usize,
    start: Instant,
}

impl Ctx {
    fn envelope(&self) -> Envelope {
        Envelope {
            tool: TOOL,
            version: VERSION,
            command: self.command.clone(),
            threads: self.threads,
            wall_time_ms: self.start.elapsed().as_millis(),
        }
    }

    /// Writes the document to `--out`, or prints it.
    fn emit<T: Serialize>(&self, out: &Option<PathBuf>, report: &T) -> Result<(), CliError> {
        let doc = Document {
            envelope: self.envelope(),
            report,
        };
        match out {
            Some(p) => write_json(p, &doc).map_err(runtime),
            None => {
                print!("{}", to_json(&doc).map_err(runtime)?);
                Ok(())
            }
        }
    }
}

fn write_csv(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()).map_err(runtime),
        None => Ok(()),
    }
}

fn fraction(name: &str, s: &str) -> Result<Fraction, CliError> {
    parse_fraction(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--family {family} needs --{flag}")))
}

fn five(sizes: &Option<Vec<usize>>, family: &str) -> Result<[usize; 5], CliError> {
    let s = sizes
        .as_ref()
        .ok_or_else(|| usage(format!("--family {family} needs --sizes")))?;
    <[usize; 5]>::try_from(s.as_slice()).map_err(|_| usage(format!("--sizes takes five values, got {}", s.len())))
}

fn load_graph(input: &GraphInput) -> Result<Graph, CliError> {
    match input.input_format {
        None => read_graph(&input.graph).map_err(runtime),
        Some(f) => {
            let text = std::fs::read_to_string(&input.graph)
                .map_err(|e| runtime(format!("{}: {e}", input.graph.display())))?;
            parse(&text, f).map_err(runtime)
        }
    }
}

fn spec_from_flags(a: &ConstructArgs) -> Result<ConstructionSpec, CliError> {
    let family = a.family.expect("clap requires --family without --spec");
    let blowup = |name: &str| -> Result<BlowupSpec, CliError> {
        Ok(BlowupSpec::new(five(&a.sizes, name)?, fraction("theta", &a.theta)?)
            .with_seed(a.seed)
            .with_mode(a.blowup_mode.into()))
    };
    let apex = a.apex.clone().unwrap_or_default();
    Ok(match family {
        Family::F => ConstructionSpec::F { d: need(a.d, "d", "f")? },
        Family::FPlusK => ConstructionSpec::FPlusK {
            d: need(a.d, "d", "f-plus-k")?,
            s: need(a.s, "s", "f-plus-k")?,
        },
        Family::Turan => ConstructionSpec::Turan {
            n: need(a.n, "n", "turan")?,
            k: need(a.k, "k", "turan")?,
        },
        Family::Complete => ConstructionSpec::Complete { n: need(a.n, "n", "complete")? },
        Family::Cycle => ConstructionSpec::Cycle { n: need(a.n, "n", "cycle")? },
        Family::Petersen => ConstructionSpec::Petersen,
        Family::Pentagon => ConstructionSpec::Pentagon {
            blowup: blowup("pentagon")?,
        },
        Family::G4 => match apex.as_slice() {
            [one] => ConstructionSpec::G4 {
                blowup: blowup("g4")?,
                apex: *one,
            },
            _ => return Err(usage("--family g4 needs exactly one --apex size")),
        },
        Family::Gr => ConstructionSpec::Gr {
            spec: RecursiveSpec {
                r: need(a.r, "r", "gr")?,
                base: blowup("gr")?,
                apex_sizes: apex,
            },
        },
    })
}

fn construct(ctx: &Ctx, a: &ConstructArgs) -> Result<i32, CliError> {
    let spec = match &a.spec {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| runtime(format!("{}: {e}", p.display())))?;
            spec_from_json(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        None => spec_from_flags(a)?,
    };
    let built: Built = spec.build().map_err(usage)?;
    let sidecar = Sidecar::new(&spec, &built, a.format);
    match &a.out {
        Some(path) => {
            write_atomic(path, render(&built.graph, a.format).as_bytes()).map_err(runtime)?;
            write_json(&sidecar_path(path), &sidecar).map_err(runtime)?;
            println!(
                "wrote {} (n = {}, e = {})",
                path.display(),
                sidecar.stats.n,
                sidecar.stats.e
            );
        }
        None => ctx.emit(&None, &sidecar)?,
    }
    Ok(EXIT_PASS)
}

/// `graph.g6` → `graph.g6.json`
pub fn sidecar_path(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn run_gap(ctx: &Ctx, a: &GapArgs) -> Result<i32, CliError> {
    let g = load_graph(&a.input)?;
    let rep = gap(&g, a.r, a.mode.mode(), a.seed).map_err(experiment_error)?;
    eprintln!(
        "P_{}(G) = {}{}, K_{}f(G) = {}{}, {}",
        a.r - 1,
        rep.p.value,
        if rep.p.exact { "" } else { " (lower bound)" },
        a.r,
        rep.krfree.value,
        if rep.krfree.exact { "" } else { " (lower bound)" },
        match rep.equal {
            Some(true) => "equal",
            Some(false) => "unequal",
            None => "equality undecided",
        }
    );
    ctx.emit(&a.output.out, &rep)?;
    let rows = vec![vec![
        rep.n.to_string(),
        rep.e.to_string(),
        rep.r.to_string(),
        rep.p.value.to_string(),
        rep.p.exact.to_string(),
        rep.krfree.value.to_string(),
        rep.krfree.exact.to_string(),
        rep.equal.map_or_else(String::new, |b| b.to_string()),
    ]];
    let cols: Vec<String> = ["n", "e", "r", "p", "p_exact", "krfree", "krfree_exact", "equal"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    write_csv(&a.output.csv, &csv(&cols, &rows))?;
    Ok(EXIT_PASS)
}

fn run_delta4(ctx: &Ctx, a: &Delta4Args) -> Result<i32, CliError> {
    let sizes = match &a.sizes {
        Some(_) => Some(five(&a.sizes, "experiment-delta4")?),
        None => None,
    };
    if sizes.is_none() && a.n.is_none() {
        return Err(usage("give --n, or --sizes with --apex"));
    }
    let params = Delta4Params {
        n: a.n,
        sizes,
        apex: a.apex,
        theta: fraction("theta", &a.theta)?,
        seed: a.seed,
        blowup_mode: a.blowup_mode.into(),
        mode: a.mode.mode(),
    };
    let rec = experiment_delta4(&params).map_err(experiment_error)?;
    eprintln!(
        "n = {}: P_3 = {}{}, K_4f = {}{}, parts = {}, 184/605 n^2 = {:.3}",
        rec.n,
        rec.p3.value,
        if rec.p3.exact { "" } else { " (bound)" },
        rec.k4f.value,
        if rec.k4f.exact { "" } else { " (bound)" },
        rec.parts.value,
        rec.target
    );
    ctx.emit(&a.output.out, &rec)?;
    let (cols, rows) = record_rows(&rec);
    write_csv(&a.output.csv, &csv(&cols, &rows))?;
    Ok(EXIT_PASS)
}

fn run_peel(ctx: &Ctx, a: &PeelArgs) -> Result<i32, CliError> {
    let g = load_graph(&a.input)?;
    let gamma = fraction("gamma", &a.gamma)?;
    if gamma < Fraction::from_integer(0) || gamma >= Fraction::from_integer(1) {
        return Err(usage("--gamma must lie in [0, 1)"));
    }
    let trace = peel(&g, gamma);
    eprintln!(
        "deleted {} of {} vertices; {} remain",
        trace.steps.len(),
        g.n(),
        trace.remaining.len()
    );
    ctx.emit(&a.output.out, &trace)?;
    let cols: Vec<String> = ["vertex", "degree", "size"].iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = trace
        .steps
        .iter()
        .map(|s| vec![s.vertex.to_string(), s.degree.to_string(), s.size.to_string()])
        .collect();
    write_csv(&a.output.csv, &csv(&cols, &rows))?;
    Ok(if trace.final_condition_holds() { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct HomResult {
    source_n: usize,
    target_n: usize,
    found: bool,
    map: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct WheelTypeResult {
    d_max: usize,
    d: Option<usize>,
    map: Option<Vec<usize>>,
}

fn run_hom(ctx: &Ctx, a: &HomArgs) -> Result<i32, CliError> {
    let g = load_graph(&a.input)?;
    if let Some(t) = &a.target {
        let h = read_graph(t).map_err(runtime)?;
        let found = find_homomorphism(&g, &h).map_err(runtime)?;
        let res = HomResult {
            source_n: g.n(),
            target_n: h.n(),
            found: found.is_some(),
            map: found.map(|m| m.map),
        };
        eprintln!("{}", if res.found { "homomorphism found" } else { "no homomorphism" });
        ctx.emit(&a.output.out, &res)?;
        return Ok(EXIT_PASS);
    }
    if let Some(d_max) = a.wheel_type {
        let found = min_wheel_type(&g, d_max).map_err(runtime)?;
        let res = WheelTypeResult {
            d_max,
            d: found.as_ref().map(|(d, _)| *d),
            map: found.map(|(_, m)| m.map),
        };
        match res.d {
            Some(d) => eprintln!("maps into F_{d} + K_1"),
            None => eprintln!("no F_d + K_1 with d <= {d_max}"),
        }
        ctx.emit(&a.output.out, &res)?;
        return Ok(EXIT_PASS);
    }
    if a.hypothesis {
        let (r, d) = (a.r.expect("clap requires --r"), a.d.expect("clap requires --d"));
        let rep = check_degree_hypothesis(&g, r, d).map_err(runtime)?;
        eprintln!(
            "hypothesis {}; {}",
            if rep.hypothesis_met { "met" } else { "not met" },
            match rep.map_found {
                Some(true) => "homomorphism found",
                Some(false) => "no homomorphism",
                None => "search skipped",
            }
        );
        ctx.emit(&a.output.out, &rep)?;
        return Ok(if rep.is_violation() { EXIT_FAIL } else { EXIT_PASS });
    }
    Err(usage("hom needs one of --target, --wheel-type, --hypothesis"))
}

pub fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn gamma_arg(s: &str) -> Result<num_rational::BigRational, CliError> {
    Ok(to_big(&fraction("gamma", s)?))
}

fn run_verify(ctx: &Ctx, which: &Verify) -> Result<i32, CliError> {
    let (rep, output): (LemmaReport, &Output) = match which {
        Verify::Minlemma {
            d,
            gamma,
            restarts,
            seed,
            tol,
            output,
        } => (
            verify_minlemma(*d, &gamma_arg(gamma)?, *restarts, *seed, *tol).map_err(usage)?,
            output,
        ),
        Verify::Lll {
            delta,
            epsilon,
            grid_step,
            output,
        } => (verify_lll(*delta, *epsilon, *grid_step).map_err(usage)?, output),
        Verify::Upper { rmax, output } => (verify_general_upper(*rmax).map_err(usage)?, output),
        Verify::Weak { n, output } => (verify_weak_bound(n).map_err(usage)?, output),
        Verify::Conditions {
            gamma,
            restarts,
            seed,
            output,
        } => (
            verify_condition_of_d(&gamma_arg(gamma)?, *restarts, *seed).map_err(usage)?,
            output,
        ),
    };
    match &output.out {
        Some(_) => {
            print!("{}", render_report(&rep));
            ctx.emit(&output.out, &rep)?;
        }
        None => {
            eprint!("{}", render_report(&rep));
            ctx.emit(&None, &rep)?;
        }
    }
    let table = match &rep.table {
        Some(t) if output.csv.is_some() => {
            let mut text = checks_csv(&rep);
            text.push('\n');
            text.push_str(&crate::report::table_csv(t));
            text
        }
        _ => checks_csv(&rep),
    };
    write_csv(&output.csv, &table)?;
    Ok(status_code(rep.status))
}

/// Runs a parsed command line; returns the exit code.
pub fn run(cli: &Cli, command_line: String, threads_var: Option<&str>) -> Result<i32, CliError> {
    let ctx = Ctx {
        command: command_line,
        threads: thread_count(threads_var)?,
        start: Instant::now(),
    };
    match &cli.command {
        Command::Construct(a) => construct(&ctx, a),
        Command::Gap(a) => run_gap(&ctx, a),
        Command::ExperimentDelta4(a) => run_delta4(&ctx, a),
        Command::Peel(a) => run_peel(&ctx, a),
        Command::Hom(a) => run_hom(&ctx, a),
        Command::Verify(v) => run_verify(&ctx, &v.which),
    }
}

/// Parses `args` (including the program name) and runs; never panics on bad input.
pub fn main_with(args: Vec<String>, threads_var: Option<&str>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let command_line = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    match run(&cli, command_line, threads_var) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("turangap: {e}");
            e.code()
        }
    }
}
