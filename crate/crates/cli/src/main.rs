//! `chamber-iso` command-line front end.
//!
//! Exit codes: 0 clean, 1 a checked inequality failed, 2 a budget or cap was
//! hit, 3 malformed input or arguments.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use chamber_iso::arrangement::{generate, Family, GeneratorSpec, DEFAULT_COEFFICIENT_BOUND};
use chamber_iso::bitset::ChamberSet;
use chamber_iso::bounds::binomial::{verify_half_size, verify_monotonicity};
use chamber_iso::bounds::kk::{kk_oracle, KkMode, MAX_GROUND};
use chamber_iso::bounds::{bound_table, write_bound_csv};
use chamber_iso::chamber_graph::CONVEX_SCAN_CAP;
use chamber_iso::instance::Instance;
use chamber_iso::mixing::{mixing_report, write_sweep_csv, MixingReport};
use chamber_iso::search::{
    check_conjecture, min_boundary, random_sets, sample_r3, verify_boundary_chain, verify_boundary_sum, verify_convex,
    verify_gluing, verify_small_sets, Strategy, DEFAULT_BUDGET, DEFAULT_DENSITY,
};
use chamber_iso::suite::run_suite;
use chamber_iso::{Arrangement, Error, SignVector};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "chamber-iso",
    version,
    about = "Boundary-size checks on chamber sets of hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Subset budget for exhaustive searches.
    #[arg(long, global = true, env = "CHAMBER_ISO_BUDGET")]
    budget: Option<u128>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Random,
    Grid,
    Circle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Props,
    Conjecture,
    R3,
    Bounds,
    Appendix,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Random,
    Anneal,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Random => Strategy::Random,
            StrategyArg::Anneal => Strategy::Anneal,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Batch {
    /// Random arrangements in three dimensions over `--n` and `--seeds`.
    D3Sweep,
    /// Axis grids with `m` chambers per side over `--m`.
    GridSweep,
}

/// Inclusive `a..b`, or a single value.
#[derive(Clone, Debug)]
struct Span(RangeInclusive<usize>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok(Span(a..=b))
    }
}

/// A number, or `half` for half the chambers.
#[derive(Clone, Copy, Debug)]
enum MaxSize {
    Half,
    Exactly(usize),
}

impl FromStr for MaxSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "half" {
            Ok(MaxSize::Half)
        } else {
            s.parse().map(MaxSize::Exactly).map_err(|e| format!("{s:?}: {e}"))
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an arrangement file.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Largest absolute coefficient for random arrangements.
        #[arg(long, default_value_t = DEFAULT_COEFFICIENT_BOUND)]
        bound: i64,
        /// Planes per axis for grids.
        #[arg(long, value_delimiter = ',')]
        counts: Vec<usize>,
        /// Points on the circle.
        #[arg(long)]
        k: Option<usize>,
    },
    /// List chambers with their sign vectors.
    Chambers { file: PathBuf },
    /// Emit the chamber graph.
    Graph { file: PathBuf },
    /// Stratify a chamber set.
    Strata {
        file: PathBuf,
        /// Chamber set as a hex bitset, chamber 0 in the lowest bit.
        #[arg(long, conflicts_with = "chambers")]
        set: Option<String>,
        /// Comma-separated sign vectors such as `-++,+++`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chambers: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "half")]
        max_size: MaxSize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        /// Proposals per size for the heuristic strategies.
        #[arg(long, default_value_t = 100_000)]
        iterations: u128,
        /// Random sets or trials per sampled check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest sampled set as a fraction of the chambers.
        #[arg(long, default_value_t = DEFAULT_DENSITY)]
        density: f64,
        #[arg(long, default_value = "2..4")]
        d_range: Span,
        #[arg(long, default_value = "3..20")]
        n_range: Span,
        /// Targets per admissible range in the binomial-lemma suite.
        #[arg(long, default_value_t = 5)]
        targets: usize,
        /// Upper end of the exact half-size check.
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        /// Dimension and plane count for the bound table.
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Ground-set size for the down-set oracle.
        #[arg(long, default_value_t = 4)]
        kk_ground: usize,
    },
    /// Minimal boundary over chamber sets of one size.
    Search {
        file: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        /// Proposals for the heuristic strategies.
        #[arg(long, default_value_t = 100_000)]
        iterations: u128,
    },
    /// Spectral gap, conductance and mixing times of the lazy walk.
    Mixing {
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.1,0.01")]
        eps: Vec<f64>,
        #[arg(long, value_enum)]
        batch: Option<Batch>,
        #[arg(long, default_value = "4..7")]
        n: Span,
        #[arg(long, default_value = "1..10")]
        seeds: Span,
        #[arg(long, default_value = "3..5")]
        m: Span,
    },
    /// Fixed battery of checks as one deterministic report.
    Report,
}

/// Number of failed checks; nonzero maps to exit code 1.
type Violations = usize;

struct Ctx {
    budget: u128,
    seed: u64,
    format: Format,
    output: Option<PathBuf>,
}

impl Ctx {
    fn sink(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn emit_json(&self, value: &impl serde::Serialize) -> anyhow::Result<()> {
        let mut out = self.sink()?;
        serde_json::to_writer_pretty(&mut out, value)?;
        writeln!(out)?;
        out.flush()?;
        Ok(())
    }
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let arr = Arrangement::load(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Instance::new(arr))
}

fn need<T>(v: Option<T>, what: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| Error::InvalidParams(format!("missing --{what}")).into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(v) => {
            eprintln!("{v} violation(s) found");
            ExitCode::from(1)
        }
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// A closed downstream pipe is not a failure of the command.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || matches!(c.downcast_ref::<Error>(), Some(Error::Io(io)) if io.kind() == io::ErrorKind::BrokenPipe)
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::IterationCap(_) | Error::RetryBudgetExhausted(_)) => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> anyhow::Result<Violations> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!(Error::InvalidParams("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    if budget == 0 {
        bail!(Error::InvalidParams("budget must be positive".into()));
    }
    let ctx = Ctx {
        budget,
        seed: cli.seed,
        format: cli.format,
        output: cli.output,
    };
    match cli.command {
        Command::Gen {
            family,
            d,
            n,
            bound,
            counts,
            k,
        } => cmd_gen(&ctx, family, d, n, bound, counts, k),
        Command::Chambers { file } => cmd_chambers(&ctx, &file),
        Command::Graph { file } => cmd_graph(&ctx, &file),
        Command::Strata { file, set, chambers } => cmd_strata(&ctx, &file, set, chambers),
        Command::Verify {
            file,
            suite,
            max_size,
            strategy,
            iterations,
            samples,
            density,
            d_range,
            n_range,
            targets,
            max_n,
            d,
            n,
            kk_ground,
        } => match suite {
            Suite::Props => verify_props(&ctx, &need(file, "file")?, samples),
            Suite::Conjecture => verify_conjecture(&ctx, &need(file, "file")?, max_size, strategy.into(), iterations),
            Suite::R3 => verify_r3(&ctx, &need(file, "file")?, samples, density),
            Suite::Bounds => verify_bounds(&ctx, d, n, kk_ground),
            Suite::Appendix => verify_binomial(&ctx, d_range.0, n_range.0, targets, max_n),
        },
        Command::Search {
            file,
            size,
            strategy,
            iterations,
        } => cmd_search(&ctx, &file, size, strategy.into(), iterations),
        Command::Mixing {
            file,
            eps,
            batch,
            n,
            seeds,
            m,
        } => match batch {
            None => cmd_mixing(&ctx, &need(file, "file")?, &eps),
            Some(Batch::D3Sweep) => mixing_d3_sweep(&ctx, n.0, seeds.0, &eps),
            Some(Batch::GridSweep) => mixing_grid_sweep(&ctx, m.0, &eps),
        },
        Command::Report => {
            let report = run_suite(ctx.seed)?;
            ctx.emit_json(&report)?;
            Ok(report.violations)
        }
    }
}

fn cmd_gen(
    ctx: &Ctx,
    family: FamilyArg,
    d: Option<usize>,
    n: Option<usize>,
    bound: i64,
    counts: Vec<usize>,
    k: Option<usize>,
) -> anyhow::Result<Violations> {
    let family = match family {
        FamilyArg::Random => Family::Random {
            d: need(d, "d")?,
            n: need(n, "n")?,
            bound,
        },
        FamilyArg::Grid if counts.is_empty() => bail!(Error::InvalidParams("missing --counts".into())),
        FamilyArg::Grid => Family::Grid { counts },
        FamilyArg::Circle => Family::CircleDegenerate { k: need(k, "k")? },
    };
    let spec = GeneratorSpec { family, seed: ctx.seed };
    let arr = generate(&spec)?;
    match &ctx.output {
        Some(path) => {
            arr.save(path).with_context(|| format!("writing {}", path.display()))?;
            let summary = json!({
                "file": path.display().to_string(),
                "hash": arr.content_hash(),
                "d": arr.dim(),
                "n": arr.len(),
                "spec": spec,
                "general_position": arr.general_position(),
            });
            writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&summary)?)?;
        }
        None => writeln!(io::stdout().lock(), "{}", arr.to_json())?,
    }
    Ok(0)
}

fn cmd_chambers(ctx: &Ctx, file: &Path) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let bounded = inst.bounded_chambers().clone();
    let rows: Vec<_> = (0..inst.chamber_count())
        .map(|v| (v, inst.graph.signs(v).to_string(), bounded.contains(v)))
        .collect();
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({
            "arrangement": inst.hash(),
            "count": rows.len(),
            "chambers": rows
                .iter()
                .map(|(id, s, b)| json!({"id": id, "signs": s, "bounded": b}))
                .collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut out = ctx.sink()?;
            writeln!(out, "id,signs,bounded")?;
            for (id, s, b) in rows {
                writeln!(out, "{id},{s},{b}")?;
            }
            out.flush()?;
        }
    }
    Ok(0)
}

fn cmd_graph(ctx: &Ctx, file: &Path) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&inst.graph.to_json())?,
        Format::Csv => {
            let mut out = ctx.sink()?;
            write!(out, "{}", inst.graph.to_edge_list())?;
            out.flush()?;
        }
    }
    Ok(0)
}

fn cmd_strata(ctx: &Ctx, file: &Path, set: Option<String>, chambers: Vec<String>) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let v = inst.chamber_count();
    let s = match set {
        Some(hex) => ChamberSet::from_hex(v, &hex)?,
        None => {
            let mut s = ChamberSet::empty(v);
            for c in &chambers {
                let signs: SignVector = c.parse()?;
                let id = inst
                    .graph
                    .index_of(&signs)
                    .ok_or_else(|| Error::InvalidParams(format!("{c} is not a chamber")))?;
                s.insert(id);
            }
            s
        }
    };
    let strat = inst.stratifier().stratify(&s);
    ctx.emit_json(&json!({
        "arrangement": inst.hash(),
        "set": s.to_hex(),
        "size": s.len(),
        "boundary": inst.graph.boundary_size(&s),
        "strata_connected": strat.is_strata_connected(),
        "stratification": strat.to_json(),
    }))?;
    Ok(0)
}

fn verify_props(ctx: &Ctx, file: &Path, samples: usize) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let v = inst.chamber_count();
    let sets = random_sets(v, v, samples, ctx.seed);
    let chain = verify_boundary_chain(&inst, sets.clone());
    let sum = verify_boundary_sum(&inst, sets);
    let gluing = verify_gluing(&inst, samples, ctx.seed);
    let gp = inst.arr.is_general_position();
    let small = if gp {
        Some(verify_small_sets(&inst, ctx.budget)?)
    } else {
        None
    };
    let convex = if gp {
        Some(verify_convex(&inst, CONVEX_SCAN_CAP)?)
    } else {
        None
    };
    let violations = chain.violations.len()
        + sum.violations.len()
        + usize::from(!gluing.passed())
        + small.as_ref().map_or(0, |r| r.violations.len())
        + convex
            .as_ref()
            .map_or(0, |r| r.violations.len() + r.structure_mismatches);
    ctx.emit_json(&json!({
        "arrangement": inst.hash(),
        "seed": ctx.seed,
        "general_position": gp,
        "boundary_chain": chain,
        "boundary_sum": sum,
        "gluing": gluing,
        "small_sets": small,
        "convex": convex,
        "violations": violations,
    }))?;
    Ok(violations)
}

fn verify_conjecture(
    ctx: &Ctx,
    file: &Path,
    max_size: MaxSize,
    strategy: Strategy,
    iterations: u128,
) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let max_size = match max_size {
        MaxSize::Half => inst.chamber_count() / 2,
        MaxSize::Exactly(m) => m,
    };
    let budget = if strategy == Strategy::Exhaustive {
        ctx.budget
    } else {
        iterations
    };
    let report = check_conjecture(&inst, max_size, strategy, budget, ctx.seed)?;
    if !report.general_position {
        eprintln!("note: not in general position; bounds are reported but not enforced");
    }
    let mut out = ctx.sink()?;
    match ctx.format {
        Format::Json => report.write_jsonl(&mut out)?,
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush()?;
    Ok(report.violations().len())
}

fn verify_r3(ctx: &Ctx, file: &Path, samples: usize, density: f64) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let summary = sample_r3(&inst, samples, density, ctx.seed)?;
    ctx.emit_json(&json!({
        "arrangement": inst.hash(),
        "seed": ctx.seed,
        "density": density,
        "summary": summary,
    }))?;
    Ok(summary.violations.len())
}

fn verify_bounds(ctx: &Ctx, d: usize, n: usize, ground: usize) -> anyhow::Result<Violations> {
    if ground == 0 || ground > MAX_GROUND {
        bail!(Error::InvalidParams(format!(
            "--kk-ground must lie in 1..={MAX_GROUND}"
        )));
    }
    let max_size = chamber_iso::bounds::binom_prefix(n as u64, d as u64) / 2;
    let table = bound_table(d, n, max_size as u64);
    let kk = (1..=ground)
        .map(|m| kk_oracle(ground, m, KkMode::Both))
        .collect::<chamber_iso::Result<Vec<_>>>()?;
    let violations = kk.iter().map(|r| r.counterexamples.len()).sum();
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({"table": table, "down_sets": kk, "violations": violations}))?,
        Format::Csv => write_bound_csv(&table, ctx.sink()?)?,
    }
    Ok(violations)
}

fn verify_binomial(
    ctx: &Ctx,
    d_range: RangeInclusive<usize>,
    n_range: RangeInclusive<usize>,
    targets: usize,
    max_n: usize,
) -> anyhow::Result<Violations> {
    let mut reports = Vec::new();
    for d in d_range.filter(|&d| d >= 1) {
        let lo = (*n_range.start()).max(2 * d + 1);
        for n in lo..=*n_range.end() {
            reports.push(verify_monotonicity(n, d, targets)?);
        }
    }
    let half = verify_half_size(max_n);
    let violations = reports.iter().map(|r| r.violations()).sum::<usize>() + half.violations.len();
    ctx.emit_json(&json!({
        "monotonicity": reports,
        "checks": reports.iter().map(|r| r.checks()).sum::<usize>(),
        "half_size": half,
        "violations": violations,
    }))?;
    Ok(violations)
}

fn cmd_search(ctx: &Ctx, file: &Path, size: usize, strategy: Strategy, iterations: u128) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let budget = if strategy == Strategy::Exhaustive {
        ctx.budget
    } else {
        iterations
    };
    let m = min_boundary(&inst.graph, size, strategy, budget, ctx.seed)?;
    ctx.emit_json(&json!({
        "arrangement": inst.hash(),
        "seed": ctx.seed,
        "strategy": strategy,
        "result": m,
    }))?;
    Ok(0)
}

fn emit_mixing(ctx: &Ctx, reports: &[MixingReport], extra: serde_json::Value) -> anyhow::Result<()> {
    match ctx.format {
        Format::Json => {
            let mut body = json!({"instances": reports});
            if let (Some(obj), serde_json::Value::Object(more)) = (body.as_object_mut(), extra) {
                obj.extend(more);
            }
            ctx.emit_json(&body)
        }
        Format::Csv => Ok(write_sweep_csv(reports, ctx.sink()?)?),
    }
}

fn cheeger_failures(reports: &[MixingReport]) -> Violations {
    reports.iter().filter(|r| r.cheeger_holds == Some(false)).count()
}

fn cmd_mixing(ctx: &Ctx, file: &Path, eps: &[f64]) -> anyhow::Result<Violations> {
    let inst = load(file)?;
    let report = mixing_report(&inst, eps, ctx.budget)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&report)?,
        Format::Csv => write_sweep_csv(std::slice::from_ref(&report), ctx.sink()?)?,
    }
    Ok(cheeger_failures(std::slice::from_ref(&report)))
}

fn mixing_d3_sweep(
    ctx: &Ctx,
    ns: RangeInclusive<usize>,
    seeds: RangeInclusive<usize>,
    eps: &[f64],
) -> anyhow::Result<Violations> {
    let jobs: Vec<(usize, u64)> = ns.flat_map(|n| seeds.clone().map(move |s| (n, s as u64))).collect();
    let reports = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let inst = Instance::generate(&GeneratorSpec::random(3, n, seed))?;
            mixing_report(&inst, eps, ctx.budget)
        })
        .collect::<chamber_iso::Result<Vec<_>>>()?;
    let fitted_k = reports.iter().map(|r| r.fitted_k).fold(0.0, f64::max);
    eprintln!("fitted K = {fitted_k:.6}");
    emit_mixing(ctx, &reports, json!({"fitted_k": fitted_k}))?;
    Ok(cheeger_failures(&reports))
}

fn mixing_grid_sweep(ctx: &Ctx, ms: RangeInclusive<usize>, eps: &[f64]) -> anyhow::Result<Violations> {
    let ms: Vec<usize> = ms.filter(|&m| m >= 2).collect();
    let reports = ms
        .par_iter()
        .map(|&m| {
            let inst = Instance::generate(&GeneratorSpec::grid(&[m - 1; 3]))?;
            mixing_report(&inst, eps, ctx.budget)
        })
        .collect::<chamber_iso::Result<Vec<_>>>()?;
    let mut scaling = Vec::new();
    for (i, pair) in reports.windows(2).enumerate() {
        let (m0, m1) = (ms[i] as f64, ms[i + 1] as f64);
        let expected = (m1 / m0).powi(2);
        for (key, t1) in &pair[1].t_mix {
            let t0 = pair[0].t_mix[key];
            let ratio = *t1 as f64 / t0 as f64;
            scaling.push(json!({
                "m_from": ms[i],
                "m_to": ms[i + 1],
                "eps": key,
                "ratio": ratio,
                "expected": expected,
                "relative_error": (ratio - expected).abs() / expected,
            }));
        }
    }
    emit_mixing(ctx, &reports, json!({"m": ms, "scaling": scaling}))?;
    Ok(cheeger_failures(&reports))
}
