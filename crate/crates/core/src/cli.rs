//! Command-line harness.
//!
//! Exit codes: 0 success, 1 invalid configuration or I/O failure, 2 the
//! algorithm produced a non-dominating set, 3 soundness violation. Errors are
//! written to stderr as a single JSON object.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adversary::{evaluate_fooling, FoolingReport, SearchConfig, Strategy};
use crate::algorithms::by_name;
use crate::error::{Error, Result};
use crate::grid::{build_grid, Coord, Grid, Params};
use crate::local::{check_dominating, run_algorithm, DomSet, IdAssignment};
use crate::optimum::pattern_witness;
use crate::render::{grid_json, render_svg, to_dot};

/// Relative output paths are resolved against this directory when set.
pub const OUT_DIR_ENV: &str = "PLANAR_LB_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "planar-lb",
    version,
    about = "Adversarial identifier assignment for local dominating-set algorithms on planar block grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the grid as JSON, DOT or SVG.
    Generate(GenerateArgs),
    /// Run an algorithm on a given or canonical assignment.
    Run(RunArgs),
    /// Adversarial assignment plus fooling report.
    Fool(FoolArgs),
    /// Emit the witness dominating set.
    Witness(WitnessArgs),
    /// Repeat `fool` over several block sizes and emit a CSV table.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Nodes per block side.
    #[arg(long)]
    m: usize,
    /// Number of blocks.
    #[arg(long)]
    r: usize,
    /// Boundary width; defaults to the algorithm radius (1 without an algorithm).
    #[arg(long = "T", alias = "t")]
    t: Option<usize>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw the witness set over the SVG.
    #[arg(long)]
    witness: bool,
    /// Draw the region of internal node `COL,ROW` over the SVG.
    #[arg(long, value_parser = parse_coord)]
    region: Option<Coord>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    alg: String,
    /// JSON array of identifiers in global node order.
    #[arg(long, conflicts_with = "shuffle")]
    ids: Option<PathBuf>,
    /// Use a seeded random assignment instead of row-major identifiers.
    #[arg(long)]
    shuffle: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
struct SearchArgs {
    #[arg(long)]
    alg: String,
    #[arg(long, default_value = "tiered")]
    strategy: Strategy,
    /// Fresh coloring evaluations allowed per block.
    #[arg(long, default_value_t = SearchConfig::default().budget)]
    budget: u64,
    /// Probes per candidate set for sampled certificates.
    #[arg(long, default_value_t = SearchConfig::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct FoolArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Draw the algorithm's output on the adversarial assignment.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated block sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    #[arg(long)]
    r: usize,
    #[arg(long = "T", alias = "t")]
    t: Option<usize>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_coord(s: &str) -> std::result::Result<Coord, String> {
    let (c, r) = s.split_once(',').ok_or("expected COL,ROW")?;
    let col = c.trim().parse().map_err(|e| format!("column: {e}"))?;
    let row = r.trim().parse().map_err(|e| format!("row: {e}"))?;
    Ok(Coord::new(col, row))
}

/// Validated settings shared by `fool` and `sweep`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub m: usize,
    pub r: usize,
    pub t: Option<usize>,
    pub algorithm: String,
    pub strategy: Strategy,
    pub search: SearchConfig,
}

impl RunConfig {
    /// Checks the algorithm name and the grid parameters.
    pub fn validate(&self) -> Result<Params> {
        let alg = by_name(&self.algorithm)?;
        let t = self.t.unwrap_or(alg.radius());
        if t < alg.radius() {
            return Err(Error::RadiusMismatch {
                algorithm: self.algorithm.clone(),
                radius: alg.radius(),
                t,
            });
        }
        Params::new(self.m, self.r, t)
    }

    pub fn execute(&self) -> Result<(Grid, FoolingReport)> {
        let params = self.validate()?;
        let alg = by_name(&self.algorithm)?;
        let grid = build_grid(params);
        let report = evaluate_fooling(&grid, alg.as_ref(), self.strategy, &self.search)?;
        Ok((grid, report))
    }
}

impl SearchArgs {
    fn run_config(&self, m: usize, r: usize, t: Option<usize>) -> RunConfig {
        RunConfig {
            m,
            r,
            t,
            algorithm: self.alg.clone(),
            strategy: self.strategy,
            search: SearchConfig {
                samples: self.samples,
                budget: self.budget,
                seed: self.seed,
                ..SearchConfig::default()
            },
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let path = resolve(path);
    std::fs::write(&path, contents).map_err(|e| Error::io(path, e))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => out.write_all(contents.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidAlgorithm { .. } => 2,
        Error::Soundness { .. } => 3,
        _ => 1,
    }
}

fn report_error(err: &mut dyn Write, kind: &str, message: &str) {
    let doc = serde_json::json!({ "error": kind, "message": message });
    let _ = writeln!(err, "{doc}");
}

/// Entry point; returns the process exit code.
pub fn cli_main<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            report_error(err, "usage", e.to_string().trim());
            return 1;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            report_error(err, e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Generate(a) => generate(a, out),
        Command::Run(a) => run(a, out),
        Command::Fool(a) => fool(a, out),
        Command::Witness(a) => witness(a, out),
        Command::Sweep(a) => sweep(a, out),
    }
}

fn grid_from(args: &GridArgs, default_t: usize) -> Result<Grid> {
    Ok(build_grid(Params::new(args.m, args.r, args.t.unwrap_or(default_t))?))
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let grid = grid_from(&a.grid, 1)?;
    let mut overlays = Vec::new();
    if a.witness {
        overlays.push(pattern_witness(&grid).members);
    }
    if let Some(c) = a.region {
        let region = grid.region_of(c)?;
        overlays.push(DomSet::from_members(
            grid.len(),
            region.cells.iter().filter_map(|&p| grid.index_of(p)),
        ));
    }
    if let Some(p) = &a.dot {
        write_file(p, &to_dot(&grid, None))?;
    }
    if let Some(p) = &a.svg {
        render_svg(&grid, &overlays, &resolve(p))?;
    }
    if a.json.is_some() || (a.dot.is_none() && a.svg.is_none()) {
        emit(out, a.json.as_deref(), &to_json(&grid_json(&grid))?)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct RunOutput<'a> {
    params: &'a Params,
    algorithm: &'a str,
    dominating: bool,
    undominated: Vec<Coord>,
    set: &'a DomSet,
}

fn run(a: RunArgs, out: &mut dyn Write) -> Result<i32> {
    let alg = by_name(&a.alg)?;
    let grid = grid_from(&a.grid, alg.radius())?;
    let ids = match (&a.ids, a.shuffle) {
        (Some(p), _) => {
            let path = resolve(p);
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let ids: Vec<u32> = serde_json::from_str(&text)?;
            if ids.len() != grid.len() {
                return Err(Error::NotBijection {
                    n: grid.len(),
                    reason: format!("file holds {} identifiers", ids.len()),
                });
            }
            IdAssignment::from_ids(ids)?
        }
        (None, Some(seed)) => IdAssignment::shuffled(grid.len(), &mut ChaCha8Rng::seed_from_u64(seed)),
        (None, None) => IdAssignment::row_major(grid.len()),
    };
    let d = run_algorithm(&grid, &ids, alg.as_ref());
    let undominated: Vec<Coord> = check_dominating(&grid, &d).into_iter().map(|v| grid.coord(v)).collect();
    if let Some(p) = &a.dot {
        write_file(p, &to_dot(&grid, Some(&d)))?;
    }
    if let Some(p) = &a.svg {
        render_svg(&grid, std::slice::from_ref(&d), &resolve(p))?;
    }
    let doc = RunOutput {
        params: grid.params(),
        algorithm: alg.name(),
        dominating: undominated.is_empty(),
        undominated,
        set: &d,
    };
    emit(out, a.out.as_deref(), &to_json(&doc)?)?;
    Ok(if doc.dominating { 0 } else { 2 })
}

fn fool(a: FoolArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = a.search.run_config(a.grid.m, a.grid.r, a.grid.t);
    let (grid, report) = cfg.execute()?;
    if let Some(p) = &a.svg {
        let alg = by_name(&cfg.algorithm)?;
        let assignment = crate::adversary::lemma1_assign(&grid, alg.as_ref(), cfg.strategy, &cfg.search)?;
        let d = run_algorithm(&grid, &assignment.ids, alg.as_ref());
        render_svg(&grid, &[d], &resolve(p))?;
    }
    emit(out, a.out.as_deref(), &to_json(&report)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct WitnessOutput<'a> {
    params: &'a Params,
    size: usize,
    #[serde(flatten)]
    witness: &'a crate::optimum::WitnessSet,
}

fn witness(a: WitnessArgs, out: &mut dyn Write) -> Result<i32> {
    let grid = grid_from(&a.grid, 1)?;
    let w = pattern_witness(&grid);
    if let Some(p) = &a.svg {
        render_svg(&grid, std::slice::from_ref(&w.members), &resolve(p))?;
    }
    let doc = WitnessOutput {
        params: grid.params(),
        size: w.size(),
        witness: &w,
    };
    emit(out, a.out.as_deref(), &to_json(&doc)?)?;
    Ok(0)
}

pub const SWEEP_HEADER: &str =
    "m,r,T,algorithm,l,forced_blocks,D_size,Dstar_size,ratio_num,ratio_den,ratio,bound_num,bound_den,bound";

pub fn sweep_row(r: &FoolingReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.params.m(),
        r.params.r(),
        r.params.t(),
        r.algorithm,
        r.l,
        r.forced_blocks,
        r.d_size,
        r.dstar_size,
        r.ratio.numer(),
        r.ratio.denom(),
        r.ratio.decimal6(),
        r.ratio_bound.numer(),
        r.ratio_bound.denom(),
        r.ratio_bound.decimal6()
    )
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let configs: Vec<RunConfig> = a.m.iter().map(|&m| a.search.run_config(m, a.r, a.t)).collect();
    // validate everything before any work
    for c in &configs {
        c.validate()?;
    }
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for c in &configs {
        let (_, report) = c.execute()?;
        csv.push_str(&sweep_row(&report));
        csv.push('\n');
    }
    emit(out, a.out.as_deref(), &csv)?;
    Ok(0)
}
