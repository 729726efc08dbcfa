//! The `threadmotif` command line.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use threadmotif_core::{BinSpec, BranchingMode, ClassTable, Ecdf, FilterPolicy, Thread};

use crate::corpus::read_corpus;
use crate::pipeline::{self, CensusMode};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "threadmotif", version, about = "Structural analysis of threaded conversations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-thread macro metrics and their ECDFs.
    Macro(RunArgs),
    /// Anchored triad census per thread.
    Census(RunArgs),
    /// Z-scores of a focus census against a baseline census.
    Compare(CompareArgs),
    /// Completion times of one anchored class.
    Timing(TimingArgs),
    /// Degree sequences of user and reply graphs.
    Degrees(RunArgs),
    /// Print the anchored class table.
    Classes,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Line-delimited JSON corpus.
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub opts: SharedOpts,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// census.csv of the focus corpus.
    #[arg(long)]
    pub focus: PathBuf,
    /// census.csv of the baseline corpus.
    #[arg(long)]
    pub baseline: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub opts: SharedOpts,
}

#[derive(Debug, Args)]
pub struct TimingArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Anchored class name, e.g. 201-b.
    #[arg(long = "class")]
    pub class_name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusModeArg {
    Fast,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchingModeArg {
    Internal,
    All,
}

#[derive(Debug, Args)]
pub struct SharedOpts {
    /// Minimum number of posts besides the root.
    #[arg(long, default_value_t = 5)]
    pub min_extra_posts: usize,
    /// Keep threads whose root author is deleted.
    #[arg(long)]
    pub keep_deleted_root: bool,
    #[arg(long, default_value = "[deleted]")]
    pub deleted_sentinel: String,
    /// Inclusive user-count ranges, e.g. "1-5,6-10".
    #[arg(long, default_value = "1-5,6-10,11-15,16-20,21-25,26-30,31-35,36-40")]
    pub bins: String,
    #[arg(long, value_enum, default_value = "fast")]
    pub census_mode: CensusModeArg,
    #[arg(long, value_enum, default_value = "internal")]
    pub branching_mode: BranchingModeArg,
    /// A class is rare unless some bin mean exceeds this.
    #[arg(long, default_value_t = 10.0)]
    pub rarity_threshold: f64,
    /// Worker threads (default: available processors).
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub policy: FilterPolicy,
    pub bins: BinSpec,
    pub census_mode: CensusMode,
    pub branching_mode: BranchingMode,
    pub rarity_threshold: f64,
    pub jobs: Option<usize>,
}

impl SharedOpts {
    pub fn resolve(&self) -> Result<RunConfig, Failure> {
        let bins = self.bins.parse().map_err(|e| Failure::Config(anyhow!("--bins: {e}")))?;
        if !self.rarity_threshold.is_finite() {
            return Err(Failure::Config(anyhow!("--rarity-threshold must be finite")));
        }
        if self.jobs == Some(0) {
            return Err(Failure::Config(anyhow!("--jobs must be at least 1")));
        }
        Ok(RunConfig {
            policy: FilterPolicy {
                min_extra_posts: self.min_extra_posts,
                drop_deleted_root: !self.keep_deleted_root,
                deleted_sentinel: self.deleted_sentinel.clone(),
            },
            bins,
            census_mode: match self.census_mode {
                CensusModeArg::Fast => CensusMode::Fast,
                CensusModeArg::Naive => CensusMode::Naive,
            },
            branching_mode: match self.branching_mode {
                BranchingModeArg::Internal => BranchingMode::Internal,
                BranchingModeArg::All => BranchingMode::All,
            },
            rarity_threshold: self.rarity_threshold,
            jobs: self.jobs,
        })
    }
}

/// Command failure, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, unwritable output: exit 1.
    Input(anyhow::Error),
    /// Invalid flags or arguments: exit 2.
    Config(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Config(_) => 2,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e) | Failure::Config(e) => e,
        }
    }
}

fn input_err<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

/// Runs a parsed command; diagnostics go to `diag`, data to files (or to
/// `stdout` for `classes`).
pub fn run(cli: Cli, stdout: &mut dyn Write, diag: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let table = ClassTable::new();
    match cli.command {
        Command::Classes => report::write_classes(stdout, &table).map_err(input_err),
        Command::Macro(args) => {
            let config = args.opts.resolve()?;
            with_pool(config.jobs, || cmd_macro(&args, &config, diag))
        }
        Command::Census(args) => {
            let config = args.opts.resolve()?;
            with_pool(config.jobs, || cmd_census(&args, &config, &table, diag))
        }
        Command::Degrees(args) => {
            let config = args.opts.resolve()?;
            with_pool(config.jobs, || cmd_degrees(&args, &config, diag))
        }
        Command::Timing(args) => {
            let config = args.run.opts.resolve()?;
            let class = table
                .by_name(&args.class_name)
                .map_err(|e| Failure::Config(e.into()))?;
            if !table.class(class).has_edges() {
                return Err(Failure::Config(anyhow!(
                    "edge-free class {} has no completion time",
                    args.class_name
                )));
            }
            with_pool(config.jobs, || {
                let threads = load(&args.run.input, &config.policy, diag)?;
                let (rows, median) = pipeline::timing(&threads, &table, class).map_err(input_err)?;
                let path = prepare_out(&args.run.out)?.join("timing.csv");
                report::write_timing(create(&path)?, &rows, median).map_err(input_err)?;
                writeln!(diag, "{} instances of {}", rows.len(), args.class_name).ok();
                Ok(())
            })
        }
        Command::Compare(args) => {
            let config = args.opts.resolve()?;
            let read = |path: &Path| -> Result<Vec<threadmotif_core::Census>, Failure> {
                let file = File::open(path)
                    .with_context(|| format!("cannot open {}", path.display()))
                    .map_err(Failure::Input)?;
                let rows = report::read_census(file, &table)
                    .with_context(|| format!("{}", path.display()))
                    .map_err(Failure::Input)?;
                Ok(rows.into_iter().map(|r| r.census).collect())
            };
            let focus = read(&args.focus)?;
            let baseline = read(&args.baseline)?;
            let (report, _) = pipeline::compare(&focus, &baseline, &config.bins, config.rarity_threshold);
            let path = prepare_out(&args.out)?.join("compare.csv");
            report::write_compare(create(&path)?, &report, &table).map_err(input_err)
        }
    }
}

fn with_pool<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Reads and filters a corpus, reporting skipped lines on `diag`.
fn load(path: &Path, policy: &FilterPolicy, diag: &mut (dyn Write + Send)) -> Result<Vec<Thread>, Failure> {
    let (threads, errors) = read_corpus(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)?;
    for e in &errors {
        writeln!(diag, "warning: {}: {e}", path.display()).ok();
    }
    if !errors.is_empty() {
        writeln!(diag, "{} malformed thread(s) skipped", errors.len()).ok();
    }
    let total = threads.len();
    let kept = threadmotif_core::thread::filter_corpus(threads, policy);
    writeln!(diag, "{} of {} thread(s) kept after filtering", kept.len(), total).ok();
    if kept.is_empty() {
        writeln!(diag, "warning: corpus is empty after filtering").ok();
    }
    Ok(kept)
}

fn prepare_out(dir: &Path) -> Result<&Path, Failure> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))
        .map_err(Failure::Input)?;
    Ok(dir)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::Input)
}

fn cmd_macro(args: &RunArgs, config: &RunConfig, diag: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let threads = load(&args.input, &config.policy, diag)?;
    let out = prepare_out(&args.out)?;
    let mut records = Vec::with_capacity(threads.len());
    for r in pipeline::macro_records(&threads, config.branching_mode) {
        match r {
            Ok(rec) => records.push(rec),
            Err((id, e)) => {
                writeln!(diag, "warning: thread {id:?} skipped: {e}").ok();
            }
        }
    }
    report::write_macro(create(&out.join("macro_metrics.csv"))?, &records).map_err(input_err)?;
    for (name, value) in report::MACRO_METRICS {
        let samples: Vec<f64> = records.iter().map(value).collect();
        let file = create(&out.join(report::ecdf_file_name(name)))?;
        match Ecdf::new(&samples) {
            Ok(ecdf) => report::write_ecdf(file, ecdf.points()),
            Err(_) => report::write_ecdf(file, std::iter::empty()),
        }
        .map_err(input_err)?;
    }
    Ok(())
}

fn cmd_census(
    args: &RunArgs,
    config: &RunConfig,
    table: &ClassTable,
    diag: &mut (dyn Write + Send),
) -> Result<(), Failure> {
    let threads = load(&args.input, &config.policy, diag)?;
    let out = prepare_out(&args.out)?;
    let rows = pipeline::census_rows(&threads, table, config.census_mode);
    let unbinned = rows
        .iter()
        .filter(|r| config.bins.bin_of(r.census.n_users).is_none())
        .count();
    if unbinned > 0 {
        writeln!(diag, "{unbinned} graph(s) outside every bin").ok();
    }
    report::write_census(create(&out.join("census.csv"))?, &rows, table, &config.bins).map_err(input_err)
}

fn cmd_degrees(args: &RunArgs, config: &RunConfig, diag: &mut (dyn Write + Send)) -> Result<(), Failure> {
    use rayon::prelude::*;
    use threadmotif_core::{ReplyGraph, UserGraph};

    let threads = load(&args.input, &config.policy, diag)?;
    let out = prepare_out(&args.out)?;
    let per_thread: Vec<_> = threads
        .par_iter()
        .map(|t| {
            let user = UserGraph::from_thread(t);
            let reply = ReplyGraph::from_thread(t).degree_report();
            let post_ids: Vec<String> = t.posts().iter().map(|p| p.id.clone()).collect();
            (user.labels().to_vec(), user.degree_report(), post_ids, reply)
        })
        .collect();
    let node_rows = threads.iter().zip(&per_thread).flat_map(|(t, (ul, ud, pl, rd))| {
        [
            (t.thread_id(), ul.as_slice(), ud),
            (t.thread_id(), pl.as_slice(), rd),
        ]
    });
    report::write_degrees(create(&out.join("degrees.csv"))?, node_rows).map_err(input_err)?;
    let reports = per_thread.iter().flat_map(|(_, ud, _, rd)| [ud, rd]);
    report::write_degree_histogram(create(&out.join("degree_histogram.csv"))?, reports)
        .map_err(input_err)
}
