//! `asgen` command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use asgraph::generators::{Model, ModelParams, DEFAULT_M0};
use asgraph::routing::PeerPolicy;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::edgelist::EdgeList;
use crate::ensemble;
use crate::error::{CliError, CliResult};
use crate::regions::RegionTable;
use crate::report::{self, Sections, Settings, TheoryReport};

#[derive(Debug, Parser)]
#[command(
    name = "asgen",
    version,
    about = "Generate and analyze synthetic AS-level topologies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate one edge-list file per run.
    Generate(GenerateArgs),
    /// Analyze edge-list files and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Print closed-form predictions as JSON.
    Predict(PredictArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// ba, ined, dined or geodined.
    #[arg(long, default_value = "geodined", value_parser = Model::from_str)]
    pub model: Model,
    #[arg(long, default_value_t = 15_000)]
    pub nodes: usize,
    /// Mean edges per step, fractional allowed except for ba.
    #[arg(long, default_value_t = 2.11)]
    pub m: f64,
    /// Probability that an arrangement is symmetric.
    #[arg(long, default_value_t = 0.07)]
    pub p: f64,
    /// Probability that an extra edge stays in the new node's region.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// `name,weight_percent` table; the built-in default when omitted.
    #[arg(long)]
    pub regions: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Run r uses seed + r and writes <stem>.<r>.<ext>.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Seed ring size.
    #[arg(long, default_value_t = DEFAULT_M0)]
    pub m0: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    /// Peer links only at the top of the path.
    SinglePeak,
    /// Peer links anywhere.
    Transparent,
}

impl From<PolicyArg> for PeerPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::SinglePeak => PeerPolicy::SinglePeak,
            PolicyArg::Transparent => PeerPolicy::Transparent,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Edge-list file or glob pattern; repeatable.
    #[arg(long, required = true, num_args = 1..)]
    pub graph: Vec<String>,
    #[arg(long)]
    pub cores: bool,
    #[arg(long)]
    pub ccdf: bool,
    #[arg(long)]
    pub leaves: bool,
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long)]
    pub inflation: bool,
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = asgraph::analysis::DEFAULT_THRESHOLD)]
    pub threshold: f64,
    #[arg(long, default_value_t = asgraph::analysis::DEFAULT_MIN_CORE_SIZE)]
    pub min_core_size: usize,
    #[arg(long, default_value_t = 1000)]
    pub inflation_samples: usize,
    /// Graph i is sampled with this seed + i.
    #[arg(long, default_value_t = 0)]
    pub inflation_seed: u64,
    #[arg(long, value_enum, default_value_t = PolicyArg::SinglePeak)]
    pub peer_policy: PolicyArg,
    /// Report path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub m: f64,
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,
    /// Node count for the maximal-degree prediction.
    #[arg(long)]
    pub nodes: Option<f64>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 1;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "asgen: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Generate(args) => generate(args, stdout),
        Command::Analyze(args) => analyze(args, stdout),
        Command::Predict(args) => predict(args, stdout),
    }
}

fn generate(args: GenerateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if args.runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let table = match &args.regions {
        Some(path) => RegionTable::load(path)?,
        None => RegionTable::builtin(),
    };
    let params = ModelParams::new(args.model, args.nodes, args.m, args.p)
        .with_alpha(args.alpha)
        .with_regions(table.weights.clone())
        .with_m0(args.m0)
        .with_seed(args.seed);
    let names = (args.model == Model::Geodined).then_some(table.names.as_slice());
    for (run, (params, graph)) in ensemble::generate_runs(&params, args.runs)?
        .into_iter()
        .enumerate()
    {
        let path = ensemble::run_path(&args.out, run, args.runs);
        EdgeList::generated(&params, names, graph).save(&path)?;
        let _ = writeln!(stdout, "{}", path.display());
    }
    Ok(())
}

fn expand_inputs(patterns: &[String]) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for pattern in patterns {
        if !pattern.contains(['*', '?', '[']) {
            files.push(PathBuf::from(pattern));
            continue;
        }
        let paths = glob::glob(pattern)
            .map_err(|e| CliError::Usage(format!("bad pattern `{pattern}`: {e}")))?;
        let mut matched: Vec<PathBuf> = paths
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Data(e.to_string()))?;
        if matched.is_empty() {
            return Err(CliError::Data(format!("no files match `{pattern}`")));
        }
        matched.sort();
        files.extend(matched);
    }
    Ok(files)
}

fn analyze(args: AnalyzeArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let sections = if args.all {
        Sections::all()
    } else {
        Sections {
            leaves: args.leaves,
            symmetric: args.symmetric,
            ccdf: args.ccdf,
            cores: args.cores,
            inflation: args.inflation,
        }
    };
    if !sections.any() {
        return Err(CliError::Usage(
            "no sections requested; pass --all or any of --cores --ccdf --leaves --symmetric --inflation".into(),
        ));
    }
    if !(0.0..=1.0).contains(&args.threshold) {
        return Err(CliError::Usage(format!(
            "--threshold must lie in [0, 1], got {}",
            args.threshold
        )));
    }
    if sections.inflation && args.inflation_samples == 0 {
        return Err(CliError::Usage(
            "--inflation-samples must be at least 1".into(),
        ));
    }
    let settings = Settings {
        sections,
        threshold: args.threshold,
        min_core_size: args.min_core_size,
        inflation_samples: args.inflation_samples,
        inflation_seed: args.inflation_seed,
        peer_policy: args.peer_policy.into(),
    };
    let inputs = expand_inputs(&args.graph)?
        .into_iter()
        .map(|path| Ok((path.display().to_string(), EdgeList::load(&path)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let report = report::analyze(&inputs, &settings)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Data(e.to_string()))?;
    write_output(args.out.as_deref(), &json, stdout)
}

fn predict(args: PredictArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let report = TheoryReport::new(args.m, args.p, args.nodes)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Data(e.to_string()))?;
    write_output(None, &json, stdout)
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| CliError::io(path, e)),
        None => writeln!(stdout, "{text}").map_err(|e| CliError::io("<stdout>", e)),
    }
}
