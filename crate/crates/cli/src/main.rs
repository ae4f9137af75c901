//! `slcmatch`: weights, matching, benchmark generation and evaluation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use slcmatch_core::benchgen::TransformFamily;
use slcmatch_core::matching::MatchConfig;
use slcmatch_core::weights::{WeightConfig, WeightMode};

#[derive(Debug, Parser)]
#[command(name = "slcmatch", version, about = "Instance matching with automatically generated property weights")]
pub struct Cli {
    /// Worker threads for the matcher (0 = all available cores).
    #[arg(long, global = true, default_value_t = 0, env = "SLCMATCH_JOBS")]
    pub jobs: usize,

    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a property weight table for one knowledge base.
    Weights(WeightsArgs),
    /// Match the instances of two knowledge bases.
    Match(MatchArgs),
    /// Generate a synthetic benchmark directory.
    Genbench(GenbenchArgs),
    /// Score a predicted alignment against a gold standard.
    Eval(EvalArgs),
    /// Generate, weigh, match and evaluate a grid of benchmark cells.
    Pipeline(PipelineArgs),
    /// Print per-property statistics of a knowledge base as JSON.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeightFlags {
    /// Weight formula.
    #[arg(long, default_value_t = WeightMode::Log, env = "SLCMATCH_MODE")]
    pub mode: WeightMode,
    /// Coverage ratio at or above which the sparsity correction is skipped.
    #[arg(long, default_value_t = WeightConfig::DEFAULT_DELTA, env = "SLCMATCH_DELTA")]
    pub delta: f64,
    /// Sigmoid steepness.
    #[arg(long, default_value_t = WeightConfig::DEFAULT_S, env = "SLCMATCH_S")]
    pub s: f64,
    /// Sigmoid midpoint.
    #[arg(long, default_value_t = WeightConfig::DEFAULT_MU, env = "SLCMATCH_MU")]
    pub mu: f64,
}

impl WeightFlags {
    pub fn config(&self) -> WeightConfig {
        WeightConfig {
            delta: self.delta,
            s: self.s,
            mu: self.mu,
            mode: self.mode,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MatchFlags {
    /// Minimum affinity for a reported pair.
    #[arg(long, default_value_t = MatchConfig::DEFAULT_DELTA2, env = "SLCMATCH_DELTA2")]
    pub delta2: f64,
    /// Fraction of one-sided property weight forgiven in the denominator.
    #[arg(long, default_value_t = MatchConfig::DEFAULT_GAMMA_COEFF, env = "SLCMATCH_GAMMA")]
    pub gamma: f64,
    /// Link depth of Semantic Link Clouds.
    #[arg(long, default_value_t = MatchConfig::DEFAULT_DEPTH, env = "SLCMATCH_DEPTH")]
    pub depth: usize,
    /// Value similarity below this counts as no evidence.
    #[arg(long, default_value_t = MatchConfig::DEFAULT_SIM_FLOOR, env = "SLCMATCH_SIM_FLOOR")]
    pub sim_floor: f64,
    /// Report every pair above the threshold instead of the best per left instance.
    #[arg(long, env = "SLCMATCH_ALL_PAIRS")]
    pub all_pairs: bool,
    /// Use weight 1.0 for every property.
    #[arg(long, env = "SLCMATCH_NO_WEIGHTS")]
    pub no_weights: bool,
}

impl MatchFlags {
    pub fn config(&self) -> MatchConfig {
        MatchConfig {
            delta2: self.delta2,
            gamma_coeff: self.gamma,
            depth: self.depth,
            sim_floor: self.sim_floor,
            one_per_left: !self.all_pairs,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct WeightsArgs {
    /// N-Triples file.
    pub kb: PathBuf,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Number of most and least discriminative properties to print.
    #[arg(long, default_value_t = 5, env = "SLCMATCH_TOP")]
    pub top: usize,
    #[command(flatten)]
    pub weights: WeightFlags,
}

#[derive(Debug, Args, Serialize)]
pub struct MatchArgs {
    /// Left N-Triples file.
    pub left: PathBuf,
    /// Right N-Triples file.
    pub right: PathBuf,
    /// Schema alignment TSV (concept and property pairs, left to right).
    #[arg(long)]
    pub alignment: Option<PathBuf>,
    /// Treat the two KBs as using unrelated vocabularies.
    #[arg(long)]
    pub distinct_schemas: bool,
    /// Precomputed weight table for the left KB.
    #[arg(long)]
    pub left_weights: Option<PathBuf>,
    /// Precomputed weight table for the right KB.
    #[arg(long)]
    pub right_weights: Option<PathBuf>,
    /// Output TSV (stdout when absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub matching: MatchFlags,
    #[command(flatten)]
    pub weights: WeightFlags,
}

#[derive(Debug, Args, Serialize)]
pub struct GenbenchArgs {
    /// Output directory.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Transformation family.
    #[arg(long, default_value_t = TransformFamily::Value, env = "SLCMATCH_FAMILY")]
    pub family: TransformFamily,
    /// Fraction of eligible items perturbed.
    #[arg(long, default_value_t = 0.3, env = "SLCMATCH_INTENSITY")]
    pub intensity: f64,
    /// Number of base instances.
    #[arg(long, default_value_t = 200, env = "SLCMATCH_INSTANCES")]
    pub instances: usize,
    /// Random seed.
    #[arg(long, default_value_t = 1, env = "SLCMATCH_SEED")]
    pub seed: u64,
    /// Write into a non-empty directory.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    /// Predicted alignment TSV.
    pub predicted: PathBuf,
    /// Gold alignment TSV.
    pub gold: PathBuf,
    /// Benchmark manifest; tags the report with family and intensity.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Output report JSON (stdout when absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Print a CSV row instead of JSON.
    #[arg(long)]
    pub csv: bool,
    /// Threshold recorded in the CSV row.
    #[arg(long, default_value_t = MatchConfig::DEFAULT_DELTA2, env = "SLCMATCH_DELTA2")]
    pub delta2: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PipelineArgs {
    /// Families to run.
    #[arg(long, value_delimiter = ',', default_value = "value,structural,logical,combined")]
    pub families: Vec<TransformFamily>,
    /// Intensities to run.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5")]
    pub intensities: Vec<f64>,
    /// Number of base instances per cell.
    #[arg(long, default_value_t = 200, env = "SLCMATCH_INSTANCES")]
    pub instances: usize,
    /// Random seed.
    #[arg(long, default_value_t = 1, env = "SLCMATCH_SEED")]
    pub seed: u64,
    /// Output CSV (stdout when absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub matching: MatchFlags,
    #[command(flatten)]
    pub weights: WeightFlags,
}

#[derive(Debug, Args, Serialize)]
pub struct StatsArgs {
    /// N-Triples file.
    pub kb: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.source);
            ExitCode::from(e.kind.code())
        }
    }
}
