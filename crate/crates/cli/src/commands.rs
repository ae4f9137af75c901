use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::anyhow;
use serde::Serialize;
use slcmatch_core::benchgen::{generate, BenchSpec, Manifest};
use slcmatch_core::eval::{evaluate, EvalReport};
use slcmatch_core::kb::{load_kb, KbStats, KnowledgeBase};
use slcmatch_core::matching::{match_kbs, AlignmentSet, SchemaAlignment};
use slcmatch_core::pipeline::{run_cell, Weighting};
use slcmatch_core::weights::{compute_weights, WeightTable};
use slcmatch_core::Error;

use crate::{Cli, Command, EvalArgs, GenbenchArgs, MatchArgs, PipelineArgs, StatsArgs, WeightsArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Input,
    Internal,
}

impl Kind {
    pub fn code(self) -> u8 {
        match self {
            Kind::Usage => 1,
            Kind::Input => 2,
            Kind::Internal => 3,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub source: anyhow::Error,
}

impl CliError {
    fn new(kind: Kind, source: impl Into<anyhow::Error>) -> Self {
        CliError {
            kind,
            source: source.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Config(_) => Kind::Usage,
            Error::UndefinedStatistic(_) | Error::UnknownInstance(_) => Kind::Internal,
            _ => Kind::Input,
        };
        CliError::new(kind, e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T>;
}

impl<T> Context<T> for Result<T, Error> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T> {
        self.map_err(|e| {
            let mut err = CliError::from(e);
            err.source = err.source.context(what());
            err
        })
    }
}

/// Everything needed to reproduce a run.
#[derive(Serialize)]
struct RunConfig<'a, A: Serialize> {
    version: &'static str,
    command: &'static str,
    jobs: usize,
    args: &'a A,
}

pub fn run(cli: Cli) -> CliResult {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| CliError::new(Kind::Internal, e))?;
    }
    let jobs = cli.jobs;
    match &cli.command {
        Command::Weights(a) => weights(a, jobs),
        Command::Match(a) => match_cmd(a, jobs),
        Command::Genbench(a) => genbench(a),
        Command::Eval(a) => eval(a, jobs),
        Command::Pipeline(a) => pipeline(a, jobs),
        Command::Stats(a) => stats(a),
    }
}

fn read_kb(path: &Path) -> CliResult<KnowledgeBase> {
    let kb = load_kb(path).context(|| format!("reading {}", path.display()))?;
    for w in kb.warnings() {
        log::warn!("{}: {w:?}", path.display());
    }
    Ok(kb)
}

fn read_alignment(path: &Path) -> CliResult<AlignmentSet> {
    AlignmentSet::load(path).context(|| format!("reading {}", path.display()))
}

/// Write through a temporary sibling so a failed run leaves nothing behind.
fn write_atomic(path: &Path, contents: &str) -> CliResult {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::new(Kind::Usage, anyhow!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    let io = |e| CliError::new(Kind::Input, Error::io(path, e));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn config_path(output: &Path) -> PathBuf {
    output.with_extension("config.json")
}

/// Write the main output (or print it) together with the effective config.
fn emit<A: Serialize>(
    output: Option<&Path>,
    contents: &str,
    command: &'static str,
    jobs: usize,
    args: &A,
) -> CliResult {
    match output {
        Some(path) => {
            let cfg = RunConfig {
                version: env!("CARGO_PKG_VERSION"),
                command,
                jobs,
                args,
            };
            let mut cfg_text =
                serde_json::to_string_pretty(&cfg).map_err(|e| CliError::new(Kind::Internal, e))?;
            cfg_text.push('\n');
            write_atomic(path, contents)?;
            write_atomic(&config_path(path), &cfg_text)
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn short(iri: &str) -> &str {
    iri.rsplit(['#', '/']).next().filter(|s| !s.is_empty()).unwrap_or(iri)
}

fn weights(a: &WeightsArgs, jobs: usize) -> CliResult {
    let kb = read_kb(&a.kb)?;
    let table = compute_weights(&kb, &a.weights.config())
        .context(|| format!("weighing {}", a.kb.display()))?
        .with_provenance(a.kb.display().to_string());
    emit(a.output.as_deref(), &table.to_json(), "weights", jobs, a)?;

    let ranked = table.ranked();
    let k = a.top.min(ranked.len());
    let mut report = String::new();
    let _ = writeln!(report, "most discriminative:");
    for (p, w) in &ranked[..k] {
        let _ = writeln!(report, "  {w:.4}  {}", short(p.as_str()));
    }
    let _ = writeln!(report, "least discriminative:");
    for (p, w) in ranked[ranked.len() - k..].iter().rev() {
        let _ = writeln!(report, "  {w:.4}  {}", short(p.as_str()));
    }
    if a.output.is_some() {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    Ok(())
}

fn side_weights(
    kb: &KnowledgeBase,
    path: &Path,
    preset: Option<&PathBuf>,
    a: &MatchArgs,
) -> CliResult<WeightTable> {
    let cfg = a.weights.config();
    if a.matching.no_weights {
        return Ok(WeightTable::uniform(kb.properties(), cfg));
    }
    match preset {
        Some(p) => WeightTable::load(p).context(|| format!("reading {}", p.display())),
        None => compute_weights(kb, &cfg)
            .context(|| format!("weighing {}", path.display()))
            .map(|t| t.with_provenance(path.display().to_string())),
    }
}

fn match_cmd(a: &MatchArgs, jobs: usize) -> CliResult {
    let start = Instant::now();
    let mcfg = a.matching.config();
    mcfg.validate()?;
    a.weights.config().validate()?;
    let left = read_kb(&a.left)?;
    let right = read_kb(&a.right)?;
    let pairs = match &a.alignment {
        Some(p) => read_alignment(p)?,
        None => AlignmentSet::new(),
    };
    let (align, warnings) = SchemaAlignment::classify(&pairs, &left, &right, !a.distinct_schemas);
    for w in warnings {
        log::warn!("{w}");
    }
    let lw = side_weights(&left, &a.left, a.left_weights.as_ref(), a)?;
    let rw = side_weights(&right, &a.right, a.right_weights.as_ref(), a)?;
    let out = match_kbs(&left, &right, &align, &lw, &rw, &mcfg)?;
    emit(a.output.as_deref(), &out.to_tsv(), "match", jobs, a)?;
    eprintln!(
        "{} pairs from {} x {} instances in {:.3}s",
        out.len(),
        left.instance_count(),
        right.instance_count(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn genbench(a: &GenbenchArgs) -> CliResult {
    let spec = BenchSpec {
        n_instances: a.instances,
        family: a.family,
        intensity: a.intensity,
        seed: a.seed,
    };
    spec.validate()?;
    let dir = &a.output;
    if dir.exists() && !a.force {
        let mut entries = std::fs::read_dir(dir).map_err(|e| CliError::new(Kind::Input, Error::io(dir, e)))?;
        if entries.next().is_some() {
            return Err(CliError::new(
                Kind::Input,
                anyhow!("{} is not empty; pass --force to overwrite", dir.display()),
            ));
        }
    }
    let bench = generate(&spec)?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::new(Kind::Input, Error::io(dir, e)))?;
    for (name, contents) in bench.files() {
        write_atomic(&dir.join(name), &contents)?;
    }
    eprintln!(
        "wrote {} ({} instances, {} gold pairs)",
        dir.display(),
        bench.base.instance_count(),
        bench.transformed.gold.len()
    );
    Ok(())
}

fn eval(a: &EvalArgs, jobs: usize) -> CliResult {
    let predicted = read_alignment(&a.predicted)?;
    let gold = read_alignment(&a.gold)?;
    let mut report = evaluate(&predicted, &gold);
    if let Some(m) = &a.manifest {
        let manifest = Manifest::load(m).context(|| format!("reading {}", m.display()))?;
        report = report.with_cell(manifest.spec.family.to_string(), manifest.spec.intensity);
    }
    let text = if a.csv {
        format!("{}\n{}\n", EvalReport::CSV_HEADER, report.csv_row(a.delta2))
    } else {
        let mut s = serde_json::to_string_pretty(&report).map_err(|e| CliError::new(Kind::Internal, e))?;
        s.push('\n');
        s
    };
    emit(a.output.as_deref(), &text, "eval", jobs, a)
}

fn pipeline(a: &PipelineArgs, jobs: usize) -> CliResult {
    let start = Instant::now();
    let wcfg = a.weights.config();
    let mcfg = a.matching.config();
    wcfg.validate()?;
    mcfg.validate()?;
    let weighting = if a.matching.no_weights { Weighting::Uniform } else { Weighting::Computed };
    let mut csv = format!("{}\n", EvalReport::CSV_HEADER);
    for family in &a.families {
        for intensity in &a.intensities {
            let spec = BenchSpec {
                n_instances: a.instances,
                family: *family,
                intensity: *intensity,
                seed: a.seed,
            };
            spec.validate()?;
            let report = run_cell(&spec, weighting, &wcfg, &mcfg)?;
            log::info!("{family} {intensity}: F {:.3}", report.f_measure);
            csv.push_str(&report.csv_row(mcfg.delta2));
            csv.push('\n');
        }
    }
    emit(a.output.as_deref(), &csv, "pipeline", jobs, a)?;
    eprintln!(
        "{} cells in {:.3}s",
        a.families.len() * a.intensities.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn stats(a: &StatsArgs) -> CliResult {
    let kb = read_kb(&a.kb)?;
    let mut s = serde_json::to_string_pretty(&KbStats::of(&kb)).map_err(|e| CliError::new(Kind::Internal, e))?;
    s.push('\n');
    print!("{s}");
    Ok(())
}
