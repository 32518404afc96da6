//! Configuration-driven runs, run manifests and replay.

mod config;
mod experiments;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use config::{Experiment, ExperimentConfig, Format, OutputSection, PercolationSection, SetSpec};
pub use experiments::{run_experiment, Artifact};

use crate::error::Error;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Experiment(#[from] Error),
    #[error("replay: {0}")]
    Replay(String),
}

impl CliError {
    /// 2 schema, 3 precondition, 4 budget, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Experiment(Error::InvalidInput(_) | Error::Parse(_)) => 2,
            CliError::Experiment(Error::Precondition(_)) => 3,
            CliError::Experiment(Error::Budget(_)) => 4,
            CliError::Experiment(Error::Io(_)) | CliError::Replay(_) => 1,
        }
    }
}

/// Command-line overrides of the config file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub fast: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    pub file: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub experiment: String,
    pub config_hash: String,
    pub seed: u64,
    pub fast: bool,
    pub workers: usize,
    pub replicas: Option<u64>,
    pub wall_clock_seconds: f64,
    /// Effective configuration (TOML), overrides applied.
    pub config: String,
    pub outputs: Vec<OutputFile>,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    toml::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of everything that determines the outputs: config without the output directory,
/// the seed and the fast flag.
pub fn config_hash(cfg: &ExperimentConfig, fast: bool) -> String {
    let mut c = cfg.clone();
    c.output.dir = PathBuf::new();
    let canonical = serde_json::to_string(&(&c, fast)).expect("config serializes");
    sha256_hex(canonical.as_bytes())
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<(T, usize), CliError> {
    match workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Schema(format!("worker pool: {e}")))?;
            Ok((pool.install(f), n.max(1)))
        }
        None => Ok((f(), rayon::current_num_threads())),
    }
}

/// Runs a parsed config, writes the artifacts and `manifest.json`, returns the manifest.
pub fn run(mut cfg: ExperimentConfig, opts: &RunOptions) -> Result<RunManifest, CliError> {
    if let Some(s) = opts.seed {
        cfg.percolation.seed = s;
    }
    if let Some(dir) = &opts.out {
        cfg.output.dir = dir.clone();
    }
    if cfg.output.formats.is_empty() {
        return Err(CliError::Schema("output.formats must not be empty".into()));
    }
    let seed = cfg.percolation.seed;
    let hash = config_hash(&cfg, opts.fast);
    log::info!("running {} (seed {seed}, config {})", cfg.experiment.name(), &hash[..12]);
    let start = Instant::now();
    let (artifacts, workers) = with_pool(opts.workers, || run_experiment(&cfg, seed, opts.fast))?;
    let artifacts = artifacts?;
    let dir = &cfg.output.dir;
    fs::create_dir_all(dir).map_err(Error::from)?;
    let mut outputs = Vec::new();
    for a in artifacts {
        let (name, bytes) = match a {
            Artifact::Csv { name, body } if cfg.output.formats.contains(&Format::Csv) => {
                (name, format!("# config_hash={hash}\n{body}").into_bytes())
            }
            Artifact::Json { name, value } if cfg.output.formats.contains(&Format::Json) => {
                let doc = serde_json::json!({
                    "config_hash": hash,
                    "seed": seed,
                    "experiment": cfg.experiment,
                    "result": value,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
                s.push('\n');
                (name, s.into_bytes())
            }
            _ => continue,
        };
        fs::write(dir.join(&name), &bytes).map_err(Error::from)?;
        outputs.push(OutputFile { file: name, sha256: sha256_hex(&bytes), bytes: bytes.len() as u64 });
    }
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        experiment: cfg.experiment.name().to_string(),
        config_hash: hash,
        seed,
        fast: opts.fast,
        workers,
        replicas: cfg.experiment.samples(),
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        config: toml::to_string(&cfg).map_err(|e| CliError::Schema(e.to_string()))?,
        outputs,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join(MANIFEST_NAME), text).map_err(Error::from)?;
    Ok(manifest)
}

/// Reads, parses and runs a config file.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<RunManifest, CliError> {
    let text = fs::read_to_string(path).map_err(Error::from)?;
    run(parse_config(&text)?, opts)
}

#[derive(Clone, Debug, Serialize)]
pub struct FileVerdict {
    pub file: String,
    pub recorded: String,
    pub on_disk: Option<String>,
    pub rerun: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub files: Vec<FileVerdict>,
    /// The manifest's config hash matches its embedded config.
    pub hash_matches: bool,
    pub pass: bool,
}

impl ReplayReport {
    pub fn failures(&self) -> impl Iterator<Item = &FileVerdict> {
        self.files.iter().filter(|f| !f.pass)
    }
}

/// Checks the outputs beside `manifest_path` against their recorded checksums, then reruns
/// the embedded config with the recorded seed in a scratch directory and compares again.
pub fn replay(manifest_path: &Path) -> Result<ReplayReport, CliError> {
    let text = fs::read_to_string(manifest_path).map_err(Error::from)?;
    let m: RunManifest = serde_json::from_str(&text).map_err(|e| CliError::Replay(format!("manifest: {e}")))?;
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    let cfg = parse_config(&m.config)?;
    let scratch = std::env::temp_dir().join(format!(
        "perc-lab-replay-{}-{}",
        std::process::id(),
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0)
    ));
    let opts = RunOptions { seed: Some(m.seed), workers: None, out: Some(scratch.clone()), fast: m.fast };
    let rerun = run(cfg.clone(), &opts);
    let mut files = Vec::new();
    for f in &m.outputs {
        let on_disk = fs::read(dir.join(&f.file)).ok().map(|b| sha256_hex(&b));
        let again = rerun
            .as_ref()
            .ok()
            .and_then(|r| r.outputs.iter().find(|o| o.file == f.file))
            .map(|o| o.sha256.clone());
        let pass = on_disk.as_deref() == Some(&f.sha256) && again.as_deref() == Some(&f.sha256);
        files.push(FileVerdict { file: f.file.clone(), recorded: f.sha256.clone(), on_disk, rerun: again, pass });
    }
    let _ = fs::remove_dir_all(&scratch);
    rerun?;
    let hash_matches = config_hash(&cfg, m.fast) == m.config_hash;
    let pass = hash_matches && !files.is_empty() && files.iter().all(|f| f.pass);
    Ok(ReplayReport { files, hash_matches, pass })
}
