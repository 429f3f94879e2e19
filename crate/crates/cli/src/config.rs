use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};

use cantomine::embed::EmbedderSpec;
use cantomine::mining::MiningConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliResult, Failure};

pub const DEFAULT_SPLIT_SEED: u64 = 0;

/// Everything that influences a run besides the input files. Loaded from
/// JSON; command-line flags override individual fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub embedder: EmbedderSpec,
    pub mining: MiningConfig<f64>,
    pub split_seed: u64,
    pub workers: usize,
    /// Lowercase Latin tokens before BLEU.
    pub lowercase: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            embedder: EmbedderSpec::default(),
            mining: MiningConfig::default(),
            split_seed: DEFAULT_SPLIT_SEED,
            workers: 1,
            lowercase: false,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let file = File::open(path).map_err(|e| Failure::io(path, e))?;
        serde_json::from_reader(BufReader::new(file))
            .map_err(|e| Failure::format(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> CliResult<()> {
        self.embedder.validate()?;
        self.mining.validate()?;
        if self.workers == 0 {
            return Err(Failure::invariant("workers must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

/// Written next to every output: the effective config and digests of the
/// files read.
#[derive(Debug, Serialize)]
pub struct Provenance<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<PathBuf>,
}

pub fn sha256_file(path: &Path) -> CliResult<String> {
    let mut file = File::open(path).map_err(|e| Failure::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf).map_err(|e| Failure::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

impl<'a> Provenance<'a> {
    pub fn new(command: &'a str, config: &'a RunConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &Path) -> CliResult<()> {
        let sha256 = sha256_file(path)?;
        self.inputs.push(InputDigest {
            path: path.to_path_buf(),
            sha256,
        });
        Ok(())
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut file = File::create(path).map_err(|e| Failure::io(path, e))?;
        let json = serde_json::to_string_pretty(self).expect("provenance serializes");
        writeln!(file, "{json}").map_err(|e| Failure::io(path, e))
    }
}

/// `out.tsv` -> `out.tsv.provenance.json`
pub fn provenance_path(output: &Path) -> PathBuf {
    let mut name = output
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".provenance.json");
    output.with_file_name(name)
}
