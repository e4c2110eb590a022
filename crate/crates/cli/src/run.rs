use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use bipcert::cert::sha256_hex;
use bipcert::par::Exec;
use serde::{Deserialize, Serialize};

pub const MANIFEST: &str = "manifest.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    Bipartite,
    Failure,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Bipartite => 1,
            Status::Failure => 2,
            Status::InputError => 3,
        }
    }
}

/// An error that ends a run, tagged with the status it maps to.
#[derive(Debug)]
pub struct RunError {
    pub status: Status,
    pub message: String,
}

impl RunError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            status: Status::InputError,
            message: message.into(),
        }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self {
            status: Status::Failure,
            message: message.into(),
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<bipcert::Error> for RunError {
    fn from(e: bipcert::Error) -> Self {
        use bipcert::Error::*;
        let status = match e {
            Budget { .. } | Invariant(_) => Status::Failure,
            _ => Status::InputError,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

pub type RunResult<T> = Result<T, RunError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
    /// Full text, so the manifest alone reproduces the run.
    pub content: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeSummary {
    pub status: Status,
    pub exit_code: u8,
    pub summary: String,
    /// Artifact file name to SHA-256 of its bytes.
    pub artifacts: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub inputs: Vec<InputRecord>,
    pub outcome: OutcomeSummary,
}

impl RunManifest {
    pub fn load(path: &Path) -> RunResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| RunError::input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| RunError::input(format!("{}: {e}", path.display())))
    }
}

enum Source {
    Disk,
    Recorded(BTreeMap<String, InputRecord>),
}

/// Where a run reads its inputs from and writes its artifacts to.
pub struct Ctx {
    out: PathBuf,
    pub exec: Exec,
    source: Source,
    inputs: Vec<InputRecord>,
    artifacts: BTreeMap<String, String>,
}

impl Ctx {
    pub fn new(out: PathBuf, exec: Exec) -> RunResult<Self> {
        Self::with_source(out, exec, Source::Disk)
    }

    /// Inputs come from the manifest instead of the file system.
    pub fn replaying(out: PathBuf, exec: Exec, inputs: &[InputRecord]) -> RunResult<Self> {
        let map = inputs.iter().map(|r| (r.path.clone(), r.clone())).collect();
        Self::with_source(out, exec, Source::Recorded(map))
    }

    fn with_source(out: PathBuf, exec: Exec, source: Source) -> RunResult<Self> {
        fs::create_dir_all(&out).map_err(|e| RunError::input(format!("{}: {e}", out.display())))?;
        Ok(Self {
            out,
            exec,
            source,
            inputs: Vec::new(),
            artifacts: BTreeMap::new(),
        })
    }

    pub fn read(&mut self, path: &Path) -> RunResult<String> {
        let key = path.to_string_lossy().into_owned();
        if let Some(r) = self.inputs.iter().find(|r| r.path == key) {
            return Ok(r.content.clone());
        }
        let record = match &self.source {
            Source::Disk => {
                let content = fs::read_to_string(path).map_err(|e| RunError::input(format!("{key}: {e}")))?;
                InputRecord {
                    path: key,
                    sha256: sha256_hex(content.as_bytes()),
                    content,
                }
            }
            Source::Recorded(map) => {
                let r = map
                    .get(&key)
                    .ok_or_else(|| RunError::input(format!("{key} is not recorded in the manifest")))?;
                if sha256_hex(r.content.as_bytes()) != r.sha256 {
                    return Err(RunError::input(format!("recorded content of {key} does not match its hash")));
                }
                r.clone()
            }
        };
        let content = record.content.clone();
        self.inputs.push(record);
        Ok(content)
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> RunResult<()> {
        let path = self.out.join(name);
        fs::write(&path, bytes).map_err(|e| RunError::input(format!("{}: {e}", path.display())))?;
        self.artifacts.insert(name.to_string(), sha256_hex(bytes));
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> RunResult<()> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| RunError::failure(e.to_string()))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    pub fn write_csv<R: Serialize>(&mut self, name: &str, rows: &[R]) -> RunResult<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(|e| RunError::failure(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| RunError::failure(e.to_string()))?;
        self.write(name, &bytes)
    }

    pub fn input_texts(&self) -> Vec<&str> {
        self.inputs.iter().map(|r| r.content.as_str()).collect()
    }

    pub fn finish(
        mut self,
        subcommand: &str,
        config: serde_json::Value,
        seed: Option<u64>,
        status: Status,
        summary: String,
    ) -> RunResult<RunManifest> {
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            config,
            seed,
            inputs: std::mem::take(&mut self.inputs),
            outcome: OutcomeSummary {
                status,
                exit_code: status.exit_code(),
                summary,
                artifacts: std::mem::take(&mut self.artifacts),
            },
        };
        let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| RunError::failure(e.to_string()))?;
        text.push('\n');
        let path = self.out.join(MANIFEST);
        fs::write(&path, text).map_err(|e| RunError::input(format!("{}: {e}", path.display())))?;
        Ok(manifest)
    }
}
