use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format '{}'", other)),
        }
    }
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

/// Provenance lines written at the top of every report.
#[derive(Debug)]
pub struct Header {
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<(PathBuf, String)>,
    pub timestamp: Option<String>,
    pub notes: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str, seed: u64, timestamp: bool) -> Self {
        Header {
            command: command.to_owned(),
            seed,
            inputs: Vec::new(),
            timestamp: timestamp.then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        let digest = sha256_file(path)?;
        self.inputs.push((path.to_owned(), digest));
        Ok(())
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_owned(), value.to_string()));
    }

    pub fn write<W: Write>(&self, w: &mut W, format: Format) -> io::Result<()> {
        match format {
            Format::Tsv => {
                writeln!(w, "# tool: coptic-ud {}", env!("CARGO_PKG_VERSION"))?;
                writeln!(w, "# command: {}", self.command)?;
                writeln!(w, "# seed: {}", self.seed)?;
                for (path, digest) in &self.inputs {
                    writeln!(w, "# input: {} sha256={}", path.display(), digest)?;
                }
                for (k, v) in &self.notes {
                    writeln!(w, "# {}: {}", k, v)?;
                }
                if let Some(ts) = &self.timestamp {
                    writeln!(w, "# timestamp: {}", ts)?;
                }
                Ok(())
            }
            Format::Jsonl => {
                let inputs: Vec<Value> = self
                    .inputs
                    .iter()
                    .map(|(p, d)| json!({"path": p.display().to_string(), "sha256": d}))
                    .collect();
                let mut header = Map::new();
                header.insert("tool".into(), json!(format!("coptic-ud {}", env!("CARGO_PKG_VERSION"))));
                header.insert("command".into(), json!(self.command));
                header.insert("seed".into(), json!(self.seed));
                header.insert("inputs".into(), Value::Array(inputs));
                for (k, v) in &self.notes {
                    header.insert(k.clone(), json!(v));
                }
                if let Some(ts) = &self.timestamp {
                    header.insert("timestamp".into(), json!(ts));
                }
                writeln!(w, "{}", json!({ "header": header }))
            }
        }
    }
}

pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(format!("{}: {}", p.display(), e)))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Write serializable records one per line.
pub fn write_jsonl<W: Write + ?Sized, T: serde::Serialize>(w: &mut W, records: &[T]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *w, r)?;
        writeln!(w)?;
    }
    Ok(())
}
