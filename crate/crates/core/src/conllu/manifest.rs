//! Corpus manifests.
//!
//! A manifest lists one document per line:
//!
//! ```text
//! doc_id <TAB> path <TAB> partition [<TAB> parallel_key]
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Relative paths are
//! resolved against the manifest's directory.

use std::collections::HashSet;
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::io::read_conllu;
use super::model::{Corpus, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub doc_id: String,
    pub path: PathBuf,
    pub partition: Partition,
    pub parallel_key: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    /// Corpus name, the manifest file stem when read from disk.
    pub name: String,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(name: impl Into<String>, text: &str, base_dir: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = HashSet::new();

        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }

            let columns: Vec<&str> = line.split('\t').collect();
            if !(3..=4).contains(&columns.len()) {
                return Err(Error::Manifest {
                    line: line_no,
                    message: format!("expected 3 or 4 columns, found {}", columns.len()),
                });
            }
            let doc_id = columns[0].trim();
            if doc_id.is_empty() {
                return Err(Error::Manifest {
                    line: line_no,
                    message: "empty doc_id".into(),
                });
            }
            if !seen.insert(doc_id.to_owned()) {
                return Err(Error::Duplicate {
                    kind: "doc_id",
                    key: doc_id.to_owned(),
                });
            }
            let partition = columns[2]
                .trim()
                .parse::<Partition>()
                .map_err(|message| Error::Manifest {
                    line: line_no,
                    message,
                })?;
            let parallel_key = columns
                .get(3)
                .map(|k| k.trim())
                .filter(|k| !k.is_empty())
                .map(str::to_owned);

            entries.push(ManifestEntry {
                doc_id: doc_id.to_owned(),
                path: base_dir.join(columns[1].trim()),
                partition,
                parallel_key,
            });
        }

        Ok(Manifest {
            name: name.into(),
            entries,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Manifest::parse(name, &text, base).map_err(|e| e.in_file(path))
    }

    /// Read every listed document. Documents are parsed concurrently and
    /// returned in manifest order.
    pub fn load(&self) -> Result<Corpus> {
        let documents = self
            .entries
            .par_iter()
            .map(|entry| {
                let file = File::open(&entry.path).map_err(|e| Error::from(e).in_file(&entry.path))?;
                read_conllu(BufReader::new(file), Some(entry)).map_err(|e| e.in_file(&entry.path))
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Corpus::new(self.name.clone(), documents))
    }
}

/// Read a manifest and all of its documents.
pub fn load_corpus(manifest: impl AsRef<Path>) -> Result<Corpus> {
    Manifest::read(manifest)?.load()
}
