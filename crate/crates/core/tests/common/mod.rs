//! Fixture locations and raw-text counters shared by integration tests.
//!
//! The counters read CoNLL-U lines directly instead of going through the
//! library, so they can serve as independent oracles.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use coptic_ud::conllu::{load_corpus, Corpus};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn roundtrip_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(fixtures().join("roundtrip"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "conllu"))
        .collect();
    files.sort();
    files
}

pub fn dialect_manifest(name: &str) -> PathBuf {
    fixtures().join("dialects").join(format!("{}.manifest", name))
}

/// (boh, sah) fixture corpora.
pub fn dialects() -> (Corpus, Corpus) {
    (
        load_corpus(dialect_manifest("boh")).unwrap(),
        load_corpus(dialect_manifest("sah")).unwrap(),
    )
}

/// Manifest rows as (doc_id, path, partition, parallel_key).
pub fn raw_manifest(name: &str) -> Vec<(String, PathBuf, String, Option<String>)> {
    let path = dialect_manifest(name);
    let base = path.parent().unwrap().to_owned();
    fs::read_to_string(&path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            (
                cols[0].to_owned(),
                base.join(cols[1]),
                cols[2].to_owned(),
                cols.get(3).map(|s| s.to_string()),
            )
        })
        .collect()
}

/// Word rows (integer id) of a CoNLL-U file as tab-split columns.
pub fn raw_word_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').map(str::to_owned).collect::<Vec<_>>())
        .filter(|c| c.len() == 10 && c[0].chars().all(|ch| ch.is_ascii_digit()))
        .collect()
}

/// (matching rows, all rows) for a column value over the given files.
pub fn raw_count(paths: &[PathBuf], column: usize, value: &str) -> (usize, usize) {
    let mut hits = 0;
    let mut total = 0;
    for p in paths {
        for row in raw_word_rows(p) {
            total += 1;
            if row[column] == value {
                hits += 1;
            }
        }
    }
    (hits, total)
}

/// Files of `name` whose parallel key also occurs in `other`.
pub fn raw_parallel_files(name: &str, other: &str) -> Vec<PathBuf> {
    let keys: BTreeSet<String> = raw_manifest(other).into_iter().filter_map(|r| r.3).collect();
    raw_manifest(name)
        .into_iter()
        .filter(|r| r.3.as_ref().is_some_and(|k| keys.contains(k)))
        .map(|r| r.1)
        .collect()
}

pub fn raw_all_files(name: &str) -> Vec<PathBuf> {
    raw_manifest(name).into_iter().map(|r| r.1).collect()
}

/// `count / total * 1000` truncated to `places`, by integer arithmetic.
pub fn trunc_rate(count: u128, total: u128, places: u32) -> String {
    let scaled = count * 1000 * 10u128.pow(places) / total;
    fixed(scaled, places)
}

/// `(cb / tb) / (ca / ta)` truncated to `places`, by integer arithmetic.
pub fn trunc_ratio(ca: u128, ta: u128, cb: u128, tb: u128, places: u32) -> String {
    let scaled = cb * ta * 10u128.pow(places) / (tb * ca);
    fixed(scaled, places)
}

fn fixed(scaled: u128, places: u32) -> String {
    let unit = 10u128.pow(places);
    format!("{}.{:0width$}", scaled / unit, scaled % unit, width = places as usize)
}
