//! Cross-corpus frequency comparison.
//!
//! Rates are per 1,000 word rows. Internal values keep full precision;
//! TSV output truncates them (see [`crate::numfmt`]).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conllu::{Corpus, SyntaxWord};
use crate::error::{Error, Result};
use crate::numfmt::fmt_truncated;

/// `count` per 1,000 of `total`; zero when `total` is zero.
pub fn per_thousand(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 * 1000.0 / total as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRow {
    pub key: String,
    pub count_a: usize,
    pub per1k_a: f64,
    pub count_b: usize,
    pub per1k_b: f64,
    /// `per1k_b / per1k_a`, `None` when `per1k_a` is zero.
    pub ratio: Option<f64>,
}

impl FrequencyRow {
    pub fn new(key: impl Into<String>, count_a: usize, total_a: usize, count_b: usize, total_b: usize) -> Self {
        let per1k_a = per_thousand(count_a, total_a);
        let per1k_b = per_thousand(count_b, total_b);
        FrequencyRow {
            key: key.into(),
            count_a,
            per1k_a,
            count_b,
            per1k_b,
            ratio: (per1k_a > 0.0).then(|| per1k_b / per1k_a),
        }
    }
}

fn relation_counts(corpus: &Corpus) -> HashMap<&str, usize> {
    let mut counts = HashMap::new();
    for word in corpus.words() {
        *counts.entry(word.deprel.as_str()).or_insert(0) += 1;
    }
    counts
}

/// One row per relation occurring in either corpus, ordered by ascending
/// ratio, ties broken alphabetically; rows with an undefined ratio go last.
pub fn relation_frequencies(a: &Corpus, b: &Corpus) -> Result<Vec<FrequencyRow>> {
    for corpus in [a, b] {
        if corpus.token_count() == 0 {
            return Err(Error::EmptyCorpus(corpus.name.clone()));
        }
    }

    let (counts_a, counts_b) = (relation_counts(a), relation_counts(b));
    let keys: BTreeSet<&str> = counts_a.keys().chain(counts_b.keys()).copied().collect();
    let (total_a, total_b) = (a.token_count(), b.token_count());

    let mut rows: Vec<FrequencyRow> = keys
        .into_iter()
        .map(|key| {
            FrequencyRow::new(
                key,
                counts_a.get(key).copied().unwrap_or(0),
                total_a,
                counts_b.get(key).copied().unwrap_or(0),
                total_b,
            )
        })
        .collect();

    rows.sort_by(|x, y| match (x.ratio, y.ratio) {
        (Some(rx), Some(ry)) => rx.total_cmp(&ry).then_with(|| x.key.cmp(&y.key)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => x.key.cmp(&y.key),
    });

    Ok(rows)
}

/// TSV with count, per-1K and ratio columns; rates truncated to `places`.
pub fn write_frequency_tsv<W: Write>(
    mut w: W,
    rows: &[FrequencyRow],
    name_a: &str,
    name_b: &str,
    places: u32,
) -> std::io::Result<()> {
    writeln!(
        w,
        "relation\t{a}_count\t{a}_per1k\t{b}_count\t{b}_per1k\tratio",
        a = name_a,
        b = name_b
    )?;
    for row in rows {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.key,
            row.count_a,
            fmt_truncated(row.per1k_a, places),
            row.count_b,
            fmt_truncated(row.per1k_b, places),
            row.ratio
                .map_or_else(|| "NA".to_owned(), |r| fmt_truncated(r, places))
        )?;
    }
    Ok(())
}

/// Word attribute a query matches on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchOn {
    Deprel,
    DeprelBase,
    Lemma,
    Form,
    Upos,
    Xpos,
}

impl FromStr for MatchOn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deprel" => Ok(MatchOn::Deprel),
            "deprel_base" => Ok(MatchOn::DeprelBase),
            "lemma" => Ok(MatchOn::Lemma),
            "form" => Ok(MatchOn::Form),
            "upos" => Ok(MatchOn::Upos),
            "xpos" => Ok(MatchOn::Xpos),
            other => Err(Error::Query(format!("unknown match_on '{}'", other))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    #[default]
    Whole,
    /// Only documents whose parallel key occurs in a partner corpus.
    Parallel,
}

/// A single-attribute word query.
///
/// Query files hold `key = value` lines (`name`, `match_on`, `value`,
/// `scope`); `#` starts a comment line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuerySpec {
    pub name: String,
    pub match_on: MatchOn,
    pub value: String,
    pub scope: Scope,
}

impl QuerySpec {
    pub fn new(match_on: MatchOn, value: impl Into<String>) -> Self {
        let value = value.into();
        QuerySpec {
            name: value.clone(),
            match_on,
            value,
            scope: Scope::Whole,
        }
    }

    pub fn parallel(mut self) -> Self {
        self.scope = Scope::Parallel;
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Query(format!("expected key = value, got '{}'", line)))?;
            fields.insert(key.trim().to_owned(), value.trim().to_owned());
        }

        let match_on: MatchOn = fields
            .get("match_on")
            .ok_or_else(|| Error::Query("missing match_on".into()))?
            .parse()?;
        let value = fields
            .get("value")
            .filter(|v| !v.is_empty())
            .ok_or_else(|| Error::Query("missing value".into()))?
            .clone();
        let scope = match fields.get("scope").map(String::as_str) {
            None | Some("whole") => Scope::Whole,
            Some("parallel") => Scope::Parallel,
            Some(other) => return Err(Error::Query(format!("unknown scope '{}'", other))),
        };

        Ok(QuerySpec {
            name: fields.get("name").cloned().unwrap_or_else(|| value.clone()),
            match_on,
            value,
            scope,
        })
    }

    pub fn matches(&self, word: &SyntaxWord) -> bool {
        let field = match self.match_on {
            MatchOn::Deprel => word.deprel.as_str(),
            MatchOn::DeprelBase => word.deprel_base(),
            MatchOn::Lemma => word.lemma.as_str(),
            MatchOn::Form => word.form.as_str(),
            MatchOn::Upos => word.upos.as_str(),
            MatchOn::Xpos => word.xpos.as_deref().unwrap_or("_"),
        };
        field == self.value
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryCount {
    pub matches: usize,
    pub total: usize,
    pub per1k: f64,
}

fn count_in(corpus: &Corpus, query: &QuerySpec) -> QueryCount {
    let matches = corpus.words().filter(|w| query.matches(w)).count();
    let total = corpus.token_count();
    QueryCount {
        matches,
        total,
        per1k: per_thousand(matches, total),
    }
}

/// Count words matching `query`. A parallel-scoped query needs `partner`
/// and counts only documents whose parallel key also occurs there.
pub fn count_query(corpus: &Corpus, query: &QuerySpec, partner: Option<&Corpus>) -> Result<QueryCount> {
    match query.scope {
        Scope::Whole => Ok(count_in(corpus, query)),
        Scope::Parallel => {
            let partner = partner.ok_or_else(|| {
                Error::Query(format!(
                    "query '{}' is parallel-scoped but no partner corpus was given",
                    query.name
                ))
            })?;
            let (restricted, _) = parallel_subset(corpus, partner)?;
            Ok(count_in(&restricted, query))
        }
    }
}

fn parallel_keys(corpus: &Corpus) -> Result<HashSet<&str>> {
    let mut keys = HashSet::new();
    for doc in &corpus.documents {
        if let Some(key) = doc.parallel_key.as_deref() {
            if !keys.insert(key) {
                return Err(Error::Duplicate {
                    kind: "parallel_key",
                    key: format!("{} in {}", key, corpus.name),
                });
            }
        }
    }
    Ok(keys)
}

/// Documents whose parallel key occurs in both corpora, in original order.
pub fn parallel_subset(a: &Corpus, b: &Corpus) -> Result<(Corpus, Corpus)> {
    let (keys_a, keys_b) = (parallel_keys(a)?, parallel_keys(b)?);
    let shared: HashSet<&str> = keys_a.intersection(&keys_b).copied().collect();
    let keep = |d: &crate::conllu::DocumentUnit| {
        d.parallel_key
            .as_deref()
            .is_some_and(|k| shared.contains(k))
    };
    Ok((a.filter(keep), b.filter(keep)))
}

/// Ratio of the per-1K rate of `query` in `a` to that in `b`, both
/// restricted to documents whose parallel key is in `keys`.
///
/// Returns `Ok(None)` when the rate in `b` is zero.
pub fn marker_ratio(a: &Corpus, b: &Corpus, query: &QuerySpec, keys: &BTreeSet<String>) -> Result<Option<f64>> {
    if keys.is_empty() {
        return Err(Error::Query("empty document filter".into()));
    }
    let (keys_a, keys_b) = (parallel_keys(a)?, parallel_keys(b)?);
    for key in keys {
        for (corpus, present) in [(a, &keys_a), (b, &keys_b)] {
            if !present.contains(key.as_str()) {
                return Err(Error::Query(format!(
                    "parallel key '{}' not found in {}",
                    key, corpus.name
                )));
            }
        }
    }

    let restrict = |c: &Corpus| c.filter(|d| d.parallel_key.as_ref().is_some_and(|k| keys.contains(k)));
    let rate_a = count_in(&restrict(a), query).per1k;
    let rate_b = count_in(&restrict(b), query).per1k;

    Ok((rate_b > 0.0).then(|| rate_a / rate_b))
}

/// Parallel keys starting with `prefix`, e.g. all chapters of one book.
pub fn keys_with_prefix(corpus: &Corpus, prefix: &str) -> BTreeSet<String> {
    corpus
        .documents
        .iter()
        .filter_map(|d| d.parallel_key.as_ref())
        .filter(|k| k.starts_with(prefix))
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VocabUnit {
    Form,
    Lemma,
}

impl FromStr for VocabUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "form" => Ok(VocabUnit::Form),
            "lemma" => Ok(VocabUnit::Lemma),
            other => Err(Error::Query(format!("unknown vocabulary unit '{}'", other))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VocabularyOverlap {
    pub unique_a: usize,
    pub unique_b: usize,
    pub shared: usize,
}

/// Distinct lowercased word types; punctuation is not counted.
pub fn vocabulary(corpus: &Corpus, unit: VocabUnit) -> BTreeSet<String> {
    corpus
        .words()
        .filter(|w| w.upos != "PUNCT")
        .map(|w| match unit {
            VocabUnit::Form => w.form.to_lowercase(),
            VocabUnit::Lemma => w.lemma.to_lowercase(),
        })
        .collect()
}

pub fn vocabulary_overlap(a: &Corpus, b: &Corpus, unit: VocabUnit) -> VocabularyOverlap {
    let (va, vb) = (vocabulary(a, unit), vocabulary(b, unit));
    VocabularyOverlap {
        unique_a: va.len(),
        unique_b: vb.len(),
        shared: va.intersection(&vb).count(),
    }
}

const SHIPPED_QUERIES: &[(&str, &str)] = &[
    ("nce", include_str!("../data/queries/nce.query")),
    ("nci", include_str!("../data/queries/nci.query")),
    ("focus", include_str!("../data/queries/focus.query")),
    ("preterit", include_str!("../data/queries/preterit.query")),
];

/// Names of the queries bundled with the crate.
pub fn shipped_query_names() -> impl Iterator<Item = &'static str> {
    SHIPPED_QUERIES.iter().map(|(name, _)| *name)
}

/// A bundled query by file name (`nce`, `nci`, `focus`, `preterit`).
pub fn shipped_query(name: &str) -> Result<QuerySpec> {
    let (_, text) = SHIPPED_QUERIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Query(format!("no bundled query named '{}'", name)))?;
    QuerySpec::parse(text)
}
