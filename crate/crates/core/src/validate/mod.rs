//! Treebank well-formedness checks.
//!
//! Issues carry a severity and a stable code. A [`ValidationReport`] lists
//! them in document order, then sentence, then word, then code.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conllu::{mseg_surface, Corpus, DocumentUnit, Sentence};
use crate::tree;

mod inventory;
pub use self::inventory::LabelInventory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueCode {
    NoRoot,
    MultipleRoots,
    HeadOutOfRange,
    Cycle,
    NonProjective,
    LabelNotInInventory,
    ForbiddenLabel,
    MalformedLabel,
    TooManyLabels,
    GroupSurfaceMismatch,
    MsegMismatch,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::NoRoot => "no-root",
            IssueCode::MultipleRoots => "multiple-roots",
            IssueCode::HeadOutOfRange => "head-out-of-range",
            IssueCode::Cycle => "cycle",
            IssueCode::NonProjective => "non-projective",
            IssueCode::LabelNotInInventory => "label-not-in-inventory",
            IssueCode::ForbiddenLabel => "forbidden-label",
            IssueCode::MalformedLabel => "malformed-label",
            IssueCode::TooManyLabels => "too-many-labels",
            IssueCode::GroupSurfaceMismatch => "group-surface-mismatch",
            IssueCode::MsegMismatch => "mseg-mismatch",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an issue was found. Indices are 1-based; `0` means the issue is
/// not tied to a document or sentence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub doc_index: usize,
    pub doc_id: Option<String>,
    pub sentence: usize,
    pub sent_id: Option<String>,
    pub word_id: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub severity: Severity,
    pub code: IssueCode,
    pub location: Location,
    pub message: String,
}

impl Issue {
    fn new(
        severity: Severity,
        code: IssueCode,
        sentence: &Sentence,
        word_id: Option<usize>,
        message: String,
    ) -> Self {
        Issue {
            severity,
            code,
            location: Location {
                sent_id: sentence.sent_id().map(str::to_owned),
                word_id,
                ..Location::default()
            },
            message,
        }
    }

    fn sort_key(&self) -> (usize, usize, Option<usize>, IssueCode) {
        (
            self.location.doc_index,
            self.location.sentence,
            self.location.word_id,
            self.code,
        )
    }
}

/// Structural checks: exactly one root, heads in range, no cycles.
pub fn validate_tree(sentence: &Sentence) -> Vec<Issue> {
    let heads = sentence.heads();
    let problems = tree::check(&heads);
    let mut issues = Vec::new();

    match problems.roots.len() {
        0 => issues.push(Issue::new(
            Severity::Error,
            IssueCode::NoRoot,
            sentence,
            None,
            "no word is attached to the root".into(),
        )),
        1 => {}
        _ => issues.push(Issue::new(
            Severity::Error,
            IssueCode::MultipleRoots,
            sentence,
            None,
            format!("words {:?} are all attached to the root", problems.roots),
        )),
    }

    for &id in &problems.dangling {
        issues.push(Issue::new(
            Severity::Error,
            IssueCode::HeadOutOfRange,
            sentence,
            Some(id),
            format!(
                "head {} does not exist in a sentence of {} words",
                heads[id - 1],
                heads.len()
            ),
        ));
    }

    if !problems.cyclic.is_empty() {
        issues.push(Issue::new(
            Severity::Error,
            IssueCode::Cycle,
            sentence,
            None,
            format!("words {:?} form a cycle", problems.cyclic),
        ));
    }

    issues
}

/// Informational issue for sentences whose tree is non-projective.
pub fn check_projectivity(sentence: &Sentence) -> Option<Issue> {
    let heads = sentence.heads();
    if !tree::check(&heads).is_tree() {
        return None;
    }
    let arcs = tree::non_projective_arcs(&heads);
    (!arcs.is_empty()).then(|| {
        Issue::new(
            Severity::Info,
            IssueCode::NonProjective,
            sentence,
            None,
            format!("non-projective arcs into words {:?}", arcs),
        )
    })
}

fn label_is_well_formed(label: &str) -> bool {
    let mut parts = label.split(':');
    let base = parts.next().unwrap_or_default();
    let subtype = parts.next();
    parts.next().is_none()
        && !base.is_empty()
        && base.chars().all(|c| c.is_ascii_lowercase())
        && subtype.map_or(true, |s| !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase()))
}

fn sentence_label_issues(sentence: &Sentence, inventory: &LabelInventory) -> Vec<Issue> {
    let mut issues = Vec::new();
    for word in &sentence.words {
        let label = word.deprel.as_str();
        if !label_is_well_formed(label) {
            issues.push(Issue::new(
                Severity::Error,
                IssueCode::MalformedLabel,
                sentence,
                Some(word.id),
                format!("'{}' is not of the form base or base:subtype", label),
            ));
        } else if let Some(reason) = inventory.forbidden_reason(label) {
            issues.push(Issue::new(
                Severity::Error,
                IssueCode::ForbiddenLabel,
                sentence,
                Some(word.id),
                format!("'{}' is not used in this scheme ({})", label, reason),
            ));
        } else if !inventory.allows(label) {
            issues.push(Issue::new(
                Severity::Error,
                IssueCode::LabelNotInInventory,
                sentence,
                Some(word.id),
                format!("'{}' is not in the label inventory", label),
            ));
        }
    }
    issues
}

/// Distinct relation labels used in a corpus.
pub fn distinct_labels(corpus: &Corpus) -> BTreeSet<&str> {
    corpus.words().map(|w| w.deprel.as_str()).collect()
}

/// Check every relation against the inventory.
pub fn validate_labels(corpus: &Corpus, inventory: &LabelInventory) -> Vec<Issue> {
    let mut issues = per_document(corpus, |_, s| sentence_label_issues(s, inventory));

    let distinct = distinct_labels(corpus);
    if distinct.len() > inventory.expected_total() {
        issues.push(Issue {
            severity: Severity::Error,
            code: IssueCode::TooManyLabels,
            location: Location::default(),
            message: format!(
                "{} distinct relations used, inventory allows {}",
                distinct.len(),
                inventory.expected_total()
            ),
        });
    }

    sort_issues(&mut issues);
    issues
}

fn sentence_group_issues(sentence: &Sentence, strict: bool) -> Vec<Issue> {
    let mut issues = Vec::new();
    let severity = if strict {
        Severity::Error
    } else {
        Severity::Warning
    };

    for group in &sentence.groups {
        let joined: String = sentence.words[group.first_id - 1..group.last_id]
            .iter()
            .map(|w| w.form.as_str())
            .collect();
        if joined != group.surface {
            issues.push(Issue::new(
                severity,
                IssueCode::GroupSurfaceMismatch,
                sentence,
                Some(group.first_id),
                format!(
                    "bound group {}-{} '{}' differs from its words '{}'",
                    group.first_id, group.last_id, group.surface, joined
                ),
            ));
        }
    }

    for word in &sentence.words {
        if let Some(mseg) = word.mseg() {
            if mseg_surface(mseg) != word.form {
                issues.push(Issue::new(
                    Severity::Error,
                    IssueCode::MsegMismatch,
                    sentence,
                    Some(word.id),
                    format!("MSeg '{}' does not spell form '{}'", mseg, word.form),
                ));
            }
        }
    }

    issues
}

/// Compare bound group surfaces with their words and check MSeg values.
///
/// Surface mismatches are warnings unless `strict`; MSeg mismatches are
/// always errors.
pub fn validate_bound_groups(corpus: &Corpus, strict: bool) -> Vec<Issue> {
    let mut issues = per_document(corpus, |_, s| sentence_group_issues(s, strict));
    sort_issues(&mut issues);
    issues
}

fn per_document<F>(corpus: &Corpus, check: F) -> Vec<Issue>
where
    F: Fn(&DocumentUnit, &Sentence) -> Vec<Issue> + Sync,
{
    corpus
        .documents
        .par_iter()
        .enumerate()
        .flat_map_iter(|(doc_idx, doc)| {
            let check = &check;
            doc.sentences
                .iter()
                .enumerate()
                .flat_map(move |(sent_idx, sentence)| {
                    check(doc, sentence).into_iter().map(move |mut issue| {
                        issue.location.doc_index = doc_idx + 1;
                        issue.location.doc_id = Some(doc.doc_id.clone());
                        issue.location.sentence = sent_idx + 1;
                        issue
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn sort_issues(issues: &mut [Issue]) {
    issues.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

#[derive(Clone, Debug)]
pub struct ValidationOptions {
    pub inventory: LabelInventory,
    pub strict_groups: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            inventory: LabelInventory::coptic(),
            strict_groups: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    pub non_projective_sentences: usize,
    pub sentences: usize,
}

impl ValidationReport {
    pub fn count(&self, severity: Severity) -> usize {
        self.issues.iter().filter(|i| i.severity == severity).count()
    }

    pub fn has_errors(&self) -> bool {
        self.count(Severity::Error) > 0
    }

    pub fn with_code(&self, code: IssueCode) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(move |i| i.code == code)
    }

    pub const TSV_HEADER: &'static str = "severity\tcode\tdoc_id\tsentence\tsent_id\tword_id\tmessage";

    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", Self::TSV_HEADER)?;
        for issue in &self.issues {
            let loc = &issue.location;
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                issue.severity,
                issue.code,
                loc.doc_id.as_deref().unwrap_or("_"),
                if loc.sentence == 0 {
                    "_".to_owned()
                } else {
                    loc.sentence.to_string()
                },
                loc.sent_id.as_deref().unwrap_or("_"),
                loc.word_id.map_or("_".to_owned(), |id| id.to_string()),
                issue.message.replace(['\t', '\n'], " ")
            )?;
        }
        Ok(())
    }

    /// One JSON record per issue.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for issue in &self.issues {
            serde_json::to_writer(&mut w, issue)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Run every check over a corpus.
pub fn validate_corpus(corpus: &Corpus, options: &ValidationOptions) -> ValidationReport {
    let mut issues = per_document(corpus, |_, sentence| {
        let mut issues = validate_tree(sentence);
        issues.extend(check_projectivity(sentence));
        issues.extend(sentence_label_issues(sentence, &options.inventory));
        issues.extend(sentence_group_issues(sentence, options.strict_groups));
        issues
    });

    let distinct = distinct_labels(corpus);
    if distinct.len() > options.inventory.expected_total() {
        issues.push(Issue {
            severity: Severity::Error,
            code: IssueCode::TooManyLabels,
            location: Location::default(),
            message: format!(
                "{} distinct relations used, inventory allows {}",
                distinct.len(),
                options.inventory.expected_total()
            ),
        });
    }
    sort_issues(&mut issues);

    let non_projective_sentences = issues
        .iter()
        .filter(|i| i.code == IssueCode::NonProjective)
        .count();

    ValidationReport {
        issues,
        non_projective_sentences,
        sentences: corpus.sentence_count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::{BoundGroup, DocumentUnit, Partition, SyntaxWord, MSEG_KEY};

    fn sentence_with_heads(heads: &[usize]) -> Sentence {
        let words = heads
            .iter()
            .enumerate()
            .map(|(i, &h)| {
                let rel = if h == 0 { "root" } else { "obj" };
                SyntaxWord::new(i + 1, format!("w{}", i + 1), "x", "X", h, rel)
            })
            .collect();
        Sentence::new(vec![" sent_id = s1".into()], words, vec![]).unwrap()
    }

    fn corpus_of(sentences: Vec<Sentence>) -> Corpus {
        Corpus::new(
            "test",
            vec![DocumentUnit::new("d1", Partition::Train).with_sentences(sentences)],
        )
    }

    fn codes(issues: &[Issue]) -> Vec<IssueCode> {
        issues.iter().map(|i| i.code).collect()
    }

    #[test]
    fn tree_examples() {
        assert!(validate_tree(&sentence_with_heads(&[2, 0, 2])).is_empty());
        assert_eq!(
            codes(&validate_tree(&sentence_with_heads(&[2, 1]))),
            vec![IssueCode::NoRoot, IssueCode::Cycle]
        );
        assert_eq!(
            codes(&validate_tree(&sentence_with_heads(&[0, 0]))),
            vec![IssueCode::MultipleRoots]
        );
        assert_eq!(
            codes(&validate_tree(&sentence_with_heads(&[0, 7]))),
            vec![IssueCode::HeadOutOfRange]
        );
    }

    #[test]
    fn label_examples() {
        let inv = LabelInventory::coptic();
        let words = vec![
            SyntaxWord::new(1, "f", "f", "PRON", 2, "nsubj"),
            SyntaxWord::new(2, "sōtem", "sōtem", "VERB", 0, "root"),
            SyntaxWord::new(3, "mmof", "mmo", "ADP", 2, "obj"),
        ];
        let mut corpus = corpus_of(vec![Sentence::new(vec![], words, vec![]).unwrap()]);
        assert!(validate_labels(&corpus, &inv).is_empty());

        corpus.documents[0].sentences[0].words[2].deprel = "clf".into();
        let issues = validate_labels(&corpus, &inv);
        assert_eq!(codes(&issues), vec![IssueCode::ForbiddenLabel]);

        corpus.documents[0].sentences[0].words[0].deprel = "nsubj:pass".into();
        let issues = validate_labels(&corpus, &inv);
        assert_eq!(
            codes(&issues),
            vec![IssueCode::ForbiddenLabel, IssueCode::ForbiddenLabel]
        );
        assert_eq!(issues[0].location.word_id, Some(1));

        corpus.documents[0].sentences[0].words[0].deprel = "goeswith".into();
        corpus.documents[0].sentences[0].words[2].deprel = "Obj".into();
        let issues = validate_labels(&corpus, &inv);
        assert_eq!(
            codes(&issues),
            vec![IssueCode::LabelNotInInventory, IssueCode::MalformedLabel]
        );
    }

    fn afsotem(third_form: &str) -> Sentence {
        Sentence::new(
            vec![],
            vec![
                SyntaxWord::new(1, "a", "a", "AUX", 3, "aux"),
                SyntaxWord::new(2, "f", "f", "PRON", 3, "nsubj"),
                SyntaxWord::new(3, third_form, "sōtem", "VERB", 0, "root"),
            ],
            vec![BoundGroup::new(1, 3, "afsōtem")],
        )
        .unwrap()
    }

    #[test]
    fn bound_group_examples() {
        assert!(validate_bound_groups(&corpus_of(vec![afsotem("sōtem")]), false).is_empty());

        let perturbed = corpus_of(vec![afsotem("sotem")]);
        let lenient = validate_bound_groups(&perturbed, false);
        assert_eq!(codes(&lenient), vec![IssueCode::GroupSurfaceMismatch]);
        assert_eq!(lenient[0].severity, Severity::Warning);
        let strict = validate_bound_groups(&perturbed, true);
        assert_eq!(strict[0].severity, Severity::Error);

        let erhal = Sentence::new(
            vec![],
            vec![SyntaxWord::new(1, "erhal", "erhal", "VERB", 0, "root").with_misc(MSEG_KEY, "er-hal")],
            vec![],
        )
        .unwrap();
        assert!(validate_bound_groups(&corpus_of(vec![erhal.clone()]), true).is_empty());

        let mut broken = erhal;
        broken.words[0].misc.insert(MSEG_KEY, "er-hol");
        assert_eq!(
            codes(&validate_bound_groups(&corpus_of(vec![broken]), false)),
            vec![IssueCode::MsegMismatch]
        );
    }

    #[test]
    fn report_is_ordered_and_counts_projectivity() {
        let corpus = Corpus::new(
            "c",
            vec![
                DocumentUnit::new("d1", Partition::Train).with_sentences(vec![
                    sentence_with_heads(&[3, 4, 0, 3]),
                    sentence_with_heads(&[0, 0]),
                ]),
                DocumentUnit::new("d2", Partition::Test)
                    .with_sentences(vec![sentence_with_heads(&[2, 1])]),
            ],
        );
        let report = validate_corpus(&corpus, &ValidationOptions::default());
        let keys: Vec<_> = report
            .issues
            .iter()
            .map(|i| (i.location.doc_id.clone().unwrap(), i.location.sentence, i.code))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("d1".into(), 1, IssueCode::NonProjective),
                ("d1".into(), 2, IssueCode::MultipleRoots),
                ("d2".into(), 1, IssueCode::NoRoot),
                ("d2".into(), 1, IssueCode::Cycle),
            ]
        );
        assert_eq!(report.non_projective_sentences, 1);
        assert_eq!(report.count(Severity::Error), 3);

        let mut tsv = Vec::new();
        report.write_tsv(&mut tsv).unwrap();
        let tsv = String::from_utf8(tsv).unwrap();
        assert_eq!(tsv.lines().count(), 5);
        assert!(tsv.lines().nth(2).unwrap().starts_with("error\tmultiple-roots\td1\t2\ts1\t_\t"));

        let mut jsonl = Vec::new();
        report.write_jsonl(&mut jsonl).unwrap();
        let first: Issue = serde_json::from_str(String::from_utf8(jsonl).unwrap().lines().next().unwrap()).unwrap();
        assert_eq!(first, report.issues[0]);
    }

    #[test]
    fn validation_does_not_mutate() {
        let corpus = corpus_of(vec![sentence_with_heads(&[2, 1])]);
        let before = corpus.clone();
        let _ = validate_corpus(&corpus, &ValidationOptions::default());
        assert_eq!(corpus, before);
    }
}
