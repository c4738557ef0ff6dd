use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Key of the MISC attribute holding a morph segmentation.
pub const MSEG_KEY: &str = "MSeg";

/// Separator between morphs in an MSeg value.
pub const MSEG_SEPARATOR: char = '-';

/// An ordered `key=value|key=value` column (FEATS, MISC).
///
/// Entries keep the order they were read in. An entry without `=` is
/// stored with a `None` value and written back bare.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fields(Vec<(String, Option<String>)>);

impl Fields {
    pub fn new() -> Self {
        Fields::default()
    }

    /// Parse a column value; `_` is the empty map.
    pub fn parse(column: &str) -> Self {
        if column == "_" || column.is_empty() {
            return Fields::default();
        }

        Fields(
            column
                .split('|')
                .map(|entry| match entry.split_once('=') {
                    Some((k, v)) => (k.to_owned(), Some(v.to_owned())),
                    None => (entry.to_owned(), None),
                })
                .collect(),
        )
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .and_then(|(_, v)| v.as_deref())
    }

    /// Set `key` to `value`, replacing in place or appending at the end.
    pub fn insert(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let key = key.into();
        let value = Some(value.into());
        match self.0.iter_mut().find(|(k, _)| *k == key) {
            Some(entry) => entry.1 = value,
            None => self.0.push((key, value)),
        }
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        let idx = self.0.iter().position(|(k, _)| k == key)?;
        self.0.remove(idx).1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Option<&str>)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_deref()))
    }
}

impl fmt::Display for Fields {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }

        for (idx, (key, value)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("|")?;
            }
            f.write_str(key)?;
            if let Some(value) = value {
                write!(f, "={}", value)?;
            }
        }

        Ok(())
    }
}

/// A syntactic word: one numbered row of a CoNLL-U sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntaxWord {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: Option<String>,
    pub feats: Fields,
    /// Head word id, `0` for the root.
    pub head: usize,
    pub deprel: String,
    pub deps: Option<String>,
    pub misc: Fields,
}

impl SyntaxWord {
    pub fn new(
        id: usize,
        form: impl Into<String>,
        lemma: impl Into<String>,
        upos: impl Into<String>,
        head: usize,
        deprel: impl Into<String>,
    ) -> Self {
        SyntaxWord {
            id,
            form: form.into(),
            lemma: lemma.into(),
            upos: upos.into(),
            xpos: None,
            feats: Fields::default(),
            head,
            deprel: deprel.into(),
            deps: None,
            misc: Fields::default(),
        }
    }

    pub fn with_xpos(mut self, xpos: impl Into<String>) -> Self {
        self.xpos = Some(xpos.into());
        self
    }

    pub fn with_misc(mut self, key: &str, value: impl Into<String>) -> Self {
        self.misc.insert(key, value);
        self
    }

    pub fn mseg(&self) -> Option<&str> {
        self.misc.get(MSEG_KEY)
    }

    /// Relation without its subtype (`acl:relcl` -> `acl`).
    pub fn deprel_base(&self) -> &str {
        relation_base(&self.deprel)
    }

    /// Split the word into its morphs using the MSeg annotation.
    ///
    /// Without MSeg the word is a single morph. The morphs always
    /// concatenate to the form.
    pub fn expand_mseg(&self) -> Result<Vec<String>> {
        match self.mseg() {
            None => Ok(vec![self.form.clone()]),
            Some(mseg) => {
                if mseg_surface(mseg) != self.form {
                    return Err(Error::MsegMismatch {
                        form: self.form.clone(),
                        mseg: mseg.to_owned(),
                    });
                }
                Ok(mseg.split(MSEG_SEPARATOR).map(str::to_owned).collect())
            }
        }
    }
}

/// Free function form of [`SyntaxWord::expand_mseg`].
pub fn expand_mseg(word: &SyntaxWord) -> Result<Vec<String>> {
    word.expand_mseg()
}

/// Surface string of an MSeg value: the value with every separator removed.
pub fn mseg_surface(mseg: &str) -> String {
    mseg.chars().filter(|&c| c != MSEG_SEPARATOR).collect()
}

/// Strip the subtype from a relation label.
pub fn relation_base(deprel: &str) -> &str {
    deprel.split_once(':').map_or(deprel, |(base, _)| base)
}

/// A multiword token spanning words `first_id..=last_id`; in Coptic data
/// each one is a bound group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundGroup {
    pub first_id: usize,
    pub last_id: usize,
    pub surface: String,
    pub misc: Fields,
}

impl BoundGroup {
    pub fn new(first_id: usize, last_id: usize, surface: impl Into<String>) -> Self {
        BoundGroup {
            first_id,
            last_id,
            surface: surface.into(),
            misc: Fields::default(),
        }
    }

    pub fn contains(&self, id: usize) -> bool {
        (self.first_id..=self.last_id).contains(&id)
    }
}

/// A sentence: comment lines, words and the bound groups over them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    /// Comment lines without the leading `#`.
    pub comments: Vec<String>,
    pub words: Vec<SyntaxWord>,
    pub groups: Vec<BoundGroup>,
}

impl Sentence {
    /// Build a sentence, checking word numbering and group spans.
    pub fn new(
        comments: Vec<String>,
        words: Vec<SyntaxWord>,
        groups: Vec<BoundGroup>,
    ) -> Result<Self> {
        for (idx, word) in words.iter().enumerate() {
            if word.id != idx + 1 {
                return Err(Error::InvalidSentence(format!(
                    "word ids must be 1..n, found {} at position {}",
                    word.id,
                    idx + 1
                )));
            }
        }

        let mut previous_last = 0;
        for group in &groups {
            if group.first_id > group.last_id {
                return Err(Error::InvalidSentence(format!(
                    "bound group {}-{} has an empty span",
                    group.first_id, group.last_id
                )));
            }
            if group.first_id == 0 || group.last_id > words.len() {
                return Err(Error::InvalidSentence(format!(
                    "bound group {}-{} refers to missing words",
                    group.first_id, group.last_id
                )));
            }
            if group.first_id <= previous_last {
                return Err(Error::InvalidSentence(format!(
                    "bound group {}-{} overlaps or precedes the previous group",
                    group.first_id, group.last_id
                )));
            }
            previous_last = group.last_id;
        }

        Ok(Sentence {
            comments,
            words,
            groups,
        })
    }

    /// Value of a `# key = value` comment.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|comment| {
            let (k, v) = comment.trim_start().split_once('=')?;
            (k.trim_end() == key).then(|| v.trim())
        })
    }

    pub fn sent_id(&self) -> Option<&str> {
        self.comment_value("sent_id")
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Word by 1-based id.
    pub fn word(&self, id: usize) -> Option<&SyntaxWord> {
        id.checked_sub(1).and_then(|idx| self.words.get(idx))
    }

    pub fn heads(&self) -> Vec<usize> {
        self.words.iter().map(|w| w.head).collect()
    }

    pub fn group_of(&self, id: usize) -> Option<&BoundGroup> {
        self.groups.iter().find(|g| g.contains(id))
    }
}

/// Experiment partition of a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    Train,
    Dev,
    Test,
}

impl Partition {
    pub fn as_str(self) -> &'static str {
        match self {
            Partition::Train => "train",
            Partition::Dev => "dev",
            Partition::Test => "test",
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Partition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "train" => Ok(Partition::Train),
            "dev" => Ok(Partition::Dev),
            "test" => Ok(Partition::Test),
            other => Err(format!(
                "unknown partition '{}', expected train, dev or test",
                other
            )),
        }
    }
}

/// A document with its experiment metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentUnit {
    pub doc_id: String,
    pub partition: Partition,
    /// Key shared with the corresponding document of another corpus,
    /// e.g. a Bible chapter.
    pub parallel_key: Option<String>,
    pub sentences: Vec<Sentence>,
}

impl DocumentUnit {
    pub fn new(doc_id: impl Into<String>, partition: Partition) -> Self {
        DocumentUnit {
            doc_id: doc_id.into(),
            partition,
            parallel_key: None,
            sentences: Vec::new(),
        }
    }

    pub fn with_parallel_key(mut self, key: impl Into<String>) -> Self {
        self.parallel_key = Some(key.into());
        self
    }

    pub fn with_sentences(mut self, sentences: Vec<Sentence>) -> Self {
        self.sentences = sentences;
        self
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    pub fn words(&self) -> impl Iterator<Item = &SyntaxWord> {
        self.sentences.iter().flat_map(|s| s.words.iter())
    }
}

/// An ordered collection of documents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub documents: Vec<DocumentUnit>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, documents: Vec<DocumentUnit>) -> Self {
        Corpus {
            name: name.into(),
            documents,
        }
    }

    /// Number of word rows; multiword token lines are not counted.
    pub fn token_count(&self) -> usize {
        self.documents.iter().map(DocumentUnit::token_count).sum()
    }

    pub fn sentence_count(&self) -> usize {
        self.documents.iter().map(|d| d.sentences.len()).sum()
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.documents.iter().flat_map(|d| d.sentences.iter())
    }

    pub fn words(&self) -> impl Iterator<Item = &SyntaxWord> {
        self.documents.iter().flat_map(DocumentUnit::words)
    }

    pub fn document(&self, doc_id: &str) -> Option<&DocumentUnit> {
        self.documents.iter().find(|d| d.doc_id == doc_id)
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Corpus restricted to documents accepted by `keep`, order preserved.
    pub fn filter(&self, mut keep: impl FnMut(&DocumentUnit) -> bool) -> Corpus {
        Corpus {
            name: self.name.clone(),
            documents: self.documents.iter().filter(|d| keep(d)).cloned().collect(),
        }
    }

    pub fn partition(&self, partition: Partition) -> Corpus {
        self.filter(|d| d.partition == partition)
    }
}

/// Free function form of [`Corpus::token_count`].
pub fn token_count(corpus: &Corpus) -> usize {
    corpus.token_count()
}
