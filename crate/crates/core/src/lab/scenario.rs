use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conllu::{Corpus, DocumentUnit, Partition};
use crate::error::{Error, Result};

/// Training configuration. Corpus `a` is the low-resource target dialect,
/// corpus `b` the larger related one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioName {
    SingleA,
    SingleB,
    Joint,
    Balanced,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 4] = [
        ScenarioName::SingleA,
        ScenarioName::SingleB,
        ScenarioName::Joint,
        ScenarioName::Balanced,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::SingleA => "single_a",
            ScenarioName::SingleB => "single_b",
            ScenarioName::Joint => "joint",
            ScenarioName::Balanced => "balanced",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Scenario(format!("unknown scenario '{}'", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DocRef {
    pub side: Side,
    pub doc_id: String,
}

impl DocRef {
    fn new(side: Side, doc: &DocumentUnit) -> Self {
        DocRef {
            side,
            doc_id: doc.doc_id.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: ScenarioName,
    pub seed: u64,
    pub train: Vec<DocRef>,
    pub dev: Vec<DocRef>,
    pub test: Vec<DocRef>,
    pub train_tokens: usize,
    /// Token budget for the sampled side (balanced only).
    pub sample_target: Option<usize>,
    /// Tokens actually drawn from side b (balanced only).
    pub sampled_tokens: Option<usize>,
}

impl Scenario {
    /// Sample overshoot beyond the token budget (balanced only).
    pub fn overshoot(&self) -> Option<usize> {
        Some(self.sampled_tokens? - self.sample_target?)
    }

    fn collect(refs: &[DocRef], a: &Corpus, b: &Corpus) -> Result<Vec<DocumentUnit>> {
        refs.iter()
            .map(|r| {
                let corpus = match r.side {
                    Side::A => a,
                    Side::B => b,
                };
                corpus.document(&r.doc_id).cloned().ok_or_else(|| {
                    Error::Scenario(format!(
                        "document '{}' not found in {}",
                        r.doc_id, corpus.name
                    ))
                })
            })
            .collect()
    }

    pub fn train_corpus(&self, a: &Corpus, b: &Corpus) -> Result<Corpus> {
        Ok(Corpus::new(
            format!("{}-train", self.name),
            Self::collect(&self.train, a, b)?,
        ))
    }

    pub fn dev_corpus(&self, a: &Corpus, b: &Corpus) -> Result<Corpus> {
        Ok(Corpus::new(
            format!("{}-dev", self.name),
            Self::collect(&self.dev, a, b)?,
        ))
    }

    /// Test documents of one side.
    pub fn test_corpus(&self, side: Side, a: &Corpus, b: &Corpus) -> Result<Corpus> {
        let refs: Vec<DocRef> = self.test.iter().filter(|r| r.side == side).cloned().collect();
        let name = match side {
            Side::A => &a.name,
            Side::B => &b.name,
        };
        Ok(Corpus::new(format!("{}-test", name), Self::collect(&refs, a, b)?))
    }
}

fn refs(side: Side, corpus: &Corpus, partition: Partition) -> Vec<DocRef> {
    corpus
        .documents
        .iter()
        .filter(|d| d.partition == partition)
        .map(|d| DocRef::new(side, d))
        .collect()
}

fn partition_tokens(corpus: &Corpus, partition: Partition) -> usize {
    corpus
        .documents
        .iter()
        .filter(|d| d.partition == partition)
        .map(DocumentUnit::token_count)
        .sum()
}

/// Assemble the document lists of a scenario.
///
/// Test documents of both sides are always included. The balanced
/// scenario adds to the full train partition of `a` whole documents from
/// the train partition of `b`, drawn in a seeded random order until their
/// token count reaches that of `a`'s train partition. Documents of `b`
/// sharing a parallel key with a train or test document of `a` are never
/// drawn.
pub fn assemble(name: ScenarioName, a: &Corpus, b: &Corpus, seed: u64) -> Result<Scenario> {
    let test = [refs(Side::A, a, Partition::Test), refs(Side::B, b, Partition::Test)].concat();
    let train_a = refs(Side::A, a, Partition::Train);
    let train_b = refs(Side::B, b, Partition::Train);
    let dev_a = refs(Side::A, a, Partition::Dev);
    let dev_b = refs(Side::B, b, Partition::Dev);
    let tokens_a = partition_tokens(a, Partition::Train);
    let tokens_b = partition_tokens(b, Partition::Train);

    let mut scenario = Scenario {
        name,
        seed,
        train: Vec::new(),
        dev: Vec::new(),
        test,
        train_tokens: 0,
        sample_target: None,
        sampled_tokens: None,
    };

    match name {
        ScenarioName::SingleA => {
            scenario.train = train_a;
            scenario.dev = dev_a;
            scenario.train_tokens = tokens_a;
        }
        ScenarioName::SingleB => {
            scenario.train = train_b;
            scenario.dev = dev_b;
            scenario.train_tokens = tokens_b;
        }
        ScenarioName::Joint => {
            scenario.train = [train_a, train_b].concat();
            scenario.dev = [dev_a, dev_b].concat();
            scenario.train_tokens = tokens_a + tokens_b;
        }
        ScenarioName::Balanced => {
            let excluded: HashSet<&str> = a
                .documents
                .iter()
                .filter(|d| matches!(d.partition, Partition::Train | Partition::Test))
                .filter_map(|d| d.parallel_key.as_deref())
                .collect();
            let mut candidates: Vec<&DocumentUnit> = b
                .documents
                .iter()
                .filter(|d| d.partition == Partition::Train)
                .filter(|d| {
                    d.parallel_key
                        .as_deref()
                        .map_or(true, |k| !excluded.contains(k))
                })
                .collect();
            candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

            let mut sampled = Vec::new();
            let mut sampled_tokens = 0;
            for doc in candidates {
                if sampled_tokens >= tokens_a {
                    break;
                }
                sampled_tokens += doc.token_count();
                sampled.push(DocRef::new(Side::B, doc));
            }
            if sampled_tokens < tokens_a {
                return Err(Error::Scenario(format!(
                    "only {} tokens of {} available after excluding parallel documents, {} needed",
                    sampled_tokens, b.name, tokens_a
                )));
            }

            scenario.train = [train_a, sampled].concat();
            scenario.dev = [dev_a, dev_b].concat();
            scenario.train_tokens = tokens_a + sampled_tokens;
            scenario.sample_target = Some(tokens_a);
            scenario.sampled_tokens = Some(sampled_tokens);
        }
    }

    if scenario.train.is_empty() {
        return Err(Error::Scenario(format!("scenario {} has no training documents", name)));
    }

    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::{Sentence, SyntaxWord};

    fn doc(id: &str, partition: Partition, key: Option<&str>, tokens: usize) -> DocumentUnit {
        let words = (1..=tokens)
            .map(|i| SyntaxWord::new(i, "w", "w", "X", if i == 1 { 0 } else { 1 }, if i == 1 { "root" } else { "obj" }))
            .collect();
        let d = DocumentUnit::new(id, partition)
            .with_sentences(vec![Sentence::new(vec![], words, vec![]).unwrap()]);
        match key {
            Some(k) => d.with_parallel_key(k),
            None => d,
        }
    }

    fn corpora() -> (Corpus, Corpus) {
        let a = Corpus::new(
            "boh",
            vec![
                doc("a1", Partition::Train, Some("Mark_1"), 10),
                doc("a2", Partition::Train, None, 6),
                doc("a3", Partition::Test, Some("Mark_2"), 5),
                doc("a4", Partition::Dev, Some("Mark_3"), 4),
            ],
        );
        let b = Corpus::new(
            "sah",
            vec![
                doc("b1", Partition::Train, Some("Mark_1"), 9),
                doc("b2", Partition::Train, Some("Mark_2"), 9),
                doc("b3", Partition::Train, Some("Mark_3"), 7),
                doc("b4", Partition::Train, None, 8),
                doc("b5", Partition::Train, None, 5),
                doc("b6", Partition::Test, None, 5),
            ],
        );
        (a, b)
    }

    #[test]
    fn single_and_joint() {
        let (a, b) = corpora();
        let s = assemble(ScenarioName::SingleA, &a, &b, 1).unwrap();
        let ids: Vec<_> = s.train.iter().map(|r| r.doc_id.as_str()).collect();
        assert_eq!(ids, vec!["a1", "a2"]);
        assert_eq!(s.train_tokens, 16);
        assert_eq!(s.test.len(), 2);

        let j = assemble(ScenarioName::Joint, &a, &b, 1).unwrap();
        assert_eq!(j.train.len(), 7);
        assert_eq!(j.train_tokens, 16 + 38);
        assert_eq!(j.train_corpus(&a, &b).unwrap().token_count(), 54);
    }

    #[test]
    fn balanced_excludes_parallel_and_meets_budget() {
        let (a, b) = corpora();
        for seed in 0..20 {
            let s = assemble(ScenarioName::Balanced, &a, &b, seed).unwrap();
            let sampled: Vec<_> = s.train.iter().filter(|r| r.side == Side::B).collect();
            assert!(sampled.iter().all(|r| r.doc_id != "b1" && r.doc_id != "b2"));
            let tokens = s.sampled_tokens.unwrap();
            assert!(tokens >= 16);
            // stopping at the first document that reaches the budget
            let last = b.document(&sampled.last().unwrap().doc_id).unwrap().token_count();
            assert!(tokens - last < 16);
            assert_eq!(s.overshoot(), Some(tokens - 16));
            assert_eq!(assemble(ScenarioName::Balanced, &a, &b, seed).unwrap(), s);
        }
    }

    #[test]
    fn balanced_fails_when_too_little_data() {
        let (a, mut b) = corpora();
        b.documents.retain(|d| d.doc_id != "b4" && d.doc_id != "b5");
        assert!(matches!(
            assemble(ScenarioName::Balanced, &a, &b, 3),
            Err(Error::Scenario(_))
        ));
    }

    #[test]
    fn names_round_trip() {
        for name in ScenarioName::ALL {
            assert_eq!(name.as_str().parse::<ScenarioName>().unwrap(), name);
        }
        assert!("mixed".parse::<ScenarioName>().is_err());
    }
}
