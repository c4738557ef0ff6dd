//! Arc-standard transition parser with an averaged perceptron.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::features::{template_hash, ConfigView, TEMPLATES};
use crate::conllu::{Corpus, Sentence, SyntaxWord};
use crate::error::{Error, Result};
use crate::tree;

pub const ROOT_LABEL: &str = "root";

/// Dependent label used when the training data has none besides `root`.
const FALLBACK_LABEL: &str = "dep";

const MAGIC: &[u8; 8] = b"CUDPARSE";
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Shift,
    /// s0 becomes the head of s1.
    Left(u16),
    /// s1 becomes the head of s0.
    Right(u16),
}

impl Action {
    fn index(self, n_labels: usize) -> usize {
        match self {
            Action::Shift => 0,
            Action::Left(l) => 1 + l as usize,
            Action::Right(l) => 1 + n_labels + l as usize,
        }
    }

    fn from_index(index: usize, n_labels: usize) -> Action {
        if index == 0 {
            Action::Shift
        } else if index <= n_labels {
            Action::Left((index - 1) as u16)
        } else {
            Action::Right((index - 1 - n_labels) as u16)
        }
    }
}

struct State<'a> {
    words: &'a [SyntaxWord],
    stack: Vec<usize>,
    next: usize,
    /// Indexed by word id; slot 0 unused.
    heads: Vec<Option<usize>>,
    labels: Vec<Option<u16>>,
    leftmost: Vec<usize>,
    rightmost: Vec<usize>,
    attached: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(words: &'a [SyntaxWord]) -> Self {
        let n = words.len();
        State {
            words,
            stack: vec![0],
            next: 1,
            heads: vec![None; n + 1],
            labels: vec![None; n + 1],
            leftmost: vec![0; n + 1],
            rightmost: vec![0; n + 1],
            attached: vec![0; n + 1],
        }
    }

    fn buffer_empty(&self) -> bool {
        self.next > self.words.len()
    }

    fn is_terminal(&self) -> bool {
        self.buffer_empty() && self.stack.len() == 1
    }

    fn top2(&self) -> Option<(usize, usize)> {
        let len = self.stack.len();
        (len >= 2).then(|| (self.stack[len - 1], self.stack[len - 2]))
    }

    fn is_legal(&self, action: Action, root: u16) -> bool {
        match action {
            Action::Shift => !self.buffer_empty(),
            Action::Left(l) => match self.top2() {
                Some((_, s1)) => s1 != 0 && l != root,
                None => false,
            },
            Action::Right(l) => match self.top2() {
                Some((_, 0)) => self.buffer_empty() && self.stack.len() == 2 && l == root,
                Some(_) => l != root,
                None => false,
            },
        }
    }

    fn attach(&mut self, head: usize, dep: usize, label: u16) {
        self.heads[dep] = Some(head);
        self.labels[dep] = Some(label);
        self.attached[head] += 1;
        if head == 0 {
            return;
        }
        if dep < head && (self.leftmost[head] == 0 || dep < self.leftmost[head]) {
            self.leftmost[head] = dep;
        }
        if dep > head && dep > self.rightmost[head] {
            self.rightmost[head] = dep;
        }
    }

    fn apply(&mut self, action: Action) {
        match action {
            Action::Shift => {
                self.stack.push(self.next);
                self.next += 1;
            }
            Action::Left(l) => {
                let s0 = self.stack.pop().expect("legal action");
                let s1 = self.stack.pop().expect("legal action");
                self.attach(s0, s1, l);
                self.stack.push(s0);
            }
            Action::Right(l) => {
                let s0 = self.stack.pop().expect("legal action");
                let s1 = *self.stack.last().expect("legal action");
                self.attach(s1, s0, l);
            }
        }
    }

    fn view<'s>(&'s self, label_names: &'s [String]) -> ConfigView<'s> {
        ConfigView {
            words: self.words,
            stack: &self.stack,
            next: self.next,
            leftmost: &self.leftmost,
            rightmost: &self.rightmost,
            labels: &self.labels,
            label_names,
        }
    }
}

/// Gold tree prepared for the static oracle.
struct Gold {
    heads: Vec<usize>,
    labels: Vec<u16>,
    children: Vec<usize>,
}

impl Gold {
    fn oracle(&self, state: &State) -> Option<Action> {
        if let Some((s0, s1)) = state.top2() {
            if s1 != 0 && self.heads[s1] == s0 {
                return Some(Action::Left(self.labels[s1]));
            }
            if self.heads[s0] == s1 && state.attached[s0] == self.children[s0] {
                return Some(Action::Right(self.labels[s0]));
            }
        }
        (!state.buffer_empty()).then_some(Action::Shift)
    }
}

fn sentence_name(sentence: &Sentence, index: usize) -> String {
    sentence
        .sent_id()
        .map_or_else(|| format!("#{}", index + 1), str::to_owned)
}

fn prepare_gold(sentence: &Sentence, index: usize, labels: &[String], root: u16) -> Result<Gold> {
    let mut heads = sentence.heads();
    if !tree::check(&heads).is_tree() {
        return Err(Error::Model(format!(
            "training sentence {} is not a single-rooted tree",
            sentence_name(sentence, index)
        )));
    }
    tree::projectivize(&mut heads);

    let n = heads.len();
    let mut gold = Gold {
        heads: vec![0; n + 1],
        labels: vec![0; n + 1],
        children: vec![0; n + 1],
    };
    for (word, &head) in sentence.words.iter().zip(&heads) {
        gold.heads[word.id] = head;
        gold.children[head] += 1;
        gold.labels[word.id] = if head == 0 {
            root
        } else if word.deprel == ROOT_LABEL {
            return Err(Error::Model(format!(
                "training sentence {}: word {} is labelled root but is not attached to the root",
                sentence_name(sentence, index),
                word.id
            )));
        } else {
            labels.binary_search(&word.deprel).expect("label collected") as u16
        };
    }
    Ok(gold)
}

#[derive(Clone, Copy)]
struct Slot {
    action: u16,
    weight: f64,
    /// Sum of step-weighted updates; averaged weight is weight - acc / steps.
    acc: f64,
}

struct Perceptron {
    n_actions: usize,
    weights: HashMap<u64, Vec<Slot>>,
    steps: u64,
}

impl Perceptron {
    fn scores(&self, features: &[u64], out: &mut [f64]) {
        out.fill(0.0);
        for f in features {
            if let Some(slots) = self.weights.get(f) {
                for s in slots {
                    out[s.action as usize] += s.weight;
                }
            }
        }
    }

    fn update(&mut self, features: &[u64], action: usize, delta: f64) {
        let step = self.steps as f64;
        for &f in features {
            let slots = self.weights.entry(f).or_default();
            match slots.iter_mut().find(|s| s.action as usize == action) {
                Some(s) => {
                    s.weight += delta;
                    s.acc += step * delta;
                }
                None => slots.push(Slot {
                    action: action as u16,
                    weight: delta,
                    acc: step * delta,
                }),
            }
        }
    }

    fn averaged(&self) -> BTreeMap<u64, Vec<(u16, f32)>> {
        let steps = self.steps.max(1) as f64;
        let mut out = BTreeMap::new();
        for (&f, slots) in &self.weights {
            let mut avg: Vec<(u16, f32)> = slots
                .iter()
                .map(|s| (s.action, (s.weight - s.acc / steps) as f32))
                .filter(|&(_, w)| w != 0.0)
                .collect();
            if avg.is_empty() {
                continue;
            }
            avg.sort_by_key(|&(a, _)| a);
            out.insert(f, avg);
        }
        debug_assert!(out.values().flatten().all(|&(a, _)| (a as usize) < self.n_actions));
        out
    }
}

fn best_legal(scores: &[f64], state: &State, n_labels: usize, root: u16) -> Action {
    let mut best: Option<(usize, f64)> = None;
    for (index, &score) in scores.iter().enumerate() {
        let action = Action::from_index(index, n_labels);
        if !state.is_legal(action, root) {
            continue;
        }
        // strict comparison keeps the lowest index on ties
        if best.map_or(true, |(_, b)| score > b) {
            best = Some((index, score));
        }
    }
    let (index, _) = best.expect("a non-terminal state always has a legal action");
    Action::from_index(index, n_labels)
}

/// A trained parser; immutable and shareable across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct ParserModel {
    /// Sorted relation labels, always including `root`.
    pub labels: Vec<String>,
    pub weights: BTreeMap<u64, Vec<(u16, f32)>>,
    pub template_hash: u64,
    pub seed: u64,
    pub epochs: u32,
}

impl ParserModel {
    fn root_index(&self) -> u16 {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(ROOT_LABEL))
            .expect("model labels include root") as u16
    }

    fn n_actions(&self) -> usize {
        1 + 2 * self.labels.len()
    }

    fn scores(&self, features: &[u64], out: &mut [f64]) {
        out.fill(0.0);
        for f in features {
            if let Some(slots) = self.weights.get(f) {
                for &(a, w) in slots {
                    out[a as usize] += w as f64;
                }
            }
        }
    }

    /// Predict heads and relations; every other field is copied unchanged.
    pub fn parse(&self, sentence: &Sentence) -> Sentence {
        let root = self.root_index();
        let n_labels = self.labels.len();
        let mut state = State::new(&sentence.words);
        let mut features = Vec::with_capacity(TEMPLATES.len());
        let mut scores = vec![0.0; self.n_actions()];
        while !state.is_terminal() {
            state.view(&self.labels).features(&mut features);
            self.scores(&features, &mut scores);
            let action = best_legal(&scores, &state, n_labels, root);
            state.apply(action);
        }

        let mut out = sentence.clone();
        for word in &mut out.words {
            word.head = state.heads[word.id].expect("terminal state attaches every word");
            word.deprel = self.labels[state.labels[word.id].expect("labelled") as usize].clone();
        }
        out
    }

    pub fn parse_corpus(&self, corpus: &Corpus) -> Corpus {
        let documents = corpus
            .documents
            .par_iter()
            .map(|doc| {
                let mut doc = doc.clone();
                doc.sentences = doc.sentences.par_iter().map(|s| self.parse(s)).collect();
                doc
            })
            .collect();
        Corpus::new(corpus.name.clone(), documents)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.template_hash.to_le_bytes());
        out.extend_from_slice(&self.seed.to_le_bytes());
        out.extend_from_slice(&self.epochs.to_le_bytes());
        out.extend_from_slice(&(self.labels.len() as u32).to_le_bytes());
        for label in &self.labels {
            out.extend_from_slice(&(label.len() as u32).to_le_bytes());
            out.extend_from_slice(label.as_bytes());
        }
        out.extend_from_slice(&(self.weights.len() as u64).to_le_bytes());
        for (feature, slots) in &self.weights {
            out.extend_from_slice(&feature.to_le_bytes());
            out.extend_from_slice(&(slots.len() as u16).to_le_bytes());
            for &(action, weight) in slots {
                out.extend_from_slice(&action.to_le_bytes());
                out.extend_from_slice(&weight.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(MAGIC.len())? != MAGIC {
            return Err(Error::Model("not a parser model file".into()));
        }
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::Model(format!("unsupported model version {}", version)));
        }
        let hash = r.u64()?;
        if hash != template_hash() {
            return Err(Error::Model(
                "model was trained with a different feature template set".into(),
            ));
        }
        let seed = r.u64()?;
        let epochs = r.u32()?;
        let n_labels = r.u32()? as usize;
        let mut labels = Vec::with_capacity(n_labels.min(1024));
        for _ in 0..n_labels {
            let len = r.u32()? as usize;
            let label = std::str::from_utf8(r.take(len)?)
                .map_err(|_| Error::Model("label is not UTF-8".into()))?;
            labels.push(label.to_owned());
        }
        if !labels.windows(2).all(|w| w[0] < w[1]) || !labels.iter().any(|l| l == ROOT_LABEL) || labels.len() < 2 {
            return Err(Error::Model(
                "label set must be sorted, unique and contain root and a dependent label".into(),
            ));
        }
        let n_actions = 1 + 2 * labels.len();
        let n_features = r.u64()?;
        let mut weights = BTreeMap::new();
        for _ in 0..n_features {
            let feature = r.u64()?;
            let n = r.u16()? as usize;
            let mut slots = Vec::with_capacity(n);
            for _ in 0..n {
                let action = r.u16()?;
                if action as usize >= n_actions {
                    return Err(Error::Model(format!("action index {} out of range", action)));
                }
                slots.push((action, f32::from_le_bytes(r.array()?)));
            }
            weights.insert(feature, slots);
        }
        if r.pos != bytes.len() {
            return Err(Error::Model("trailing bytes after model".into()));
        }
        Ok(ParserModel {
            labels,
            weights,
            template_hash: hash,
            seed,
            epochs,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_bytes(&fs::read(path)?).map_err(|e| e.in_file(path))
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Model("truncated model file".into()))?;
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.array()?))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.array()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.array()?))
    }
}

/// Train a model on every sentence of `corpus`.
///
/// Non-projective trees are projectivized before oracle extraction.
/// Sentence order is reshuffled each epoch from `seed`, so identical
/// inputs give identical model bytes.
pub fn train(corpus: &Corpus, epochs: u32, seed: u64) -> Result<ParserModel> {
    let sentences: Vec<&Sentence> = corpus.sentences().filter(|s| !s.is_empty()).collect();
    if sentences.is_empty() {
        return Err(Error::Model(format!("training corpus {} is empty", corpus.name)));
    }

    let mut label_set: BTreeSet<String> = corpus
        .words()
        .filter(|w| w.head != 0)
        .map(|w| w.deprel.clone())
        .collect();
    // without a dependent label, longer sentences would have no legal arc
    if label_set.is_empty() {
        label_set.insert(FALLBACK_LABEL.to_owned());
    }
    label_set.insert(ROOT_LABEL.to_owned());
    let labels: Vec<String> = label_set.into_iter().collect();
    let n_labels = labels.len();
    let root = labels.binary_search_by(|l| l.as_str().cmp(ROOT_LABEL)).expect("inserted") as u16;

    let golds = sentences
        .iter()
        .enumerate()
        .map(|(i, s)| prepare_gold(s, i, &labels, root))
        .collect::<Result<Vec<_>>>()?;

    let n_actions = 1 + 2 * n_labels;
    let mut perceptron = Perceptron {
        n_actions,
        weights: HashMap::new(),
        steps: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..sentences.len()).collect();
    let mut features = Vec::with_capacity(TEMPLATES.len());
    let mut scores = vec![0.0; n_actions];

    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let gold = &golds[i];
            let mut state = State::new(&sentences[i].words);
            while !state.is_terminal() {
                let expected = gold.oracle(&state).ok_or_else(|| {
                    Error::Model(format!(
                        "no oracle transition for sentence {}",
                        sentence_name(sentences[i], i)
                    ))
                })?;
                state.view(&labels).features(&mut features);
                perceptron.scores(&features, &mut scores);
                let predicted = best_legal(&scores, &state, n_labels, root);
                perceptron.steps += 1;
                if predicted != expected {
                    perceptron.update(&features, expected.index(n_labels), 1.0);
                    perceptron.update(&features, predicted.index(n_labels), -1.0);
                }
                state.apply(expected);
            }
        }
    }

    Ok(ParserModel {
        labels,
        weights: perceptron.averaged(),
        template_hash: template_hash(),
        seed,
        epochs,
    })
}
