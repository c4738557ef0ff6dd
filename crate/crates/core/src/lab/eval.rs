//! Attachment scores and collapsed-label confusion matrices.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::conllu::{relation_base, Corpus, Sentence, SyntaxWord};
use crate::error::{Error, Result};
use crate::numfmt::fmt_half_even;

pub const DEFAULT_MIN_GOLD: usize = 10;

/// Pair up gold and predicted words, requiring identical segmentation.
fn aligned<'a>(gold: &'a Corpus, pred: &'a Corpus) -> Result<Vec<(&'a SyntaxWord, &'a SyntaxWord)>> {
    let gs: Vec<&Sentence> = gold.sentences().collect();
    let ps: Vec<&Sentence> = pred.sentences().collect();
    if gs.len() != ps.len() {
        return Err(Error::Misaligned {
            position: "corpus".into(),
            message: format!("{} gold sentences vs {} predicted", gs.len(), ps.len()),
        });
    }
    let mut pairs = Vec::with_capacity(gold.token_count());
    for (i, (g, p)) in gs.iter().zip(&ps).enumerate() {
        if g.len() != p.len() {
            return Err(Error::Misaligned {
                position: format!("sentence {}", i + 1),
                message: format!("{} gold words vs {} predicted", g.len(), p.len()),
            });
        }
        for (gw, pw) in g.words.iter().zip(&p.words) {
            if gw.form != pw.form {
                return Err(Error::Misaligned {
                    position: format!("sentence {} word {}", i + 1, gw.id),
                    message: format!("gold form '{}' vs predicted '{}'", gw.form, pw.form),
                });
            }
            pairs.push((gw, pw));
        }
    }
    Ok(pairs)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelScore {
    pub gold: usize,
    pub correct_head: usize,
    pub correct_both: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub las: f64,
    pub uas: f64,
    pub token_count: usize,
    /// Keyed by full gold relation, subtypes included.
    pub per_label: BTreeMap<String, LabelScore>,
}

impl EvalReport {
    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "relation\tgold\tcorrect_head\tcorrect_both\tuas\tlas")?;
        let pct = |n: usize, d: usize| fmt_half_even(100.0 * n as f64 / d as f64, 2);
        for (label, s) in &self.per_label {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}",
                label,
                s.gold,
                s.correct_head,
                s.correct_both,
                pct(s.correct_head, s.gold),
                pct(s.correct_both, s.gold)
            )?;
        }
        let (head, both) = self
            .per_label
            .values()
            .fold((0, 0), |(h, b), s| (h + s.correct_head, b + s.correct_both));
        writeln!(
            w,
            "TOTAL\t{}\t{}\t{}\t{}\t{}",
            self.token_count,
            head,
            both,
            fmt_half_even(self.uas, 2),
            fmt_half_even(self.las, 2)
        )
    }
}

/// LAS and UAS over all words; LAS compares full relations.
pub fn score(gold: &Corpus, pred: &Corpus) -> Result<EvalReport> {
    let pairs = aligned(gold, pred)?;
    if pairs.is_empty() {
        return Err(Error::EmptyCorpus(gold.name.clone()));
    }
    let mut per_label: BTreeMap<String, LabelScore> = BTreeMap::new();
    let (mut head_ok, mut both_ok) = (0usize, 0usize);
    for (g, p) in &pairs {
        let entry = per_label.entry(g.deprel.clone()).or_default();
        entry.gold += 1;
        if g.head == p.head {
            head_ok += 1;
            entry.correct_head += 1;
            if g.deprel == p.deprel {
                both_ok += 1;
                entry.correct_both += 1;
            }
        }
    }
    let n = pairs.len() as f64;
    Ok(EvalReport {
        las: 100.0 * both_ok as f64 / n,
        uas: 100.0 * head_ok as f64 / n,
        token_count: pairs.len(),
        per_label,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    /// Collapsed gold relations with at least `min_gold` occurrences, sorted.
    pub labels: Vec<String>,
    /// `cells[g][p]`: words with gold `labels[g]` predicted as `labels[p]`.
    pub cells: Vec<Vec<usize>>,
    /// Per row, predictions outside `labels`.
    pub other: Vec<usize>,
    /// Collapsed relations below the threshold, with their gold counts.
    pub omitted: Vec<(String, usize)>,
}

impl ConfusionMatrix {
    pub fn cell(&self, gold: &str, pred: &str) -> Option<usize> {
        let g = self.labels.iter().position(|l| l == gold)?;
        let p = self.labels.iter().position(|l| l == pred)?;
        Some(self.cells[g][p])
    }

    /// Off-diagonal cells, most frequent first.
    pub fn confusions(&self) -> Vec<(&str, &str, usize)> {
        let mut out: Vec<(&str, &str, usize)> = Vec::new();
        for (g, row) in self.cells.iter().enumerate() {
            for (p, &n) in row.iter().enumerate() {
                if g != p && n > 0 {
                    out.push((&self.labels[g], &self.labels[p], n));
                }
            }
        }
        out.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| (a.0, a.1).cmp(&(b.0, b.1))));
        out
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "gold\\pred")?;
        for l in &self.labels {
            write!(w, "\t{}", l)?;
        }
        writeln!(w, "\tother")?;
        for (label, (row, other)) in self.labels.iter().zip(self.cells.iter().zip(&self.other)) {
            write!(w, "{}", label)?;
            for n in row {
                write!(w, "\t{}", n)?;
            }
            writeln!(w, "\t{}", other)?;
        }
        if !self.omitted.is_empty() {
            let omitted: Vec<String> = self
                .omitted
                .iter()
                .map(|(l, n)| format!("{}={}", l, n))
                .collect();
            writeln!(w, "# omitted\t{}", omitted.join(","))?;
        }
        Ok(())
    }
}

/// Gold by predicted counts over relations with subtypes stripped.
pub fn confusion(gold: &Corpus, pred: &Corpus, min_gold: usize) -> Result<ConfusionMatrix> {
    let pairs = aligned(gold, pred)?;
    let mut gold_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (g, _) in &pairs {
        *gold_counts.entry(relation_base(&g.deprel)).or_default() += 1;
    }
    let labels: Vec<String> = gold_counts
        .iter()
        .filter(|&(_, &n)| n >= min_gold)
        .map(|(l, _)| l.to_string())
        .collect();
    let omitted = gold_counts
        .iter()
        .filter(|&(_, &n)| n < min_gold)
        .map(|(l, &n)| (l.to_string(), n))
        .collect();

    let index = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).ok();
    let mut cells = vec![vec![0; labels.len()]; labels.len()];
    let mut other = vec![0; labels.len()];
    for (g, p) in &pairs {
        let Some(gi) = index(relation_base(&g.deprel)) else {
            continue;
        };
        match index(relation_base(&p.deprel)) {
            Some(pi) => cells[gi][pi] += 1,
            None => other[gi] += 1,
        }
    }
    Ok(ConfusionMatrix {
        labels,
        cells,
        other,
        omitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::{DocumentUnit, Partition};

    fn corpus(rows: &[(usize, &str)]) -> Corpus {
        let words = rows
            .iter()
            .enumerate()
            .map(|(i, &(head, rel))| SyntaxWord::new(i + 1, format!("w{}", i), "_", "X", head, rel))
            .collect();
        let s = Sentence::new(vec![], words, vec![]).unwrap();
        Corpus::new("c", vec![DocumentUnit::new("d", Partition::Test).with_sentences(vec![s])])
    }

    #[test]
    fn perfect_and_one_wrong_head() {
        let gold = corpus(&[(2, "nsubj"), (0, "root"), (2, "obj")]);
        let r = score(&gold, &gold).unwrap();
        assert_eq!((r.las, r.uas), (100.0, 100.0));

        let pred = corpus(&[(3, "nsubj"), (0, "root"), (2, "obj")]);
        let r = score(&gold, &pred).unwrap();
        assert_eq!(fmt_half_even(r.uas, 2), "66.67");
        assert_eq!(r.per_label["nsubj"].correct_head, 0);
    }

    #[test]
    fn label_error_lowers_only_las() {
        let gold = corpus(&[(2, "nsubj"), (0, "root"), (2, "obj")]);
        let pred = corpus(&[(2, "nsubj"), (0, "root"), (2, "obl")]);
        let r = score(&gold, &pred).unwrap();
        assert_eq!(r.uas, 100.0);
        assert!(r.las < r.uas);
    }

    #[test]
    fn subtypes_collapse_onto_diagonal() {
        let gold = corpus(&[(0, "root"), (1, "acl:relcl")]);
        let pred = corpus(&[(0, "root"), (1, "acl")]);
        let m = confusion(&gold, &pred, 1).unwrap();
        assert_eq!(m.cell("acl", "acl"), Some(1));
        // full relations still differ for LAS
        assert_eq!(score(&gold, &pred).unwrap().las, 50.0);
    }

    #[test]
    fn rows_account_for_every_gold_word() {
        let gold = corpus(&[(0, "root"), (1, "obl"), (1, "obl"), (1, "nmod"), (1, "amod")]);
        let pred = corpus(&[(0, "root"), (1, "nmod"), (1, "obl"), (1, "amod"), (1, "amod")]);
        let m = confusion(&gold, &pred, 2).unwrap();
        assert_eq!(m.labels, vec!["obl"]);
        assert_eq!(m.cells, vec![vec![1]]);
        assert_eq!(m.other, vec![1]);
        assert_eq!(m.omitted, vec![("amod".into(), 1), ("nmod".into(), 1), ("root".into(), 1)]);
    }

    #[test]
    fn misalignment_is_reported() {
        let gold = corpus(&[(0, "root"), (1, "obj")]);
        let pred = corpus(&[(0, "root")]);
        assert!(matches!(score(&gold, &pred), Err(Error::Misaligned { .. })));
        assert!(confusion(&gold, &pred, 1).is_err());
    }
}
