//! Inter-annotator agreement on relation labels and on heads.
//!
//! Heads are compared as offsets from the dependent (`head - id`), with a
//! separate ROOT category, so that chance agreement is not deflated by the
//! number of distinct absolute positions.
//!
//! "Mutual F1" is micro-averaged F1 with one annotator as reference and the
//! other as hypothesis. With exactly one label per aligned token, precision
//! and recall coincide and the score equals the token agreement rate; it
//! is therefore symmetric.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::conllu::{DocumentUnit, SyntaxWord};
use crate::error::{Error, Result};
use crate::numfmt::fmt_half_even;

/// A head expressed relative to its dependent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeadOffset {
    Root,
    Offset(i64),
}

impl fmt::Display for HeadOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeadOffset::Root => f.write_str("ROOT"),
            HeadOffset::Offset(v) => write!(f, "{:+}", v),
        }
    }
}

pub fn head_to_offset(word: &SyntaxWord) -> HeadOffset {
    if word.head == 0 {
        HeadOffset::Root
    } else {
        HeadOffset::Offset(word.head as i64 - word.id as i64)
    }
}

struct Tally {
    n: u128,
    agree: u128,
    // sum over categories of count_a * count_b
    marginal_product: u128,
}

fn tally<T: Eq + Hash>(a: &[T], b: &[T]) -> Result<Tally> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Undefined("agreement over zero tokens".into()));
    }

    let mut marginals: HashMap<&T, (u128, u128)> = HashMap::new();
    let mut agree = 0;
    for (x, y) in a.iter().zip(b) {
        marginals.entry(x).or_default().0 += 1;
        marginals.entry(y).or_default().1 += 1;
        if x == y {
            agree += 1;
        }
    }

    Ok(Tally {
        n: a.len() as u128,
        agree,
        marginal_product: marginals.values().map(|(ca, cb)| ca * cb).sum(),
    })
}

/// Cohen's kappa in percent.
///
/// Expected agreement comes from each annotator's own label distribution.
/// When chance agreement is certain (both annotators used one and the same
/// label throughout) kappa is undefined; this returns 100 for that case,
/// since observed agreement is then perfect too.
pub fn cohens_kappa<T: Eq + Hash>(a: &[T], b: &[T]) -> Result<f64> {
    let t = tally(a, b)?;
    let n2 = t.n * t.n;
    // kappa = (p_o - p_e) / (1 - p_e) = (agree * n - Σ) / (n² - Σ)
    if t.marginal_product == n2 {
        return if t.agree == t.n {
            Ok(100.0)
        } else {
            Err(Error::Undefined(
                "kappa is undefined when expected agreement is 1".into(),
            ))
        };
    }
    let numerator = (t.agree * t.n) as f64 - t.marginal_product as f64;
    let denominator = (n2 - t.marginal_product) as f64;
    Ok(numerator / denominator * 100.0)
}

/// Mutual F1 in percent (see the module docs).
pub fn mutual_f1<T: Eq + Hash>(a: &[T], b: &[T]) -> Result<f64> {
    let t = tally(a, b)?;
    Ok(t.agree as f64 / t.n as f64 * 100.0)
}

/// Kappa and F1 for labels and heads, in percent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AgreementScores {
    pub label_kappa: f64,
    pub label_f1: f64,
    pub head_kappa: f64,
    pub head_f1: f64,
}

impl AgreementScores {
    fn compute(labels: (&[&str], &[&str]), heads: (&[HeadOffset], &[HeadOffset])) -> Result<Self> {
        Ok(AgreementScores {
            label_kappa: cohens_kappa(labels.0, labels.1)?,
            label_f1: mutual_f1(labels.0, labels.1)?,
            head_kappa: cohens_kappa(heads.0, heads.1)?,
            head_f1: mutual_f1(heads.0, heads.1)?,
        })
    }

    /// Unweighted mean of several score sets.
    pub fn mean(scores: &[AgreementScores]) -> AgreementScores {
        let n = scores.len() as f64;
        let sum = |f: fn(&AgreementScores) -> f64| scores.iter().map(f).sum::<f64>() / n;
        AgreementScores {
            label_kappa: sum(|s| s.label_kappa),
            label_f1: sum(|s| s.label_f1),
            head_kappa: sum(|s| s.head_kappa),
            head_f1: sum(|s| s.head_f1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TextAgreement {
    pub text_id: String,
    pub tokens: usize,
    pub scores: AgreementScores,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub per_text: Vec<TextAgreement>,
    /// Mean of the per-text values.
    pub macro_avg: AgreementScores,
    /// Scores over all tokens pooled across texts.
    pub micro_avg: AgreementScores,
}

/// Which columns to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Labels,
    Heads,
    Both,
}

impl AgreementReport {
    /// TSV shaped like a per-text agreement table, values to 2 decimals
    /// (round half to even).
    pub fn write_tsv<W: Write>(&self, mut w: W, task: Task) -> std::io::Result<()> {
        let (labels, heads) = match task {
            Task::Labels => (true, false),
            Task::Heads => (false, true),
            Task::Both => (true, true),
        };

        let mut header = vec!["text", "tokens"];
        if labels {
            header.extend(["label_kappa", "label_f1"]);
        }
        if heads {
            header.extend(["head_kappa", "head_f1"]);
        }
        writeln!(w, "{}", header.join("\t"))?;

        let row = |name: &str, tokens: usize, s: &AgreementScores| {
            let mut cells = vec![name.to_owned(), tokens.to_string()];
            if labels {
                cells.push(fmt_half_even(s.label_kappa, 2));
                cells.push(fmt_half_even(s.label_f1, 2));
            }
            if heads {
                cells.push(fmt_half_even(s.head_kappa, 2));
                cells.push(fmt_half_even(s.head_f1, 2));
            }
            cells.join("\t")
        };

        let total: usize = self.per_text.iter().map(|t| t.tokens).sum();
        for text in &self.per_text {
            writeln!(w, "{}", row(&text.text_id, text.tokens, &text.scores))?;
        }
        writeln!(w, "{}", row("Macro average", total, &self.macro_avg))?;
        writeln!(w, "{}", row("Micro average", total, &self.micro_avg))
    }
}

struct Annotations<'a> {
    labels: (Vec<&'a str>, Vec<&'a str>),
    heads: (Vec<HeadOffset>, Vec<HeadOffset>),
}

fn align<'a>(text_id: &str, a: &'a DocumentUnit, b: &'a DocumentUnit) -> Result<Annotations<'a>> {
    if a.sentences.len() != b.sentences.len() {
        return Err(Error::Misaligned {
            position: text_id.to_owned(),
            message: format!(
                "{} sentences vs {} sentences",
                a.sentences.len(),
                b.sentences.len()
            ),
        });
    }

    let mut out = Annotations {
        labels: (Vec::new(), Vec::new()),
        heads: (Vec::new(), Vec::new()),
    };
    for (idx, (sa, sb)) in a.sentences.iter().zip(&b.sentences).enumerate() {
        for pos in 0..sa.len().max(sb.len()) {
            let (wa, wb) = match (sa.words.get(pos), sb.words.get(pos)) {
                (Some(wa), Some(wb)) if wa.form == wb.form => (wa, wb),
                (wa, wb) => {
                    return Err(Error::Misaligned {
                        position: format!("{} sentence {} word {}", text_id, idx + 1, pos + 1),
                        message: format!(
                            "'{}' vs '{}'",
                            wa.map_or("<none>", |w| &w.form),
                            wb.map_or("<none>", |w| &w.form)
                        ),
                    })
                }
            };
            out.labels.0.push(&wa.deprel);
            out.labels.1.push(&wb.deprel);
            out.heads.0.push(head_to_offset(wa));
            out.heads.1.push(head_to_offset(wb));
        }
    }

    Ok(out)
}

/// Per-text agreement plus macro and micro averages.
///
/// Each pair holds the same text annotated twice, with identical
/// sentence segmentation and word forms. Labels are compared in full,
/// subtypes included.
pub fn agreement_report(pairs: &[(&str, &DocumentUnit, &DocumentUnit)]) -> Result<AgreementReport> {
    if pairs.is_empty() {
        return Err(Error::Undefined("no texts to compare".into()));
    }

    let mut per_text = Vec::with_capacity(pairs.len());
    let mut pooled = Annotations {
        labels: (Vec::new(), Vec::new()),
        heads: (Vec::new(), Vec::new()),
    };

    for &(text_id, a, b) in pairs {
        let ann = align(text_id, a, b)?;
        let scores = AgreementScores::compute(
            (&ann.labels.0, &ann.labels.1),
            (&ann.heads.0, &ann.heads.1),
        )?;
        per_text.push(TextAgreement {
            text_id: text_id.to_owned(),
            tokens: ann.labels.0.len(),
            scores,
        });
        pooled.labels.0.extend(ann.labels.0);
        pooled.labels.1.extend(ann.labels.1);
        pooled.heads.0.extend(ann.heads.0);
        pooled.heads.1.extend(ann.heads.1);
    }

    let macro_avg = AgreementScores::mean(&per_text.iter().map(|t| t.scores).collect::<Vec<_>>());
    let micro_avg = AgreementScores::compute(
        (&pooled.labels.0, &pooled.labels.1),
        (&pooled.heads.0, &pooled.heads.1),
    )?;

    Ok(AgreementReport {
        per_text,
        macro_avg,
        micro_avg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::{Partition, Sentence};

    #[test]
    fn offsets() {
        let w = SyntaxWord::new(37, "x", "x", "X", 35, "obj");
        assert_eq!(head_to_offset(&w), HeadOffset::Offset(-2));
        let w = SyntaxWord::new(5, "x", "x", "X", 0, "root");
        assert_eq!(head_to_offset(&w), HeadOffset::Root);
        let w = SyntaxWord::new(3, "x", "x", "X", 4, "det");
        assert_eq!(head_to_offset(&w), HeadOffset::Offset(1));
        assert_eq!(HeadOffset::Offset(1).to_string(), "+1");
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(cohens_kappa(&["x", "y", "x"], &["x", "y", "x"]).unwrap(), 100.0);
        let a = ["x", "x", "y", "y"];
        let b = ["x", "y", "x", "y"];
        assert_eq!(cohens_kappa(&a, &b).unwrap(), 0.0);
        assert_eq!(mutual_f1(&a, &b).unwrap(), 50.0);
        assert_eq!(mutual_f1(&a, &a).unwrap(), 100.0);
    }

    #[test]
    fn kappa_degenerate_cases() {
        assert_eq!(cohens_kappa(&["x", "x"], &["x", "x"]).unwrap(), 100.0);
        assert!(matches!(
            cohens_kappa(&["x"], &["x", "y"]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        let empty: [&str; 0] = [];
        assert!(cohens_kappa(&empty, &empty).is_err());
    }

    fn doc(rows: &[(&str, usize, &str)]) -> DocumentUnit {
        let words = rows
            .iter()
            .enumerate()
            .map(|(i, &(form, head, rel))| SyntaxWord::new(i + 1, form, form, "X", head, rel))
            .collect();
        DocumentUnit::new("t", Partition::Train)
            .with_sentences(vec![Sentence::new(vec![], words, vec![]).unwrap()])
    }

    #[test]
    fn single_text_macro_equals_micro() {
        let a = doc(&[("a", 3, "aux"), ("f", 3, "nsubj"), ("sōtem", 0, "root"), ("mmof", 3, "obj")]);
        let b = doc(&[("a", 3, "aux"), ("f", 3, "nsubj"), ("sōtem", 0, "root"), ("mmof", 2, "obl")]);
        let report = agreement_report(&[("t1", &a, &b)]).unwrap();
        assert_eq!(report.macro_avg, report.micro_avg);
        assert_eq!(report.macro_avg, report.per_text[0].scores);
        assert_eq!(report.per_text[0].scores.label_f1, 75.0);
        assert_eq!(report.per_text[0].scores.head_f1, 75.0);
    }

    #[test]
    fn misalignment_names_position() {
        let a = doc(&[("a", 0, "root"), ("b", 1, "obj")]);
        let b = doc(&[("a", 0, "root"), ("c", 1, "obj")]);
        match agreement_report(&[("t1", &a, &b)]) {
            Err(Error::Misaligned { position, .. }) => assert_eq!(position, "t1 sentence 1 word 2"),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn tsv_layout() {
        let a = doc(&[("a", 0, "root"), ("b", 1, "obj")]);
        let report = agreement_report(&[("t1", &a, &a)]).unwrap();
        let mut out = Vec::new();
        report.write_tsv(&mut out, Task::Labels).unwrap();
        let out = String::from_utf8(out).unwrap();
        assert_eq!(
            out,
            "text\ttokens\tlabel_kappa\tlabel_f1\n\
             t1\t2\t100.00\t100.00\n\
             Macro average\t2\t100.00\t100.00\n\
             Micro average\t2\t100.00\t100.00\n"
        );
    }
}
