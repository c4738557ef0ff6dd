use proptest::prelude::*;

use coptic_ud::agreement::{cohens_kappa, mutual_f1};
use coptic_ud::analytics::{per_thousand, relation_frequencies, FrequencyRow};
use coptic_ud::conllu::{Corpus, DocumentUnit, Partition, Sentence, SyntaxWord};
use coptic_ud::lab::{score, train};
use coptic_ud::validate::validate_tree;

const RELS: &[&str] = &["nsubj", "obj", "obl", "det", "case", "advmod"];

fn labels(k: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..200).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..k, n),
            proptest::collection::vec(0..k, n),
        )
    })
}

/// Projective tree: every word attaches to its left neighbour or to the
/// root word, which is word 1.
fn tree() -> impl Strategy<Value = Sentence> {
    proptest::collection::vec((0..RELS.len(), any::<bool>()), 1..10).prop_map(|spec| {
        let words = spec
            .iter()
            .enumerate()
            .map(|(i, &(r, chain))| {
                let (head, rel) = match i {
                    0 => (0, "root"),
                    _ if chain => (i, RELS[r]),
                    _ => (1, RELS[r]),
                };
                SyntaxWord::new(i + 1, format!("w{}", r), "_", "X", head, rel)
            })
            .collect();
        Sentence::new(vec![], words, vec![]).unwrap()
    })
}

fn corpus(name: &str, sentences: Vec<Sentence>) -> Corpus {
    Corpus::new(name, vec![DocumentUnit::new("d", Partition::Train).with_sentences(sentences)])
}

proptest! {
    #[test]
    fn agreement_is_symmetric((a, b) in labels(5)) {
        prop_assert_eq!(mutual_f1(&a, &b).unwrap(), mutual_f1(&b, &a).unwrap());
        if let (Ok(k1), Ok(k2)) = (cohens_kappa(&a, &b), cohens_kappa(&b, &a)) {
            prop_assert!((k1 - k2).abs() < 1e-9);
        }
    }

    #[test]
    fn kappa_never_exceeds_f1((a, b) in labels(4)) {
        if let Ok(k) = cohens_kappa(&a, &b) {
            prop_assert!(k <= mutual_f1(&a, &b).unwrap() + 1e-9);
        }
    }

    #[test]
    fn per_thousand_is_scale_invariant(count in 0usize..1000, extra in 0usize..1000, times in 1usize..50) {
        let total = count + extra + 1;
        let once = per_thousand(count, total);
        let many = per_thousand(count * times, total * times);
        prop_assert!((once - many).abs() <= 1e-9 * once.max(1.0));
    }

    #[test]
    fn ratios_are_reciprocal(ca in 1usize..500, ta in 500usize..5000, cb in 1usize..500, tb in 500usize..5000) {
        let ab = FrequencyRow::new("x", ca, ta, cb, tb).ratio.unwrap();
        let ba = FrequencyRow::new("x", cb, tb, ca, ta).ratio.unwrap();
        prop_assert!((ab * ba - 1.0).abs() < 1e-12);
    }

    #[test]
    fn relation_counts_sum_to_tokens(a in proptest::collection::vec(tree(), 1..6), b in proptest::collection::vec(tree(), 1..6)) {
        let (a, b) = (corpus("a", a), corpus("b", b));
        let rows = relation_frequencies(&a, &b).unwrap();
        prop_assert_eq!(rows.iter().map(|r| r.count_a).sum::<usize>(), a.token_count());
        prop_assert_eq!(rows.iter().map(|r| r.count_b).sum::<usize>(), b.token_count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parser_output_is_a_tree_and_las_within_uas(
        train_set in proptest::collection::vec(tree(), 1..8),
        test_set in proptest::collection::vec(tree(), 1..6),
        seed in any::<u64>(),
    ) {
        let model = train(&corpus("train", train_set), 2, seed).unwrap();
        let gold = corpus("test", test_set);
        let pred = model.parse_corpus(&gold);
        for s in pred.sentences() {
            prop_assert!(validate_tree(s).is_empty());
        }
        let report = score(&gold, &pred).unwrap();
        prop_assert!(report.las <= report.uas);
    }
}
