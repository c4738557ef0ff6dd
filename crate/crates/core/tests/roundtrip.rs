mod common;

use std::fs;

use proptest::prelude::*;

use coptic_ud::conllu::{parse_sentences, read_conllu, to_conllu_string, write_sentence, BoundGroup, Sentence, SyntaxWord};

#[test]
fn fixture_suite_is_byte_identical() {
    let files = common::roundtrip_files();
    assert!(files.len() >= 20);
    for path in files {
        let bytes = fs::read(&path).unwrap();
        let doc = read_conllu(&bytes[..], None).unwrap();
        assert_eq!(to_conllu_string(&doc).as_bytes(), &bytes[..], "{}", path.display());
    }
}

#[test]
fn dialect_files_are_byte_identical() {
    for name in ["boh", "sah"] {
        for path in common::raw_all_files(name) {
            let bytes = fs::read(&path).unwrap();
            let doc = read_conllu(&bytes[..], None).unwrap();
            assert_eq!(to_conllu_string(&doc).as_bytes(), &bytes[..], "{}", path.display());
        }
    }
}

#[test]
fn library_and_raw_reader_agree_on_words() {
    for path in common::roundtrip_files() {
        let doc = read_conllu(&fs::read(&path).unwrap()[..], None).unwrap();
        let raw = common::raw_word_rows(&path);
        assert_eq!(doc.token_count(), raw.len(), "{}", path.display());
        for (w, row) in doc.words().zip(&raw) {
            assert_eq!(w.form, row[1]);
            assert_eq!(w.head.to_string(), row[6]);
            assert_eq!(w.deprel, row[7]);
        }
    }
}

const FORMS: &[&str] = &["ⲁ", "ⲡ", "ⲣⲱⲙⲉ", "ⲛⲧⲉ", "ⲛⲟⲩⲧⲉ", "ϫⲉ", "ⲟⲩ", "ⲉ"];
const RELS: &[&str] = &["nsubj", "obj", "obl", "det", "case", "advmod", "nmod", "mark"];

/// Random sentences: head `i` picks any earlier word (so the tree is valid),
/// optional bound groups over adjacent pairs with concatenated surfaces.
fn sentence() -> impl Strategy<Value = Sentence> {
    (1usize..12).prop_flat_map(|n| {
        (
            proptest::collection::vec((0..FORMS.len(), 0..RELS.len(), any::<u16>(), any::<bool>()), n),
            proptest::collection::vec(any::<bool>(), n),
            "[a-z]{1,6}",
        )
            .prop_map(move |(spec, grouping, sent_id)| {
                let words: Vec<SyntaxWord> = spec
                    .iter()
                    .enumerate()
                    .map(|(i, &(f, r, h, xpos))| {
                        let (head, rel) = if i == 0 { (0, "root") } else { (h as usize % i + 1, RELS[r]) };
                        let w = SyntaxWord::new(i + 1, FORMS[f], FORMS[f], "X", head, rel);
                        if xpos { w.with_xpos("N") } else { w }
                    })
                    .collect();
                let mut groups = Vec::new();
                let mut i = 0;
                while i + 1 < n {
                    if grouping[i] {
                        let surface = format!("{}{}", words[i].form, words[i + 1].form);
                        groups.push(BoundGroup::new(i + 1, i + 2, surface));
                        i += 2;
                    } else {
                        i += 1;
                    }
                }
                let text: String = words.iter().map(|w| w.form.as_str()).collect::<Vec<_>>().join(" ");
                let comments = vec![format!(" sent_id = {}", sent_id), format!(" text = {}", text)];
                Sentence::new(comments, words, groups).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn write_then_read_is_identity(sentences in proptest::collection::vec(sentence(), 1..5)) {
        let mut text = Vec::new();
        for s in &sentences {
            write_sentence(s, &mut text).unwrap();
        }
        let text = String::from_utf8(text).unwrap();
        let back = parse_sentences(&text).unwrap();
        prop_assert_eq!(&back, &sentences);
        let mut again = Vec::new();
        for s in &back {
            write_sentence(s, &mut again).unwrap();
        }
        prop_assert_eq!(String::from_utf8(again).unwrap(), text);
    }
}
