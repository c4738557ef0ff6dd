use std::io::{Read, Write};

use super::manifest::ManifestEntry;
use super::model::{BoundGroup, DocumentUnit, Fields, Partition, Sentence, SyntaxWord};
use crate::error::{Error, Result};

const COLUMNS: usize = 10;

enum RowId {
    Word(usize),
    Range(usize, usize),
}

fn parse_index(value: &str, line: usize) -> Result<usize> {
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("malformed id '{}'", value)));
    }
    value
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed id '{}'", value)))
}

fn parse_row_id(value: &str, line: usize) -> Result<RowId> {
    if value.contains('.') {
        return Err(Error::parse(
            line,
            format!("empty nodes are not supported (id '{}')", value),
        ));
    }

    match value.split_once('-') {
        Some((first, last)) => Ok(RowId::Range(
            parse_index(first, line)?,
            parse_index(last, line)?,
        )),
        None => Ok(RowId::Word(parse_index(value, line)?)),
    }
}

fn optional(column: &str) -> Option<String> {
    (column != "_").then(|| column.to_owned())
}

/// Incremental sentence assembly with line-numbered checks.
#[derive(Default)]
struct SentenceBuilder {
    comments: Vec<String>,
    words: Vec<SyntaxWord>,
    groups: Vec<BoundGroup>,
    // Last id of the most recent group, used to reject overlaps.
    group_end: usize,
    first_line: usize,
}

impl SentenceBuilder {
    fn is_empty(&self) -> bool {
        self.comments.is_empty() && self.words.is_empty() && self.groups.is_empty()
    }

    fn push_comment(&mut self, text: &str, line: usize) -> Result<()> {
        if !self.words.is_empty() || !self.groups.is_empty() {
            return Err(Error::parse(line, "comment line inside a sentence body"));
        }
        self.mark(line);
        self.comments.push(text.to_owned());
        Ok(())
    }

    fn mark(&mut self, line: usize) {
        if self.is_empty() {
            self.first_line = line;
        }
    }

    fn push_row(&mut self, row: &str, line: usize) -> Result<()> {
        let columns: Vec<&str> = row.split('\t').collect();
        if columns.len() != COLUMNS {
            return Err(Error::parse(
                line,
                format!("expected {} columns, found {}", COLUMNS, columns.len()),
            ));
        }
        if let Some(idx) = columns.iter().position(|c| c.is_empty()) {
            return Err(Error::parse(line, format!("column {} is empty", idx + 1)));
        }
        self.mark(line);

        let next_id = self.words.len() + 1;
        match parse_row_id(columns[0], line)? {
            RowId::Range(first, last) => {
                if first != next_id {
                    return Err(Error::parse(
                        line,
                        format!(
                            "multiword token {}-{} must precede word {}",
                            first, last, next_id
                        ),
                    ));
                }
                if first > last {
                    return Err(Error::parse(
                        line,
                        format!("multiword token range {}-{} is empty", first, last),
                    ));
                }
                if first <= self.group_end {
                    return Err(Error::parse(
                        line,
                        format!("multiword token {}-{} overlaps a previous range", first, last),
                    ));
                }
                if let Some(idx) = (2..9).find(|&idx| columns[idx] != "_") {
                    return Err(Error::parse(
                        line,
                        format!("multiword token column {} must be '_'", idx + 1),
                    ));
                }
                self.group_end = last;
                self.groups.push(BoundGroup {
                    first_id: first,
                    last_id: last,
                    surface: columns[1].to_owned(),
                    misc: Fields::parse(columns[9]),
                });
            }
            RowId::Word(id) => {
                if id != next_id {
                    return Err(Error::parse(
                        line,
                        format!("expected word id {}, found {}", next_id, id),
                    ));
                }
                let head = columns[6].parse::<usize>().map_err(|_| {
                    Error::parse(line, format!("non-integer head '{}'", columns[6]))
                })?;
                self.words.push(SyntaxWord {
                    id,
                    form: columns[1].to_owned(),
                    lemma: columns[2].to_owned(),
                    upos: columns[3].to_owned(),
                    xpos: optional(columns[4]),
                    feats: Fields::parse(columns[5]),
                    head,
                    deprel: columns[7].to_owned(),
                    deps: optional(columns[8]),
                    misc: Fields::parse(columns[9]),
                });
            }
        }

        Ok(())
    }

    fn finish(&mut self) -> Result<Option<Sentence>> {
        if self.is_empty() {
            return Ok(None);
        }
        let builder = std::mem::take(self);
        if builder.words.is_empty() {
            return Err(Error::parse(builder.first_line, "sentence without words"));
        }
        if builder.group_end > builder.words.len() {
            return Err(Error::parse(
                builder.first_line,
                format!(
                    "multiword token ends at {} but the sentence has {} words",
                    builder.group_end,
                    builder.words.len()
                ),
            ));
        }
        Sentence::new(builder.comments, builder.words, builder.groups)
            .map(Some)
            .map_err(|e| Error::parse(builder.first_line, e.to_string()))
    }
}

/// Parse CoNLL-U sentences from a string.
pub fn parse_sentences(text: &str) -> Result<Vec<Sentence>> {
    let mut sentences = Vec::new();
    let mut builder = SentenceBuilder::default();

    for (idx, line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        if line.is_empty() {
            if let Some(sentence) = builder.finish()? {
                sentences.push(sentence);
            }
        } else if let Some(comment) = line.strip_prefix('#') {
            builder.push_comment(comment, line_no)?;
        } else {
            builder.push_row(line, line_no)?;
        }
    }
    if let Some(sentence) = builder.finish()? {
        sentences.push(sentence);
    }

    Ok(sentences)
}

/// Read one CoNLL-U document.
///
/// Document metadata comes from `manifest_entry` when given. Otherwise the
/// id is taken from a `# newdoc id = ...` comment and the partition
/// defaults to train.
pub fn read_conllu<R: Read>(
    mut reader: R,
    manifest_entry: Option<&ManifestEntry>,
) -> Result<DocumentUnit> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let text = match String::from_utf8(bytes) {
        Ok(text) => text,
        Err(err) => {
            let valid = &err.as_bytes()[..err.utf8_error().valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            return Err(Error::parse(line, "input is not valid UTF-8"));
        }
    };

    let sentences = parse_sentences(&text)?;

    let doc = match manifest_entry {
        Some(entry) => DocumentUnit {
            doc_id: entry.doc_id.clone(),
            partition: entry.partition,
            parallel_key: entry.parallel_key.clone(),
            sentences,
        },
        None => {
            let doc_id = sentences
                .first()
                .and_then(|s| s.comment_value("newdoc id"))
                .unwrap_or("doc")
                .to_owned();
            DocumentUnit {
                doc_id,
                partition: Partition::Train,
                parallel_key: None,
                sentences,
            }
        }
    };

    Ok(doc)
}

/// Serialize one sentence, including its terminating blank line.
pub fn write_sentence<W: Write>(sentence: &Sentence, mut writer: W) -> std::io::Result<()> {
    for comment in &sentence.comments {
        writeln!(writer, "#{}", comment)?;
    }

    let mut groups = sentence.groups.iter().peekable();
    for word in &sentence.words {
        if let Some(group) = groups.next_if(|g| g.first_id == word.id) {
            writeln!(
                writer,
                "{}-{}\t{}\t_\t_\t_\t_\t_\t_\t_\t{}",
                group.first_id, group.last_id, group.surface, group.misc
            )?;
        }
        writeln!(
            writer,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            word.id,
            word.form,
            word.lemma,
            word.upos,
            word.xpos.as_deref().unwrap_or("_"),
            word.feats,
            word.head,
            word.deprel,
            word.deps.as_deref().unwrap_or("_"),
            word.misc
        )?;
    }

    writeln!(writer)
}

/// Serialize a document as CoNLL-U.
pub fn write_conllu<W: Write>(doc: &DocumentUnit, mut writer: W) -> std::io::Result<()> {
    for sentence in &doc.sentences {
        write_sentence(sentence, &mut writer)?;
    }
    Ok(())
}

pub fn to_conllu_string(doc: &DocumentUnit) -> String {
    let mut buf = Vec::new();
    write_conllu(doc, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serialized CoNLL-U is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::MSEG_KEY;

    const MINIMAL: &str = "# sent_id = t1\n\
        1\tA\ta\tX\t_\t_\t2\tdep\t_\t_\n\
        2\tB\tb\tX\t_\t_\t0\troot\t_\t_\n\
        3\tC\tc\tX\t_\t_\t2\tdep\t_\t_\n\n";

    const BOUND_GROUP: &str = "# sent_id = ex6\n\
        # text = afsōtem\n\
        1-3\tafsōtem\t_\t_\t_\t_\t_\t_\t_\t_\n\
        1\ta\ta\tAUX\tAPST\t_\t3\taux\t_\t_\n\
        2\tf\tf\tPRON\tPPERS\tDefinite=Def|Person=3\t3\tnsubj\t_\t_\n\
        3\tsōtem\tsōtem\tVERB\tV\t_\t0\troot\t_\t_\n\n";

    fn read_str(text: &str) -> Result<DocumentUnit> {
        read_conllu(text.as_bytes(), None)
    }

    fn parse_err_line(text: &str) -> usize {
        match read_str(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn minimal_tree_has_single_root() {
        let doc = read_str(MINIMAL).unwrap();
        let sentence = &doc.sentences[0];
        assert_eq!(sentence.heads(), vec![2, 0, 2]);
        let roots: Vec<_> = sentence.words.iter().filter(|w| w.head == 0).collect();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].id, 2);
        assert_eq!(sentence.sent_id(), Some("t1"));
    }

    #[test]
    fn multiword_token_becomes_bound_group() {
        let doc = read_str(BOUND_GROUP).unwrap();
        let sentence = &doc.sentences[0];
        assert_eq!(sentence.groups, vec![BoundGroup::new(1, 3, "afsōtem")]);
        let forms: Vec<_> = sentence.words.iter().map(|w| w.form.as_str()).collect();
        assert_eq!(forms, vec!["a", "f", "sōtem"]);
        assert_eq!(to_conllu_string(&doc), BOUND_GROUP);
    }

    #[test]
    fn mseg_is_kept_verbatim() {
        let text = "1\tmetatčōnt\tmetatčōnt\tNOUN\tN\t_\t0\troot\t_\tMSeg=met-at-čōnt\n\n";
        let doc = read_str(text).unwrap();
        let word = &doc.sentences[0].words[0];
        assert_eq!(word.misc.get(MSEG_KEY), Some("met-at-čōnt"));
        assert_eq!(word.expand_mseg().unwrap(), vec!["met", "at", "čōnt"]);
        assert_eq!(to_conllu_string(&doc), text);
    }

    #[test]
    fn empty_document_writes_nothing() {
        let doc = DocumentUnit::new("empty", Partition::Train);
        assert_eq!(to_conllu_string(&doc), "");
        assert!(read_str("").unwrap().sentences.is_empty());
    }

    #[test]
    fn newdoc_comment_names_document_without_manifest() {
        let text = format!("# newdoc id = mark_01\n{}", MINIMAL);
        assert_eq!(read_str(&text).unwrap().doc_id, "mark_01");
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(
            parse_err_line("1\tA\ta\tX\t_\t_\t0\troot\t_\t_\n3\tB\tb\tX\t_\t_\t1\tdep\t_\t_\n"),
            2
        );
        assert_eq!(
            parse_err_line("1\tA\ta\tX\t_\t_\tzero\troot\t_\t_\n"),
            1
        );
        assert_eq!(parse_err_line("# c\n1\tA\ta\tX\t_\t_\t0\troot\t_\n"), 2);
        assert_eq!(
            parse_err_line(
                "1-2\tAB\t_\t_\t_\t_\t_\t_\t_\t_\n\
                 1\tA\ta\tX\t_\t_\t0\troot\t_\t_\n\
                 2-3\tBC\t_\t_\t_\t_\t_\t_\t_\t_\n"
            ),
            3
        );
        assert_eq!(parse_err_line("1.1\tA\ta\tX\t_\t_\t0\troot\t_\t_\n"), 1);
    }

    #[test]
    fn range_past_sentence_end_is_rejected() {
        let text = "# sent_id = s\n1-3\tABC\t_\t_\t_\t_\t_\t_\t_\t_\n1\tA\ta\tX\t_\t_\t0\troot\t_\t_\n\n";
        assert_eq!(parse_err_line(text), 1);
    }

    #[test]
    fn invalid_utf8_is_reported_with_line() {
        let mut bytes = MINIMAL.as_bytes().to_vec();
        bytes.extend_from_slice(b"1\t\xff\ta\tX\t_\t_\t0\troot\t_\t_\n");
        match read_conllu(&bytes[..], None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("unexpected {:?}", other),
        }
    }
}
