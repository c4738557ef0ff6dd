//! CoNLL-U data model, reader and writer.
//!
//! Multiword token lines (`i-j`) are kept as [`BoundGroup`]s; comments,
//! column values and MISC key order are preserved so that writing a parsed
//! document reproduces its input.

mod io;
pub use self::io::{parse_sentences, read_conllu, to_conllu_string, write_conllu, write_sentence};

mod manifest;
pub use self::manifest::{load_corpus, Manifest, ManifestEntry};

mod model;
pub use self::model::{
    expand_mseg, mseg_surface, relation_base, token_count, BoundGroup, Corpus, DocumentUnit,
    Fields, Partition, Sentence, SyntaxWord, MSEG_KEY, MSEG_SEPARATOR,
};
