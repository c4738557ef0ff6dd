//! Tooling for dependency treebanks of closely related low-resource
//! dialects: CoNLL-U with bound groups and MSeg morphology, validation,
//! annotator agreement, cross-corpus frequency comparison and a
//! cross-dialect parsing harness.

pub mod agreement;
pub mod analytics;
pub mod conllu;
mod error;
pub mod lab;
pub mod numfmt;
pub mod tree;
pub mod validate;

pub use crate::error::{Error, Result};
