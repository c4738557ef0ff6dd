use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const COPTIC_INVENTORY: &str = include_str!("../../data/labels.tsv");

/// Allowed dependency relations for a treebank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelInventory {
    pub base_labels: BTreeSet<String>,
    pub subtypes: BTreeSet<String>,
    /// Subtypes of uncertain status, allowed unless `strict` is set.
    pub alternates: BTreeSet<String>,
    /// Labels that must not occur, with the reason.
    pub forbidden: BTreeMap<String, String>,
    pub strict: bool,
}

impl LabelInventory {
    /// The bundled Coptic inventory: 32 basic relations and four subtypes.
    pub fn coptic() -> Self {
        LabelInventory::parse(COPTIC_INVENTORY).expect("bundled inventory is well-formed")
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        LabelInventory::parse(&text).map_err(|e| e.in_file(path))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut inventory = LabelInventory {
            base_labels: BTreeSet::new(),
            subtypes: BTreeSet::new(),
            alternates: BTreeSet::new(),
            forbidden: BTreeMap::new(),
            strict: false,
        };

        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut columns = line.split('\t');
            let kind = columns.next().unwrap_or_default().trim();
            let label = columns.next().unwrap_or_default().trim().to_owned();
            let note = columns.next().unwrap_or_default().trim().to_owned();
            if label.is_empty() {
                return Err(Error::parse(idx + 1, "inventory line without a label"));
            }
            match kind {
                "base" => inventory.base_labels.insert(label),
                "subtype" => inventory.subtypes.insert(label),
                "alt" => inventory.alternates.insert(label),
                "forbidden" => inventory.forbidden.insert(label, note).is_none(),
                other => {
                    return Err(Error::parse(
                        idx + 1,
                        format!("unknown inventory entry kind '{}'", other),
                    ))
                }
            };
        }

        Ok(inventory)
    }

    /// Exclude the uncertain subtypes.
    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn allows(&self, label: &str) -> bool {
        self.base_labels.contains(label)
            || self.subtypes.contains(label)
            || (!self.strict && self.alternates.contains(label))
    }

    pub fn forbidden_reason(&self, label: &str) -> Option<&str> {
        self.forbidden.get(label).map(String::as_str)
    }

    /// All labels currently allowed.
    pub fn labels(&self) -> BTreeSet<&str> {
        let mut labels: BTreeSet<&str> = self
            .base_labels
            .iter()
            .chain(&self.subtypes)
            .map(String::as_str)
            .collect();
        if !self.strict {
            labels.extend(self.alternates.iter().map(String::as_str));
        }
        labels
    }

    /// Upper bound on distinct relations in a conforming corpus.
    pub fn expected_total(&self) -> usize {
        self.labels().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coptic_inventory_sizes() {
        let inv = LabelInventory::coptic();
        assert_eq!(inv.base_labels.len(), 32);
        assert_eq!(inv.expected_total(), 36);
        assert!(!inv.base_labels.contains("clf"));
        assert!(!inv.base_labels.contains("dep"));
        assert!(inv.allows("obl:unmarked"));

        let strict = inv.strict();
        assert_eq!(strict.expected_total(), 35);
        assert!(!strict.allows("obl:unmarked"));
        assert!(strict.forbidden_reason("nsubj:pass").is_some());
    }

    #[test]
    fn rejects_unknown_kind() {
        assert!(LabelInventory::parse("base\tnsubj\nweird\tx\n").is_err());
    }
}
