//! Feature templates for the arc-standard parser.
//!
//! Templates are addressed by name; the model file stores a hash of the
//! version string and the template list so that a model is never decoded
//! with different templates than it was trained with.

use crate::conllu::SyntaxWord;

pub const TEMPLATE_VERSION: &str = "arcstd-v1";

/// Atomic feature sources: s = stack (s0 top), b = buffer; w = form,
/// l = lemma, p = upos; lc/rc = deprel of leftmost/rightmost dependent.
pub const TEMPLATES: &[&str] = &[
    "s0w", "s0l", "s0p", "s1w", "s1l", "s1p", "b0w", "b0l", "b0p", "b1w", "b1p", "b2p",
    "s0w+s0p", "s1w+s1p", "b0w+b0p",
    "s0p+b0p", "s0w+b0w", "s0w+b0p", "s0p+b0w", "s0l+b0l",
    "s1p+s0p", "s1w+s0w", "s1p+s0w", "s1w+s0p", "s1l+s0l",
    "s1p+s0p+b0p", "s0p+b0p+b1p", "s2p+s1p+s0p",
    "s0lc", "s0rc", "s1lc", "s1rc",
    "s0p+s0lc", "s0p+s0rc", "s1p+s1rc", "s1p+s1lc", "s0p+s0lc+s0rc",
    "dist+s1p+s0p",
];

pub(crate) const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a, stable across platforms and toolchains.
pub(crate) fn fnv1a(state: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(state, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// Hash identifying the template set.
pub fn template_hash() -> u64 {
    let mut h = fnv1a(FNV_OFFSET, TEMPLATE_VERSION.as_bytes());
    for t in TEMPLATES {
        h = fnv1a(h, b"\x1f");
        h = fnv1a(h, t.as_bytes());
    }
    h
}

/// Read-only view of a parser configuration used for feature extraction.
pub(crate) struct ConfigView<'a> {
    pub words: &'a [SyntaxWord],
    pub stack: &'a [usize],
    pub next: usize,
    pub leftmost: &'a [usize],
    pub rightmost: &'a [usize],
    pub labels: &'a [Option<u16>],
    pub label_names: &'a [String],
}

const NONE: &str = "<none>";
const ROOT: &str = "<root>";
const DISTANCES: [&str; 6] = ["0", "1", "2", "3", "4", "5+"];

impl ConfigView<'_> {
    fn stack_item(&self, depth: usize) -> Option<usize> {
        self.stack.len().checked_sub(depth + 1).map(|i| self.stack[i])
    }

    fn buffer_item(&self, offset: usize) -> Option<usize> {
        let id = self.next + offset;
        (id <= self.words.len()).then_some(id)
    }

    fn attr(&self, node: Option<usize>, attr: u8) -> &str {
        match node {
            None => NONE,
            Some(0) => ROOT,
            Some(id) => {
                let w = &self.words[id - 1];
                match attr {
                    b'w' => &w.form,
                    b'l' => &w.lemma,
                    _ => &w.upos,
                }
            }
        }
    }

    fn child_label(&self, node: Option<usize>, left: bool) -> &str {
        let Some(node) = node else { return NONE };
        let child = if left {
            self.leftmost[node]
        } else {
            self.rightmost[node]
        };
        if child == 0 {
            return NONE;
        }
        match self.labels[child] {
            Some(l) => &self.label_names[l as usize],
            None => NONE,
        }
    }

    fn atom(&self, name: &str) -> &str {
        match name {
            "dist" => {
                let d = match (self.stack_item(1), self.stack_item(0)) {
                    (Some(s1), Some(s0)) => s0.abs_diff(s1).min(5),
                    _ => 0,
                };
                DISTANCES[d]
            }
            _ => {
                let bytes = name.as_bytes();
                let index = (bytes[1] - b'0') as usize;
                let node = if bytes[0] == b's' {
                    self.stack_item(index)
                } else {
                    self.buffer_item(index)
                };
                match &name[2..] {
                    "lc" => self.child_label(node, true),
                    "rc" => self.child_label(node, false),
                    attr => self.attr(node, attr.as_bytes()[0]),
                }
            }
        }
    }

    /// Hashed feature keys, one per template.
    pub fn features(&self, out: &mut Vec<u64>) {
        out.clear();
        for (idx, template) in TEMPLATES.iter().enumerate() {
            let mut h = fnv1a(FNV_OFFSET, &(idx as u32).to_le_bytes());
            for part in template.split('+') {
                h = fnv1a(h, b"\x1f");
                h = fnv1a(h, self.atom(part).as_bytes());
            }
            out.push(h);
        }
    }
}
