//! Cross-dialect parsing experiments: scenario assembly, a baseline
//! transition parser, scoring and confusion analysis.

mod eval;
mod features;
mod parser;
mod scenario;
mod sweep;

pub use eval::{confusion, score, ConfusionMatrix, EvalReport, LabelScore, DEFAULT_MIN_GOLD};
pub use features::{template_hash, TEMPLATES, TEMPLATE_VERSION};
pub use parser::{train, Action, ParserModel, ROOT_LABEL};
pub use scenario::{assemble, DocRef, Scenario, ScenarioName, Side};
pub use sweep::{evaluate_side, run_scenario, run_sweep, write_sweep_tsv, SweepRow};
