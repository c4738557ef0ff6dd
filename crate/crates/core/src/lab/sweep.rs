use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eval::{score, EvalReport};
use super::parser::{train, ParserModel};
use super::scenario::{assemble, Scenario, ScenarioName, Side};
use crate::conllu::Corpus;
use crate::error::Result;
use crate::numfmt::fmt_half_even;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scenario: Scenario,
    /// Scores on the test partition of `a`, then of `b`.
    pub test_a: Option<EvalReport>,
    pub test_b: Option<EvalReport>,
}

/// Score a trained model on the test documents of one side.
pub fn evaluate_side(
    model: &ParserModel,
    scenario: &Scenario,
    side: Side,
    a: &Corpus,
    b: &Corpus,
) -> Result<Option<EvalReport>> {
    let gold = scenario.test_corpus(side, a, b)?;
    if gold.token_count() == 0 {
        return Ok(None);
    }
    score(&gold, &model.parse_corpus(&gold)).map(Some)
}

pub fn run_scenario(
    name: ScenarioName,
    a: &Corpus,
    b: &Corpus,
    epochs: u32,
    seed: u64,
) -> Result<SweepRow> {
    let scenario = assemble(name, a, b, seed)?;
    let model = train(&scenario.train_corpus(a, b)?, epochs, seed)?;
    Ok(SweepRow {
        test_a: evaluate_side(&model, &scenario, Side::A, a, b)?,
        test_b: evaluate_side(&model, &scenario, Side::B, a, b)?,
        scenario,
    })
}

/// Train and evaluate all four scenarios. Each scenario is trained
/// independently, so running them concurrently does not affect results.
pub fn run_sweep(a: &Corpus, b: &Corpus, epochs: u32, seed: u64) -> Result<Vec<SweepRow>> {
    ScenarioName::ALL
        .par_iter()
        .map(|&name| run_scenario(name, a, b, epochs, seed))
        .collect()
}

pub fn write_sweep_tsv<W: Write>(
    mut w: W,
    rows: &[SweepRow],
    name_a: &str,
    name_b: &str,
) -> std::io::Result<()> {
    writeln!(
        w,
        "scenario\ttrain_tokens\t{a}_las\t{a}_uas\t{b}_las\t{b}_uas",
        a = name_a,
        b = name_b
    )?;
    let cell = |r: &Option<EvalReport>, las: bool| match r {
        Some(r) => fmt_half_even(if las { r.las } else { r.uas }, 2),
        None => "NA".to_owned(),
    };
    for row in rows {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.scenario.name,
            row.scenario.train_tokens,
            cell(&row.test_a, true),
            cell(&row.test_a, false),
            cell(&row.test_b, true),
            cell(&row.test_b, false)
        )?;
    }
    Ok(())
}
