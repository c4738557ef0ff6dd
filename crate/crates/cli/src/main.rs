//! `coptic-ud`: validate, compare and parse CoNLL-U treebanks.
//!
//! Exit status: 0 on success, 1 when validation finds errors, 2 on usage
//! or input/output errors.

mod config;
mod report;

use std::collections::{BTreeSet, HashMap};
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use coptic_ud::agreement::{agreement_report, Task};
use coptic_ud::analytics::{
    count_query, keys_with_prefix, marker_ratio, relation_frequencies, shipped_query,
    vocabulary_overlap, write_frequency_tsv, MatchOn, QuerySpec, Scope, VocabUnit,
};
use coptic_ud::conllu::{read_conllu, write_conllu, Corpus, Manifest};
use coptic_ud::lab::{
    assemble, confusion, run_sweep, score, train, write_sweep_tsv, ParserModel, ScenarioName,
    DEFAULT_MIN_GOLD,
};
use coptic_ud::numfmt::fmt_truncated;
use coptic_ud::validate::{validate_corpus, LabelInventory, Severity, ValidationOptions};

use crate::config::ConfigFile;
use crate::report::{open_output, write_jsonl, Format, Header};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Data(coptic_ud::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Data(e) => write!(f, "{}", e),
        }
    }
}

impl From<coptic_ud::Error> for CliError {
    fn from(e: coptic_ud::Error) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "coptic-ud", version, about = "CoNLL-U treebank validation, comparison and parsing")]
struct Cli {
    /// Random seed for sampling and training [default: 42]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Omit the timestamp line from report headers
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Report format [default: tsv]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Settings file with `key = value` lines; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check trees, relation labels and bound groups
    Validate {
        manifest: PathBuf,
        /// Treat bound-group surface mismatches as errors
        #[arg(long)]
        strict_groups: bool,
        /// Relation inventory file replacing the bundled one
        #[arg(long)]
        inventory: Option<PathBuf>,
    },
    /// Inter-annotator agreement between two annotations of the same texts
    Agree {
        manifest_a: PathBuf,
        manifest_b: PathBuf,
        #[arg(long, value_parser = ["labels", "heads", "both"])]
        task: Option<String>,
    },
    /// Corpus statistics
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Parsing experiments
    #[command(subcommand)]
    Lab(LabCommand),
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Bundled query name (nce, nci, focus, preterit)
    #[arg(long, conflicts_with_all = ["query_file", "match_on"])]
    query: Option<String>,
    /// Query file with `key = value` lines
    #[arg(long, conflicts_with = "match_on")]
    query_file: Option<PathBuf>,
    /// Attribute to match: deprel, deprel_base, lemma, form, upos, xpos
    #[arg(long = "match", requires = "value")]
    match_on: Option<String>,
    #[arg(long)]
    value: Option<String>,
}

impl QueryArgs {
    fn spec(&self) -> Result<QuerySpec, CliError> {
        let spec = if let Some(name) = &self.query {
            shipped_query(name)?
        } else if let Some(path) = &self.query_file {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
            QuerySpec::parse(&text).map_err(|e| e.in_file(path))?
        } else if let (Some(m), Some(v)) = (&self.match_on, &self.value) {
            QuerySpec::new(m.parse::<MatchOn>()?, v.clone())
        } else {
            return Err(CliError::Usage(
                "one of --query, --query-file or --match/--value is required".into(),
            ));
        };
        Ok(spec)
    }
}

#[derive(Subcommand, Debug)]
enum StatsCommand {
    /// Relation frequencies per 1,000 tokens and their ratio (b / a)
    Rel {
        manifest_a: PathBuf,
        manifest_b: PathBuf,
        /// Decimal places, truncated [default: 3]
        #[arg(long)]
        places: Option<u32>,
    },
    /// Count words matching a query
    Query {
        manifest: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
        /// Also report counts restricted to documents parallel with this corpus
        #[arg(long)]
        parallel_with: Option<PathBuf>,
        /// Decimal places, truncated [default: 2]
        #[arg(long)]
        places: Option<u32>,
    },
    /// Distinct word forms or lemmas and their overlap
    Vocab {
        manifest_a: PathBuf,
        manifest_b: PathBuf,
        #[arg(long, value_parser = ["form", "lemma"])]
        unit: Option<String>,
    },
    /// Ratio of a query's rate in a to its rate in b over selected parallel documents
    Ratio {
        manifest_a: PathBuf,
        manifest_b: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
        /// Parallel key to include (repeatable)
        #[arg(long = "key")]
        keys: Vec<String>,
        /// Include every parallel key starting with this prefix
        #[arg(long)]
        key_prefix: Option<String>,
        #[arg(long)]
        places: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Low-resource target corpus
    manifest_a: PathBuf,
    /// Larger related corpus
    manifest_b: PathBuf,
}

#[derive(Subcommand, Debug)]
enum LabCommand {
    /// List the documents of a training scenario
    Assemble {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        scenario: ScenarioName,
    },
    /// Train a parser for a scenario and save the model
    Train {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        scenario: ScenarioName,
        #[arg(long)]
        epochs: Option<u32>,
        /// Model file to write
        #[arg(long)]
        model: PathBuf,
    },
    /// Parse a CoNLL-U file or every document of a manifest
    Parse {
        #[arg(long)]
        model: PathBuf,
        input: PathBuf,
    },
    /// Labeled and unlabeled attachment scores
    Eval { gold: PathBuf, pred: PathBuf },
    /// Gold-by-predicted matrix of relations with subtypes removed
    Confusion {
        gold: PathBuf,
        pred: PathBuf,
        /// Omit relations with fewer gold occurrences [default: 10]
        #[arg(long)]
        min_gold: Option<usize>,
    },
    /// Train and evaluate all four scenarios
    Sweep {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        epochs: Option<u32>,
    },
}

const DEFAULT_SEED: u64 = 42;
const DEFAULT_EPOCHS: u32 = 8;

struct Run {
    config: ConfigFile,
    seed: u64,
    format: Format,
    timestamp: bool,
    output: Option<PathBuf>,
}

impl Run {
    fn header(&self, command: &str) -> Header {
        Header::new(command, self.seed, self.timestamp)
    }

    fn emit(
        &self,
        header: &Header,
        body: impl FnOnce(&mut dyn Write, Format) -> std::io::Result<()>,
    ) -> Result<(), CliError> {
        let mut out = open_output(self.output.as_deref())?;
        header.write(&mut out, self.format)?;
        body(&mut out, self.format)?;
        out.flush()?;
        Ok(())
    }
}

fn is_conllu(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "conllu")
}

/// Load a manifest, or a single CoNLL-U file as a one-document corpus,
/// recording input digests in the header.
fn load(path: &Path, header: &mut Header) -> Result<Corpus, CliError> {
    header.input(path)?;
    if is_conllu(path) {
        let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
        let doc = read_conllu(BufReader::new(file), None).map_err(|e| e.in_file(path))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok(Corpus::new(name, vec![doc]));
    }
    let manifest = Manifest::read(path)?;
    let mut hasher = Sha256::new();
    for entry in &manifest.entries {
        let bytes = fs::read(&entry.path)
            .map_err(|e| CliError::Io(format!("{}: {}", entry.path.display(), e)))?;
        hasher.update(Sha256::digest(&bytes));
    }
    header.note(
        &format!("documents {}", manifest.name),
        format!("{} files sha256={:x}", manifest.entries.len(), hasher.finalize()),
    );
    Ok(manifest.load()?)
}

fn task_of(name: &str) -> Task {
    match name {
        "labels" => Task::Labels,
        "heads" => Task::Heads,
        _ => Task::Both,
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let config = match &cli.config {
        Some(path) => ConfigFile::read(path)?,
        None => ConfigFile::default(),
    };
    let run = Run {
        seed: config.resolve(cli.seed, "seed", DEFAULT_SEED)?,
        format: config.resolve(cli.format, "format", Format::Tsv)?,
        timestamp: !config.switch(cli.no_timestamp, "no_timestamp")?,
        output: cli.output.clone().or_else(|| config.get("output").map(PathBuf::from)),
        config,
    };

    match cli.command {
        Command::Validate {
            manifest,
            strict_groups,
            inventory,
        } => validate(&run, &manifest, strict_groups, inventory),
        Command::Agree {
            manifest_a,
            manifest_b,
            task,
        } => agree(&run, &manifest_a, &manifest_b, task),
        Command::Stats(cmd) => stats(&run, cmd),
        Command::Lab(cmd) => lab(&run, cmd),
    }
}

fn validate(
    run: &Run,
    manifest: &Path,
    strict_groups: bool,
    inventory: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut header = run.header("validate");
    let corpus = load(manifest, &mut header)?;
    let inventory = inventory.or_else(|| run.config.get("inventory").map(PathBuf::from));
    let options = ValidationOptions {
        inventory: match &inventory {
            Some(p) => {
                header.input(p)?;
                LabelInventory::from_file(p)?
            }
            None => LabelInventory::coptic(),
        },
        strict_groups: run.config.switch(strict_groups, "strict_groups")?,
    };
    let report = validate_corpus(&corpus, &options);
    header.note("sentences", report.sentences);
    header.note("non_projective_sentences", report.non_projective_sentences);
    header.note("errors", report.count(Severity::Error));
    header.note("warnings", report.count(Severity::Warning));

    run.emit(&header, |w, format| match format {
        Format::Tsv => report.write_tsv(w),
        Format::Jsonl => report.write_jsonl(w),
    })?;
    eprintln!(
        "{}: {} errors, {} warnings in {} sentences",
        corpus.name,
        report.count(Severity::Error),
        report.count(Severity::Warning),
        report.sentences
    );
    Ok(if report.has_errors() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn agree(run: &Run, a: &Path, b: &Path, task: Option<String>) -> Result<ExitCode, CliError> {
    let mut header = run.header("agree");
    let ca = load(a, &mut header)?;
    let cb = load(b, &mut header)?;
    let task = run.config.resolve(task, "task", "both".to_owned())?;
    if !["labels", "heads", "both"].contains(&task.as_str()) {
        return Err(CliError::Usage(format!("unknown task '{}'", task)));
    }

    let by_id: HashMap<&str, _> = cb.documents.iter().map(|d| (d.doc_id.as_str(), d)).collect();
    let mut pairs = Vec::new();
    for doc in &ca.documents {
        let other = by_id.get(doc.doc_id.as_str()).ok_or_else(|| {
            CliError::Usage(format!("document '{}' missing from {}", doc.doc_id, cb.name))
        })?;
        pairs.push((doc.doc_id.as_str(), doc, *other));
    }
    if pairs.len() != cb.documents.len() {
        return Err(CliError::Usage(format!(
            "{} has documents not present in {}",
            cb.name, ca.name
        )));
    }
    let report = agreement_report(&pairs)?;
    header.note("task", &task);
    run.emit(&header, |w, format| match format {
        Format::Tsv => report.write_tsv(w, task_of(&task)),
        Format::Jsonl => {
            write_jsonl(w, &report.per_text)?;
            write_jsonl(
                w,
                &[
                    serde_json::json!({"text": "Macro average", "scores": report.macro_avg}),
                    serde_json::json!({"text": "Micro average", "scores": report.micro_avg}),
                ],
            )
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

fn stats(run: &Run, cmd: StatsCommand) -> Result<ExitCode, CliError> {
    match cmd {
        StatsCommand::Rel {
            manifest_a,
            manifest_b,
            places,
        } => {
            let mut header = run.header("stats rel");
            let a = load(&manifest_a, &mut header)?;
            let b = load(&manifest_b, &mut header)?;
            let places = run.config.resolve(places, "places", 3)?;
            let rows = relation_frequencies(&a, &b)?;
            header.note(&format!("tokens {}", a.name), a.token_count());
            header.note(&format!("tokens {}", b.name), b.token_count());
            run.emit(&header, |w, format| match format {
                Format::Tsv => write_frequency_tsv(w, &rows, &a.name, &b.name, places),
                Format::Jsonl => write_jsonl(w, &rows),
            })?;
        }
        StatsCommand::Query {
            manifest,
            query,
            parallel_with,
            places,
        } => {
            let mut header = run.header("stats query");
            let corpus = load(&manifest, &mut header)?;
            let partner = parallel_with.map(|p| load(&p, &mut header)).transpose()?;
            let places = run.config.resolve(places, "places", 2)?;
            let mut spec = query.spec()?;

            let mut rows = Vec::new();
            if spec.scope == Scope::Whole {
                rows.push(("all", count_query(&corpus, &spec, None)?));
            }
            if let Some(partner) = &partner {
                spec.scope = Scope::Parallel;
                rows.push(("parallel", count_query(&corpus, &spec, Some(partner))?));
            } else if spec.scope == Scope::Parallel {
                return Err(CliError::Usage(format!(
                    "query '{}' is parallel-scoped; pass --parallel-with",
                    spec.name
                )));
            }
            run.emit(&header, |w, format| {
                if format == Format::Tsv {
                    writeln!(w, "query\tcorpus\tscope\tmatches\ttotal\tper1k")?;
                }
                for (scope, c) in &rows {
                    match format {
                        Format::Tsv => writeln!(
                            w,
                            "{}\t{}\t{}\t{}\t{}\t{}",
                            spec.name,
                            corpus.name,
                            scope,
                            c.matches,
                            c.total,
                            fmt_truncated(c.per1k, places)
                        )?,
                        Format::Jsonl => writeln!(
                            w,
                            "{}",
                            serde_json::json!({"query": spec.name, "corpus": corpus.name, "scope": scope, "count": c})
                        )?,
                    }
                }
                Ok(())
            })?;
        }
        StatsCommand::Vocab {
            manifest_a,
            manifest_b,
            unit,
        } => {
            let mut header = run.header("stats vocab");
            let a = load(&manifest_a, &mut header)?;
            let b = load(&manifest_b, &mut header)?;
            let unit: VocabUnit = run.config.resolve(unit, "unit", "form".to_owned())?.parse()?;
            let overlap = vocabulary_overlap(&a, &b, unit);
            run.emit(&header, |w, format| match format {
                Format::Tsv => {
                    writeln!(w, "unit\t{}_unique\t{}_unique\tshared", a.name, b.name)?;
                    writeln!(
                        w,
                        "{}\t{}\t{}\t{}",
                        match unit {
                            VocabUnit::Form => "form",
                            VocabUnit::Lemma => "lemma",
                        },
                        overlap.unique_a,
                        overlap.unique_b,
                        overlap.shared
                    )
                }
                Format::Jsonl => write_jsonl(w, &[overlap]),
            })?;
        }
        StatsCommand::Ratio {
            manifest_a,
            manifest_b,
            query,
            keys,
            key_prefix,
            places,
        } => {
            let mut header = run.header("stats ratio");
            let a = load(&manifest_a, &mut header)?;
            let b = load(&manifest_b, &mut header)?;
            let places = run.config.resolve(places, "places", 2)?;
            let spec = query.spec()?;
            let mut selected: BTreeSet<String> = keys.into_iter().collect();
            if let Some(prefix) = &key_prefix {
                selected.extend(keys_with_prefix(&a, prefix));
            }
            if selected.is_empty() {
                return Err(CliError::Usage("give --key or --key-prefix".into()));
            }
            let ratio = marker_ratio(&a, &b, &spec, &selected)?;
            let keys_text = selected.iter().cloned().collect::<Vec<_>>().join(",");
            run.emit(&header, |w, format| match format {
                Format::Tsv => {
                    writeln!(w, "query\tkeys\tratio")?;
                    writeln!(
                        w,
                        "{}\t{}\t{}",
                        spec.name,
                        keys_text,
                        ratio.map_or_else(|| "NA".to_owned(), |r| fmt_truncated(r, places))
                    )
                }
                Format::Jsonl => writeln!(
                    w,
                    "{}",
                    serde_json::json!({"query": spec.name, "keys": selected, "ratio": ratio})
                ),
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lab(run: &Run, cmd: LabCommand) -> Result<ExitCode, CliError> {
    match cmd {
        LabCommand::Assemble { pair, scenario } => {
            let mut header = run.header("lab assemble");
            let a = load(&pair.manifest_a, &mut header)?;
            let b = load(&pair.manifest_b, &mut header)?;
            let scn = assemble(scenario, &a, &b, run.seed)?;
            header.note("scenario", scn.name);
            header.note("train_tokens", scn.train_tokens);
            if let (Some(target), Some(sampled)) = (scn.sample_target, scn.sampled_tokens) {
                header.note("sample_target", target);
                header.note("sampled_tokens", sampled);
            }
            run.emit(&header, |w, format| match format {
                Format::Tsv => {
                    writeln!(w, "role\tside\tdoc_id")?;
                    for (role, refs) in [("train", &scn.train), ("dev", &scn.dev), ("test", &scn.test)] {
                        for r in refs.iter() {
                            let side = match r.side {
                                coptic_ud::lab::Side::A => "a",
                                coptic_ud::lab::Side::B => "b",
                            };
                            writeln!(w, "{}\t{}\t{}", role, side, r.doc_id)?;
                        }
                    }
                    Ok(())
                }
                Format::Jsonl => write_jsonl(w, &[&scn]),
            })?;
        }
        LabCommand::Train {
            pair,
            scenario,
            epochs,
            model,
        } => {
            let mut header = run.header("lab train");
            let a = load(&pair.manifest_a, &mut header)?;
            let b = load(&pair.manifest_b, &mut header)?;
            let epochs = run.config.resolve(epochs, "epochs", DEFAULT_EPOCHS)?;
            let scn = assemble(scenario, &a, &b, run.seed)?;
            let parser = train(&scn.train_corpus(&a, &b)?, epochs, run.seed)?;
            let bytes = parser.to_bytes();
            fs::write(&model, &bytes).map_err(|e| CliError::Io(format!("{}: {}", model.display(), e)))?;
            header.note("scenario", scn.name);
            header.note("epochs", epochs);
            run.emit(&header, |w, format| {
                let digest = format!("{:x}", Sha256::digest(&bytes));
                match format {
                    Format::Tsv => {
                        writeln!(w, "scenario\ttrain_docs\ttrain_tokens\tlabels\tfeatures\tmodel\tsha256")?;
                        writeln!(
                            w,
                            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                            scn.name,
                            scn.train.len(),
                            scn.train_tokens,
                            parser.labels.len(),
                            parser.weights.len(),
                            model.display(),
                            digest
                        )
                    }
                    Format::Jsonl => writeln!(
                        w,
                        "{}",
                        serde_json::json!({
                            "scenario": scn,
                            "labels": parser.labels,
                            "features": parser.weights.len(),
                            "model": model.display().to_string(),
                            "sha256": digest,
                        })
                    ),
                }
            })?;
        }
        LabCommand::Parse { model, input } => {
            // output is CoNLL-U, so no report header
            let parser = ParserModel::load(&model)?;
            let mut header = run.header("lab parse");
            let corpus = load(&input, &mut header)?;
            let parsed = parser.parse_corpus(&corpus);
            let mut out = open_output(run.output.as_deref())?;
            for doc in &parsed.documents {
                write_conllu(doc, &mut out)?;
            }
            out.flush()?;
        }
        LabCommand::Eval { gold, pred } => {
            let mut header = run.header("lab eval");
            let g = load(&gold, &mut header)?;
            let p = load(&pred, &mut header)?;
            let report = score(&g, &p)?;
            run.emit(&header, |w, format| match format {
                Format::Tsv => report.write_tsv(w),
                Format::Jsonl => write_jsonl(w, &[&report]),
            })?;
        }
        LabCommand::Confusion {
            gold,
            pred,
            min_gold,
        } => {
            let mut header = run.header("lab confusion");
            let g = load(&gold, &mut header)?;
            let p = load(&pred, &mut header)?;
            let min_gold = run.config.resolve(min_gold, "min_gold", DEFAULT_MIN_GOLD)?;
            header.note("min_gold", min_gold);
            let matrix = confusion(&g, &p, min_gold)?;
            run.emit(&header, |w, format| match format {
                Format::Tsv => matrix.write_tsv(w),
                Format::Jsonl => write_jsonl(w, &[&matrix]),
            })?;
        }
        LabCommand::Sweep { pair, epochs } => {
            let mut header = run.header("lab sweep");
            let a = load(&pair.manifest_a, &mut header)?;
            let b = load(&pair.manifest_b, &mut header)?;
            let epochs = run.config.resolve(epochs, "epochs", DEFAULT_EPOCHS)?;
            header.note("epochs", epochs);
            let rows = run_sweep(&a, &b, epochs, run.seed)?;
            run.emit(&header, |w, format| match format {
                Format::Tsv => write_sweep_tsv(w, &rows, &a.name, &b.name),
                Format::Jsonl => write_jsonl(w, &rows),
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
