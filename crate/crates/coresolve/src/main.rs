use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coresolve::coordinator::{resolve_document, DocumentResult, Outcome};
use coresolve::format::{check_config, load_corpus, load_lexicon, load_rules, FormatError};
use coresolve::gen::{generate, GenConfig};
use coresolve::model::{DiscourseState, ModelError};
use coresolve::oracle::{compare, oracle_resolve};
use coresolve::stats::corpus_stats;

const EXIT_PARSE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "coresolve",
    about = "Resolve pronoun anaphora and PP attachments over an annotated corpus",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve every document in a corpus file.
    Resolve {
        /// Corpus file (JSON).
        corpus: PathBuf,
        /// Lexicon file (JSON).
        #[arg(long)]
        lexicon: PathBuf,
        /// Attachment rule table (JSON).
        #[arg(long)]
        rules: PathBuf,
        /// Print one line per scheduler action.
        #[arg(long)]
        trace: bool,
        /// Re-derive every sentence with the dependency-graph oracle and
        /// fail on any disagreement.
        #[arg(long)]
        oracle_check: bool,
        /// Print corpus statistics after resolving.
        #[arg(long)]
        stats: bool,
        /// Seed for --fuzz.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Additionally check engine/oracle agreement on N generated
        /// sentences.
        #[arg(long, value_name = "N")]
        fuzz: Option<u64>,
    },
}

fn read(path: &Path) -> Result<Vec<u8>, u8> {
    std::fs::read(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn format_exit(err: &FormatError) -> u8 {
    match err {
        FormatError::Parse(_) => EXIT_PARSE,
        FormatError::Invalid(_) => EXIT_VALIDATION,
    }
}

fn run() -> Result<(), u8> {
    let cli = Cli::parse();
    let Command::Resolve {
        corpus,
        lexicon,
        rules,
        trace,
        oracle_check,
        stats,
        seed,
        fuzz,
    } = cli.command;

    let corpus = load_corpus(&read(&corpus)?).map_err(|e| {
        eprintln!("error: corpus: {e}");
        format_exit(&e)
    })?;
    let lexicon = load_lexicon(&read(&lexicon)?).map_err(|e| {
        eprintln!("error: lexicon: {e}");
        format_exit(&e)
    })?;
    let rules = load_rules(&read(&rules)?).map_err(|e| {
        eprintln!("error: rules: {e}");
        format_exit(&e)
    })?;
    check_config(&corpus, &lexicon, &rules).map_err(|e| {
        eprintln!("error: {e}");
        format_exit(&e)
    })?;

    let mut results: Vec<DocumentResult> = Vec::new();
    let mut mismatches = 0usize;

    for doc in &corpus.documents {
        let (sentence_results, _) =
            resolve_document(&doc.sentences, &rules, &lexicon).map_err(|e| {
                eprintln!("error: document {}: {e}", doc.id);
                match e {
                    ModelError::Invalid { .. } => EXIT_VALIDATION,
                    ModelError::MissingLexeme { .. } => EXIT_VALIDATION,
                }
            })?;

        for r in &sentence_results {
            let outcome = match &r.outcome {
                Outcome::Complete => "complete".to_string(),
                Outcome::Deadlocked(ids) => format!("deadlocked({})", ids.join(",")),
            };
            println!(
                "doc={} sentence={} outcome={} module_calls={}",
                doc.id, r.sentence.index, outcome, r.module_calls
            );
            if trace {
                for ev in &r.trace {
                    println!("{ev}");
                }
            }
        }

        if oracle_check {
            // The oracle sees the same focus state the engine saw, so walk
            // the document again threading it forward.
            let mut focus = DiscourseState::new();
            for (s, r) in doc.sentences.iter().zip(&sentence_results) {
                let oracle_state = oracle_resolve(s, &focus, &rules, &lexicon).map_err(|e| {
                    eprintln!("error: oracle: {e}");
                    EXIT_VALIDATION
                })?;
                let report = compare(r, &oracle_state);
                if !report.is_equal() {
                    mismatches += report.diffs.len();
                    for diff in &report.diffs {
                        eprintln!(
                            "oracle-mismatch: doc={} sentence={} {diff}",
                            doc.id, s.index
                        );
                    }
                }
                coresolve::coordinator::update_discourse(&mut focus, &r.sentence);
            }
        }

        results.push(DocumentResult {
            id: doc.id.clone(),
            sentences: sentence_results,
        });
    }

    if oracle_check && mismatches == 0 {
        println!("oracle-check: ok ({} documents)", results.len());
    }

    if stats {
        println!("{}", corpus_stats(&results));
    }

    if let Some(n) = fuzz {
        let cfg = GenConfig::default();
        let focus = DiscourseState::new();
        let mut fuzz_mismatches = 0usize;
        for i in 0..n {
            let instance = generate(seed.wrapping_add(i), &cfg);
            let engine = coresolve::resolve_sentence(
                &instance.sentence,
                &focus,
                &instance.rules,
                &instance.lexicon,
            )
            .map_err(|e| {
                eprintln!("error: generated instance {i}: {e}");
                EXIT_VALIDATION
            })?;
            let oracle_state = oracle_resolve(
                &instance.sentence,
                &focus,
                &instance.rules,
                &instance.lexicon,
            )
            .map_err(|e| {
                eprintln!("error: generated instance {i}: {e}");
                EXIT_VALIDATION
            })?;
            let report = compare(&engine, &oracle_state);
            if !report.is_equal() {
                fuzz_mismatches += report.diffs.len();
                for diff in &report.diffs {
                    eprintln!("oracle-mismatch: seed={} {diff}", seed.wrapping_add(i));
                }
            }
        }
        if fuzz_mismatches == 0 {
            println!("fuzz: {n} instances seed={seed} ok");
        }
        mismatches += fuzz_mismatches;
    }

    if mismatches > 0 {
        Err(EXIT_MISMATCH)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
