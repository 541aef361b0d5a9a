// Each test binary compiles this module separately, so not every helper is
// used by every binary.
#![allow(dead_code)]

use std::path::PathBuf;

use coresolve::format::{load_corpus, load_lexicon, load_rules, Corpus};
use coresolve::model::{AttachmentRuleTable, SemanticLexicon};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(fixture_path(name)).expect("fixture readable")
}

pub fn corpus() -> Corpus {
    load_corpus(&fixture_bytes("corpus.json")).expect("corpus loads")
}

pub fn cyclic_corpus() -> Corpus {
    load_corpus(&fixture_bytes("cyclic.json")).expect("cyclic corpus loads")
}

pub fn focus_corpus() -> Corpus {
    load_corpus(&fixture_bytes("focus.json")).expect("focus corpus loads")
}

pub fn lexicon() -> SemanticLexicon {
    load_lexicon(&fixture_bytes("lexicon.json")).expect("lexicon loads")
}

pub fn rules() -> AttachmentRuleTable {
    load_rules(&fixture_bytes("rules.json")).expect("rules load")
}

/// The single sentence of a named fixture document.
pub fn sentence(corpus: &Corpus, doc_id: &str, index: usize) -> coresolve::AnnotatedSentence {
    corpus
        .documents
        .iter()
        .find(|d| d.id == doc_id)
        .unwrap_or_else(|| panic!("document {doc_id}"))
        .sentences[index]
        .clone()
}
