#![no_main]

use std::collections::{BTreeMap, BTreeSet};

use libfuzzer_sys::fuzz_target;

use coresolve::model::{ClassTag, LexEntry, SemanticLexicon};

/// A lexicon that covers every head lemma and class tag the corpus mentions,
/// so structurally valid inputs make it past validation and into the engine.
fn covering_lexicon(corpus: &coresolve::format::Corpus) -> SemanticLexicon {
    let mut classes: BTreeSet<ClassTag> = BTreeSet::new();
    let mut entries: BTreeMap<String, LexEntry> = BTreeMap::new();
    for doc in &corpus.documents {
        for s in &doc.sentences {
            for np in &s.nps {
                classes.insert(np.semantic_class.clone());
                entries.entry(np.head_lemma.clone()).or_insert(LexEntry {
                    class: np.semantic_class.clone(),
                    gender: np.agreement.gender,
                    number: np.agreement.number,
                });
            }
            for frame in &s.frames {
                for slot in frame.roles.values() {
                    classes.extend(slot.expected_classes.iter().cloned());
                }
            }
        }
    }
    SemanticLexicon {
        classes,
        entries,
        possessor_classes: None,
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(corpus) = coresolve::format::load_corpus(data) else {
        return;
    };
    let lexicon = covering_lexicon(&corpus);
    let rules = coresolve::model::AttachmentRuleTable { rules: vec![] };
    for doc in &corpus.documents {
        // Invalid documents must be rejected with an error, never a panic.
        let _ = coresolve::coordinator::resolve_document(&doc.sentences, &rules, &lexicon);
    }
});
