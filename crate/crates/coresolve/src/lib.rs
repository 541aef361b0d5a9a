//! Coordinated resolution of pronoun anaphora and prepositional-phrase
//! attachment over pre-annotated sentences.
//!
//! The two disambiguation procedures depend on each other: a pronoun may not
//! be resolvable while an ambiguous PP before it is unattached, and a PP
//! cannot be attached while its object's semantic class hinges on an
//! unresolved pronoun. The coordinator alternates the two modules over a
//! sentence, each pass skipping exactly the decisions that still depend on
//! the other module, until everything is decided or the remainder blocks
//! itself.
//!
//! ```
//! use coresolve::coordinator::resolve_document;
//! use coresolve::format::{load_corpus, load_lexicon, load_rules};
//!
//! let corpus = load_corpus(include_bytes!("../fixtures/corpus.json")).unwrap();
//! let lexicon = load_lexicon(include_bytes!("../fixtures/lexicon.json")).unwrap();
//! let rules = load_rules(include_bytes!("../fixtures/rules.json")).unwrap();
//!
//! for doc in &corpus.documents {
//!     let (results, _focus) = resolve_document(&doc.sentences, &rules, &lexicon).unwrap();
//!     for r in &results {
//!         println!("{} sentence {}: {} passes", doc.id, r.sentence.index, r.module_calls);
//!     }
//! }
//! ```
//!
//! The [`oracle`] module re-derives every sentence's outcome from a blocking
//! dependency graph processed in topological order, with no pass structure;
//! engine and oracle must agree on every final status.

pub mod anaphora;
pub mod attachment;
pub mod coordinator;
pub mod format;
pub mod gen;
pub mod model;
pub mod oracle;
pub mod stats;

pub use coordinator::{resolve_document, resolve_sentence, SentenceResult};
pub use model::{AnnotatedSentence, AttachmentRuleTable, DiscourseState, SemanticLexicon};
