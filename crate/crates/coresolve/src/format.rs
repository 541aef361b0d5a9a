//! Corpus, lexicon, and rule-table file I/O. All three formats are UTF-8 JSON
//! with a single top-level object; loading validates structure and cross
//! references so downstream code only ever sees well-formed model values.

use serde::{Deserialize, Serialize};

use crate::model::{
    collect_structural_violations, AnnotatedSentence, AttachmentRuleTable, SemanticLexicon,
    Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub sentences: Vec<AnnotatedSentence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid input: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parse a corpus file and check every structural invariant that needs no
/// lexicon: spans, orderings, and all in-sentence cross references.
pub fn load_corpus(bytes: &[u8]) -> Result<Corpus, FormatError> {
    let corpus: Corpus = serde_json::from_slice(bytes)?;
    let mut violations = Vec::new();
    for doc in &corpus.documents {
        let mut last_index = None;
        for s in &doc.sentences {
            violations.extend(collect_structural_violations(s).violations);
            if let Some(prev) = last_index {
                if s.index <= prev {
                    violations.push(Violation {
                        id: format!("{}:{}", doc.id, s.index),
                        message: "sentence indices must strictly increase".into(),
                    });
                }
            }
            last_index = Some(s.index);
        }
    }
    if violations.is_empty() {
        Ok(corpus)
    } else {
        Err(FormatError::Invalid(violations))
    }
}

/// Parse a lexicon file; every entry's class must be in the declared set.
pub fn load_lexicon(bytes: &[u8]) -> Result<SemanticLexicon, FormatError> {
    let lex: SemanticLexicon = serde_json::from_slice(bytes)?;
    let mut violations = Vec::new();
    for (lemma, entry) in &lex.entries {
        if !lex.classes.contains(&entry.class) {
            violations.push(Violation {
                id: lemma.clone(),
                message: format!("dangling class tag `{}`", entry.class),
            });
        }
    }
    if let Some(possessors) = &lex.possessor_classes {
        for class in possessors {
            if !lex.classes.contains(class) {
                violations.push(Violation {
                    id: "possessor_classes".into(),
                    message: format!("dangling class tag `{class}`"),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(lex)
    } else {
        Err(FormatError::Invalid(violations))
    }
}

/// Parse a rule table; scores must be positive and no two rules may give the
/// same (governor, preposition, object class) pair equal scores but
/// different roles.
pub fn load_rules(bytes: &[u8]) -> Result<AttachmentRuleTable, FormatError> {
    let table: AttachmentRuleTable = serde_json::from_slice(bytes)?;
    let mut violations = Vec::new();
    for (i, rule) in table.rules.iter().enumerate() {
        if rule.score == 0 {
            violations.push(Violation {
                id: format!("rule:{i}"),
                message: "score must be positive".into(),
            });
        }
        for other in &table.rules[..i] {
            if other.governor == rule.governor
                && other.prep == rule.prep
                && other.object_class == rule.object_class
                && other.score == rule.score
                && other.role != rule.role
            {
                violations.push(Violation {
                    id: format!("rule:{i}"),
                    message: format!(
                        "conflicts with an equal-score rule for ({}, {}, {})",
                        rule.governor, rule.prep, rule.object_class
                    ),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(table)
    } else {
        Err(FormatError::Invalid(violations))
    }
}

/// Cross-file checks: rule classes must exist in the lexicon, and the lexicon
/// must cover every head lemma and class tag the corpus uses.
pub fn check_config(
    corpus: &Corpus,
    lex: &SemanticLexicon,
    rules: &AttachmentRuleTable,
) -> Result<(), FormatError> {
    let mut violations = Vec::new();
    for (i, rule) in rules.rules.iter().enumerate() {
        if !lex.classes.contains(&rule.object_class) {
            violations.push(Violation {
                id: format!("rule:{i}"),
                message: format!("dangling class tag `{}`", rule.object_class),
            });
        }
    }
    for doc in &corpus.documents {
        for s in &doc.sentences {
            let report = crate::model::validate_sentence(s, lex);
            violations.extend(report.violations);
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(FormatError::Invalid(violations))
    }
}

pub fn save_corpus(corpus: &Corpus) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(corpus).expect("corpus serializes");
    out.push(b'\n');
    out
}

pub fn save_lexicon(lex: &SemanticLexicon) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(lex).expect("lexicon serializes");
    out.push(b'\n');
    out
}

pub fn save_rules(rules: &AttachmentRuleTable) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(rules).expect("rules serialize");
    out.push(b'\n');
    out
}
