//! Corpus-level measurements over resolved documents: how often anaphors
//! precede or follow ambiguous PPs, how many PPs carry pronoun objects, and
//! the mean number of module passes a sentence needed. These are the numbers
//! that justify which module runs first.

use std::fmt;

use crate::coordinator::DocumentResult;
use crate::model::AnnotatedSentence;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorpusStats {
    pub anaphors: usize,
    pub pps: usize,
    /// Anaphors that precede every ambiguous PP in their sentence.
    pub case_a: usize,
    /// Anaphors preceded by at least one ambiguous PP.
    pub case_b: usize,
    /// PPs whose object contains a pronoun.
    pub case_c: usize,
    pub mean_module_calls: f64,
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "anaphors={} pps={} case_a={} case_b={} case_c={} mean_module_calls={:.3}",
            self.anaphors, self.pps, self.case_a, self.case_b, self.case_c, self.mean_module_calls
        )
    }
}

fn sentence_counts(s: &AnnotatedSentence, stats: &mut CorpusStats) {
    stats.anaphors += s.anaphors.len();
    stats.pps += s.pps.len();
    for a in &s.anaphors {
        let preceded = s
            .pps
            .iter()
            .any(|p| p.is_ambiguous() && p.position < a.position);
        if preceded {
            stats.case_b += 1;
        } else {
            stats.case_a += 1;
        }
    }
    for p in &s.pps {
        let object = s.object_span(p);
        if s.anaphors.iter().any(|a| object.contains(a.position)) {
            stats.case_c += 1;
        }
    }
}

/// Aggregate measurements over resolved documents. Configuration counts are
/// structural, so each anaphor and PP is classified once regardless of how
/// the run went.
pub fn corpus_stats(results: &[DocumentResult]) -> CorpusStats {
    let mut stats = CorpusStats::default();
    let mut sentences = 0usize;
    let mut total_calls = 0u64;
    for doc in results {
        for r in &doc.sentences {
            sentence_counts(&r.sentence, &mut stats);
            sentences += 1;
            total_calls += u64::from(r.module_calls);
        }
    }
    stats.mean_module_calls = if sentences == 0 {
        0.0
    } else {
        total_calls as f64 / sentences as f64
    };
    stats
}
