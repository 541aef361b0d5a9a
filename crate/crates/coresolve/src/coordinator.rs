//! The alternating scheduler: anaphora pass, attachment pass, repeat until
//! every decision is terminal. A full cycle that makes no progress means the
//! remaining decisions block each other; they are marked and the sentence is
//! reported deadlocked. Sentences are processed in order, threading the
//! discourse focus list from one to the next.

use std::fmt;

use crate::anaphora::anaphora_pass;
use crate::attachment::attachment_pass;
use crate::model::{
    build_initial_state, AnaphorStatus, AnnotatedSentence, AttachmentRuleTable, DiscourseState,
    FocusEntry, ModelError, PpStatus, SemanticLexicon, UnattachedReason, UnresolvableReason,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Module {
    Anaphora,
    Attachment,
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Module::Anaphora => f.write_str("ANAPHORA"),
            Module::Attachment => f.write_str("ATTACHMENT"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Resolve,
    Attach,
    Skip,
    Unresolvable,
    Unattached,
}

impl Action {
    /// Terminal actions decide a target for good; skips only postpone it.
    pub fn is_terminal(&self) -> bool {
        !matches!(self, Action::Skip)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Resolve => f.write_str("RESOLVE"),
            Action::Attach => f.write_str("ATTACH"),
            Action::Skip => f.write_str("SKIP"),
            Action::Unresolvable => f.write_str("UNRESOLVABLE"),
            Action::Unattached => f.write_str("UNATTACHED"),
        }
    }
}

/// One scheduler action: which pass, which module, which target, what
/// happened and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub pass: u32,
    pub module: Module,
    pub target: String,
    pub action: Action,
    pub detail: String,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pass={} module={} action={} target={} detail={}",
            self.pass, self.module, self.action, self.target, self.detail
        )
    }
}

/// Per-pass outcome counts. For anaphora passes `decided`/`failed` mean
/// resolved/unresolvable; for attachment passes, attached/unattached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PassReport {
    pub decided: usize,
    pub skipped: usize,
    pub failed: usize,
}

impl PassReport {
    /// Progress = terminal decisions made in this pass.
    pub fn progress(&self) -> usize {
        self.decided + self.failed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    /// A full cycle made no progress; the listed targets were marked as
    /// deadlocked, in textual order.
    Deadlocked(Vec<String>),
}

/// Final state of one sentence plus the full scheduler trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceResult {
    pub sentence: AnnotatedSentence,
    pub trace: Vec<TraceEvent>,
    pub module_calls: u32,
    pub outcome: Outcome,
}

/// Results for one document, in sentence order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentResult {
    pub id: String,
    pub sentences: Vec<SentenceResult>,
}

/// Resolve a single sentence: anaphora first, then attachment, repeating both
/// while open decisions remain. The loop condition is re-checked after every
/// pass, so no trailing vacuous pass runs; the first cycle always executes in
/// full.
pub fn resolve_sentence(
    s: &AnnotatedSentence,
    d: &DiscourseState,
    rules: &AttachmentRuleTable,
    lex: &SemanticLexicon,
) -> Result<SentenceResult, ModelError> {
    let mut state = build_initial_state(s, lex)?;
    let mut trace = Vec::new();
    let mut pass: u32 = 0;

    let outcome = loop {
        pass += 1;
        let ana = anaphora_pass(&mut state, d, lex, pass, &mut trace);
        if pass > 1 && !state.has_open_decisions() {
            break Outcome::Complete;
        }

        pass += 1;
        let att = attachment_pass(&mut state, rules, lex, pass, &mut trace)?;
        if !state.has_open_decisions() {
            break Outcome::Complete;
        }
        if ana.progress() + att.progress() == 0 {
            break mark_deadlock(&mut state, pass, &mut trace);
        }
    };

    debug_assert!(
        check_no_redundancy(&trace).is_ok(),
        "a target was processed after its terminal decision"
    );
    Ok(SentenceResult {
        sentence: state,
        trace,
        module_calls: pass,
        outcome,
    })
}

/// Mark every still-open decision as deadlocked. Survivor events keep the
/// pass number of their module's most recent pass so module/pass parity
/// stays intact in the trace.
fn mark_deadlock(
    state: &mut AnnotatedSentence,
    last_pass: u32,
    trace: &mut Vec<TraceEvent>,
) -> Outcome {
    let mut survivors: Vec<(usize, String)> = Vec::new();
    for a in &mut state.anaphors {
        if a.status.is_open() {
            a.status = AnaphorStatus::Unresolvable(UnresolvableReason::Deadlock);
            survivors.push((a.position, a.id.to_string()));
            trace.push(TraceEvent {
                pass: last_pass - 1,
                module: Module::Anaphora,
                target: a.id.to_string(),
                action: Action::Unresolvable,
                detail: UnresolvableReason::Deadlock.to_string(),
            });
        }
    }
    for p in &mut state.pps {
        if p.status.is_open() {
            p.status = PpStatus::Unattached(UnattachedReason::Deadlock);
            survivors.push((p.position, p.id.to_string()));
            trace.push(TraceEvent {
                pass: last_pass,
                module: Module::Attachment,
                target: p.id.to_string(),
                action: Action::Unattached,
                detail: UnattachedReason::Deadlock.to_string(),
            });
        }
    }
    survivors.sort();
    Outcome::Deadlocked(survivors.into_iter().map(|(_, id)| id).collect())
}

/// Resolve a document sentence by sentence. Earlier sentences' leftover
/// ambiguities are never revisited; after each sentence the focus list is
/// updated with its entities, subject first.
pub fn resolve_document(
    sentences: &[AnnotatedSentence],
    rules: &AttachmentRuleTable,
    lex: &SemanticLexicon,
) -> Result<(Vec<SentenceResult>, DiscourseState), ModelError> {
    crate::model::validate_document(sentences, lex)?;
    let mut discourse = DiscourseState::new();
    let mut results = Vec::with_capacity(sentences.len());
    for s in sentences {
        let result = resolve_sentence(s, &discourse, rules, lex)?;
        update_discourse(&mut discourse, &result.sentence);
        results.push(result);
    }
    Ok((results, discourse))
}

/// Fold one finished sentence into the focus list: subject entity first, the
/// rest in textual order. Resolved pronouns contribute their antecedents;
/// unresolved ones contribute nothing. Re-mentioned entities move to the
/// front instead of duplicating.
pub fn update_discourse(d: &mut DiscourseState, finished: &AnnotatedSentence) {
    let subject_id = finished.subject_np().map(|np| np.id.clone());

    let mut ordered: Vec<&crate::model::NounPhrase> = finished.nps.iter().collect();
    ordered.sort_by_key(|np| (np.span.start, np.span.end, np.id.clone()));
    if let Some(subject) = &subject_id {
        if let Some(pos) = ordered.iter().position(|np| &np.id == subject) {
            let s = ordered.remove(pos);
            ordered.insert(0, s);
        }
    }

    let mut contributions: Vec<FocusEntry> = Vec::new();
    for np in ordered {
        let entry = if np.is_pronoun {
            let Some(a) = finished.anaphor_for_np(&np.id) else {
                continue;
            };
            let AnaphorStatus::Resolved {
                antecedent,
                semantic_class,
            } = &a.status
            else {
                continue;
            };
            let (agreement, head_lemma) = if let Some(ant) = finished.np(antecedent) {
                (ant.agreement, ant.head_lemma.clone())
            } else if let Some(prev) = d.entry(antecedent) {
                (prev.agreement, prev.head_lemma.clone())
            } else {
                continue;
            };
            FocusEntry {
                entity: antecedent.clone(),
                sentence_index: finished.index,
                semantic_class: semantic_class.clone(),
                agreement,
                head_lemma,
            }
        } else {
            FocusEntry {
                entity: np.id.clone(),
                sentence_index: finished.index,
                semantic_class: np.semantic_class.clone(),
                agreement: np.agreement,
                head_lemma: np.head_lemma.clone(),
            }
        };
        if !contributions.iter().any(|c| c.entity == entry.entity) {
            contributions.push(entry);
        }
    }

    d.focus_list
        .retain(|e| !contributions.iter().any(|c| c.entity == e.entity));
    for entry in contributions.into_iter().rev() {
        d.focus_list.insert(0, entry);
    }
}

/// Trace summary: executed passes with their progress, and terminal decision
/// counts per module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleMetrics {
    pub module_calls: u32,
    /// One entry per executed pass: (pass number, module, terminal decisions).
    pub progress_per_pass: Vec<(u32, Module, usize)>,
    pub anaphora_decisions: usize,
    pub attachment_decisions: usize,
}

/// Summarize a sentence result's trace.
pub fn cycle_metrics(r: &SentenceResult) -> CycleMetrics {
    let mut progress_per_pass: Vec<(u32, Module, usize)> = (1..=r.module_calls)
        .map(|pass| {
            let module = if pass % 2 == 1 {
                Module::Anaphora
            } else {
                Module::Attachment
            };
            (pass, module, 0)
        })
        .collect();
    let mut anaphora_decisions = 0;
    let mut attachment_decisions = 0;
    for ev in &r.trace {
        debug_assert!(ev.pass >= 1 && ev.pass <= r.module_calls);
        if ev.action.is_terminal() {
            if let Some(slot) = progress_per_pass.get_mut((ev.pass - 1) as usize) {
                slot.2 += 1;
            }
            match ev.module {
                Module::Anaphora => anaphora_decisions += 1,
                Module::Attachment => attachment_decisions += 1,
            }
        }
    }
    CycleMetrics {
        module_calls: r.module_calls,
        progress_per_pass,
        anaphora_decisions,
        attachment_decisions,
    }
}

/// Replay a trace over the initial statuses and check that no target receives
/// two terminal actions and no terminal target is ever revisited. Returns the
/// offending target on failure.
pub fn check_no_redundancy(trace: &[TraceEvent]) -> Result<(), String> {
    use std::collections::HashSet;
    let mut decided: HashSet<&str> = HashSet::new();
    for ev in trace {
        if decided.contains(ev.target.as_str()) {
            return Err(ev.target.clone());
        }
        if ev.action.is_terminal() {
            decided.insert(ev.target.as_str());
        }
    }
    Ok(())
}
