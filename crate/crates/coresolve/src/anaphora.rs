//! Pronoun resolution: the skip predicate that postpones an anaphor while an
//! ambiguous unattached PP precedes it, candidate-antecedent collection over
//! the current sentence and the discourse focus list, and deterministic
//! selection of the top-ranked candidate.

use std::collections::BTreeMap;

use crate::coordinator::{Action, Module, PassReport, TraceEvent};
use crate::model::{
    Agreement, AnaphorId, AnaphorKind, AnaphorStatus, AnnotatedSentence, DiscourseState, EntityId,
    PpId, SemanticLexicon, UnresolvableReason,
};

/// Outcome of the anaphora skip predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnaphorDecision {
    Proceed,
    /// Postponed; names the leftmost blocking PP.
    Skip {
        blocked_by: PpId,
    },
}

/// Decide whether an anaphor can be resolved now.
///
/// It must wait while some ambiguous PP before it is still open, unless the
/// pronoun sits inside that PP's own object (the object cannot be its own
/// antecedent context, and waiting on it would block forever).
pub fn skip_anaphor(a_id: &AnaphorId, s: &AnnotatedSentence) -> AnaphorDecision {
    let a = s.anaphor(a_id).expect("anaphor id must resolve");
    for pp in &s.pps {
        if pp.position >= a.position {
            break;
        }
        if pp.status.is_open() && pp.is_ambiguous() && !s.object_span(pp).contains(a.position) {
            return AnaphorDecision::Skip {
                blocked_by: pp.id.clone(),
            };
        }
    }
    AnaphorDecision::Proceed
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    IntraSentential,
    FocusList,
}

/// One ranked candidate antecedent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub entity: EntityId,
    pub score: u8,
    pub provenance: Provenance,
    pub semantic_class: crate::model::ClassTag,
}

/// Ordered candidate antecedents for one anaphor, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub anaphor: AnaphorId,
    pub candidates: Vec<Candidate>,
    /// True when nothing precedes the anaphor but some following mention
    /// would pass the same filters -- a cataphoric configuration.
    pub forward_only: bool,
}

/// Rank tiers: discourse focus beats the sentence subject, which beats other
/// in-sentence mentions, which beat the rest of the focus list.
const TIER_FOCUS_HEAD: u8 = 3;
const TIER_SUBJECT: u8 = 2;
const TIER_INTRA: u8 = 1;
const TIER_FOCUS_REST: u8 = 0;

struct CandidateInfo {
    semantic_class: crate::model::ClassTag,
    agreement: Agreement,
    head_lemma: String,
    /// Latest in-sentence mention, as (span start, span end), if any.
    intra_mention: Option<(usize, usize)>,
    focus_rank: Option<usize>,
}

fn passes_filters(
    a: &crate::model::Anaphor,
    a_agr: &Agreement,
    info: &CandidateInfo,
    lex: &SemanticLexicon,
) -> bool {
    match a.kind {
        AnaphorKind::Personal => a_agr.compatible(&info.agreement),
        AnaphorKind::Possessive => {
            a_agr.compatible(&info.agreement)
                && lex.possessor_classes().contains(&info.semantic_class)
        }
        // One-anaphora stands in for a common-noun head, so proper-name
        // antecedents are out; only number must agree.
        AnaphorKind::DemonstrativeOneAnaphor => {
            a_agr.number_compatible(&info.agreement)
                && info
                    .head_lemma
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_lowercase())
        }
    }
}

/// Collect and rank candidate antecedents for an anaphor: non-pronoun noun
/// phrases preceding it, already-resolved pronouns mapped to their
/// antecedents, and focus-list entities, filtered by agreement and the
/// kind-specific class filter.
pub fn candidate_antecedents(
    a_id: &AnaphorId,
    s: &AnnotatedSentence,
    d: &DiscourseState,
    lex: &SemanticLexicon,
) -> CandidateSet {
    let a = s.anaphor(a_id).expect("anaphor id must resolve");
    let a_agr = s
        .np(&a.np_id)
        .map(|np| np.agreement)
        .unwrap_or(Agreement::new(
            crate::model::Gender::Unspec,
            crate::model::Number::Unspec,
        ));

    let mut infos: BTreeMap<EntityId, CandidateInfo> = BTreeMap::new();
    let mut forward_exists = false;

    let note_mention = |entity: &EntityId,
                        class: &crate::model::ClassTag,
                        agr: Agreement,
                        head: &str,
                        mention: (usize, usize),
                        infos: &mut BTreeMap<EntityId, CandidateInfo>| {
        let info = infos
            .entry(entity.clone())
            .or_insert_with(|| CandidateInfo {
                semantic_class: class.clone(),
                agreement: agr,
                head_lemma: head.to_string(),
                intra_mention: None,
                focus_rank: None,
            });
        if info.intra_mention.is_none_or(|m| mention > m) {
            info.intra_mention = Some(mention);
        }
    };

    for np in &s.nps {
        let precedes = np.span.start < a.position && !np.span.contains(a.position);
        if np.is_pronoun {
            // A resolved pronoun re-mentions its antecedent at the pronoun's
            // own position; unresolved pronouns contribute nothing.
            if !precedes {
                continue;
            }
            let Some(inner) = s.anaphor_for_np(&np.id) else {
                continue;
            };
            if let AnaphorStatus::Resolved {
                antecedent,
                semantic_class,
            } = &inner.status
            {
                let (agr, head) = if let Some(ant_np) = s.np(antecedent) {
                    (ant_np.agreement, ant_np.head_lemma.clone())
                } else if let Some(entry) = d.entry(antecedent) {
                    (entry.agreement, entry.head_lemma.clone())
                } else {
                    continue;
                };
                note_mention(
                    antecedent,
                    semantic_class,
                    agr,
                    &head,
                    (np.span.start, np.span.end),
                    &mut infos,
                );
            }
        } else if precedes {
            note_mention(
                &np.id,
                &np.semantic_class,
                np.agreement,
                &np.head_lemma,
                (np.span.start, np.span.end),
                &mut infos,
            );
        } else if np.span.start > a.position {
            let info = CandidateInfo {
                semantic_class: np.semantic_class.clone(),
                agreement: np.agreement,
                head_lemma: np.head_lemma.clone(),
                intra_mention: None,
                focus_rank: None,
            };
            if passes_filters(a, &a_agr, &info, lex) {
                forward_exists = true;
            }
        }
    }

    for (rank, entry) in d.focus_list.iter().enumerate() {
        let info = infos
            .entry(entry.entity.clone())
            .or_insert_with(|| CandidateInfo {
                semantic_class: entry.semantic_class.clone(),
                agreement: entry.agreement,
                head_lemma: entry.head_lemma.clone(),
                intra_mention: None,
                focus_rank: None,
            });
        info.focus_rank = Some(rank);
    }

    let subject = s.subject_np().map(|np| np.id.clone());

    let mut candidates: Vec<(Candidate, (usize, i64, i64, EntityId))> = Vec::new();
    for (entity, info) in &infos {
        if !passes_filters(a, &a_agr, info, lex) {
            continue;
        }
        let tier = if info.focus_rank == Some(0) {
            TIER_FOCUS_HEAD
        } else if info.intra_mention.is_some() && subject.as_ref() == Some(entity) {
            TIER_SUBJECT
        } else if info.intra_mention.is_some() {
            TIER_INTRA
        } else {
            TIER_FOCUS_REST
        };
        let provenance = if info.intra_mention.is_some() {
            Provenance::IntraSentential
        } else {
            Provenance::FocusList
        };
        // Recency key: later in-sentence mention first; focus entries fall
        // back to salience order. Entity id is a last-resort determinism tie.
        let recency = match info.intra_mention {
            Some((start, end)) => (start as i64, end as i64),
            None => (-(info.focus_rank.unwrap_or(usize::MAX) as i64), 0),
        };
        candidates.push((
            Candidate {
                entity: entity.clone(),
                score: tier,
                provenance,
                semantic_class: info.semantic_class.clone(),
            },
            (tier as usize, recency.0, recency.1, entity.clone()),
        ));
    }

    candidates.sort_by(|(_, ka), (_, kb)| kb.cmp(ka));
    let candidates: Vec<Candidate> = candidates.into_iter().map(|(c, _)| c).collect();
    let forward_only = candidates.is_empty() && forward_exists;

    CandidateSet {
        anaphor: a_id.clone(),
        candidates,
        forward_only,
    }
}

/// Outcome of resolving one anaphor against its candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveOutcome {
    Resolved {
        antecedent: EntityId,
        semantic_class: crate::model::ClassTag,
    },
    Unresolvable(UnresolvableReason),
}

/// Pick the top-ranked candidate, or mark the anaphor unresolvable when the
/// set is empty (cataphoric configurations get their own reason and are not
/// resolved).
pub fn resolve_anaphor(_a_id: &AnaphorId, c: &CandidateSet) -> ResolveOutcome {
    match c.candidates.first() {
        Some(best) => ResolveOutcome::Resolved {
            antecedent: best.entity.clone(),
            semantic_class: best.semantic_class.clone(),
        },
        None if c.forward_only => {
            ResolveOutcome::Unresolvable(UnresolvableReason::CataphorOutOfScope)
        }
        None => ResolveOutcome::Unresolvable(UnresolvableReason::NoCandidate),
    }
}

/// Run one anaphora pass: visit every open anaphor in textual order, skip or
/// decide each one, and append one trace event per visit.
pub fn anaphora_pass(
    s: &mut AnnotatedSentence,
    d: &DiscourseState,
    lex: &SemanticLexicon,
    pass_number: u32,
    trace: &mut Vec<TraceEvent>,
) -> PassReport {
    let mut report = PassReport::default();
    let open_ids: Vec<AnaphorId> = s
        .anaphors
        .iter()
        .filter(|a| a.status.is_open())
        .map(|a| a.id.clone())
        .collect();

    for id in open_ids {
        match skip_anaphor(&id, s) {
            AnaphorDecision::Skip { blocked_by } => {
                trace.push(TraceEvent {
                    pass: pass_number,
                    module: Module::Anaphora,
                    target: id.to_string(),
                    action: Action::Skip,
                    detail: format!("blocked-by-pp:{blocked_by}"),
                });
                set_anaphor_status(s, &id, AnaphorStatus::Skipped { blocked_by });
                report.skipped += 1;
            }
            AnaphorDecision::Proceed => {
                let candidates = candidate_antecedents(&id, s, d, lex);
                match resolve_anaphor(&id, &candidates) {
                    ResolveOutcome::Resolved {
                        antecedent,
                        semantic_class,
                    } => {
                        trace.push(TraceEvent {
                            pass: pass_number,
                            module: Module::Anaphora,
                            target: id.to_string(),
                            action: Action::Resolve,
                            detail: antecedent.to_string(),
                        });
                        set_anaphor_status(
                            s,
                            &id,
                            AnaphorStatus::Resolved {
                                antecedent,
                                semantic_class,
                            },
                        );
                        report.decided += 1;
                    }
                    ResolveOutcome::Unresolvable(reason) => {
                        trace.push(TraceEvent {
                            pass: pass_number,
                            module: Module::Anaphora,
                            target: id.to_string(),
                            action: Action::Unresolvable,
                            detail: reason.to_string(),
                        });
                        set_anaphor_status(s, &id, AnaphorStatus::Unresolvable(reason));
                        report.failed += 1;
                    }
                }
            }
        }
    }
    report
}

fn set_anaphor_status(s: &mut AnnotatedSentence, id: &AnaphorId, status: AnaphorStatus) {
    if let Some(a) = s.anaphors.iter_mut().find(|a| &a.id == id) {
        a.status = status;
    }
}
