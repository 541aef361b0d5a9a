//! PP attachment: the skip predicate that postpones a PP while an open
//! anaphor precedes it or sits inside its object, object-class derivation
//! (following resolved pronouns to their antecedents), and rule-table site
//! selection that fills empty frame roles or picks a noun-phrase modifier.

use crate::coordinator::{Action, Module, PassReport, TraceEvent};
use crate::model::{
    AnaphorStatus, AnnotatedSentence, AttachmentRule, AttachmentRuleTable, ClassTag, ModelError,
    PpId, PpSkipReason, PpStatus, PrepPhrase, SemanticLexicon, SiteRef, UnattachedReason,
};

/// Outcome of the attachment skip predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PpDecision {
    Proceed,
    Skip(PpSkipReason),
}

/// Decide whether a PP can be attached now.
///
/// It must wait while its object contains an open anaphor (no semantic class
/// is available for the object yet) or while any open anaphor precedes the
/// preposition.
pub fn skip_pp(p_id: &PpId, s: &AnnotatedSentence) -> PpDecision {
    let p = s.pp(p_id).expect("pp id must resolve");
    let object = s.object_span(p);
    for a in &s.anaphors {
        if a.status.is_open() && object.contains(a.position) {
            return PpDecision::Skip(PpSkipReason::ObjectContainsAnaphor(a.id.clone()));
        }
    }
    for a in &s.anaphors {
        if a.position >= p.position {
            break;
        }
        if a.status.is_open() {
            return PpDecision::Skip(PpSkipReason::PrecededByAnaphor(a.id.clone()));
        }
    }
    PpDecision::Proceed
}

/// Semantic class of a PP's object: the object's lexicon class, or the
/// antecedent's class when the object is a resolved pronoun.
pub fn object_class(
    p: &PrepPhrase,
    s: &AnnotatedSentence,
    lex: &SemanticLexicon,
) -> Result<ClassTag, ModelError> {
    let np = s.np(&p.object_np).expect("object id must resolve");
    if np.is_pronoun {
        if let Some(a) = s.anaphor_for_np(&np.id) {
            if let AnaphorStatus::Resolved { semantic_class, .. } = &a.status {
                return Ok(semantic_class.clone());
            }
        }
        // Unresolvable pronoun: no antecedent class exists, fall through to
        // the pronoun's own lexicon entry.
    }
    match lex.lookup(&np.head_lemma) {
        Some(entry) => Ok(entry.class.clone()),
        None => Err(ModelError::MissingLexeme {
            lemma: np.head_lemma.clone(),
        }),
    }
}

/// How an attachment was justified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleRef {
    /// Forced single-candidate attachment; no table rule involved.
    Default,
    Table(AttachmentRule),
}

/// A concluded attachment: the chosen site and the rule that licensed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentDecision {
    pub pp: PpId,
    pub chosen: SiteRef,
    pub rule: RuleRef,
    pub score: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttachOutcome {
    Attached(AttachmentDecision),
    Unattached(UnattachedReason),
}

fn frame_slot_accepts(
    s: &AnnotatedSentence,
    frame_id: &crate::model::FrameId,
    role: &crate::model::RoleName,
    prep: &str,
    class: &ClassTag,
) -> bool {
    let Some(frame) = s.frame(frame_id) else {
        return false;
    };
    let Some(slot) = frame.roles.get(role) else {
        return false;
    };
    slot.filler.is_none()
        && slot.expected_classes.contains(class)
        && slot.admitted_prepositions.contains(prep)
}

/// Choose an attachment site for a PP whose skip predicate returned proceed.
///
/// Every (site, rule) pair is scored; the highest rule score wins and ties go
/// to the rightmost site. With no matching rule, a lone candidate site is
/// taken by default; several candidates without a rule stay unattached.
pub fn attach_pp(
    p_id: &PpId,
    s: &AnnotatedSentence,
    rules: &AttachmentRuleTable,
    lex: &SemanticLexicon,
) -> Result<AttachOutcome, ModelError> {
    let p = s.pp(p_id).expect("pp id must resolve");
    let class = object_class(p, s, lex)?;

    // Best = (score desc, site index desc, rule index asc).
    let mut best: Option<(u32, usize, usize)> = None;
    for (site_idx, site) in p.candidate_sites.iter().enumerate() {
        for (rule_idx, rule) in rules.rules.iter().enumerate() {
            if rule.prep != p.preposition || rule.object_class != class {
                continue;
            }
            let applicable = match site {
                SiteRef::FrameRole { frame, role } => {
                    s.frame(frame)
                        .is_some_and(|f| rule.governor == f.predicate_lemma)
                        && &rule.role == role
                        && frame_slot_accepts(s, frame, role, &p.preposition, &class)
                }
                SiteRef::NpModifier { np } => s.np(np).is_some_and(|n| {
                    rule.governor == n.head_lemma || rule.governor == n.semantic_class.as_str()
                }),
            };
            if !applicable {
                continue;
            }
            let better = match best {
                None => true,
                Some((bs, bsite, brule)) => {
                    (rule.score, site_idx) > (bs, bsite)
                        || (rule.score == bs && site_idx == bsite && rule_idx < brule)
                }
            };
            if better {
                best = Some((rule.score, site_idx, rule_idx));
            }
        }
    }

    if let Some((score, site_idx, rule_idx)) = best {
        return Ok(AttachOutcome::Attached(AttachmentDecision {
            pp: p.id.clone(),
            chosen: p.candidate_sites[site_idx].clone(),
            rule: RuleRef::Table(rules.rules[rule_idx].clone()),
            score,
        }));
    }

    if p.candidate_sites.len() == 1 {
        let site = &p.candidate_sites[0];
        let acceptable = match site {
            SiteRef::NpModifier { .. } => true,
            SiteRef::FrameRole { frame, role } => {
                frame_slot_accepts(s, frame, role, &p.preposition, &class)
            }
        };
        if acceptable {
            return Ok(AttachOutcome::Attached(AttachmentDecision {
                pp: p.id.clone(),
                chosen: site.clone(),
                rule: RuleRef::Default,
                score: 0,
            }));
        }
    }

    Ok(AttachOutcome::Unattached(UnattachedReason::NoRule))
}

/// Apply a concluded attachment to the sentence state: set the PP status and
/// fill the target role slot when the site is a frame role.
pub fn apply_attachment(s: &mut AnnotatedSentence, decision: &AttachmentDecision) {
    let object = s
        .pp(&decision.pp)
        .map(|p| p.object_np.clone())
        .expect("pp id must resolve");
    if let SiteRef::FrameRole { frame, role } = &decision.chosen {
        let frame = frame.clone();
        let role = role.clone();
        if let Some(f) = s.frames.iter_mut().find(|f| f.id == frame) {
            if let Some(slot) = f.roles.get_mut(&role) {
                debug_assert!(slot.filler.is_none(), "role slot filled twice");
                slot.filler = Some(object);
            }
        }
    }
    if let Some(p) = s.pps.iter_mut().find(|p| p.id == decision.pp) {
        p.status = PpStatus::Attached(decision.chosen.clone());
    }
}

/// Run one attachment pass: visit every open PP in textual order, skip or
/// decide each one, and append one trace event per visit.
pub fn attachment_pass(
    s: &mut AnnotatedSentence,
    rules: &AttachmentRuleTable,
    lex: &SemanticLexicon,
    pass_number: u32,
    trace: &mut Vec<TraceEvent>,
) -> Result<PassReport, ModelError> {
    let mut report = PassReport::default();
    let open_ids: Vec<PpId> = s
        .pps
        .iter()
        .filter(|p| p.status.is_open())
        .map(|p| p.id.clone())
        .collect();

    for id in open_ids {
        match skip_pp(&id, s) {
            PpDecision::Skip(reason) => {
                trace.push(TraceEvent {
                    pass: pass_number,
                    module: Module::Attachment,
                    target: id.to_string(),
                    action: Action::Skip,
                    detail: reason.to_string(),
                });
                if let Some(p) = s.pps.iter_mut().find(|p| p.id == id) {
                    p.status = PpStatus::Skipped(reason);
                }
                report.skipped += 1;
            }
            PpDecision::Proceed => match attach_pp(&id, s, rules, lex)? {
                AttachOutcome::Attached(decision) => {
                    trace.push(TraceEvent {
                        pass: pass_number,
                        module: Module::Attachment,
                        target: id.to_string(),
                        action: Action::Attach,
                        detail: decision.chosen.to_string(),
                    });
                    apply_attachment(s, &decision);
                    report.decided += 1;
                }
                AttachOutcome::Unattached(reason) => {
                    trace.push(TraceEvent {
                        pass: pass_number,
                        module: Module::Attachment,
                        target: id.to_string(),
                        action: Action::Unattached,
                        detail: reason.to_string(),
                    });
                    if let Some(p) = s.pps.iter_mut().find(|p| p.id == id) {
                        p.status = PpStatus::Unattached(reason);
                    }
                    report.failed += 1;
                }
            },
        }
    }
    Ok(report)
}
