//! Golden-trace and per-operation tests over the shipped fixtures. Expected
//! values were fixed by hand-annotating the fixture sentences and walking the
//! skip predicates and ranking rules on paper; the engine must reproduce them
//! exactly.

mod common;

use coresolve::anaphora::{
    anaphora_pass, candidate_antecedents, resolve_anaphor, skip_anaphor, AnaphorDecision,
    Provenance, ResolveOutcome,
};
use coresolve::attachment::{
    attach_pp, attachment_pass, object_class, skip_pp, AttachOutcome, PpDecision, RuleRef,
};
use coresolve::coordinator::{
    check_no_redundancy, cycle_metrics, resolve_document, resolve_sentence, Action, Module,
    Outcome, TraceEvent,
};
use coresolve::model::{
    build_initial_state, validate_sentence, AnaphorId, AnaphorStatus, ClassTag, DiscourseState,
    EntityId, PpId, PpSkipReason, PpStatus, PrepPhrase, SiteRef, UnresolvableReason,
};
use coresolve::oracle::{compare, dependency_graph, oracle_resolve};
use coresolve::stats::corpus_stats;

fn ev(pass: u32, module: Module, action: Action, target: &str, detail: &str) -> TraceEvent {
    TraceEvent {
        pass,
        module,
        target: target.to_string(),
        action,
        detail: detail.to_string(),
    }
}

#[test]
fn ex2_runs_the_four_pass_golden_trace() {
    let corpus = common::corpus();
    let s = common::sentence(&corpus, "ex2", 0);
    let r = resolve_sentence(
        &s,
        &DiscourseState::new(),
        &common::rules(),
        &common::lexicon(),
    )
    .unwrap();

    #[rustfmt::skip]
    let expected = vec![
        ev(1, Module::Anaphora, Action::Skip, "a_its", "blocked-by-pp:p_since"),
        ev(2, Module::Attachment, Action::Attach, "p_since", "f_suspend.TIME"),
        ev(2, Module::Attachment, Action::Attach, "p_at", "f_suspend.REASON"),
        ev(2, Module::Attachment, Action::Skip, "p_in", "object-contains-anaphor:a_its"),
        ev(2, Module::Attachment, Action::Skip, "p_on", "preceded-by-anaphor:a_its"),
        ev(3, Module::Anaphora, Action::Resolve, "a_its", "e_firm"),
        ev(4, Module::Attachment, Action::Attach, "p_in", "f_surge.THEME"),
        ev(4, Module::Attachment, Action::Attach, "p_on", "f_surge.CAUSE"),
    ];
    assert_eq!(r.trace, expected);
    assert_eq!(r.module_calls, 4);
    assert_eq!(r.outcome, Outcome::Complete);
    assert!(check_no_redundancy(&r.trace).is_ok());
}

#[test]
fn ex1_resolves_the_pronoun_before_attaching_of_bci() {
    let corpus = common::corpus();
    let s = common::sentence(&corpus, "ex1", 0);
    let r = resolve_sentence(
        &s,
        &DiscourseState::new(),
        &common::rules(),
        &common::lexicon(),
    )
    .unwrap();

    #[rustfmt::skip]
    let expected = vec![
        ev(1, Module::Anaphora, Action::Resolve, "a_that", "e_sale"),
        ev(2, Module::Attachment, Action::Attach, "p_of_credito", "np:e_sale"),
        ev(2, Module::Attachment, Action::Attach, "p_of_bci", "np:e_that"),
    ];
    assert_eq!(r.trace, expected);
    assert_eq!(r.module_calls, 2);
    assert_eq!(r.outcome, Outcome::Complete);

    let resolve_idx = r.trace.iter().position(|e| e.target == "a_that").unwrap();
    let bci_idx = r.trace.iter().position(|e| e.target == "p_of_bci").unwrap();
    assert!(
        resolve_idx < bci_idx,
        "the pronoun must be resolved strictly first"
    );
}

#[test]
fn chained_pronoun_object_pps_need_more_than_four_passes() {
    let corpus = common::corpus();
    let s = common::sentence(&corpus, "chain", 0);
    let r = resolve_sentence(
        &s,
        &DiscourseState::new(),
        &common::rules(),
        &common::lexicon(),
    )
    .unwrap();
    assert_eq!(r.outcome, Outcome::Complete);
    assert_eq!(r.module_calls, 6);
    assert!(r.module_calls > 4);
    assert!(r.module_calls >= 5);
}

#[test]
fn no_trailing_pass_after_a_final_anaphora_decision() {
    // Drop the in/on PPs from ex2: the pronoun is then the last open item
    // and resolves in pass 3, so no fourth pass runs.
    let corpus = common::corpus();
    let mut s = common::sentence(&corpus, "ex2", 0);
    s.pps
        .retain(|p| p.id.as_str() == "p_since" || p.id.as_str() == "p_at");
    let r = resolve_sentence(
        &s,
        &DiscourseState::new(),
        &common::rules(),
        &common::lexicon(),
    )
    .unwrap();
    assert_eq!(r.module_calls, 3);
    assert_eq!(r.outcome, Outcome::Complete);
    assert_eq!(r.trace.last().unwrap().action, Action::Resolve);
}

#[test]
fn validate_accepts_the_fixture_sentences() {
    let lex = common::lexicon();
    for corpus in [
        common::corpus(),
        common::cyclic_corpus(),
        common::focus_corpus(),
    ] {
        for doc in &corpus.documents {
            for s in &doc.sentences {
                let report = validate_sentence(s, &lex);
                assert!(report.is_ok(), "{}: {report}", doc.id);
            }
        }
    }
}

#[test]
fn initial_state_counts_pending_decisions() {
    let corpus = common::corpus();
    let lex = common::lexicon();

    let ex2 = build_initial_state(&common::sentence(&corpus, "ex2", 0), &lex).unwrap();
    assert_eq!(
        ex2.anaphors.iter().filter(|a| a.status.is_open()).count(),
        1
    );
    assert_eq!(ex2.pps.iter().filter(|p| p.status.is_open()).count(), 4);

    let ex1 = build_initial_state(&common::sentence(&corpus, "ex1", 0), &lex).unwrap();
    assert_eq!(ex1.anaphors.len(), 1);
    assert_eq!(ex1.pps.len(), 2);

    let focus = common::focus_corpus();
    let bare = build_initial_state(&common::sentence(&focus, "focus", 0), &lex).unwrap();
    assert_eq!(bare.anaphors.len() + bare.pps.len(), 0);
}

#[test]
fn skip_predicate_walkthrough_on_ex2() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let mut s = build_initial_state(&common::sentence(&corpus, "ex2", 0), &lex).unwrap();
    let its = AnaphorId::from("a_its");

    // Pass 1: blocked by the leftmost ambiguous open PP.
    assert_eq!(
        skip_anaphor(&its, &s),
        AnaphorDecision::Skip {
            blocked_by: PpId::from("p_since")
        }
    );

    // Attachment view, pass 1.
    assert_eq!(skip_pp(&PpId::from("p_since"), &s), PpDecision::Proceed);
    assert_eq!(
        skip_pp(&PpId::from("p_in"), &s),
        PpDecision::Skip(PpSkipReason::ObjectContainsAnaphor(its.clone()))
    );
    assert_eq!(
        skip_pp(&PpId::from("p_on"), &s),
        PpDecision::Skip(PpSkipReason::PrecededByAnaphor(its.clone()))
    );

    // After since and at attach, only in (contains the pronoun) and on
    // (after it) stay open: the pronoun proceeds.
    for id in ["p_since", "p_at"] {
        let pid = PpId::from(id);
        let site = s.pp(&pid).unwrap().candidate_sites.last().unwrap().clone();
        if let Some(p) = s.pps.iter_mut().find(|p| p.id == pid) {
            p.status = PpStatus::Attached(site);
        }
    }
    assert_eq!(skip_anaphor(&its, &s), AnaphorDecision::Proceed);
}

#[test]
fn single_site_pp_does_not_block_the_demonstrative() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let s = build_initial_state(&common::sentence(&corpus, "ex1", 0), &lex).unwrap();
    assert_eq!(
        skip_anaphor(&AnaphorId::from("a_that"), &s),
        AnaphorDecision::Proceed
    );
}

#[test]
fn ex2_candidates_keep_the_firm_and_drop_the_plural() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let s = build_initial_state(&common::sentence(&corpus, "ex2", 0), &lex).unwrap();
    let cs = candidate_antecedents(&AnaphorId::from("a_its"), &s, &DiscourseState::new(), &lex);
    let ids: Vec<&str> = cs.candidates.iter().map(|c| c.entity.as_str()).collect();
    assert!(ids.contains(&"e_firm"));
    assert!(
        !ids.contains(&"e_shares"),
        "plural mention must be filtered out"
    );
    assert_eq!(
        resolve_anaphor(&AnaphorId::from("a_its"), &cs),
        ResolveOutcome::Resolved {
            antecedent: EntityId::from("e_firm"),
            semantic_class: ClassTag::from("ORGANIZATION"),
        }
    );
}

#[test]
fn ex1_demonstrative_filter_rejects_proper_names() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let s = build_initial_state(&common::sentence(&corpus, "ex1", 0), &lex).unwrap();
    let cs = candidate_antecedents(&AnaphorId::from("a_that"), &s, &DiscourseState::new(), &lex);
    let ids: Vec<&str> = cs.candidates.iter().map(|c| c.entity.as_str()).collect();
    assert_eq!(
        ids,
        vec!["e_sale"],
        "Credito and last August are filtered out"
    );
    assert_eq!(
        resolve_anaphor(&AnaphorId::from("a_that"), &cs),
        ResolveOutcome::Resolved {
            antecedent: EntityId::from("e_sale"),
            semantic_class: ClassTag::from("TRANSACTION"),
        }
    );
}

#[test]
fn pass_reports_match_the_four_phase_run() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let rules = common::rules();
    let d = DiscourseState::new();
    let mut s = build_initial_state(&common::sentence(&corpus, "ex2", 0), &lex).unwrap();
    let mut trace = Vec::new();

    let a1 = anaphora_pass(&mut s, &d, &lex, 1, &mut trace);
    assert_eq!((a1.decided, a1.skipped, a1.failed), (0, 1, 0));

    let t1 = attachment_pass(&mut s, &rules, &lex, 2, &mut trace).unwrap();
    assert_eq!((t1.decided, t1.skipped, t1.failed), (2, 2, 0));

    let a2 = anaphora_pass(&mut s, &d, &lex, 3, &mut trace);
    assert_eq!((a2.decided, a2.skipped, a2.failed), (1, 0, 0));

    let t2 = attachment_pass(&mut s, &rules, &lex, 4, &mut trace).unwrap();
    assert_eq!((t2.decided, t2.skipped, t2.failed), (2, 0, 0));

    assert!(!s.has_open_decisions());
}

#[test]
fn object_classes_follow_the_lexicon_and_resolved_pronouns() {
    let corpus = common::corpus();
    let lex = common::lexicon();

    let ex2 = build_initial_state(&common::sentence(&corpus, "ex2", 0), &lex).unwrap();
    let since = ex2.pp(&PpId::from("p_since")).unwrap();
    assert_eq!(
        object_class(since, &ex2, &lex).unwrap(),
        ClassTag::from("TIME-POINT")
    );

    // Resolving "that" does not change the class of BCI itself.
    let r = resolve_sentence(
        &common::sentence(&corpus, "ex1", 0),
        &DiscourseState::new(),
        &common::rules(),
        &lex,
    )
    .unwrap();
    let final_state = &r.sentence;
    let of_bci = final_state.pp(&PpId::from("p_of_bci")).unwrap();
    assert_eq!(
        object_class(of_bci, final_state, &lex).unwrap(),
        ClassTag::from("ORGANIZATION")
    );

    // A pronoun-headed object inherits the antecedent's class once resolved.
    let synthetic = PrepPhrase {
        id: PpId::from("p_test"),
        preposition: "of".into(),
        object_np: EntityId::from("e_that"),
        position: 9,
        candidate_sites: vec![SiteRef::NpModifier {
            np: EntityId::from("e_sale"),
        }],
        status: PpStatus::Pending,
    };
    assert_eq!(
        object_class(&synthetic, final_state, &lex).unwrap(),
        ClassTag::from("TRANSACTION")
    );
}

#[test]
fn rule_attachment_and_single_site_default_on_fixtures() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let rules = common::rules();

    let ex2 = build_initial_state(&common::sentence(&corpus, "ex2", 0), &lex).unwrap();
    match attach_pp(&PpId::from("p_since"), &ex2, &rules, &lex).unwrap() {
        AttachOutcome::Attached(d) => {
            assert_eq!(d.chosen.to_string(), "f_suspend.TIME");
            assert!(matches!(d.rule, RuleRef::Table(_)));
        }
        other => panic!("expected attachment, got {other:?}"),
    }

    let ex1 = build_initial_state(&common::sentence(&corpus, "ex1", 0), &lex).unwrap();
    match attach_pp(&PpId::from("p_of_credito"), &ex1, &rules, &lex).unwrap() {
        AttachOutcome::Attached(d) => {
            assert_eq!(d.chosen.to_string(), "np:e_sale");
            assert_eq!(d.rule, RuleRef::Default);
        }
        other => panic!("expected attachment, got {other:?}"),
    }
}

#[test]
fn every_attachment_fills_exactly_one_slot() {
    let corpus = common::corpus();
    let r = resolve_sentence(
        &common::sentence(&corpus, "ex2", 0),
        &DiscourseState::new(),
        &common::rules(),
        &common::lexicon(),
    )
    .unwrap();
    let s = &r.sentence;

    let filled: usize = s
        .frames
        .iter()
        .flat_map(|f| f.roles.values())
        .filter(|slot| slot.filler.is_some())
        .count();
    let frame_attached = s
        .pps
        .iter()
        .filter(|p| matches!(&p.status, PpStatus::Attached(SiteRef::FrameRole { .. })))
        .count();
    assert_eq!(filled, frame_attached);

    // Role-fill consistency: the filler is exactly the attached PP's object.
    for p in &s.pps {
        if let PpStatus::Attached(SiteRef::FrameRole { frame, role }) = &p.status {
            let slot = &s.frame(frame).unwrap().roles[role];
            assert_eq!(slot.filler.as_ref(), Some(&p.object_np));
        }
    }
}

#[test]
fn cycle_metrics_match_fixture_runs() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let rules = common::rules();
    let d = DiscourseState::new();

    let ex2 = resolve_sentence(&common::sentence(&corpus, "ex2", 0), &d, &rules, &lex).unwrap();
    let m2 = cycle_metrics(&ex2);
    assert_eq!(m2.module_calls, 4);
    assert_eq!(
        m2.progress_per_pass,
        vec![
            (1, Module::Anaphora, 0),
            (2, Module::Attachment, 2),
            (3, Module::Anaphora, 1),
            (4, Module::Attachment, 2),
        ]
    );
    assert_eq!(m2.anaphora_decisions, 1);
    assert_eq!(m2.attachment_decisions, 4);

    let ex1 = resolve_sentence(&common::sentence(&corpus, "ex1", 0), &d, &rules, &lex).unwrap();
    assert_eq!(cycle_metrics(&ex1).module_calls, 2);
}

#[test]
fn single_sentence_document_equals_resolve_sentence() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let rules = common::rules();
    let s = common::sentence(&corpus, "ex2", 0);

    let direct = resolve_sentence(&s, &DiscourseState::new(), &rules, &lex).unwrap();
    let (results, _) = resolve_document(std::slice::from_ref(&s), &rules, &lex).unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0], direct);
}

#[test]
fn focus_document_resolves_inter_sententially() {
    let focus = common::focus_corpus();
    let doc = &focus.documents[0];
    let (results, state) =
        resolve_document(&doc.sentences, &common::rules(), &common::lexicon()).unwrap();

    assert_eq!(results[0].module_calls, 2);
    assert!(results[0].trace.is_empty());

    let it = results[1]
        .sentence
        .anaphor(&AnaphorId::from("h_it"))
        .unwrap();
    assert_eq!(
        it.status,
        AnaphorStatus::Resolved {
            antecedent: EntityId::from("g_credito"),
            semantic_class: ClassTag::from("ORGANIZATION"),
        }
    );

    // The second sentence's pronoun found its antecedent on the focus list.
    let lex = common::lexicon();
    let prepared = build_initial_state(&doc.sentences[1], &lex).unwrap();
    let mut after_s1 = DiscourseState::new();
    coresolve::coordinator::update_discourse(&mut after_s1, &results[0].sentence);
    let cs = candidate_antecedents(&AnaphorId::from("h_it"), &prepared, &after_s1, &lex);
    assert_eq!(cs.candidates[0].provenance, Provenance::FocusList);
    assert_eq!(cs.candidates[0].entity, EntityId::from("g_credito"));

    // Final focus list: subject of sentence 2 is the resolved pronoun, so
    // Credito leads again, then the new agreement, then the merger.
    let entities: Vec<&str> = state.focus_list.iter().map(|e| e.entity.as_str()).collect();
    assert_eq!(entities, vec!["g_credito", "g_agreement", "g_merger"]);
}

#[test]
fn cyclic_fixture_deadlocks_and_later_sentences_still_run() {
    let cyclic = common::cyclic_corpus();
    let doc = &cyclic.documents[0];
    let (results, _) =
        resolve_document(&doc.sentences, &common::rules(), &common::lexicon()).unwrap();

    let first = &results[0];
    assert_eq!(first.module_calls, 2);
    assert_eq!(
        first.outcome,
        Outcome::Deadlocked(vec![
            "q_despite".to_string(),
            "b_them".to_string(),
            "q_under".to_string(),
            "b_its".to_string(),
        ])
    );
    for a in &first.sentence.anaphors {
        assert_eq!(
            a.status,
            AnaphorStatus::Unresolvable(UnresolvableReason::Deadlock)
        );
    }
    for p in &first.sentence.pps {
        assert_eq!(
            p.status,
            PpStatus::Unattached(coresolve::model::UnattachedReason::Deadlock)
        );
    }

    // Sentence 2 still resolves against sentence 1's non-pronoun entities.
    let they = results[1]
        .sentence
        .anaphor(&AnaphorId::from("b_they"))
        .unwrap();
    assert_eq!(
        they.status,
        AnaphorStatus::Resolved {
            antecedent: EntityId::from("c_terms"),
            semantic_class: ClassTag::from("ATTRIBUTE"),
        }
    );
}

#[test]
fn oracle_agrees_on_fixtures_and_detects_the_cycle() {
    let lex = common::lexicon();
    let rules = common::rules();
    let d = DiscourseState::new();

    let corpus = common::corpus();
    for doc_id in ["ex1", "ex2", "chain"] {
        let s = common::sentence(&corpus, doc_id, 0);
        let engine = resolve_sentence(&s, &d, &rules, &lex).unwrap();
        let oracle = oracle_resolve(&s, &d, &rules, &lex).unwrap();
        let report = compare(&engine, &oracle);
        assert!(report.is_equal(), "{doc_id}: {:?}", report.diffs);
        assert!(dependency_graph(&engine.sentence).is_acyclic());
    }

    let cyclic = common::cyclic_corpus();
    let s = common::sentence(&cyclic, "cyclic", 0);
    let graph = dependency_graph(&coresolve::model::build_initial_state(&s, &lex).unwrap());
    assert!(!graph.is_acyclic());
    let engine = resolve_sentence(&s, &d, &rules, &lex).unwrap();
    let oracle = oracle_resolve(&s, &d, &rules, &lex).unwrap();
    assert!(compare(&engine, &oracle).is_equal());
    assert!(oracle
        .anaphors
        .iter()
        .all(|a| a.status == AnaphorStatus::Unresolvable(UnresolvableReason::Deadlock)));
}

#[test]
fn compare_reports_diffs_under_different_rule_tables() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let rules_a = common::rules();
    let mut rules_b = rules_a.clone();
    // Push the in-PP to the NP site by outranking the frame rule.
    rules_b.rules.push(coresolve::model::AttachmentRule {
        governor: "surge".into(),
        prep: "in".into(),
        object_class: ClassTag::from("ATTRIBUTE"),
        role: coresolve::model::RoleName::from("MOD"),
        score: 50,
    });

    let s = common::sentence(&corpus, "ex2", 0);
    let d = DiscourseState::new();
    let engine = resolve_sentence(&s, &d, &rules_a, &lex).unwrap();
    let oracle_b = oracle_resolve(&s, &d, &rules_b, &lex).unwrap();
    let report = compare(&engine, &oracle_b);
    assert!(!report.is_equal());
    assert!(report.diffs.iter().any(|diff| diff.id.contains("p_in")));

    // Reflexivity: identical inputs twice are equal.
    let again = oracle_resolve(&s, &d, &rules_a, &lex).unwrap();
    assert!(compare(&engine, &again).is_equal());
}

#[test]
fn corpus_statistics_count_the_three_case_kinds() {
    let corpus = common::corpus();
    let lex = common::lexicon();
    let rules = common::rules();

    let mut results = Vec::new();
    for doc in &corpus.documents {
        let (sentences, _) = resolve_document(&doc.sentences, &rules, &lex).unwrap();
        results.push(coresolve::coordinator::DocumentResult {
            id: doc.id.clone(),
            sentences,
        });
    }
    let stats = corpus_stats(&results);
    assert_eq!(stats.anaphors, 5);
    assert_eq!(stats.pps, 9);
    assert_eq!(stats.case_a, 1);
    assert_eq!(stats.case_b, 4);
    assert_eq!(stats.case_c, 4);
    assert!((stats.mean_module_calls - 4.0).abs() < 1e-9);

    // ex2 alone: "its" follows the ambiguous since-PP.
    let ex2_only = corpus_stats(&results[1..2]);
    assert_eq!(ex2_only.case_b, 1);
    assert_eq!(ex2_only.case_a, 0);
    assert_eq!(ex2_only.case_c, 1);
}
