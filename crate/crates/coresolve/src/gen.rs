//! Seeded random sentence generator for scheduler testing. Instances are
//! always structurally valid; anaphors are biased toward having a reachable
//! antecedent so unresolvable outcomes come from blocking cycles or filter
//! misses rather than malformed data. Detached PP objects (a parenthetical
//! between a preposition and its object) are generated occasionally, which is
//! what makes genuine blocking cycles possible.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    Agreement, Anaphor, AnaphorId, AnaphorKind, AnaphorStatus, AnnotatedSentence, AttachmentRule,
    AttachmentRuleTable, ClassTag, EntityId, Frame, FrameId, Gender, LexEntry, NounPhrase, Number,
    PpId, PpStatus, PrepPhrase, RoleName, RoleSlot, SemanticLexicon, SiteRef, Span, Token,
};

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_anaphors: usize,
    pub max_pps: usize,
    pub max_plain_nps: usize,
    pub max_frames: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_anaphors: 8,
            max_pps: 8,
            max_plain_nps: 6,
            max_frames: 3,
        }
    }
}

/// One generated instance: a sentence plus the lexicon and rule table that
/// cover it.
#[derive(Debug, Clone)]
pub struct GenInstance {
    pub sentence: AnnotatedSentence,
    pub lexicon: SemanticLexicon,
    pub rules: AttachmentRuleTable,
}

const CLASSES: &[&str] = &["C-ORG", "C-HUM", "C-EVT", "C-OBJ", "C-TIME", "C-ATTR"];
const PREPS: &[&str] = &["in", "on", "at", "of", "with", "under", "for", "over"];
const NOUNS: &[&str] = &[
    "fund", "rally", "report", "bond", "term", "offer", "deal", "notice", "claim", "issue",
    "board", "review",
];
const PROPER: &[&str] = &["Altex", "Borla", "Credo", "Dantia"];
const PRONOUNS: &[&str] = &["it", "they", "its", "that"];
const PREDICATES: &[&str] = &["move", "state", "settle", "file"];

struct Builder {
    rng: ChaCha8Rng,
    id_prefix: String,
    max_pps: usize,
    tokens: Vec<Token>,
    nps: Vec<NounPhrase>,
    anaphors: Vec<Anaphor>,
    pps: Vec<PrepPhrase>,
    frames: Vec<Frame>,
    free_role_sites: Vec<(FrameId, RoleName)>,
    possessor_classes: BTreeSet<ClassTag>,
}

impl Builder {
    fn push_token(&mut self, lemma: &str) -> usize {
        let index = self.tokens.len();
        self.tokens.push(Token {
            index,
            surface: lemma.to_string(),
            lemma: lemma.to_string(),
        });
        index
    }

    fn random_agreement(&mut self) -> Agreement {
        let gender = match self.rng.random_range(0..4) {
            0 => Gender::Masc,
            1 => Gender::Fem,
            2 => Gender::Neut,
            _ => Gender::Unspec,
        };
        let number = match self.rng.random_range(0..3) {
            0 => Number::Sing,
            1 => Number::Plur,
            _ => Number::Unspec,
        };
        Agreement::new(gender, number)
    }

    fn random_class(&mut self) -> ClassTag {
        ClassTag::from(CLASSES[self.rng.random_range(0..CLASSES.len())])
    }

    fn entity_id(&mut self) -> EntityId {
        EntityId(format!("{}e{}", self.id_prefix, self.nps.len()))
    }

    fn plain_np(&mut self) -> EntityId {
        let id = self.entity_id();
        let proper = self.rng.random_ratio(1, 5);
        let head = if proper {
            PROPER[self.rng.random_range(0..PROPER.len())]
        } else {
            NOUNS[self.rng.random_range(0..NOUNS.len())]
        };
        let width = self.rng.random_range(1..=2);
        let start = if width == 2 {
            let s = self.push_token("the");
            self.push_token(head);
            s
        } else {
            self.push_token(head)
        };
        let agreement = self.random_agreement();
        let semantic_class = self.random_class();
        self.nps.push(NounPhrase {
            id: id.clone(),
            span: Span::new(start, start + width),
            head_lemma: head.to_string(),
            semantic_class,
            agreement,
            is_pronoun: false,
            parent_np: None,
        });
        id
    }

    /// Generate a pronoun NP plus its anaphor; optionally wrapped in a
    /// two-token container NP (pronoun as possessor).
    fn pronoun_np(&mut self) -> EntityId {
        let kind = match self.rng.random_range(0..10) {
            0..=6 => AnaphorKind::Personal,
            7..=8 => AnaphorKind::Possessive,
            _ => AnaphorKind::DemonstrativeOneAnaphor,
        };
        let lemma = PRONOUNS[self.rng.random_range(0..PRONOUNS.len())];
        let contained = kind == AnaphorKind::Possessive || self.rng.random_ratio(1, 4);

        let pron_id = self.entity_id();
        let pos = self.push_token(lemma);
        let agreement = self.random_agreement();
        self.nps.push(NounPhrase {
            id: pron_id.clone(),
            span: Span::new(pos, pos + 1),
            head_lemma: lemma.to_string(),
            semantic_class: ClassTag::from("C-PRON"),
            agreement,
            is_pronoun: true,
            parent_np: None,
        });

        let returned = if contained {
            let head = NOUNS[self.rng.random_range(0..NOUNS.len())];
            self.push_token(head);
            let container_id = self.entity_id();
            let container_agreement = self.random_agreement();
            let semantic_class = self.random_class();
            self.nps.push(NounPhrase {
                id: container_id.clone(),
                span: Span::new(pos, pos + 2),
                head_lemma: head.to_string(),
                semantic_class,
                agreement: container_agreement,
                is_pronoun: false,
                parent_np: None,
            });
            let idx = self.nps.len() - 2;
            self.nps[idx].parent_np = Some(container_id.clone());
            container_id
        } else {
            pron_id.clone()
        };

        let anaphor_id = AnaphorId(format!("{}a{}", self.id_prefix, self.anaphors.len()));
        self.anaphors.push(Anaphor {
            id: anaphor_id,
            np_id: pron_id,
            kind,
            position: pos,
            status: AnaphorStatus::Pending,
        });
        self.ensure_antecedent(kind, pos, agreement);
        returned
    }

    /// Bias toward resolvability: if nothing before the pronoun passes its
    /// filters, retrofit one preceding NP (when one exists).
    fn ensure_antecedent(&mut self, kind: AnaphorKind, position: usize, agr: Agreement) {
        if !self.rng.random_ratio(17, 20) {
            return;
        }
        let candidates: Vec<usize> = self
            .nps
            .iter()
            .enumerate()
            .filter(|(_, np)| {
                !np.is_pronoun && np.span.start < position && !np.span.contains(position)
            })
            .map(|(i, _)| i)
            .collect();
        if candidates.is_empty() {
            return;
        }
        let passes = candidates.iter().any(|&i| {
            let np = &self.nps[i];
            match kind {
                AnaphorKind::Personal => agr.compatible(&np.agreement),
                AnaphorKind::Possessive => {
                    agr.compatible(&np.agreement)
                        && self.possessor_classes.contains(&np.semantic_class)
                }
                AnaphorKind::DemonstrativeOneAnaphor => {
                    agr.number_compatible(&np.agreement)
                        && np
                            .head_lemma
                            .chars()
                            .next()
                            .is_some_and(|c| c.is_lowercase())
                }
            }
        });
        if passes {
            return;
        }
        let pick = candidates[self.rng.random_range(0..candidates.len())];
        let np = &mut self.nps[pick];
        np.agreement = agr;
        if kind == AnaphorKind::Possessive {
            let possessor = self.possessor_classes.iter().next().cloned();
            if let Some(class) = possessor {
                self.nps[pick].semantic_class = class;
            }
        } else if kind == AnaphorKind::DemonstrativeOneAnaphor {
            self.nps[pick].head_lemma = NOUNS[0].to_string();
        }
    }

    fn candidate_sites(&mut self) -> Vec<SiteRef> {
        let n_sites = self.rng.random_range(1..=3);
        let mut sites = Vec::new();
        for _ in 0..n_sites {
            let use_role = !self.free_role_sites.is_empty() && self.rng.random_ratio(1, 2);
            if use_role {
                let i = self.rng.random_range(0..self.free_role_sites.len());
                let (frame, role) = self.free_role_sites.remove(i);
                sites.push(SiteRef::FrameRole { frame, role });
            } else if !self.nps.is_empty() {
                let np = self.nps[self.rng.random_range(0..self.nps.len())]
                    .id
                    .clone();
                let site = SiteRef::NpModifier { np };
                if !sites.contains(&site) {
                    sites.push(site);
                }
            }
        }
        if sites.is_empty() {
            // Always at least one site: fall back to the first NP or a role.
            if let Some(np) = self.nps.first() {
                sites.push(SiteRef::NpModifier { np: np.id.clone() });
            } else if let Some((frame, role)) = self.free_role_sites.pop() {
                sites.push(SiteRef::FrameRole { frame, role });
            }
        }
        sites
    }

    /// Generate one PP: preposition token, optional parenthetical gap
    /// elements, then the object NP.
    fn prep_phrase(&mut self, allow_gap_pronouns: bool, anaphor_budget: usize) {
        let prep = PREPS[self.rng.random_range(0..PREPS.len())];
        let position = self.push_token(prep);

        if allow_gap_pronouns && self.rng.random_ratio(3, 20) {
            let gaps = self.rng.random_range(1..=2);
            for _ in 0..gaps {
                if anaphor_budget > self.anaphors.len() && self.rng.random_ratio(1, 2) {
                    self.pronoun_np();
                } else if self.pps.len() + 1 < self.max_pps && self.rng.random_ratio(1, 2) {
                    self.prep_phrase(false, anaphor_budget);
                } else {
                    self.plain_np();
                }
            }
        }

        let object = if anaphor_budget > self.anaphors.len() && self.rng.random_ratio(7, 20) {
            self.pronoun_np()
        } else {
            self.plain_np()
        };

        let sites = self.candidate_sites();
        if sites.is_empty() {
            return;
        }
        let id = PpId(format!("{}p{}", self.id_prefix, self.pps.len()));
        self.pps.push(PrepPhrase {
            id,
            preposition: prep.to_string(),
            object_np: object,
            position,
            candidate_sites: sites,
            status: PpStatus::Pending,
        });
    }
}

/// Generate one instance from a seed. Two calls with the same seed and
/// config produce identical instances.
pub fn generate(seed: u64, cfg: &GenConfig) -> GenInstance {
    generate_sentence(seed, cfg, 0, "")
}

fn generate_sentence(seed: u64, cfg: &GenConfig, index: usize, id_prefix: &str) -> GenInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut possessor_classes: BTreeSet<ClassTag> = BTreeSet::new();
    for class in CLASSES {
        if rng.random_ratio(1, 2) {
            possessor_classes.insert(ClassTag::from(*class));
        }
    }
    if possessor_classes.is_empty() {
        possessor_classes.insert(ClassTag::from("C-ORG"));
    }

    let mut b = Builder {
        rng,
        id_prefix: id_prefix.to_string(),
        max_pps: cfg.max_pps,
        tokens: Vec::new(),
        nps: Vec::new(),
        anaphors: Vec::new(),
        pps: Vec::new(),
        frames: Vec::new(),
        free_role_sites: Vec::new(),
        possessor_classes: possessor_classes.clone(),
    };

    let n_frames = b.rng.random_range(0..=cfg.max_frames);
    for fi in 0..n_frames {
        let id = FrameId(format!("{id_prefix}f{fi}"));
        let predicate = PREDICATES[b.rng.random_range(0..PREDICATES.len())];
        let mut roles = BTreeMap::new();
        let n_roles = b.rng.random_range(1..=3);
        for ri in 0..n_roles {
            let role = RoleName(format!("R{ri}"));
            let mut expected = BTreeSet::new();
            for _ in 0..b.rng.random_range(1..=3) {
                let class = b.random_class();
                expected.insert(class);
            }
            let mut preps = BTreeSet::new();
            for _ in 0..b.rng.random_range(1..=3) {
                preps.insert(PREPS[b.rng.random_range(0..PREPS.len())].to_string());
            }
            roles.insert(
                role.clone(),
                RoleSlot {
                    filler: None,
                    expected_classes: expected,
                    admitted_prepositions: preps,
                },
            );
            b.free_role_sites.push((id.clone(), role));
        }
        b.frames.push(Frame {
            id,
            predicate_lemma: predicate.to_string(),
            roles,
        });
        b.push_token(PREDICATES[fi % PREDICATES.len()]);
    }

    let n_plain = b.rng.random_range(1..=cfg.max_plain_nps);
    let n_anaphors = b.rng.random_range(0..=cfg.max_anaphors);
    let n_pps = b.rng.random_range(0..=cfg.max_pps);

    for _ in 0..n_plain {
        b.plain_np();
    }
    let mut placed_pps = 0;
    while placed_pps < n_pps || b.anaphors.len() < n_anaphors {
        if placed_pps < n_pps && (b.anaphors.len() >= n_anaphors || b.rng.random_ratio(1, 2)) {
            b.prep_phrase(true, n_anaphors);
            placed_pps = b.pps.len();
        } else if b.anaphors.len() < n_anaphors {
            b.pronoun_np();
        }
        if b.rng.random_ratio(1, 3) {
            b.push_token("and");
        }
        if b.pps.len() >= cfg.max_pps || b.anaphors.len() > cfg.max_anaphors {
            break;
        }
    }

    // Nested parenthetical PPs finish before their enclosing PP is recorded,
    // so restore textual order here.
    b.pps.sort_by_key(|p| p.position);

    let mut sentence = AnnotatedSentence {
        index,
        tokens: b.tokens,
        nps: b.nps,
        anaphors: b.anaphors,
        pps: b.pps,
        frames: b.frames,
    };

    let mut rng = b.rng;
    let rules = generate_rules(&mut rng, &mut sentence);
    let lexicon = build_lexicon(&sentence, possessor_classes);

    GenInstance {
        sentence,
        lexicon,
        rules,
    }
}

/// Rules aimed at the generated sites: most frame-role sites get a matching
/// rule (and a slot widened to admit it), NP sites sometimes do, and object
/// classes are occasionally wrong so no-rule outcomes stay reachable.
fn generate_rules(rng: &mut ChaCha8Rng, sentence: &mut AnnotatedSentence) -> AttachmentRuleTable {
    let mut sentence_classes: Vec<ClassTag> = sentence
        .nps
        .iter()
        .map(|np| np.semantic_class.clone())
        .collect();
    sentence_classes.sort();
    sentence_classes.dedup();
    if sentence_classes.is_empty() {
        sentence_classes.push(ClassTag::from("C-ORG"));
    }

    let mut rules: Vec<AttachmentRule> = Vec::new();
    let push_rule = |rules: &mut Vec<AttachmentRule>, rule: AttachmentRule| {
        let conflict = rules.iter().any(|r| {
            r.governor == rule.governor
                && r.prep == rule.prep
                && r.object_class == rule.object_class
                && r.score == rule.score
                && r.role != rule.role
        });
        if !conflict {
            rules.push(rule);
        }
    };

    let mut slot_updates: Vec<(FrameId, RoleName, ClassTag, String)> = Vec::new();
    let pps = sentence.pps.clone();
    for pp in &pps {
        let object = sentence.np(&pp.object_np).expect("object exists");
        let object_class = if object.is_pronoun {
            sentence_classes[rng.random_range(0..sentence_classes.len())].clone()
        } else {
            object.semantic_class.clone()
        };
        for site in &pp.candidate_sites {
            if !rng.random_ratio(3, 5) {
                continue;
            }
            let class = if rng.random_ratio(4, 5) {
                object_class.clone()
            } else {
                sentence_classes[rng.random_range(0..sentence_classes.len())].clone()
            };
            match site {
                SiteRef::FrameRole { frame, role } => {
                    let predicate = sentence
                        .frame(frame)
                        .map(|f| f.predicate_lemma.clone())
                        .unwrap_or_default();
                    push_rule(
                        &mut rules,
                        AttachmentRule {
                            governor: predicate,
                            prep: pp.preposition.clone(),
                            object_class: class.clone(),
                            role: role.clone(),
                            score: rng.random_range(1..=10),
                        },
                    );
                    if rng.random_ratio(4, 5) {
                        slot_updates.push((
                            frame.clone(),
                            role.clone(),
                            class,
                            pp.preposition.clone(),
                        ));
                    }
                }
                SiteRef::NpModifier { np } => {
                    let governor = sentence
                        .np(np)
                        .map(|n| {
                            if rng.random_ratio(1, 2) {
                                n.head_lemma.clone()
                            } else {
                                n.semantic_class.as_str().to_string()
                            }
                        })
                        .unwrap_or_default();
                    push_rule(
                        &mut rules,
                        AttachmentRule {
                            governor,
                            prep: pp.preposition.clone(),
                            object_class: class,
                            role: RoleName::from("MOD"),
                            score: rng.random_range(1..=10),
                        },
                    );
                }
            }
        }
    }
    for (frame_id, role, class, prep) in slot_updates {
        if let Some(frame) = sentence.frames.iter_mut().find(|f| f.id == frame_id) {
            if let Some(slot) = frame.roles.get_mut(&role) {
                slot.expected_classes.insert(class);
                slot.admitted_prepositions.insert(prep);
            }
        }
    }
    AttachmentRuleTable { rules }
}

fn build_lexicon(sentence: &AnnotatedSentence, possessors: BTreeSet<ClassTag>) -> SemanticLexicon {
    let mut classes: BTreeSet<ClassTag> = CLASSES.iter().map(|c| ClassTag::from(*c)).collect();
    classes.insert(ClassTag::from("C-PRON"));
    let mut entries: BTreeMap<String, LexEntry> = BTreeMap::new();
    for np in &sentence.nps {
        classes.insert(np.semantic_class.clone());
        entries.entry(np.head_lemma.clone()).or_insert(LexEntry {
            class: np.semantic_class.clone(),
            gender: np.agreement.gender,
            number: np.agreement.number,
        });
    }
    SemanticLexicon {
        classes,
        entries,
        possessor_classes: Some(possessors),
    }
}

/// Generate a short random document: consecutive sentences with a shared
/// lexicon and rule table, entity ids prefixed per sentence.
pub fn generate_document(
    seed: u64,
    cfg: &GenConfig,
) -> (Vec<AnnotatedSentence>, SemanticLexicon, AttachmentRuleTable) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let n = rng.random_range(1..=3);
    let mut sentences = Vec::new();
    let mut entries = BTreeMap::new();
    let mut classes = BTreeSet::new();
    let mut rules = Vec::new();
    let mut possessors = BTreeSet::new();
    for i in 0..n {
        let inst = generate_sentence(
            seed.wrapping_add(i as u64).wrapping_mul(0x100000001b3),
            cfg,
            i,
            &format!("s{i}_"),
        );
        sentences.push(inst.sentence);
        entries.extend(inst.lexicon.entries);
        classes.extend(inst.lexicon.classes);
        possessors.extend(inst.lexicon.possessor_classes.unwrap_or_default());
        rules.extend(inst.rules.rules);
    }
    let lexicon = SemanticLexicon {
        classes,
        entries,
        possessor_classes: Some(possessors),
    };
    // Re-apply the conflict filter across the merged table.
    let mut merged: Vec<AttachmentRule> = Vec::new();
    for rule in rules {
        let conflict = merged.iter().any(|r| {
            r.governor == rule.governor
                && r.prep == rule.prep
                && r.object_class == rule.object_class
                && r.score == rule.score
                && r.role != rule.role
        });
        if !conflict {
            merged.push(rule);
        }
    }
    (sentences, lexicon, AttachmentRuleTable { rules: merged })
}
