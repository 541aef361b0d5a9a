//! Annotated-sentence data model: tokens, noun phrases, anaphors, prepositional
//! phrases, frames with role slots, the semantic lexicon, the attachment rule
//! table, and the cross-sentence discourse state.
//!
//! Everything here is immutable after validation except the per-decision
//! `status` fields and frame role-slot fillers, which the engine mutates while
//! it works through one sentence.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }
    };
}

id_type!(
    /// Identifier of a noun phrase; unique across a document.
    EntityId
);
id_type!(
    /// Identifier of one pending pronoun-resolution decision.
    AnaphorId
);
id_type!(
    /// Identifier of one pending attachment decision.
    PpId
);
id_type!(
    /// Identifier of a frame within a sentence.
    FrameId
);
id_type!(
    /// Name of a role slot inside a frame.
    RoleName
);
id_type!(
    /// Semantic class tag; the tag set is defined by the lexicon file.
    ClassTag
);

/// Half-open token span `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index < self.end
    }

    pub fn contains_span(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl From<(usize, usize)> for Span {
    fn from((start, end): (usize, usize)) -> Self {
        Span { start, end }
    }
}

impl From<Span> for (usize, usize) {
    fn from(s: Span) -> Self {
        (s.start, s.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Masc,
    Fem,
    Neut,
    Unspec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Sing,
    Plur,
    Unspec,
}

/// Gender/number pair used for antecedent filtering; `unspec` matches anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub gender: Gender,
    pub number: Number,
}

impl Agreement {
    pub fn new(gender: Gender, number: Number) -> Self {
        Agreement { gender, number }
    }

    pub fn gender_compatible(&self, other: &Agreement) -> bool {
        self.gender == Gender::Unspec
            || other.gender == Gender::Unspec
            || self.gender == other.gender
    }

    pub fn number_compatible(&self, other: &Agreement) -> bool {
        self.number == Number::Unspec
            || other.number == Number::Unspec
            || self.number == other.number
    }

    pub fn compatible(&self, other: &Agreement) -> bool {
        self.gender_compatible(other) && self.number_compatible(other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    #[serde(rename = "i")]
    pub index: usize,
    pub surface: String,
    pub lemma: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounPhrase {
    pub id: EntityId,
    pub span: Span,
    #[serde(rename = "head")]
    pub head_lemma: String,
    #[serde(rename = "class")]
    pub semantic_class: ClassTag,
    #[serde(flatten)]
    pub agreement: Agreement,
    #[serde(rename = "pronoun", default)]
    pub is_pronoun: bool,
    #[serde(rename = "parent", default, skip_serializing_if = "Option::is_none")]
    pub parent_np: Option<EntityId>,
}

impl NounPhrase {
    /// True when the head lemma is a common noun rather than a proper name.
    /// Proper names are annotated with capitalized lemmas.
    pub fn has_common_noun_head(&self) -> bool {
        self.head_lemma
            .chars()
            .next()
            .is_some_and(|c| c.is_lowercase())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnaphorKind {
    Personal,
    Possessive,
    DemonstrativeOneAnaphor,
}

/// Why an anaphor ended without an antecedent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnresolvableReason {
    NoCandidate,
    CataphorOutOfScope,
    Deadlock,
}

impl fmt::Display for UnresolvableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnresolvableReason::NoCandidate => f.write_str("no-candidate"),
            UnresolvableReason::CataphorOutOfScope => f.write_str("cataphor-out-of-scope"),
            UnresolvableReason::Deadlock => f.write_str("deadlock"),
        }
    }
}

/// Lifecycle of one pronoun-resolution decision.
///
/// `Pending` and `Skipped` are open states the scheduler may revisit; the
/// other two are terminal and never change once set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum AnaphorStatus {
    #[default]
    Pending,
    Resolved {
        antecedent: EntityId,
        /// Semantic class copied from the antecedent at resolution time, so
        /// later attachment decisions can consult it without re-deriving it.
        semantic_class: ClassTag,
    },
    Skipped {
        blocked_by: PpId,
    },
    Unresolvable(UnresolvableReason),
}

impl AnaphorStatus {
    /// Open = still awaiting a terminal decision.
    pub fn is_open(&self) -> bool {
        matches!(self, AnaphorStatus::Pending | AnaphorStatus::Skipped { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anaphor {
    pub id: AnaphorId,
    #[serde(rename = "np")]
    pub np_id: EntityId,
    pub kind: AnaphorKind,
    pub position: usize,
    #[serde(skip)]
    pub status: AnaphorStatus,
}

/// One candidate attachment site: either an empty frame role or a noun phrase
/// the PP would modify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SiteRef {
    FrameRole { frame: FrameId, role: RoleName },
    NpModifier { np: EntityId },
}

impl fmt::Display for SiteRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteRef::FrameRole { frame, role } => write!(f, "{frame}.{role}"),
            SiteRef::NpModifier { np } => write!(f, "np:{np}"),
        }
    }
}

/// Why a PP attachment was skipped for the current pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PpSkipReason {
    ObjectContainsAnaphor(AnaphorId),
    PrecededByAnaphor(AnaphorId),
}

impl fmt::Display for PpSkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PpSkipReason::ObjectContainsAnaphor(a) => write!(f, "object-contains-anaphor:{a}"),
            PpSkipReason::PrecededByAnaphor(a) => write!(f, "preceded-by-anaphor:{a}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnattachedReason {
    NoRule,
    Deadlock,
}

impl fmt::Display for UnattachedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnattachedReason::NoRule => f.write_str("no-rule"),
            UnattachedReason::Deadlock => f.write_str("deadlock"),
        }
    }
}

/// Lifecycle of one attachment decision; mirrors [`AnaphorStatus`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum PpStatus {
    #[default]
    Pending,
    Attached(SiteRef),
    Skipped(PpSkipReason),
    Unattached(UnattachedReason),
}

impl PpStatus {
    pub fn is_open(&self) -> bool {
        matches!(self, PpStatus::Pending | PpStatus::Skipped(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepPhrase {
    pub id: PpId,
    #[serde(rename = "prep")]
    pub preposition: String,
    #[serde(rename = "object")]
    pub object_np: EntityId,
    pub position: usize,
    #[serde(rename = "sites")]
    pub candidate_sites: Vec<SiteRef>,
    #[serde(skip)]
    pub status: PpStatus,
}

impl PrepPhrase {
    /// A PP is ambiguous when more than one attachment site is in play;
    /// single-site PPs attach deterministically and never block anything.
    pub fn is_ambiguous(&self) -> bool {
        self.candidate_sites.len() >= 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleSlot {
    #[serde(skip)]
    pub filler: Option<EntityId>,
    #[serde(rename = "expected")]
    pub expected_classes: BTreeSet<ClassTag>,
    #[serde(rename = "preps")]
    pub admitted_prepositions: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub id: FrameId,
    #[serde(rename = "predicate")]
    pub predicate_lemma: String,
    pub roles: BTreeMap<RoleName, RoleSlot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub index: usize,
    pub tokens: Vec<Token>,
    #[serde(default)]
    pub nps: Vec<NounPhrase>,
    #[serde(default)]
    pub anaphors: Vec<Anaphor>,
    #[serde(default)]
    pub pps: Vec<PrepPhrase>,
    #[serde(default)]
    pub frames: Vec<Frame>,
}

impl AnnotatedSentence {
    pub fn np(&self, id: &EntityId) -> Option<&NounPhrase> {
        self.nps.iter().find(|n| &n.id == id)
    }

    pub fn anaphor(&self, id: &AnaphorId) -> Option<&Anaphor> {
        self.anaphors.iter().find(|a| &a.id == id)
    }

    pub fn pp(&self, id: &PpId) -> Option<&PrepPhrase> {
        self.pps.iter().find(|p| &p.id == id)
    }

    pub fn frame(&self, id: &FrameId) -> Option<&Frame> {
        self.frames.iter().find(|f| &f.id == id)
    }

    /// The anaphor record attached to a pronoun noun phrase, if any.
    pub fn anaphor_for_np(&self, np_id: &EntityId) -> Option<&Anaphor> {
        self.anaphors.iter().find(|a| &a.np_id == np_id)
    }

    /// Token span of a PP's object noun phrase.
    pub fn object_span(&self, pp: &PrepPhrase) -> Span {
        self.np(&pp.object_np)
            .map(|n| n.span)
            .unwrap_or(Span::new(0, 0))
    }

    /// The subject noun phrase: the leftmost phrase not embedded in another.
    pub fn subject_np(&self) -> Option<&NounPhrase> {
        self.nps
            .iter()
            .filter(|n| n.parent_np.is_none())
            .min_by_key(|n| (n.span.start, n.span.end))
    }

    /// True while any anaphor or PP is still awaiting a terminal decision.
    pub fn has_open_decisions(&self) -> bool {
        self.anaphors.iter().any(|a| a.status.is_open())
            || self.pps.iter().any(|p| p.status.is_open())
    }
}

// ---------------------------------------------------------------------------
// Lexicon and rule table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexEntry {
    pub class: ClassTag,
    pub gender: Gender,
    pub number: Number,
}

impl LexEntry {
    pub fn agreement(&self) -> Agreement {
        Agreement::new(self.gender, self.number)
    }
}

/// Lemma -> (semantic class, default agreement) mapping plus the class-tag
/// universe. Lookups must be total over the head lemmas of any corpus used
/// with it; validation enforces that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticLexicon {
    pub classes: BTreeSet<ClassTag>,
    pub entries: BTreeMap<String, LexEntry>,
    /// Classes admitted as possessors of a possessive pronoun. Absent means
    /// the built-in default set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub possessor_classes: Option<BTreeSet<ClassTag>>,
}

impl SemanticLexicon {
    pub fn lookup(&self, lemma: &str) -> Option<&LexEntry> {
        self.entries.get(lemma)
    }

    pub fn possessor_classes(&self) -> BTreeSet<ClassTag> {
        self.possessor_classes.clone().unwrap_or_else(|| {
            ["ORGANIZATION", "HUMAN", "EVENT"]
                .into_iter()
                .map(ClassTag::from)
                .collect()
        })
    }
}

/// One attachment rule. `governor` is matched against a frame's predicate
/// lemma, or against a noun phrase's head lemma or semantic class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentRule {
    pub governor: String,
    pub prep: String,
    pub object_class: ClassTag,
    pub role: RoleName,
    pub score: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentRuleTable {
    pub rules: Vec<AttachmentRule>,
}

// ---------------------------------------------------------------------------
// Discourse state
// ---------------------------------------------------------------------------

/// Snapshot of one salient entity carried across sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FocusEntry {
    pub entity: EntityId,
    pub sentence_index: usize,
    pub semantic_class: ClassTag,
    pub agreement: Agreement,
    pub head_lemma: String,
}

/// Ordered focus list, most salient entity first. Entities come only from
/// sentences already processed and appear at most once.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiscourseState {
    pub focus_list: Vec<FocusEntry>,
}

impl DiscourseState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entry(&self, entity: &EntityId) -> Option<&FocusEntry> {
        self.focus_list.iter().find(|e| &e.entity == entity)
    }

    /// Salience rank of an entity: 0 is the current discourse focus.
    pub fn rank(&self, entity: &EntityId) -> Option<usize> {
        self.focus_list.iter().position(|e| &e.entity == entity)
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// One invariant breach, naming the offending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub id: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.message)
    }
}

/// Outcome of validating one sentence; violations are data, not failures.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("sentence {index} failed validation: {report}")]
    Invalid {
        index: usize,
        report: ValidationReport,
    },
    #[error("no lexicon entry for lemma `{lemma}`")]
    MissingLexeme { lemma: String },
}

fn violation(id: impl fmt::Display, message: impl Into<String>) -> Violation {
    Violation {
        id: id.to_string(),
        message: message.into(),
    }
}

/// Validate one sentence against every structural invariant, including
/// lexicon totality over head lemmas. Returns every breach found.
pub fn validate_sentence(s: &AnnotatedSentence, lex: &SemanticLexicon) -> ValidationReport {
    let mut report = collect_structural_violations(s);
    for np in &s.nps {
        if lex.lookup(&np.head_lemma).is_none() {
            report.violations.push(violation(
                &np.id,
                format!("head lemma `{}` missing from lexicon", np.head_lemma),
            ));
        }
        if !lex.classes.contains(&np.semantic_class) {
            report.violations.push(violation(
                &np.id,
                format!("semantic class `{}` not defined", np.semantic_class),
            ));
        }
    }
    for frame in &s.frames {
        for (role, slot) in &frame.roles {
            for class in &slot.expected_classes {
                if !lex.classes.contains(class) {
                    report.violations.push(violation(
                        &frame.id,
                        format!("role {role} expects undefined class `{class}`"),
                    ));
                }
            }
        }
    }
    report
}

/// Structural checks that need no lexicon: spans, cross-references, ordering,
/// pronoun/anaphor pairing, and site well-formedness.
pub fn collect_structural_violations(s: &AnnotatedSentence) -> ValidationReport {
    let mut out = Vec::new();
    let n_tokens = s.tokens.len();

    for (i, t) in s.tokens.iter().enumerate() {
        if t.index != i {
            out.push(violation(
                format!("token:{}", t.index),
                format!("token index {} at list position {i}", t.index),
            ));
        }
    }

    let mut np_ids = HashSet::new();
    for np in &s.nps {
        if !np_ids.insert(np.id.clone()) {
            out.push(violation(&np.id, "duplicate noun phrase id"));
        }
        if np.span.start >= np.span.end || np.span.end > n_tokens {
            out.push(violation(
                &np.id,
                format!(
                    "span [{}, {}) outside sentence bounds",
                    np.span.start, np.span.end
                ),
            ));
        }
        if let Some(parent) = &np.parent_np {
            match s.np(parent) {
                None => out.push(violation(&np.id, format!("parent `{parent}` not found"))),
                Some(p) => {
                    if parent == &np.id || !p.span.contains_span(np.span) {
                        out.push(violation(
                            &np.id,
                            format!("parent `{parent}` span does not contain this span"),
                        ));
                    }
                }
            }
        }
    }

    let mut anaphor_ids = HashSet::new();
    let mut anaphors_per_np: HashMap<&EntityId, usize> = HashMap::new();
    let mut last_anaphor_pos: Option<usize> = None;
    for a in &s.anaphors {
        if !anaphor_ids.insert(a.id.clone()) {
            out.push(violation(&a.id, "duplicate anaphor id"));
        }
        match s.np(&a.np_id) {
            None => out.push(violation(
                &a.id,
                format!("noun phrase `{}` not found", a.np_id),
            )),
            Some(np) => {
                if !np.is_pronoun {
                    out.push(violation(
                        &a.id,
                        format!("references non-pronoun noun phrase `{}`", np.id),
                    ));
                }
                if !np.span.contains(a.position) {
                    out.push(violation(
                        &a.id,
                        format!("position {} outside pronoun span", a.position),
                    ));
                }
            }
        }
        *anaphors_per_np.entry(&a.np_id).or_default() += 1;
        if let Some(prev) = last_anaphor_pos {
            if a.position <= prev {
                out.push(violation(&a.id, "anaphor positions must strictly increase"));
            }
        }
        last_anaphor_pos = Some(a.position);
    }
    for np in &s.nps {
        let n = anaphors_per_np.get(&np.id).copied().unwrap_or(0);
        if np.is_pronoun && n != 1 {
            out.push(violation(
                &np.id,
                format!("pronoun noun phrase referenced by {n} anaphors, expected 1"),
            ));
        }
        if !np.is_pronoun && n != 0 {
            out.push(violation(
                &np.id,
                "non-pronoun noun phrase referenced by an anaphor",
            ));
        }
    }

    let mut pp_ids = HashSet::new();
    let mut last_pp_pos: Option<usize> = None;
    let mut seen_role_sites: HashSet<(&FrameId, &RoleName)> = HashSet::new();
    for pp in &s.pps {
        if !pp_ids.insert(pp.id.clone()) {
            out.push(violation(&pp.id, "duplicate prepositional phrase id"));
        }
        if pp.position >= n_tokens {
            out.push(violation(
                &pp.id,
                format!("position {} out of bounds", pp.position),
            ));
        }
        match s.np(&pp.object_np) {
            None => out.push(violation(
                &pp.id,
                format!("object `{}` not found", pp.object_np),
            )),
            Some(obj) => {
                if obj.span.start <= pp.position {
                    out.push(violation(
                        &pp.id,
                        "object span must begin after the preposition",
                    ));
                }
            }
        }
        if pp.candidate_sites.is_empty() {
            out.push(violation(&pp.id, "empty candidate_sites"));
        }
        for site in &pp.candidate_sites {
            match site {
                SiteRef::FrameRole { frame, role } => match s.frame(frame) {
                    None => out.push(violation(&pp.id, format!("site frame `{frame}` not found"))),
                    Some(f) => {
                        if !f.roles.contains_key(role) {
                            out.push(violation(
                                &pp.id,
                                format!("site role `{role}` not found in frame `{frame}`"),
                            ));
                        } else if !seen_role_sites.insert((frame, role)) {
                            // Two PPs competing for one slot would make the
                            // outcome depend on processing order.
                            out.push(violation(
                                &pp.id,
                                format!("frame role site `{frame}.{role}` claimed by two PPs"),
                            ));
                        }
                    }
                },
                SiteRef::NpModifier { np } => {
                    if s.np(np).is_none() {
                        out.push(violation(
                            &pp.id,
                            format!("site noun phrase `{np}` not found"),
                        ));
                    }
                }
            }
        }
        if let PpStatus::Attached(site) = &pp.status {
            if !pp.candidate_sites.contains(site) {
                out.push(violation(&pp.id, "attached site is not a candidate site"));
            }
        }
        if let Some(prev) = last_pp_pos {
            if pp.position <= prev {
                out.push(violation(&pp.id, "PP positions must strictly increase"));
            }
        }
        last_pp_pos = Some(pp.position);
    }

    let mut frame_ids = HashSet::new();
    for f in &s.frames {
        if !frame_ids.insert(f.id.clone()) {
            out.push(violation(&f.id, "duplicate frame id"));
        }
    }

    ValidationReport { violations: out }
}

/// Validate a whole document: per-sentence invariants plus strictly
/// increasing sentence indices and document-wide entity id uniqueness.
pub fn validate_document(
    sentences: &[AnnotatedSentence],
    lex: &SemanticLexicon,
) -> Result<(), ModelError> {
    let mut seen_entities: HashSet<&EntityId> = HashSet::new();
    let mut last_index: Option<usize> = None;
    for s in sentences {
        let mut report = validate_sentence(s, lex);
        if let Some(prev) = last_index {
            if s.index <= prev {
                report.violations.push(violation(
                    format!("sentence:{}", s.index),
                    "sentence indices must strictly increase",
                ));
            }
        }
        last_index = Some(s.index);
        for np in &s.nps {
            if !seen_entities.insert(&np.id) {
                report
                    .violations
                    .push(violation(&np.id, "entity id reused across sentences"));
            }
        }
        if !report.is_ok() {
            return Err(ModelError::Invalid {
                index: s.index,
                report,
            });
        }
    }
    Ok(())
}

/// Reset a validated sentence to its starting state: every anaphor and PP
/// pending, and every role slot named by a candidate site empty.
pub fn build_initial_state(
    s: &AnnotatedSentence,
    lex: &SemanticLexicon,
) -> Result<AnnotatedSentence, ModelError> {
    let report = validate_sentence(s, lex);
    if !report.is_ok() {
        return Err(ModelError::Invalid {
            index: s.index,
            report,
        });
    }
    let mut out = s.clone();
    for a in &mut out.anaphors {
        a.status = AnaphorStatus::Pending;
    }
    let targeted: Vec<(FrameId, RoleName)> = out
        .pps
        .iter()
        .flat_map(|p| p.candidate_sites.iter())
        .filter_map(|site| match site {
            SiteRef::FrameRole { frame, role } => Some((frame.clone(), role.clone())),
            SiteRef::NpModifier { .. } => None,
        })
        .collect();
    for p in &mut out.pps {
        p.status = PpStatus::Pending;
    }
    for (frame_id, role) in targeted {
        if let Some(f) = out.frames.iter_mut().find(|f| f.id == frame_id) {
            if let Some(slot) = f.roles.get_mut(&role) {
                slot.filler = None;
            }
        }
    }
    Ok(out)
}
