//! Independent check of the scheduler: build the blocking-dependency graph
//! from the initial sentence state, process decisions in topological order
//! (ties by textual position) with no pass structure, and compare final
//! states with the engine's. The linguistic rules themselves are shared with
//! the engine on purpose -- this verifies the scheduling, not the rules.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::anaphora::{candidate_antecedents, resolve_anaphor, ResolveOutcome};
use crate::attachment::{apply_attachment, attach_pp, AttachOutcome};
use crate::coordinator::SentenceResult;
use crate::model::{
    build_initial_state, AnaphorStatus, AnnotatedSentence, AttachmentRuleTable, DiscourseState,
    ModelError, PpStatus, SemanticLexicon, UnattachedReason, UnresolvableReason,
};

/// A decision node: one anaphor or one PP of a single sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Anaphor(String),
    Pp(String),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Anaphor(id) | Node::Pp(id) => f.write_str(id),
        }
    }
}

/// Blocking dependencies computed from the initial state only: an edge
/// `x -> y` means x cannot be decided until y is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    /// All decision nodes with their textual positions, in textual order.
    pub nodes: Vec<(Node, usize)>,
    pub edges: Vec<(Node, Node)>,
}

impl DependencyGraph {
    pub fn dependencies<'a>(&'a self, node: &'a Node) -> impl Iterator<Item = &'a Node> + 'a {
        self.edges
            .iter()
            .filter(move |(from, _)| from == node)
            .map(|(_, to)| to)
    }

    /// Acyclic means every decision eventually proceeds under topological
    /// processing.
    pub fn is_acyclic(&self) -> bool {
        let mut decided: HashSet<&Node> = HashSet::new();
        loop {
            let ready = self.nodes.iter().find(|(n, _)| {
                !decided.contains(n) && self.dependencies(n).all(|d| decided.contains(d))
            });
            match ready {
                Some((n, _)) => {
                    decided.insert(n);
                }
                None => return decided.len() == self.nodes.len(),
            }
        }
    }
}

/// Build the blocking graph for a sentence in its initial state: an anaphor
/// depends on every ambiguous PP before it (other than one whose object
/// contains it), and a PP depends on every anaphor inside its object or
/// before it.
pub fn dependency_graph(s: &AnnotatedSentence) -> DependencyGraph {
    let mut nodes: Vec<(Node, usize)> = Vec::new();
    let mut edges = Vec::new();

    for a in &s.anaphors {
        nodes.push((Node::Anaphor(a.id.to_string()), a.position));
        for pp in &s.pps {
            if pp.position < a.position
                && pp.is_ambiguous()
                && !s.object_span(pp).contains(a.position)
            {
                edges.push((Node::Anaphor(a.id.to_string()), Node::Pp(pp.id.to_string())));
            }
        }
    }
    for pp in &s.pps {
        nodes.push((Node::Pp(pp.id.to_string()), pp.position));
        let object = s.object_span(pp);
        for a in &s.anaphors {
            if object.contains(a.position) || a.position < pp.position {
                edges.push((Node::Pp(pp.id.to_string()), Node::Anaphor(a.id.to_string())));
            }
        }
    }
    nodes.sort_by_key(|(n, pos)| (*pos, n.clone()));
    DependencyGraph { nodes, edges }
}

/// Resolve a sentence by topological processing over the dependency graph.
/// Nodes whose dependencies never clear (cycles and anything downstream of
/// one) are marked as deadlocked.
pub fn oracle_resolve(
    s: &AnnotatedSentence,
    d: &DiscourseState,
    rules: &AttachmentRuleTable,
    lex: &SemanticLexicon,
) -> Result<AnnotatedSentence, ModelError> {
    let mut state = build_initial_state(s, lex)?;
    let graph = dependency_graph(&state);

    let mut decided: HashSet<Node> = HashSet::new();
    let deps: HashMap<&Node, Vec<&Node>> = graph
        .nodes
        .iter()
        .map(|(n, _)| (n, graph.dependencies(n).collect()))
        .collect();

    loop {
        let next =
            graph.nodes.iter().map(|(n, _)| n).find(|n| {
                !decided.contains(n) && deps[*n].iter().all(|dep| decided.contains(*dep))
            });
        let Some(node) = next else { break };

        match node {
            Node::Anaphor(id) => {
                let a_id = crate::model::AnaphorId(id.clone());
                let candidates = candidate_antecedents(&a_id, &state, d, lex);
                let status = match resolve_anaphor(&a_id, &candidates) {
                    ResolveOutcome::Resolved {
                        antecedent,
                        semantic_class,
                    } => AnaphorStatus::Resolved {
                        antecedent,
                        semantic_class,
                    },
                    ResolveOutcome::Unresolvable(reason) => AnaphorStatus::Unresolvable(reason),
                };
                if let Some(a) = state.anaphors.iter_mut().find(|a| a.id.as_str() == id) {
                    a.status = status;
                }
            }
            Node::Pp(id) => {
                let p_id = crate::model::PpId(id.clone());
                match attach_pp(&p_id, &state, rules, lex)? {
                    AttachOutcome::Attached(decision) => apply_attachment(&mut state, &decision),
                    AttachOutcome::Unattached(reason) => {
                        if let Some(p) = state.pps.iter_mut().find(|p| p.id.as_str() == id) {
                            p.status = PpStatus::Unattached(reason);
                        }
                    }
                }
            }
        }
        decided.insert(node.clone());
    }

    for a in &mut state.anaphors {
        if a.status.is_open() {
            a.status = AnaphorStatus::Unresolvable(UnresolvableReason::Deadlock);
        }
    }
    for p in &mut state.pps {
        if p.status.is_open() {
            p.status = PpStatus::Unattached(UnattachedReason::Deadlock);
        }
    }
    Ok(state)
}

/// One disagreement between engine and oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diff {
    pub id: String,
    pub engine: String,
    pub oracle: String,
}

impl fmt::Display for Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: engine={} oracle={}",
            self.id, self.engine, self.oracle
        )
    }
}

/// Engine-vs-oracle equivalence over final statuses, antecedents, attachment
/// sites, and role-slot fillers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompareReport {
    pub diffs: Vec<Diff>,
}

impl CompareReport {
    pub fn is_equal(&self) -> bool {
        self.diffs.is_empty()
    }
}

pub fn compare(engine: &SentenceResult, oracle: &AnnotatedSentence) -> CompareReport {
    let mut diffs = Vec::new();
    let e = &engine.sentence;

    for a in &e.anaphors {
        let other = oracle.anaphor(&a.id);
        let engine_status = format!("{:?}", a.status);
        let oracle_status = other.map_or("<missing>".to_string(), |o| format!("{:?}", o.status));
        if other.map(|o| &o.status) != Some(&a.status) {
            diffs.push(Diff {
                id: a.id.to_string(),
                engine: engine_status,
                oracle: oracle_status,
            });
        }
    }
    for p in &e.pps {
        let other = oracle.pp(&p.id);
        let engine_status = format!("{:?}", p.status);
        let oracle_status = other.map_or("<missing>".to_string(), |o| format!("{:?}", o.status));
        if other.map(|o| &o.status) != Some(&p.status) {
            diffs.push(Diff {
                id: p.id.to_string(),
                engine: engine_status,
                oracle: oracle_status,
            });
        }
    }
    for f in &e.frames {
        let other = oracle.frame(&f.id);
        for (role, slot) in &f.roles {
            let oracle_filler = other
                .and_then(|of| of.roles.get(role))
                .and_then(|s| s.filler.clone());
            if oracle_filler != slot.filler {
                diffs.push(Diff {
                    id: format!("{}.{}", f.id, role),
                    engine: format!("{:?}", slot.filler),
                    oracle: format!("{oracle_filler:?}"),
                });
            }
        }
    }
    CompareReport { diffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_is_acyclic() {
        let g = DependencyGraph {
            nodes: vec![],
            edges: vec![],
        };
        assert!(g.is_acyclic());
    }

    #[test]
    fn two_node_cycle_is_detected() {
        let a = Node::Anaphor("a".into());
        let p = Node::Pp("p".into());
        let g = DependencyGraph {
            nodes: vec![(a.clone(), 0), (p.clone(), 1)],
            edges: vec![(a.clone(), p.clone()), (p, a)],
        };
        assert!(!g.is_acyclic());
    }
}
