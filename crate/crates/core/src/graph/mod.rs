//! In-memory triple store holding the mapped deployment model.
//!
//! Triples are kept in set semantics with three positional indexes (subject,
//! predicate and object led). Iteration order, match results and the
//! N-Triples export all follow the lexicographic order of the serialized
//! `(subject, predicate, object)` tuple, so equal graphs always produce the
//! same bytes.

mod namespace;
mod term;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

pub use namespace::{Namespaces, DUL, EX, RDF, SODA, TOSCA};
pub use term::{BlankNode, Datatype, Iri, Literal, Subject, Term};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("invalid IRI `{0}`: missing scheme")]
    InvalidIri(String),
    #[error("literal `{lexical}` is not a valid {datatype:?}")]
    InvalidLiteral { lexical: String, datatype: Datatype },
    #[error("invalid blank node id `{0}`")]
    InvalidBlankNode(String),
    #[error("invalid namespace prefix `{0}`")]
    InvalidPrefix(String),
    #[error("unknown namespace prefix `{0}`")]
    UnknownPrefix(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: Term::from(subject.into()),
            predicate,
            object: object.into(),
        }
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn to_ntriples(&self) -> String {
        let mut line = String::new();
        self.subject.write_ntriples(&mut line);
        line.push(' ');
        Term::Iri(self.predicate.clone()).write_ntriples(&mut line);
        line.push(' ');
        self.object.write_ntriples(&mut line);
        line.push_str(" .");
        line
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.subject
            .cmp(&other.subject)
            .then_with(|| {
                if self.predicate == other.predicate {
                    Ordering::Equal
                } else {
                    Term::Iri(self.predicate.clone()).cmp(&Term::Iri(other.predicate.clone()))
                }
            })
            .then_with(|| self.object.cmp(&other.object))
    }
}

/// Serialized `(subject, predicate, object)`, rendered once on insert so that
/// ordering the store never re-serializes terms. Compares exactly like
/// `Triple`'s `Ord`.
type SortKey = Arc<(String, String, String)>;

fn sort_key(t: &Triple) -> SortKey {
    Arc::new((
        t.subject.to_ntriples(),
        Term::Iri(t.predicate.clone()).to_ntriples(),
        t.object.to_ntriples(),
    ))
}

type Bucket = BTreeMap<SortKey, Triple>;

#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: Bucket,
    by_subject: HashMap<Term, Bucket>,
    by_predicate: HashMap<Iri, Bucket>,
    by_object: HashMap<Term, Bucket>,
    namespaces: Namespaces,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_namespaces(namespaces: Namespaces) -> Self {
        Graph {
            namespaces,
            ..Self::default()
        }
    }

    pub fn namespaces(&self) -> &Namespaces {
        &self.namespaces
    }

    pub fn namespaces_mut(&mut self) -> &mut Namespaces {
        &mut self.namespaces
    }

    /// Returns `true` when the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let key = sort_key(&triple);
        if self.triples.contains_key(&key) {
            return false;
        }
        self.by_subject
            .entry(triple.subject.clone())
            .or_default()
            .insert(key.clone(), triple.clone());
        self.by_predicate
            .entry(triple.predicate.clone())
            .or_default()
            .insert(key.clone(), triple.clone());
        self.by_object
            .entry(triple.object.clone())
            .or_default()
            .insert(key.clone(), triple.clone());
        self.triples.insert(key, triple);
        true
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains_key(&sort_key(triple))
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.values()
    }

    /// All triples agreeing with every bound position, in canonical order.
    pub fn triples_matching(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> Vec<Triple> {
        // smallest candidate set among the bound positions
        let lookups = [
            subject.map(|s| self.by_subject.get(s)),
            predicate.map(|p| self.by_predicate.get(p)),
            object.map(|o| self.by_object.get(o)),
        ];
        let mut candidates: Option<&Bucket> = None;
        for lookup in lookups.into_iter().flatten() {
            let Some(set) = lookup else {
                return Vec::new();
            };
            if candidates.is_none_or(|c| set.len() < c.len()) {
                candidates = Some(set);
            }
        }
        candidates
            .unwrap_or(&self.triples)
            .values()
            .filter(|t| {
                subject.is_none_or(|s| &t.subject == s)
                    && predicate.is_none_or(|p| &t.predicate == p)
                    && object.is_none_or(|o| &t.object == o)
            })
            .cloned()
            .collect()
    }

    /// Canonical N-Triples: one triple per line, sorted, newline-terminated.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        for t in self.triples.values() {
            out.push_str(&t.to_ntriples());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}
