use std::collections::btree_set;
use std::collections::BTreeSet;
use std::path::Path;

use super::term::{Iri, Term, Triple};
use super::turtle;
use super::StoreError;

/// A set of triples. Iteration order is the total order on [`Triple`], so
/// anything derived from a graph by iterating it is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Returns `true` if the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn add(&mut self, subject: Iri, predicate: Iri, object: impl Into<Term>) -> bool {
        self.insert(Triple::new(subject, predicate, object))
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    pub fn is_subset(&self, other: &Graph) -> bool {
        self.triples.is_subset(&other.triples)
    }

    /// Adds every triple of `other`.
    pub fn absorb(&mut self, other: Graph) {
        if self.triples.len() < other.triples.len() {
            let mut other = other;
            other.triples.append(&mut self.triples);
            *self = other;
        } else {
            self.triples.extend(other.triples);
        }
    }

    pub fn with_predicate<'a>(&'a self, predicate: &'a str) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples
            .iter()
            .filter(move |t| t.predicate.as_str() == predicate)
    }

    /// Objects of `(subject, predicate, ?)`.
    pub fn objects<'a>(&'a self, subject: &'a Iri, predicate: &'a str) -> impl Iterator<Item = &'a Term> + 'a {
        // triples sort by subject first, so this is a range scan
        self.triples
            .range(subject_lower_bound(subject)..)
            .take_while(move |t| &t.subject == subject)
            .filter(move |t| t.predicate.as_str() == predicate)
            .map(|t| &t.object)
    }

    pub fn subjects(&self) -> impl Iterator<Item = &Iri> {
        let mut last: Option<&Iri> = None;
        self.triples.iter().filter_map(move |t| {
            if last == Some(&t.subject) {
                None
            } else {
                last = Some(&t.subject);
                Some(&t.subject)
            }
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), StoreError> {
        std::fs::write(path, turtle::serialize_turtle(self))?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Graph, StoreError> {
        let text = std::fs::read_to_string(path)?;
        Ok(turtle::parse_turtle(&text)?)
    }
}

fn subject_lower_bound(subject: &Iri) -> Triple {
    // the empty string sorts before every valid IRI
    Triple {
        subject: subject.clone(),
        predicate: Iri::minimal(),
        object: Term::Iri(Iri::minimal()),
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

impl IntoIterator for Graph {
    type Item = Triple;
    type IntoIter = btree_set::IntoIter<Triple>;
    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = btree_set::Iter<'a, Triple>;
    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// Set union of all graphs.
pub fn merge<I>(graphs: I) -> Graph
where
    I: IntoIterator<Item = Graph>,
{
    graphs.into_iter().fold(Graph::new(), |mut acc, g| {
        acc.absorb(g);
        acc
    })
}
