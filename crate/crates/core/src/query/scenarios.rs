//! The three canned searches, each an explicit [`Query`].

use super::eval::{eval, ResultSet};
use super::pattern::{Pattern, Query, Slot};
use crate::ontology::{builtin, Relation};
use crate::store::{Graph, Iri, Literal, Term};
use crate::vocab;

fn rel(r: Relation) -> Slot {
    Slot::from(builtin().relation_iri(r))
}

fn var(name: &str) -> Slot {
    Slot::var(name)
}

/// Objects tagged `tag_text` under any site template, with their votes,
/// highest vote first.
///
/// The tag must sit on the same tagging node as the vote.
pub fn objects_by_tag_query(tag_text: &str) -> Query {
    let mut q = Query::select(&["object", "vote"]).distinct().order_by("vote", true, true);
    for tag in vocab::tag_iri_candidates(tag_text) {
        let tag = Iri::new(tag).expect("tag templates give valid IRIs");
        q = q.block(vec![
            Pattern::new(var("x"), rel(Relation::HasObject), var("object")),
            Pattern::new(var("x"), rel(Relation::HasVote), var("vote")),
            Pattern::new(var("x"), rel(Relation::HasTag), tag),
        ]);
    }
    q
}

/// Taggers and tags of one object, grouped per tagging node.
pub fn taggers_of_object_query(object: &Iri) -> Query {
    Query::select(&["tagger", "x", "tag"])
        .block(vec![
            Pattern::new(var("x"), rel(Relation::HasObject), object.clone()),
            Pattern::new(var("x"), rel(Relation::HasTag), var("tag")),
            Pattern::new(var("x"), rel(Relation::HasCreator), var("tagger")),
        ])
        .order_by("tagger", false, false)
}

/// Objects and tags of one tagger, grouped per tagging node.
pub fn objects_of_tagger_query(tagger: &str) -> Query {
    Query::select(&["object", "x", "tag"])
        .block(vec![
            Pattern::new(var("x"), rel(Relation::HasObject), var("object")),
            Pattern::new(var("x"), rel(Relation::HasTag), var("tag")),
            Pattern::new(var("x"), rel(Relation::HasCreator), Term::from(Literal::plain(tagger))),
        ])
        .order_by("object", false, false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectVote {
    pub object: Term,
    pub vote: Term,
}

impl ObjectVote {
    pub fn vote_value(&self) -> Option<u64> {
        self.vote.as_literal().and_then(Literal::as_u64)
    }
}

/// One tagging node's tags, keyed by tagger (scenario 2) or object
/// (scenario 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagGroup {
    pub key: Term,
    pub tagging: Term,
    pub tags: Vec<Term>,
}

impl TagGroup {
    /// Space-joined tag text, as shown in a results table.
    pub fn tag_list(&self) -> String {
        self.tags
            .iter()
            .map(|t| vocab::tag_text(t.text()).unwrap_or_else(|| t.text().to_string()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Folds `(key, node, tag)` rows into one group per node, keeping row order.
fn group_rows(rs: ResultSet) -> Vec<TagGroup> {
    let mut out: Vec<TagGroup> = Vec::new();
    for mut row in rs.rows {
        let tag = row.pop().expect("three columns");
        let node = row.pop().expect("three columns");
        let key = row.pop().expect("three columns");
        match out.last_mut() {
            Some(g) if g.key == key && g.tagging == node => g.tags.push(tag),
            _ => out.push(TagGroup {
                key,
                tagging: node,
                tags: vec![tag],
            }),
        }
    }
    out
}

pub fn objects_by_tag(tag_text: &str, g: &Graph) -> Vec<ObjectVote> {
    let rs = eval(&objects_by_tag_query(tag_text), g).expect("scenario query is well formed");
    rs.rows
        .into_iter()
        .map(|mut r| {
            let vote = r.pop().expect("two columns");
            let object = r.pop().expect("two columns");
            ObjectVote { object, vote }
        })
        .collect()
}

pub fn taggers_of_object(object: &Iri, g: &Graph) -> Vec<TagGroup> {
    group_rows(eval(&taggers_of_object_query(object), g).expect("scenario query is well formed"))
}

pub fn objects_of_tagger(tagger: &str, g: &Graph) -> Vec<TagGroup> {
    group_rows(eval(&objects_of_tagger_query(tagger), g).expect("scenario query is well formed"))
}
