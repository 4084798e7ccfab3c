use rand::RngCore;
use thiserror::Error;

use super::graph::Graph;
use super::term::{Iri, Literal, MonthStamp};
use crate::ontology::{Relation, UtoSchema};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("entry tag <{0}> is not among the record's tags")]
    EntryTagNotInTags(String),
    #[error("tagger is empty")]
    EmptyTagger,
    #[error("tag <{0}> is listed more than once")]
    DuplicateTag(String),
}

/// A tagging record before it has been given a hub node id.
///
/// Site adapters produce these; the crawl engine mints ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecordDraft {
    pub entry_tag: Option<Iri>,
    pub tags: Vec<Iri>,
    pub tagger: String,
    pub object: Iri,
    pub source: Iri,
    pub date: MonthStamp,
    pub comment: Option<String>,
    pub vote: Option<u64>,
}

impl RecordDraft {
    pub fn with_id(self, tagging_id: Iri) -> TaggingRecord {
        TaggingRecord {
            tagging_id,
            entry_tag: self.entry_tag,
            tags: self.tags,
            tagger: self.tagger,
            object: self.object,
            source: self.source,
            date: self.date,
            comment: self.comment,
            vote: self.vote,
        }
    }

    pub fn check(&self) -> Result<(), RecordError> {
        check_fields(&self.entry_tag, &self.tags, &self.tagger)
    }
}

/// One tagging event, reified around the `tagging_id` hub node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggingRecord {
    pub tagging_id: Iri,
    /// Tag page the record was reached from, if any.
    pub entry_tag: Option<Iri>,
    pub tags: Vec<Iri>,
    pub tagger: String,
    pub object: Iri,
    pub source: Iri,
    pub date: MonthStamp,
    pub comment: Option<String>,
    pub vote: Option<u64>,
}

impl TaggingRecord {
    /// Returns the first violated record invariant, if any.
    pub fn check(&self) -> Result<(), RecordError> {
        check_fields(&self.entry_tag, &self.tags, &self.tagger)
    }

    pub fn into_draft(self) -> (Iri, RecordDraft) {
        (
            self.tagging_id,
            RecordDraft {
                entry_tag: self.entry_tag,
                tags: self.tags,
                tagger: self.tagger,
                object: self.object,
                source: self.source,
                date: self.date,
                comment: self.comment,
                vote: self.vote,
            },
        )
    }
}

fn check_fields(entry_tag: &Option<Iri>, tags: &[Iri], tagger: &str) -> Result<(), RecordError> {
    if tagger.is_empty() {
        return Err(RecordError::EmptyTagger);
    }
    for (i, t) in tags.iter().enumerate() {
        if tags[..i].contains(t) {
            return Err(RecordError::DuplicateTag(t.to_string()));
        }
    }
    if let Some(entry) = entry_tag {
        if !tags.contains(entry) {
            return Err(RecordError::EntryTagNotInTags(entry.to_string()));
        }
    }
    Ok(())
}

/// Mints `base` + a random version-4 UUID.
///
/// A `/` is inserted when `base` ends in neither `/` nor `#`.
pub fn mint_tagging_id<R: RngCore + ?Sized>(base: &Iri, rng: &mut R) -> Iri {
    let mut bytes = [0u8; 16];
    rng.fill_bytes(&mut bytes);
    let uuid = uuid::Builder::from_random_bytes(bytes).into_uuid();
    let sep = if base.as_str().ends_with(['/', '#']) { "" } else { "/" };
    base.join_suffix(&format!("{sep}{}", uuid.hyphenated()))
        .expect("a UUID suffix keeps the IRI valid")
}

/// Reifies `r` into triples around its tagging node.
pub fn record_to_triples(r: &TaggingRecord, schema: &UtoSchema) -> Result<Graph, RecordError> {
    r.check()?;
    let p = |rel: Relation| schema.relation_iri(rel);
    let hub = &r.tagging_id;
    let mut g = Graph::new();
    for tag in &r.tags {
        g.add(hub.clone(), p(Relation::HasTag), tag.clone());
    }
    if let Some(vote) = r.vote {
        g.add(hub.clone(), p(Relation::HasVote), Literal::integer(vote));
    }
    g.add(hub.clone(), p(Relation::HasCreator), Literal::plain(r.tagger.as_str()));
    g.add(hub.clone(), p(Relation::HasObject), r.object.clone());
    if let Some(comment) = &r.comment {
        g.add(hub.clone(), p(Relation::HasComment), Literal::plain(comment.as_str()));
    }
    g.add(hub.clone(), p(Relation::HasDate), Literal::month(r.date));
    g.add(r.object.clone(), p(Relation::HasSource), r.source.clone());
    if let Some(entry) = &r.entry_tag {
        for tag in r.tags.iter().filter(|t| *t != entry) {
            g.add(entry.clone(), p(Relation::HasRelatedTag), tag.clone());
        }
    }
    Ok(g)
}
