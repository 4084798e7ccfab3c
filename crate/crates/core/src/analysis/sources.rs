use std::collections::{BTreeMap, BTreeSet};

use super::buckets::Hundredths;
use crate::ontology::{builtin, Relation};
use crate::store::{Graph, Iri, Term};

/// Per-source counts and the three averages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSummary {
    pub source: String,
    pub objects: u64,
    pub taggers: u64,
    pub tags: u64,
    pub tag_per_object: Hundredths,
    pub tag_per_tagger: Hundredths,
    pub object_per_tagger: Hundredths,
}

impl SourceSummary {
    pub fn from_counts(source: impl Into<String>, objects: u64, taggers: u64, tags: u64) -> Self {
        SourceSummary {
            source: source.into(),
            objects,
            taggers,
            tags,
            tag_per_object: Hundredths::ratio(tags, objects),
            tag_per_tagger: Hundredths::ratio(tags, taggers),
            object_per_tagger: Hundredths::ratio(objects, taggers),
        }
    }
}

/// `scheme://host[:port]` of a source IRI, or the IRI itself when it has
/// no authority.
pub fn source_site(source: &Term) -> String {
    let text = source.text();
    match url::Url::parse(text) {
        Ok(u) if u.has_host() => u.origin().ascii_serialization(),
        _ => text.to_string(),
    }
}

#[derive(Default)]
struct Acc<'g> {
    objects: BTreeSet<&'g Iri>,
    taggers: BTreeSet<&'g str>,
    tags: u64,
}

/// Summaries per source site, sorted by site.
///
/// Each tagging node is attributed to the site(s) of its object's
/// `hasSource` values. A tagger is counted whether or not the node carries
/// tags.
pub fn source_summary(g: &Graph) -> Vec<SourceSummary> {
    let s = builtin();
    let has_object = s.relation_iri(Relation::HasObject);
    let has_source = s.relation_iri(Relation::HasSource);
    let has_creator = s.relation_iri(Relation::HasCreator);
    let has_tag = s.relation_iri(Relation::HasTag);

    let mut acc: BTreeMap<String, Acc<'_>> = BTreeMap::new();
    for t in g.with_predicate(has_object.as_str()) {
        let Some(object) = t.object.as_iri() else { continue };
        let sites: BTreeSet<String> = g.objects(object, has_source.as_str()).map(source_site).collect();
        let taggers: Vec<&str> = g
            .objects(&t.subject, has_creator.as_str())
            .map(Term::text)
            .collect();
        let tags = g.objects(&t.subject, has_tag.as_str()).count() as u64;
        for site in sites {
            let a = acc.entry(site).or_default();
            a.objects.insert(object);
            a.taggers.extend(taggers.iter().copied());
            a.tags += tags;
        }
    }
    acc.into_iter()
        .map(|(site, a)| SourceSummary::from_counts(site, a.objects.len() as u64, a.taggers.len() as u64, a.tags))
        .collect()
}
