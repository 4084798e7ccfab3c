use std::collections::{BTreeMap, BTreeSet};

use super::histogram::TagKey;
use crate::ontology::{builtin, tagging_nodes, Relation};
use crate::store::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Pairs counted once per tagging node.
    Object,
    /// Pairs counted once per tagger, over the union of their tags.
    Tagger,
}

/// Tag pair → count, pairs ordered `(smaller, larger)`, no self-pairs.
pub type Cooccurrence = BTreeMap<(String, String), u64>;

pub fn cooccurrence(g: &Graph, axis: Axis) -> Cooccurrence {
    cooccurrence_keyed(g, axis, TagKey::Iri)
}

pub fn cooccurrence_keyed(g: &Graph, axis: Axis, key: TagKey) -> Cooccurrence {
    let s = builtin();
    let has_tag = s.relation_iri(Relation::HasTag);
    let has_creator = s.relation_iri(Relation::HasCreator);
    let mut groups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for node in tagging_nodes(g, s) {
        let tags: BTreeSet<String> = g.objects(node, has_tag.as_str()).map(|t| key.key(t)).collect();
        match axis {
            Axis::Object => {
                groups.insert(node.to_string(), tags);
            }
            Axis::Tagger => {
                for tagger in g.objects(node, has_creator.as_str()) {
                    groups
                        .entry(tagger.text().to_string())
                        .or_default()
                        .extend(tags.iter().cloned());
                }
            }
        }
    }
    let mut out = Cooccurrence::new();
    for tags in groups.values() {
        let tags: Vec<&String> = tags.iter().collect();
        for (i, a) in tags.iter().enumerate() {
            for b in &tags[i + 1..] {
                *out.entry(((*a).clone(), (*b).clone())).or_insert(0) += 1;
            }
        }
    }
    out
}
