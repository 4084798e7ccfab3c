use std::collections::{BTreeMap, BTreeSet};

use crate::ontology::{builtin, tagging_nodes, Relation};
use crate::store::{Graph, Term};
use crate::vocab;

/// How tags are identified when counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TagKey {
    /// Full tag IRI: the same word on two sites is two tags.
    #[default]
    Iri,
    /// Decoded tag text from the site URL template; IRIs outside the known
    /// templates are kept whole.
    FoldedText,
}

impl TagKey {
    pub(crate) fn key(self, tag: &Term) -> String {
        match self {
            TagKey::Iri => tag.text().to_string(),
            TagKey::FoldedText => vocab::tag_text(tag.text()).unwrap_or_else(|| tag.text().to_string()),
        }
    }
}

/// Tag → number of assignments (`hasTag` triples on tagging nodes).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagHistogram {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl TagHistogram {
    /// Builds a histogram from `(tag, count)` pairs. Repeated tags are summed,
    /// zero counts dropped.
    pub fn from_counts<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut h = TagHistogram::default();
        for (tag, n) in pairs {
            h.add(tag.into(), n);
        }
        h
    }

    fn add(&mut self, tag: String, n: u64) {
        if n > 0 {
            *self.counts.entry(tag).or_insert(0) += n;
            self.total += n;
        }
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn get(&self, tag: &str) -> u64 {
        self.counts.get(tag).copied().unwrap_or(0)
    }

    pub fn total_assignments(&self) -> u64 {
        self.total
    }

    pub fn unique_tags(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Tags by descending count, ties by tag.
    pub fn ranked(&self) -> Vec<(&str, u64)> {
        let mut v: Vec<(&str, u64)> = self.counts.iter().map(|(k, &n)| (k.as_str(), n)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Pointwise sum.
    pub fn combine(&self, other: &TagHistogram) -> TagHistogram {
        let mut h = self.clone();
        for (k, &n) in &other.counts {
            h.add(k.clone(), n);
        }
        h
    }
}

pub fn tag_histogram(g: &Graph) -> TagHistogram {
    tag_histogram_keyed(g, TagKey::Iri)
}

/// Counts `hasTag` triples whose subject is a tagging node.
pub fn tag_histogram_keyed(g: &Graph, key: TagKey) -> TagHistogram {
    let schema = builtin();
    let has_tag = schema.relation_iri(Relation::HasTag);
    let nodes = tagging_nodes(g, schema);
    let mut h = TagHistogram::default();
    for t in g.with_predicate(has_tag.as_str()) {
        if nodes.contains(&t.subject) {
            h.add(key.key(&t.object), 1);
        }
    }
    h
}

/// Tags used at least `min_count` times.
pub fn core_tags(h: &TagHistogram, min_count: u64) -> BTreeSet<String> {
    h.counts
        .iter()
        .filter(|(_, &n)| n >= min_count)
        .map(|(k, _)| k.clone())
        .collect()
}

/// `count` as a percentage of `total`; 0 when `total` is 0.
pub fn occurrence_share(count: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}
