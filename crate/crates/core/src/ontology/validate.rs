use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::align::classify;
use super::schema::{Concept, Relation, UtoSchema};
use crate::store::{parse_non_negative, Graph, Iri, MonthStamp, Term};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Cardinality,
    RangeType,
    DateFormat,
    VoteType,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Cardinality => "cardinality",
            Rule::RangeType => "range-type",
            Rule::DateFormat => "date-format",
            Rule::VoteType => "vote-type",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub subject: Iri,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> {}: {}", self.subject, self.rule, self.detail)
    }
}

/// Subjects typed `uto:Tagging` or carrying any exactly-one hub relation.
pub fn tagging_nodes<'g>(g: &'g Graph, schema: &UtoSchema) -> BTreeSet<&'g Iri> {
    let tagging_class = schema.concept_iri(Concept::Tagging);
    g.iter()
        .filter(|t| {
            if t.predicate.as_str() == vocab::RDF_TYPE {
                return t.object.as_iri() == Some(&tagging_class);
            }
            schema
                .relation_for_iri(t.predicate.as_str())
                .is_some_and(|r| schema.relation(r).cardinality.is_some())
        })
        .map(|t| &t.subject)
        .collect()
}

/// Checks `g` against the UTO constraints. Violations come back sorted.
pub fn validate(g: &Graph, schema: &UtoSchema) -> Vec<Violation> {
    let mut out = Vec::new();
    let exactly_one: Vec<Relation> = schema
        .forward_relations()
        .iter()
        .filter(|d| d.cardinality == Some(1))
        .map(|d| d.relation)
        .collect();
    for node in tagging_nodes(g, schema) {
        for &rel in &exactly_one {
            let n = g.objects(node, schema.relation_iri(rel).as_str()).count();
            if n != 1 {
                out.push(Violation {
                    subject: node.clone(),
                    rule: Rule::Cardinality,
                    detail: format!("{rel} has {n} values, expected exactly 1"),
                });
            }
        }
    }

    let vote = schema.relation_iri(Relation::HasVote);
    let date = schema.relation_iri(Relation::HasDate);
    for t in g.with_predicate(vote.as_str()) {
        let ok = t
            .object
            .as_literal()
            .is_some_and(|l| parse_non_negative(l.lexical()).is_some());
        if !ok {
            out.push(Violation {
                subject: t.subject.clone(),
                rule: Rule::VoteType,
                detail: format!("hasVote value {} is not a non-negative integer", t.object),
            });
        }
    }
    for t in g.with_predicate(date.as_str()) {
        let ok = t
            .object
            .as_literal()
            .is_some_and(|l| MonthStamp::parse(l.lexical()).is_ok());
        if !ok {
            out.push(Violation {
                subject: t.subject.clone(),
                rule: Rule::DateFormat,
                detail: format!("hasDate value {} does not match \"Mmm YY\"", t.object),
            });
        }
    }

    // explicit rdf:type assertions per node
    let mut types: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
    for t in g.with_predicate(vocab::RDF_TYPE) {
        if let Some(class) = t.object.as_iri() {
            types.entry(&t.subject).or_default().push(class);
        }
    }
    for t in g {
        let Some(rel) = schema.relation_for_iri(t.predicate.as_str()).filter(|r| r.is_forward()) else {
            continue;
        };
        let Term::Iri(object) = &t.object else { continue };
        let Some(classes) = types.get(object) else { continue };
        let range = schema.relation(rel).range;
        if !classes.iter().any(|c| classify(c, schema) == Some(range)) {
            out.push(Violation {
                subject: t.subject.clone(),
                rule: Rule::RangeType,
                detail: format!("{rel} object <{object}> is not typed as {range}"),
            });
        }
    }
    out.sort();
    out
}
