use super::schema::{AlignmentKind, Concept, UtoSchema, UtoTerm, ValueType};
use crate::store::{Graph, Iri, Literal, LiteralKind, MonthStamp, Term, Triple};
use crate::vocab;

/// Maps an IRI to the UTO term it is aligned with.
///
/// IRIs in the schema namespace map to themselves as `Equivalent`.
pub fn canonicalize_term(iri: &Iri, schema: &UtoSchema) -> Option<(UtoTerm, AlignmentKind)> {
    if let Some(own) = schema.own_term(iri.as_str()) {
        return Some((own, AlignmentKind::Equivalent));
    }
    schema
        .alignment(iri.as_str())
        .map(|a| (a.uto_term, a.kind))
}

/// Concept an instance of class `class` is known to belong to, if any.
pub(crate) fn classify(class: &Iri, schema: &UtoSchema) -> Option<Concept> {
    match canonicalize_term(class, schema)? {
        // external ⊆ UTO class, so the instance is a member
        (UtoTerm::Concept(c), AlignmentKind::Equivalent | AlignmentKind::SuperOf) => Some(c),
        _ => None,
    }
}

/// Adds UTO-vocabulary copies of aligned triples.
///
/// Predicates equivalent to a UTO relation are rewritten to that relation;
/// `rdf:type` objects are rewritten to the UTO class their instances belong
/// to. The input triples are all kept.
pub fn expand_graph(g: &Graph, schema: &UtoSchema) -> Graph {
    let mut out = g.clone();
    for t in g {
        if t.predicate.as_str() == vocab::RDF_TYPE {
            if let Some(class) = t.object.as_iri() {
                if schema.own_term(class.as_str()).is_none() {
                    if let Some(c) = classify(class, schema) {
                        out.add(t.subject.clone(), t.predicate.clone(), schema.concept_iri(c));
                    }
                }
            }
            continue;
        }
        if schema.own_term(t.predicate.as_str()).is_some() {
            continue;
        }
        if let Some((UtoTerm::Relation(r), AlignmentKind::Equivalent)) = canonicalize_term(&t.predicate, schema) {
            out.add(t.subject.clone(), schema.relation_iri(r), t.object.clone());
        }
    }
    out
}

/// Retypes plain literals on value-typed relations.
///
/// A plain `"103"` on `hasVote` becomes an integer literal and a plain
/// `"Jun 07"` on `hasDate` becomes a month stamp, so data written by other
/// tools compares equal to records produced here. Literals that do not parse
/// are left alone for [`validate`](super::validate) to report.
pub fn normalize_literals(g: &Graph, schema: &UtoSchema) -> Graph {
    g.iter()
        .map(|t| {
            let Some(lit) = t.object.as_literal().filter(|l| l.kind() == LiteralKind::Plain) else {
                return t.clone();
            };
            let Some(rel) = schema.relation_for_iri(t.predicate.as_str()) else {
                return t.clone();
            };
            let typed = match schema.concept(schema.relation(rel).range).value_type {
                ValueType::Integer => Literal::integer_lexical(lit.lexical()).ok(),
                ValueType::Date => MonthStamp::parse(lit.lexical()).ok().map(Literal::month),
                _ => None,
            };
            match typed {
                Some(l) => Triple::new(t.subject.clone(), t.predicate.clone(), Term::Literal(l)),
                None => t.clone(),
            }
        })
        .collect()
}
