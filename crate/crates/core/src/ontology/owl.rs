//! OWL (RDF/XML) rendering of the schema, laid out like the published
//! `uto.owl` file.

use std::fmt::Write as _;

use super::schema::{AlignmentKind, Concept, Relation, UtoSchema, UtoTerm};
use crate::vocab;

/// `rdfs:comment` text of each class in the published ontology file,
/// whitespace-normalized.
const CLASS_COMMENTS: [(Concept, &str); 8] = [
    (Concept::Tag, "A tag is a keyword that a user adds to an object."),
    (
        Concept::Comment,
        "A comment is the statement or set of statements that a tagger adds to an object or tag during the act of tagging.",
    ),
    (
        Concept::Source,
        "Source is the place where the object is hosted. It can be delicious, flickr, youtube, etc.",
    ),
    (
        Concept::Vote,
        "Tagging can be viewed as voting. Vote can be the number of different taggers tagging a bookmark, a photo or a video as favorite.",
    ),
    (Concept::Date, "Date is the time stamp of tagging behavior. Format is \"MmmYY\""),
    (Concept::Tagger, "Tagger is the user who tags object"),
    (
        Concept::Tagging,
        "Tagging is the concept which is created to link other concepts. Itself does not have any real meaning",
    ),
    (
        Concept::Object,
        "object is the thing which tagger is tagging. It can be bookmarks, photos, videos, musics, books, slides, etc.",
    ),
];

/// Property order of the published file.
const PROPERTY_ORDER: [Relation; 8] = [
    Relation::HasDate,
    Relation::HasObject,
    Relation::HasVote,
    Relation::HasTag,
    Relation::HasComment,
    Relation::HasRelatedTag,
    Relation::HasCreator,
    Relation::HasSource,
];

/// Writes the schema as an OWL ontology in RDF/XML.
///
/// `Object`'s union also lists `rdfs:Resource`, which the alignment table
/// leaves out because it would make every resource an Object.
pub fn export_owl(schema: &UtoSchema) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\"?>\n<rdf:RDF\n");
    for (prefix, ns) in [
        ("rdf", vocab::RDF),
        ("xsd", vocab::XSD),
        ("uto", schema.base_namespace.as_str()),
        ("rdfs", vocab::RDFS),
        ("owl", vocab::OWL),
        ("dct", vocab::DCT),
        ("foaf", "http://xmlns.com/foaf/0.1/#"),
        ("skos", vocab::SKOS),
        ("sioc", vocab::SIOC),
    ] {
        let _ = writeln!(out, "  xmlns:{prefix}=\"{ns}\"");
    }
    let _ = writeln!(out, "  xml:base=\"{}\">\n", schema.base_namespace);
    out.push_str("<owl:Ontology rdf:about=\"\"/>\n");

    for (concept, comment) in CLASS_COMMENTS {
        let _ = writeln!(out, "\n<owl:Class rdf:about=\"{}\">", schema.concept_iri(concept));
        let _ = writeln!(
            out,
            "  <rdfs:comment rdf:datatype=\"{}\">{}</rdfs:comment>",
            vocab::XSD_STRING,
            escape_text(comment)
        );
        let _ = writeln!(out, "  <rdfs:label>{}</rdfs:label>", concept.name());
        let term = UtoTerm::Concept(concept);
        for a in schema.alignments_of(term).filter(|a| a.kind == AlignmentKind::SubOf) {
            let _ = writeln!(out, "  <rdfs:subClassOf rdf:resource=\"{}\"/>", a.external_iri);
        }
        for a in schema.alignments_of(term).filter(|a| a.kind == AlignmentKind::Equivalent) {
            let _ = writeln!(out, "  <owl:equivalentClass rdf:resource=\"{}\"/>", a.external_iri);
        }
        let mut members: Vec<String> = schema
            .alignments_of(term)
            .filter(|a| a.kind == AlignmentKind::SuperOf)
            .map(|a| a.external_iri.to_string())
            .collect();
        if concept == Concept::Object {
            members.insert(members.len().min(2), vocab::term(vocab::RDFS, "Resource"));
        }
        if !members.is_empty() {
            out.push_str("  <owl:unionOf rdf:parseType=\"Collection\">\n");
            for m in members {
                let _ = writeln!(out, "    <owl:Class rdf:about=\"{m}\"/>");
            }
            out.push_str("  </owl:unionOf>\n");
        }
        out.push_str("</owl:Class>\n");
    }

    for rel in PROPERTY_ORDER {
        let def = schema.relation(rel);
        let element = if def.inverse_functional {
            "owl:InverseFunctionalProperty"
        } else {
            "owl:ObjectProperty"
        };
        let _ = writeln!(out, "\n<{element} rdf:about=\"{}\">", schema.relation_iri(rel));
        let _ = writeln!(out, "  <rdfs:label>{}</rdfs:label>", rel.name());
        let _ = writeln!(out, "  <rdfs:domain rdf:resource=\"#{}\"/>", def.domain);
        let _ = writeln!(out, "  <rdfs:range rdf:resource=\"#{}\"/>", def.range);
        if def.inverse_functional {
            let _ = writeln!(
                out,
                "  <rdf:type rdf:resource=\"{}\"/>",
                vocab::term(vocab::OWL, "ObjectProperty")
            );
        }
        for a in schema
            .alignments_of(UtoTerm::Relation(rel))
            .filter(|a| a.kind == AlignmentKind::Equivalent)
        {
            let _ = writeln!(out, "  <owl:equivalentProperty rdf:resource=\"{}\"/>", a.external_iri);
        }
        let _ = writeln!(out, "</{element}>");
    }
    out.push_str("\n</rdf:RDF>\n");
    out
}

fn escape_text(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
