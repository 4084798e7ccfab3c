//! RDF/XML output, one `rdf:Description` per subject.
//!
//! Literals are written as element text regardless of their kind, IRIs as
//! `rdf:resource`. There is no reader.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::graph::Graph;
use super::term::{Iri, Term, Triple};
use super::turtle::predicate_rank;
use super::StoreError;
use crate::vocab;

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{b7}')
}

/// Splits a predicate into (namespace, local name) so that the local part is
/// a valid XML NCName.
fn split_predicate(iri: &str) -> Option<(&str, &str)> {
    if let Some((_, ns)) = vocab::PREFIXES
        .iter()
        .filter(|(_, ns)| iri.starts_with(ns))
        .max_by_key(|(_, ns)| ns.len())
    {
        let local = &iri[ns.len()..];
        if valid_local(local) {
            return Some((ns, local));
        }
    }
    // longest run of trailing name characters that starts with a name-start
    let mut start = iri.len();
    for (i, c) in iri.char_indices().rev() {
        if !is_name_char(c) {
            break;
        }
        start = i;
    }
    let local = &iri[start..];
    let skip = local.find(is_name_start)?;
    let local = &local[skip..];
    let ns = &iri[..iri.len() - local.len()];
    (!ns.is_empty()).then_some((ns, local))
}

fn valid_local(local: &str) -> bool {
    local.chars().next().is_some_and(is_name_start) && local.chars().all(is_name_char)
}

fn escape(s: &str, attribute: bool) -> String {
    let mut out = String::with_capacity(s.len());
    // Readers commonly trim text nodes, so edge whitespace goes out as
    // character references.
    let body = s.trim_matches(char::is_whitespace);
    let lead = s.len() - s.trim_start_matches(char::is_whitespace).len();
    let tail = lead + body.len();
    for (i, c) in s.char_indices() {
        match c {
            c if !attribute && c.is_whitespace() && (i < lead || i >= tail) => {
                let _ = write!(out, "&#{};", c as u32);
            }
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attribute => out.push_str("&quot;"),
            '\n' if attribute => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' if attribute => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

/// Writes `graph` as RDF/XML.
///
/// Fails only when some predicate has no suffix usable as an element name
/// (e.g. it ends in `/`).
pub fn serialize_rdfxml(graph: &Graph) -> Result<String, StoreError> {
    // namespace -> prefix; rdf is always declared
    let mut prefixes: BTreeMap<&str, String> = BTreeMap::new();
    prefixes.insert(vocab::RDF, "rdf".to_string());
    let mut qnames: BTreeMap<&Iri, (String, &str)> = BTreeMap::new();
    let mut unknown = Vec::new();
    for t in graph {
        if qnames.contains_key(&t.predicate) {
            continue;
        }
        let (ns, local) = split_predicate(t.predicate.as_str())
            .ok_or_else(|| StoreError::UnsplittablePredicate(t.predicate.to_string()))?;
        if !prefixes.contains_key(ns) {
            match vocab::PREFIXES.iter().find(|(_, n)| *n == ns) {
                Some((p, _)) => {
                    prefixes.insert(ns, p.to_string());
                }
                None => unknown.push(ns),
            }
        }
        qnames.insert(&t.predicate, (ns.to_string(), local));
    }
    unknown.sort_unstable();
    unknown.dedup();
    for (i, ns) in unknown.into_iter().enumerate() {
        if !prefixes.contains_key(ns) {
            prefixes.insert(ns, format!("ns{i}"));
        }
    }

    let mut out = String::from("<?xml version=\"1.0\"?>\n<rdf:RDF");
    let mut decls: Vec<(&str, &String)> = prefixes.iter().map(|(ns, p)| (*ns, p)).collect();
    decls.sort_by_key(|(ns, p)| {
        let rank = vocab::PREFIXES
            .iter()
            .position(|(_, n)| n == ns)
            .unwrap_or(usize::MAX);
        (rank, p.to_string())
    });
    for (ns, prefix) in decls {
        let _ = write!(out, "\n  xmlns:{prefix}=\"{}\"", escape(ns, true));
    }
    out.push_str(" >\n");

    let mut by_subject: BTreeMap<&Iri, Vec<&Triple>> = BTreeMap::new();
    for t in graph {
        by_subject.entry(&t.subject).or_default().push(t);
    }
    for (subject, mut triples) in by_subject {
        triples.sort_by(|a, b| {
            (predicate_rank(&a.predicate), &a.predicate, &a.object).cmp(&(
                predicate_rank(&b.predicate),
                &b.predicate,
                &b.object,
            ))
        });
        let _ = writeln!(out, "  <rdf:Description rdf:about=\"{}\">", escape(subject.as_str(), true));
        for t in triples {
            let (ns, local) = &qnames[&t.predicate];
            let name = format!("{}:{local}", prefixes[ns.as_str()]);
            match &t.object {
                Term::Iri(o) => {
                    let _ = writeln!(out, "    <{name} rdf:resource=\"{}\"/>", escape(o.as_str(), true));
                }
                Term::Literal(l) => {
                    let _ = writeln!(out, "    <{name}>{}</{name}>", escape(l.lexical(), false));
                }
            }
        }
        out.push_str("  </rdf:Description>\n");
    }
    out.push_str("</rdf:RDF>\n");
    Ok(out)
}
