//! Namespace constants and the fixed prefix map.

/// UTO term namespace.
pub const UTO: &str = "http://info.slis.indiana.edu/~dingying/uto.owl#";
/// Namespace under which tagging nodes are minted.
pub const TAGGING_BASE: &str = "http://info.slis.indiana.edu/~dingying/";

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const SIOC: &str = "http://rdfs.org/sioc/ns#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
/// The `dct` namespace exactly as the published ontology declares it.
pub const DCT: &str = "http://dublincore.org/2008/01/14/dcterms.rdf#";
/// Dublin Core element set; the alignment targets live here.
pub const DC: &str = "http://purl.org/dc/elements/1.1/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
/// Datatype attached to month-granularity tagging dates in Turtle.
pub const MONTHSTAMP_DATATYPE: &str = "http://info.slis.indiana.edu/~dingying/uto.owl#Date";

/// Delicious tag pages, current host.
pub const DELICIOUS_TAG: &str = "http://delicious.com/tag/";
/// Delicious tag pages, legacy host used by 2007 bookmarks.
pub const DELICIOUS_LEGACY_TAG: &str = "http://del.icio.us/tag/";
pub const FLICKR_TAG: &str = "http://flickr.com/photos/tags/";
pub const YOUTUBE_TAG_PREFIX: &str = "http://www.youtube.com/results?search_query=";
pub const YOUTUBE_LEGACY_TAG_PREFIX: &str = "http://youtube.com/results?search_query=";
pub const YOUTUBE_TAG_SUFFIX: &str = "&search=tag";

pub const DELICIOUS_SOURCE: &str = "http://delicious.com";
pub const YOUTUBE_SOURCE: &str = "http://youtube.com";

/// Prefixes used by the Turtle writer, in declaration order.
pub const PREFIXES: &[(&str, &str)] = &[
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("owl", OWL),
    ("xsd", XSD),
    ("uto", UTO),
    ("foaf", FOAF),
    ("sioc", SIOC),
    ("skos", SKOS),
    ("dct", DCT),
    ("delicious", DELICIOUS_TAG),
    ("deltag", DELICIOUS_LEGACY_TAG),
    ("flickr", FLICKR_TAG),
];

/// Returns `namespace + local` as an owned string.
pub fn term(namespace: &str, local: &str) -> String {
    let mut s = String::with_capacity(namespace.len() + local.len());
    s.push_str(namespace);
    s.push_str(local);
    s
}

/// Looks up the namespace bound to `prefix` in [`PREFIXES`].
pub fn namespace_for(prefix: &str) -> Option<&'static str> {
    PREFIXES.iter().find(|(p, _)| *p == prefix).map(|(_, ns)| *ns)
}

const TAG_TEXT: &percent_encoding::AsciiSet = &percent_encoding::NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'.')
    .remove(b'_')
    .remove(b'~');

/// Percent-encodes tag text for use in a tag-page URL. Unreserved characters
/// are kept as is.
pub fn encode_tag(text: &str) -> String {
    percent_encoding::utf8_percent_encode(text, TAG_TEXT).to_string()
}

/// Inverse of [`encode_tag`]; invalid UTF-8 is replaced.
pub fn decode_tag(encoded: &str) -> String {
    percent_encoding::percent_decode_str(encoded)
        .decode_utf8_lossy()
        .into_owned()
}

/// Tag IRIs under every site template for `text`, in the order Delicious
/// (current, legacy), Flickr, YouTube (current, legacy).
pub fn tag_iri_candidates(text: &str) -> [String; 5] {
    let enc = encode_tag(text);
    [
        format!("{DELICIOUS_TAG}{enc}"),
        format!("{DELICIOUS_LEGACY_TAG}{enc}"),
        format!("{FLICKR_TAG}{enc}"),
        format!("{YOUTUBE_TAG_PREFIX}{enc}{YOUTUBE_TAG_SUFFIX}"),
        format!("{YOUTUBE_LEGACY_TAG_PREFIX}{enc}{YOUTUBE_TAG_SUFFIX}"),
    ]
}

/// Local tag text of a tag IRI under any known site template, decoded.
pub fn tag_text(iri: &str) -> Option<String> {
    for base in [DELICIOUS_TAG, DELICIOUS_LEGACY_TAG, FLICKR_TAG] {
        if let Some(rest) = iri.strip_prefix(base) {
            return Some(decode_tag(rest));
        }
    }
    for prefix in [YOUTUBE_TAG_PREFIX, YOUTUBE_LEGACY_TAG_PREFIX] {
        if let Some(rest) = iri.strip_prefix(prefix) {
            let text = rest.strip_suffix(YOUTUBE_TAG_SUFFIX).unwrap_or(rest);
            return Some(decode_tag(&text.replace('+', " ")));
        }
    }
    None
}
