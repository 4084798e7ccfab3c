//! Toolkit for social-tagging data modelled with the Upper Tag Ontology (UTO).
//!
//! The crate is split along the life of a tagging record:
//!
//! - [`store`]: RDF terms, triple graphs, reified tagging records and the
//!   Turtle / RDF/XML encodings used for persistence and export.
//! - [`ontology`]: the built-in UTO schema, vocabulary alignment with
//!   FOAF/SIOC/SKOS/DC, rule-based inference and graph validation.
//! - [`crawler`]: a breadth-first, multi-worker crawl engine with per-site
//!   HTML adapters for Delicious, Flickr and YouTube style pages.
//! - [`query`]: triple-pattern evaluation with UNION, DISTINCT and ORDER BY,
//!   plus the three canned search scenarios.
//! - [`analysis`]: tag histograms, frequency buckets, per-source summaries,
//!   power-law fitting and co-occurrence counts.

pub mod analysis;
pub mod crawler;
pub mod ontology;
pub mod query;
pub mod store;
pub mod vocab;

pub use ontology::{load_schema, UtoSchema};
pub use store::{Graph, Iri, Literal, MonthStamp, TaggingRecord, Term, Triple};
