//! Triples, graphs, tagging records and their text encodings.

mod graph;
pub mod rdfxml;
mod record;
mod term;
pub mod turtle;

use thiserror::Error;

pub use graph::{merge, Graph};
pub use rdfxml::serialize_rdfxml;
pub use record::{mint_tagging_id, record_to_triples, RecordDraft, RecordError, TaggingRecord};
pub use term::{Iri, Literal, LiteralKind, MonthStamp, Term, TermError, Triple};
pub(crate) use term::{month_from_abbrev, parse_non_negative};
pub use turtle::{parse_turtle, serialize_turtle, TurtleError};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Turtle(#[from] TurtleError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("predicate <{0}> cannot be written as an RDF/XML element name")]
    UnsplittablePredicate(String),
}
