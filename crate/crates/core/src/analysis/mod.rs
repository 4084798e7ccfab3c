//! Tag statistics over an integrated graph.

mod buckets;
mod cooccur;
mod histogram;
mod powerlaw;
mod sources;

use thiserror::Error;

pub use buckets::{bucket_rows, frequency_table, BucketRow, Hundredths, DEFAULT_EDGES};
pub use cooccur::{cooccurrence, cooccurrence_keyed, Axis, Cooccurrence};
pub use histogram::{core_tags, occurrence_share, tag_histogram, tag_histogram_keyed, TagHistogram, TagKey};
pub use powerlaw::{fit_power_law, rank_frequency_series, PowerLawFit};
pub use sources::{source_site, source_summary, SourceSummary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("invalid bucket edges: {0}")]
    BadEdges(String),
    #[error("tag `{tag}` occurs {count} times, above the last edge {last_edge}")]
    AboveLastEdge { tag: String, count: u64, last_edge: u64 },
    #[error("a power-law fit needs at least 2 tags, got {0}")]
    TooFewTags(usize),
}
