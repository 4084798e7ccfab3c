//! Crawl engine: link model (frontier), filter (policy), fetchers, site
//! adapters and the record sink.

pub mod adapters;
mod engine;
mod fetch;
mod frontier;
mod policy;

use thiserror::Error;

pub use adapters::{adapter_for, parse_page, Outlink, PageKind, PageParse, ParseError, SiteAdapter};
pub use engine::{crawl, CrawlStats, IdMinter, RecordSink};
pub use fetch::{CountingFetcher, FetchError, Fetcher, FixtureFetcher, HttpFetcher, ManifestError, MemoryFetcher, MANIFEST};
pub use frontier::{Frontier, Offer, QueueItem};
pub use policy::{dedup_key, should_visit, CrawlPolicy, Site};

use crate::store::RecordError;

#[derive(Debug, Error)]
pub enum CrawlError {
    #[error("unknown site `{0}` (expected delicious, flickr, youtube or generic-fixture)")]
    UnknownSite(String),
    #[error("malformed URL `{url}`: {reason}")]
    BadUrl { url: String, reason: String },
    #[error("invalid crawl policy: {0}")]
    Policy(String),
    #[error("no seed URLs given")]
    NoSeeds,
    #[error("seed {0} is not a page of the selected site")]
    SeedRejected(String),
    #[error(transparent)]
    Record(#[from] RecordError),
}
