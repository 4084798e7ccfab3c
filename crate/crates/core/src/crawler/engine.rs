use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use url::Url;

use super::adapters::{PageParse, ParseError, SiteAdapter};
use super::fetch::{FetchError, Fetcher};
use super::frontier::{Frontier, Offer, QueueItem};
use super::policy::{accepts, dedup_key_of, CrawlPolicy};
use super::CrawlError;
use crate::ontology::builtin;
use crate::store::{mint_tagging_id, record_to_triples, Graph, Iri, MonthStamp, TaggingRecord};
use crate::vocab;

/// Receives each record and its triples, one at a time, in crawl order.
pub trait RecordSink {
    fn accept(&mut self, record: &TaggingRecord, triples: Graph);
}

impl RecordSink for Graph {
    fn accept(&mut self, _record: &TaggingRecord, triples: Graph) {
        self.absorb(triples);
    }
}

impl<F: FnMut(&TaggingRecord, Graph)> RecordSink for F {
    fn accept(&mut self, record: &TaggingRecord, triples: Graph) {
        self(record, triples)
    }
}

/// Tagging ids derived from (seed, page key, position on page), so they do
/// not depend on which worker handled the page.
#[derive(Debug, Clone)]
pub struct IdMinter {
    base: Iri,
    seed: u64,
}

impl IdMinter {
    pub fn new(base: Iri, seed: u64) -> Self {
        IdMinter { base, seed }
    }

    pub fn mint(&self, page_key: &str, index: usize) -> Iri {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update(page_key.as_bytes());
        h.update([0]);
        h.update((index as u64).to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(h.finalize().into());
        mint_tagging_id(&self.base, &mut rng)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrawlStats {
    pub pages_fetched: usize,
    pub fetch_failures: usize,
    pub parse_failures: usize,
    pub records_emitted: usize,
    pub invalid_records: usize,
    /// Same (tagger, object, date, source) seen on an earlier page.
    pub duplicate_records: usize,
    pub distinct_tags: usize,
    /// Includes taggers whose records carry no tags.
    pub distinct_taggers: usize,
    pub distinct_objects: usize,
    pub levels: usize,
    pub budget_exhausted: bool,
}

impl CrawlStats {
    pub const CSV_HEADER: [&'static str; 11] = [
        "pages_fetched",
        "fetch_failures",
        "parse_failures",
        "records_emitted",
        "invalid_records",
        "duplicate_records",
        "distinct_tags",
        "distinct_taggers",
        "distinct_objects",
        "levels",
        "budget_exhausted",
    ];

    pub fn csv_row(&self) -> [String; 11] {
        [
            self.pages_fetched,
            self.fetch_failures,
            self.parse_failures,
            self.records_emitted,
            self.invalid_records,
            self.duplicate_records,
            self.distinct_tags,
            self.distinct_taggers,
            self.distinct_objects,
            self.levels,
        ]
        .map(|n| n.to_string())
        .into_iter()
        .chain([self.budget_exhausted.to_string()])
        .collect::<Vec<_>>()
        .try_into()
        .expect("11 columns")
    }
}

impl fmt::Display for CrawlStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fetched {} pages ({} fetch failures, {} parse failures) in {} levels; \
             {} records ({} invalid, {} duplicate); {} tags, {} taggers (untagged records included), {} objects",
            self.pages_fetched,
            self.fetch_failures,
            self.parse_failures,
            self.levels,
            self.records_emitted,
            self.invalid_records,
            self.duplicate_records,
            self.distinct_tags,
            self.distinct_taggers,
            self.distinct_objects,
        )?;
        if self.budget_exhausted {
            f.write_str("; page budget exhausted")?;
        }
        Ok(())
    }
}

enum Outcome {
    Fetch(FetchError),
    Parse(ParseError),
    Page(PageParse),
}

fn visit(item: &QueueItem, adapter: &dyn SiteAdapter, fetcher: &dyn Fetcher, policy: &CrawlPolicy) -> Outcome {
    if !policy.politeness_delay.is_zero() {
        thread::sleep(policy.politeness_delay);
    }
    match fetcher.fetch(&item.url) {
        Err(e) => Outcome::Fetch(e),
        Ok(html) => match adapter.parse(&html, &item.url) {
            Ok(p) => Outcome::Page(p),
            Err(e) => Outcome::Parse(e),
        },
    }
}

/// Fetches and parses one level on up to `workers` threads. Results come
/// back in level order.
fn run_level(
    level: &[QueueItem],
    adapter: &dyn SiteAdapter,
    fetcher: &dyn Fetcher,
    policy: &CrawlPolicy,
) -> Vec<Outcome> {
    let workers = policy.worker_count.min(level.len()).max(1);
    if workers == 1 {
        return level.iter().map(|it| visit(it, adapter, fetcher, policy)).collect();
    }
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, Outcome)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(item) = level.get(i) else { break };
                        mine.push((i, visit(item, adapter, fetcher, policy)));
                    }
                    mine
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("crawl worker panicked"))
            .collect()
    });
    done.sort_unstable_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, o)| o).collect()
}

/// Breadth-first crawl from `seeds`.
///
/// Each level of the frontier is fetched and parsed in parallel; the
/// results are then folded in queue order on the calling thread, which
/// mints ids, feeds the sink and queues outlinks. The record stream is
/// therefore the same for any worker count.
pub fn crawl(
    seeds: &[&str],
    adapter: &dyn SiteAdapter,
    fetcher: &dyn Fetcher,
    policy: &CrawlPolicy,
    sink: &mut dyn RecordSink,
) -> Result<CrawlStats, CrawlError> {
    policy.check()?;
    if seeds.is_empty() {
        return Err(CrawlError::NoSeeds);
    }
    let mut seed_urls = Vec::with_capacity(seeds.len());
    for s in seeds {
        let u = Url::parse(s).map_err(|e| CrawlError::BadUrl {
            url: s.to_string(),
            reason: e.to_string(),
        })?;
        seed_urls.push(u);
    }
    let mut policy = policy.clone();
    if policy.allowed_hosts.is_empty() {
        policy.allowed_hosts = seed_urls
            .iter()
            .filter_map(|u| u.host_str().map(str::to_ascii_lowercase))
            .collect();
    }
    let policy = &policy;

    let schema = builtin();
    let minter = IdMinter::new(Iri::new(vocab::TAGGING_BASE).expect("constant IRI"), policy.seed);
    let frontier = Frontier::new();
    let mut stats = CrawlStats::default();
    let mut tags: BTreeSet<Iri> = BTreeSet::new();
    let mut taggers: BTreeSet<String> = BTreeSet::new();
    let mut objects: BTreeSet<Iri> = BTreeSet::new();
    let mut events: HashSet<(String, Iri, MonthStamp, Iri)> = HashSet::new();

    let offer = |url: &Url, entry_tag: Option<Iri>, depth: usize, stats: &mut CrawlStats| -> bool {
        if !accepts(url, policy) {
            return false;
        }
        let key = Url::parse(&dedup_key_of(url, policy)).expect("dedup key re-parses");
        match frontier.offer(QueueItem { url: key, entry_tag, depth }, policy.max_pages) {
            Offer::Accepted => true,
            Offer::Visited => false,
            Offer::OverBudget => {
                stats.budget_exhausted = true;
                false
            }
        }
    };
    for u in &seed_urls {
        if !accepts(u, policy) {
            return Err(CrawlError::SeedRejected(u.to_string()));
        }
        offer(u, None, 0, &mut stats);
    }

    loop {
        let level = frontier.take_level();
        if level.is_empty() {
            break;
        }
        stats.levels += 1;
        log::debug!("level {}: {} pages", stats.levels, level.len());
        let outcomes = run_level(&level, adapter, fetcher, policy);
        for (item, outcome) in level.iter().zip(outcomes) {
            let page = match outcome {
                Outcome::Fetch(e) => {
                    log::warn!("fetch failed: {e}");
                    stats.fetch_failures += 1;
                    continue;
                }
                Outcome::Parse(e) => {
                    log::warn!("parse failed: {e}");
                    stats.pages_fetched += 1;
                    stats.parse_failures += 1;
                    continue;
                }
                Outcome::Page(p) => p,
            };
            stats.pages_fetched += 1;
            for (i, mut draft) in page.records.into_iter().enumerate() {
                if adapter.supports_related_tags() && draft.entry_tag.is_none() {
                    draft.entry_tag = item.entry_tag.clone().filter(|t| draft.tags.contains(t));
                }
                if let Err(e) = draft.check() {
                    log::warn!("{}: dropping record: {e}", item.url);
                    stats.invalid_records += 1;
                    continue;
                }
                let event = (draft.tagger.clone(), draft.object.clone(), draft.date, draft.source.clone());
                if !events.insert(event) {
                    stats.duplicate_records += 1;
                    continue;
                }
                let record = draft.with_id(minter.mint(item.url.as_str(), i));
                let triples = record_to_triples(&record, schema)?;
                tags.extend(record.tags.iter().cloned());
                taggers.insert(record.tagger.clone());
                objects.insert(record.object.clone());
                stats.records_emitted += 1;
                sink.accept(&record, triples);
            }
            for link in page.outlinks {
                offer(&link.url, link.entry_tag, item.depth + 1, &mut stats);
            }
        }
    }
    stats.distinct_tags = tags.len();
    stats.distinct_taggers = taggers.len();
    stats.distinct_objects = objects.len();
    Ok(stats)
}
