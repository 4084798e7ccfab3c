use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use url::Url;

use super::adapters::{adapter_for, PageKind};
use super::frontier::Frontier;
use super::CrawlError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Delicious,
    Flickr,
    YouTube,
    GenericFixture,
}

impl Site {
    pub const ALL: [Site; 4] = [Site::Delicious, Site::Flickr, Site::YouTube, Site::GenericFixture];

    pub fn name(self) -> &'static str {
        match self {
            Site::Delicious => "delicious",
            Site::Flickr => "flickr",
            Site::YouTube => "youtube",
            Site::GenericFixture => "generic-fixture",
        }
    }

    fn default_hosts(self) -> &'static [&'static str] {
        match self {
            Site::Delicious => &["delicious.com", "www.delicious.com", "del.icio.us"],
            Site::Flickr => &["flickr.com", "www.flickr.com"],
            Site::YouTube => &["youtube.com", "www.youtube.com"],
            Site::GenericFixture => &[],
        }
    }

    /// Query parameters that identify a page and survive dedup.
    fn default_whitelist(self) -> &'static [&'static str] {
        match self {
            Site::Delicious | Site::Flickr => &["page"],
            Site::YouTube => &["v"],
            Site::GenericFixture => &[],
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Site {
    type Err = CrawlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "delicious" => Ok(Site::Delicious),
            "flickr" => Ok(Site::Flickr),
            "youtube" => Ok(Site::YouTube),
            "generic" | "generic-fixture" => Ok(Site::GenericFixture),
            _ => Err(CrawlError::UnknownSite(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrawlPolicy {
    pub site: Site,
    pub dedup_strips_query: bool,
    pub query_whitelist: BTreeSet<String>,
    pub max_pages: usize,
    pub worker_count: usize,
    /// Hosts the filter accepts. Empty means "the hosts of the seeds".
    pub allowed_hosts: BTreeSet<String>,
    /// Pause each worker takes before a fetch.
    pub politeness_delay: Duration,
    /// Seed for tagging-id minting.
    pub seed: u64,
}

impl CrawlPolicy {
    pub fn for_site(site: Site) -> Self {
        CrawlPolicy {
            site,
            dedup_strips_query: true,
            query_whitelist: site.default_whitelist().iter().map(|s| s.to_string()).collect(),
            max_pages: 10_000,
            worker_count: 1,
            allowed_hosts: site.default_hosts().iter().map(|s| s.to_string()).collect(),
            politeness_delay: Duration::ZERO,
            seed: 0,
        }
    }

    pub fn with_workers(mut self, n: usize) -> Self {
        self.worker_count = n;
        self
    }

    pub fn with_max_pages(mut self, n: usize) -> Self {
        self.max_pages = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn check(&self) -> Result<(), CrawlError> {
        if self.worker_count == 0 {
            return Err(CrawlError::Policy("worker_count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn host_allowed(&self, url: &Url) -> bool {
        url.host_str()
            .is_some_and(|h| self.allowed_hosts.contains(&h.to_ascii_lowercase()))
    }
}

/// The form under which a URL is recorded as visited.
///
/// Scheme and host are lowercased (by the URL parser), the fragment is
/// dropped, and with query stripping on only whitelisted parameters remain,
/// sorted by name then value.
pub fn dedup_key(url: &str, policy: &CrawlPolicy) -> Result<String, CrawlError> {
    let parsed = Url::parse(url).map_err(|e| CrawlError::BadUrl {
        url: url.to_string(),
        reason: e.to_string(),
    })?;
    Ok(dedup_key_of(&parsed, policy))
}

pub(crate) fn dedup_key_of(url: &Url, policy: &CrawlPolicy) -> String {
    let mut u = url.clone();
    u.set_fragment(None);
    if policy.dedup_strips_query {
        let mut kept: Vec<(String, String)> = u
            .query_pairs()
            .filter(|(k, _)| policy.query_whitelist.contains(k.as_ref()))
            .map(|(k, v)| (k.into_owned(), v.into_owned()))
            .collect();
        kept.sort();
        if kept.is_empty() {
            u.set_query(None);
        } else {
            u.query_pairs_mut().clear().extend_pairs(kept);
        }
    }
    u.to_string()
}

/// The filter: true iff the URL belongs to the policy's site, its dedup key
/// is unvisited and the page budget is not spent.
pub fn should_visit(url: &str, policy: &CrawlPolicy, frontier: &Frontier) -> bool {
    let Ok(parsed) = Url::parse(url) else { return false };
    accepts(&parsed, policy) && frontier.can_claim(&dedup_key_of(&parsed, policy), policy.max_pages)
}

pub(crate) fn accepts(url: &Url, policy: &CrawlPolicy) -> bool {
    matches!(url.scheme(), "http" | "https")
        && policy.host_allowed(url)
        && adapter_for(policy.site).classify(url) != PageKind::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stripping(whitelist: &[&str]) -> CrawlPolicy {
        let mut p = CrawlPolicy::for_site(Site::GenericFixture);
        p.query_whitelist = whitelist.iter().map(|s| s.to_string()).collect();
        p
    }

    #[test]
    fn youtube_keeps_video_id() {
        let k = dedup_key("http://youtube.com/watch?v=5ynmiKv2GcY&feature=rel", &stripping(&["v"])).unwrap();
        assert_eq!(k, "http://youtube.com/watch?v=5ynmiKv2GcY");
    }

    #[test]
    fn strips_query_and_fragment() {
        assert_eq!(dedup_key("http://a/b?x=1#frag", &stripping(&[])).unwrap(), "http://a/b");
        assert_eq!(dedup_key("http://a/b", &stripping(&[])).unwrap(), "http://a/b");
        assert_eq!(dedup_key("HTTP://A.Example/B", &stripping(&[])).unwrap(), "http://a.example/B");
    }

    #[test]
    fn whitelist_sorted() {
        let k = dedup_key("http://a/b?z=1&page=2&a=3&x=0", &stripping(&["z", "a", "page"])).unwrap();
        assert_eq!(k, "http://a/b?a=3&page=2&z=1");
    }

    #[test]
    fn keeps_query_when_not_stripping() {
        let mut p = stripping(&[]);
        p.dedup_strips_query = false;
        assert_eq!(dedup_key("http://a/b?x=1#f", &p).unwrap(), "http://a/b?x=1");
    }

    #[test]
    fn malformed() {
        assert!(dedup_key("not a url", &stripping(&[])).is_err());
    }

    #[test]
    fn filter() {
        let p = CrawlPolicy::for_site(Site::Delicious);
        let f = Frontier::new();
        assert!(should_visit("http://delicious.com/tag/fashion", &p, &f));
        assert!(!should_visit("http://example.org/tag/fashion", &p, &f));
        assert!(f.claim(&dedup_key("http://delicious.com/tag/fashion", &p).unwrap(), p.max_pages));
        assert!(!should_visit("http://delicious.com/tag/fashion#x", &p, &f));
        let none = p.clone().with_max_pages(0);
        assert!(!should_visit("http://delicious.com/tag/design", &none, &Frontier::new()));
    }
}
