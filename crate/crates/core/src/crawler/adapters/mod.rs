//! Per-site page classification and HTML extraction.
//!
//! The markup each adapter expects is the one used by the fixture corpora
//! under `tests/fixtures/sites`; the live pages these mirror are long gone.

mod date;
mod delicious;
mod flickr;
mod generic;
mod youtube;

use scraper::{ElementRef, Html, Selector};
use thiserror::Error;
use url::Url;

use super::policy::Site;
use crate::store::{Iri, RecordDraft};

pub use date::parse_page_date;
pub use delicious::Delicious;
pub use flickr::Flickr;
pub use generic::GenericFixture;
pub use youtube::YouTube;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PageKind {
    /// Tag cloud or front page: links only.
    Index,
    TagPage,
    ObjectPage,
    /// Delicious per-bookmark history.
    HistoryPage,
    Unknown,
}

impl PageKind {
    pub fn name(self) -> &'static str {
        match self {
            PageKind::Index => "index",
            PageKind::TagPage => "tag-page",
            PageKind::ObjectPage => "object-page",
            PageKind::HistoryPage => "history-page",
            PageKind::Unknown => "unknown",
        }
    }
}

/// A link to follow. `entry_tag` is the tag page the link was found on, so
/// that records on the target page can be related to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outlink {
    pub url: Url,
    pub entry_tag: Option<Iri>,
}

impl Outlink {
    pub fn plain(url: Url) -> Self {
        Outlink { url, entry_tag: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageParse {
    pub kind: PageKind,
    pub records: Vec<RecordDraft>,
    pub outlinks: Vec<Outlink>,
}

impl PageParse {
    pub(crate) fn new(kind: PageKind) -> Self {
        PageParse {
            kind,
            records: Vec::new(),
            outlinks: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{url}: missing `{anchor}`")]
    MissingAnchor { url: String, anchor: &'static str },
    #[error("{url}: bad {what} `{value}`")]
    BadValue { url: String, what: &'static str, value: String },
    #[error("{url}: not a page this adapter understands")]
    Unclassified { url: String },
}

pub trait SiteAdapter: Send + Sync {
    fn site(&self) -> Site;

    fn classify(&self, url: &Url) -> PageKind;

    /// Extracts records and links. Depends on nothing but its arguments.
    fn parse(&self, html: &str, url: &Url) -> Result<PageParse, ParseError>;

    /// Whether records may carry an entry tag (and so related tags).
    fn supports_related_tags(&self) -> bool {
        true
    }
}

pub fn adapter_for(site: Site) -> &'static dyn SiteAdapter {
    match site {
        Site::Delicious => &Delicious,
        Site::Flickr => &Flickr,
        Site::YouTube => &YouTube,
        Site::GenericFixture => &GenericFixture,
    }
}

pub fn parse_page(adapter: &dyn SiteAdapter, html: &str, url: &Url) -> Result<PageParse, ParseError> {
    adapter.parse(html, url)
}

// Helpers shared by the adapters.

pub(crate) fn sel(css: &str) -> Selector {
    Selector::parse(css).unwrap_or_else(|e| panic!("selector `{css}`: {e}"))
}

pub(crate) struct Page<'a> {
    pub doc: Html,
    pub url: &'a Url,
}

impl<'a> Page<'a> {
    pub fn new(html: &str, url: &'a Url) -> Self {
        Page {
            doc: Html::parse_document(html),
            url,
        }
    }

    pub fn missing(&self, anchor: &'static str) -> ParseError {
        ParseError::MissingAnchor {
            url: self.url.to_string(),
            anchor,
        }
    }

    pub fn bad(&self, what: &'static str, value: impl Into<String>) -> ParseError {
        ParseError::BadValue {
            url: self.url.to_string(),
            what,
            value: value.into(),
        }
    }

    pub fn required(&self, anchor: &'static str) -> Result<ElementRef<'_>, ParseError> {
        self.doc.select(&sel(anchor)).next().ok_or_else(|| self.missing(anchor))
    }

    /// Resolves `href` against the page URL.
    pub fn resolve(&self, href: &str) -> Option<Url> {
        let u = self.url.join(href.trim()).ok()?;
        matches!(u.scheme(), "http" | "https").then_some(u)
    }

    pub fn iri(&self, href: &str, what: &'static str) -> Result<Iri, ParseError> {
        self.resolve(href)
            .and_then(|u| Iri::new(u.as_str()).ok())
            .ok_or_else(|| self.bad(what, href))
    }

    /// Resolved links of every element matching `css` that has an href.
    pub fn links_in(&self, scope: ElementRef<'_>, css: &str) -> Vec<Url> {
        scope
            .select(&sel(css))
            .filter_map(|a| a.value().attr("href"))
            .filter_map(|h| self.resolve(h))
            .collect()
    }
}

pub(crate) fn first<'a>(scope: ElementRef<'a>, css: &str) -> Option<ElementRef<'a>> {
    scope.select(&sel(css)).next()
}

/// Whitespace-collapsed text content.
pub(crate) fn text_of(e: ElementRef<'_>) -> String {
    e.text().collect::<Vec<_>>().join(" ").split_whitespace().collect::<Vec<_>>().join(" ")
}

pub(crate) fn first_text(scope: ElementRef<'_>, css: &str) -> Option<String> {
    first(scope, css).map(text_of).filter(|s| !s.is_empty())
}

/// Digits in `s`, ignoring thousands separators.
pub(crate) fn parse_count(s: &str) -> Option<u64> {
    let digits: String = s.chars().filter(|c| !matches!(c, ',' | ' ' | '\u{a0}')).collect();
    crate::store::parse_non_negative(&digits)
}

/// URL with query and fragment removed, as an IRI.
pub(crate) fn bare_iri(u: &Url) -> Option<Iri> {
    let mut u = u.clone();
    u.set_query(None);
    u.set_fragment(None);
    Iri::new(u.as_str()).ok()
}

/// Keeps the first occurrence of each tag.
pub(crate) fn dedup_tags(tags: Vec<Iri>) -> Vec<Iri> {
    let mut seen = std::collections::HashSet::new();
    tags.into_iter().filter(|t| seen.insert(t.clone())).collect()
}

/// Date from the `.date` element text or a `data-date` attribute.
pub(crate) fn date_in(page: &Page<'_>, scope: ElementRef<'_>) -> Result<crate::store::MonthStamp, ParseError> {
    let raw = scope
        .value()
        .attr("data-date")
        .map(str::to_string)
        .or_else(|| first(scope, "[data-date]").and_then(|e| e.value().attr("data-date").map(str::to_string)))
        .or_else(|| first_text(scope, ".date"))
        .ok_or_else(|| page.missing(".date"))?;
    parse_page_date(&raw).ok_or_else(|| page.bad("date", raw))
}
