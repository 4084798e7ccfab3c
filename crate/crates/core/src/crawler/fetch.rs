use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use thiserror::Error;
use url::Url;

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("no page for {0}")]
    NotFound(String),
    #[error("{url}: {source}")]
    Io { url: String, source: std::io::Error },
    #[error("{url}: {message}")]
    Http { url: String, message: String },
}

/// Page source for the crawl engine.
pub trait Fetcher: Send + Sync {
    fn fetch(&self, url: &Url) -> Result<String, FetchError>;
}

impl<F: Fetcher + ?Sized> Fetcher for &F {
    fn fetch(&self, url: &Url) -> Result<String, FetchError> {
        (**self).fetch(url)
    }
}

/// Name of the URL → file map inside a fixture directory.
pub const MANIFEST: &str = "manifest.tsv";

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Line { path: PathBuf, line: usize, message: String },
}

/// Serves pages from a directory of HTML files.
///
/// `manifest.tsv` holds one `URL<TAB>relative path` pair per line; blank
/// lines and lines starting with `#` are skipped. URLs are normalized by the
/// URL parser and compared without fragments.
#[derive(Debug, Clone)]
pub struct FixtureFetcher {
    root: PathBuf,
    pages: HashMap<String, PathBuf>,
}

fn lookup_key(url: &Url) -> String {
    let mut u = url.clone();
    u.set_fragment(None);
    u.to_string()
}

impl FixtureFetcher {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, ManifestError> {
        let root = dir.as_ref().to_path_buf();
        let path = root.join(MANIFEST);
        let text = fs::read_to_string(&path).map_err(|source| ManifestError::Io {
            path: path.clone(),
            source,
        })?;
        let mut pages = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| ManifestError::Line {
                path: path.clone(),
                line: i + 1,
                message,
            };
            let (url, file) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected URL<TAB>file".into()))?;
            let url = Url::parse(url.trim()).map_err(|e| bad(format!("bad URL `{url}`: {e}")))?;
            let file = file.trim();
            if file.is_empty() {
                return Err(bad("empty file name".into()));
            }
            if pages.insert(lookup_key(&url), PathBuf::from(file)).is_some() {
                return Err(bad(format!("{url} listed twice")));
            }
        }
        Ok(FixtureFetcher { root, pages })
    }

    pub fn len(&self) -> usize {
        self.pages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pages.is_empty()
    }

    pub fn urls(&self) -> impl Iterator<Item = &str> {
        self.pages.keys().map(String::as_str)
    }
}

impl Fetcher for FixtureFetcher {
    fn fetch(&self, url: &Url) -> Result<String, FetchError> {
        let key = lookup_key(url);
        let file = self.pages.get(&key).ok_or(FetchError::NotFound(key.clone()))?;
        fs::read_to_string(self.root.join(file)).map_err(|source| FetchError::Io { url: key, source })
    }
}

/// Pages held in memory, keyed like [`FixtureFetcher`].
#[derive(Debug, Clone, Default)]
pub struct MemoryFetcher {
    pages: HashMap<String, String>,
}

impl MemoryFetcher {
    pub fn new() -> Self {
        MemoryFetcher::default()
    }

    pub fn insert(&mut self, url: &str, html: impl Into<String>) -> Result<(), url::ParseError> {
        self.pages.insert(lookup_key(&Url::parse(url)?), html.into());
        Ok(())
    }
}

impl Fetcher for MemoryFetcher {
    fn fetch(&self, url: &Url) -> Result<String, FetchError> {
        let key = lookup_key(url);
        self.pages.get(&key).cloned().ok_or(FetchError::NotFound(key))
    }
}

/// Wraps a fetcher and counts calls.
#[derive(Debug, Default)]
pub struct CountingFetcher<F> {
    inner: F,
    calls: AtomicUsize,
}

impl<F> CountingFetcher<F> {
    pub fn new(inner: F) -> Self {
        CountingFetcher {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }
}

impl<F: Fetcher> Fetcher for CountingFetcher<F> {
    fn fetch(&self, url: &Url) -> Result<String, FetchError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.inner.fetch(url)
    }
}

/// Live HTTP fetcher.
pub struct HttpFetcher {
    client: reqwest::blocking::Client,
}

impl HttpFetcher {
    pub fn new(timeout: Duration) -> Result<Self, FetchError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .user_agent(concat!("uto-crawler/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| FetchError::Http {
                url: String::new(),
                message: e.to_string(),
            })?;
        Ok(HttpFetcher { client })
    }
}

impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &Url) -> Result<String, FetchError> {
        let http = |e: reqwest::Error| FetchError::Http {
            url: url.to_string(),
            message: e.to_string(),
        };
        self.client
            .get(url.as_str())
            .send()
            .and_then(|r| r.error_for_status())
            .and_then(|r| r.text())
            .map_err(http)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lookup() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.html"), "<p>a</p>").unwrap();
        fs::write(
            dir.path().join(MANIFEST),
            "# pages\nhttp://Example.ORG/a\ta.html\n\n",
        )
        .unwrap();
        let f = FixtureFetcher::open(dir.path()).unwrap();
        assert_eq!(f.len(), 1);
        let u = Url::parse("http://example.org/a#top").unwrap();
        assert_eq!(f.fetch(&u).unwrap(), "<p>a</p>");
        assert!(matches!(
            f.fetch(&Url::parse("http://example.org/b").unwrap()),
            Err(FetchError::NotFound(_))
        ));
    }

    #[test]
    fn manifest_errors() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(MANIFEST), "http://a/ no-tab\n").unwrap();
        let err = FixtureFetcher::open(dir.path()).unwrap_err();
        assert!(err.to_string().contains(":1:"), "{err}");
    }
}
