use scraper::ElementRef;
use url::Url;

use super::{
    bare_iri, date_in, dedup_tags, first, first_text, parse_count, Outlink, Page, PageKind, PageParse,
    ParseError, SiteAdapter,
};
use crate::crawler::policy::Site;
use crate::store::{Iri, RecordDraft};
use crate::vocab;

/// Tag cloud at `/tag`, tag pages at `/tag/<name>[?page=n]`, bookmark
/// histories at `/url/<hash>`.
///
/// A bookmark saved by one person is recorded from the tag page. One saved
/// by more people links to its history page, which lists every save.
pub struct Delicious;

fn segments(url: &Url) -> Vec<&str> {
    url.path_segments()
        .map(|s| s.filter(|p| !p.is_empty()).collect())
        .unwrap_or_default()
}

fn source() -> Iri {
    Iri::new(vocab::DELICIOUS_SOURCE).expect("constant IRI")
}

impl SiteAdapter for Delicious {
    fn site(&self) -> Site {
        Site::Delicious
    }

    fn classify(&self, url: &Url) -> PageKind {
        match segments(url).as_slice() {
            ["tag"] => PageKind::Index,
            ["tag", _] => PageKind::TagPage,
            ["url", _] => PageKind::HistoryPage,
            _ => PageKind::Unknown,
        }
    }

    fn parse(&self, html: &str, url: &Url) -> Result<PageParse, ParseError> {
        let page = Page::new(html, url);
        match self.classify(url) {
            PageKind::Index => {
                let cloud = page.required("#tagcloud")?;
                let mut out = PageParse::new(PageKind::Index);
                out.outlinks = page.links_in(cloud, "a[href]").into_iter().map(Outlink::plain).collect();
                Ok(out)
            }
            PageKind::TagPage => tag_page(&page),
            PageKind::HistoryPage => history_page(&page),
            _ => Err(ParseError::Unclassified { url: url.to_string() }),
        }
    }
}

fn tags_of(page: &Page<'_>, post: ElementRef<'_>) -> Vec<Iri> {
    let tags = page
        .links_in(post, ".tag-chain a.tag")
        .iter()
        .filter_map(bare_iri)
        .collect();
    dedup_tags(tags)
}

/// Notes if any; for an untagged bookmark the title stands in.
fn comment(notes: Option<String>, title: &str, tags: &[Iri]) -> Option<String> {
    notes.or_else(|| (tags.is_empty() && !title.is_empty()).then(|| title.to_string()))
}

fn tag_page(page: &Page<'_>) -> Result<PageParse, ParseError> {
    let list = page.required("#bookmarklist")?;
    let entry = bare_iri(page.url).ok_or_else(|| page.bad("tag page URL", page.url.as_str()))?;
    let mut out = PageParse::new(PageKind::TagPage);
    for post in list.select(&super::sel("li.post")) {
        let link = first(post, "a.taggedlink").ok_or_else(|| page.missing("a.taggedlink"))?;
        let href = link.value().attr("href").ok_or_else(|| page.missing("a.taggedlink[href]"))?;
        let object = page.iri(href, "bookmark URL")?;
        let title = super::text_of(link);
        let saves_el = first(post, ".saves");
        let saves = match saves_el.map(super::text_of) {
            Some(s) => parse_count(&s).ok_or_else(|| page.bad("save count", s))?,
            None => 1,
        };
        let history = saves_el
            .and_then(|e| first(e, "a[href]"))
            .and_then(|a| a.value().attr("href"))
            .and_then(|h| page.resolve(h));
        if saves > 1 {
            if let Some(h) = history {
                out.outlinks.push(Outlink {
                    url: h,
                    entry_tag: Some(entry.clone()),
                });
                continue;
            }
        }
        let tagger = first_text(post, "a.user").ok_or_else(|| page.missing("a.user"))?;
        let tags = tags_of(page, post);
        out.records.push(RecordDraft {
            entry_tag: tags.contains(&entry).then(|| entry.clone()),
            comment: comment(first_text(post, ".notes"), &title, &tags),
            tags,
            tagger,
            object,
            source: source(),
            date: date_in(page, post)?,
            vote: Some(saves),
        });
    }
    if let Some(next) = page
        .doc
        .select(&super::sel("#pagination a.next[href]"))
        .next()
        .and_then(|a| a.value().attr("href"))
        .and_then(|h| page.resolve(h))
    {
        out.outlinks.push(Outlink::plain(next));
    }
    Ok(out)
}

fn history_page(page: &Page<'_>) -> Result<PageParse, ParseError> {
    let info = page.required("#url-info")?;
    let history = page.required("#history")?;
    let link = first(info, "a.taggedlink").ok_or_else(|| page.missing("#url-info a.taggedlink"))?;
    let href = link.value().attr("href").ok_or_else(|| page.missing("a.taggedlink[href]"))?;
    let object = page.iri(href, "bookmark URL")?;
    let title = super::text_of(link);
    let posts: Vec<ElementRef<'_>> = history.select(&super::sel("li.post")).collect();
    let vote = match first_text(info, ".saves") {
        Some(s) => parse_count(&s).ok_or_else(|| page.bad("save count", s))?,
        None => posts.len() as u64,
    };
    let mut out = PageParse::new(PageKind::HistoryPage);
    for post in posts {
        let tagger = first_text(post, "a.user").ok_or_else(|| page.missing("a.user"))?;
        let tags = tags_of(page, post);
        out.records.push(RecordDraft {
            entry_tag: None,
            comment: comment(first_text(post, ".notes"), &title, &tags),
            tags,
            tagger,
            object: object.clone(),
            source: source(),
            date: date_in(page, post)?,
            vote: Some(vote),
        });
    }
    Ok(out)
}
