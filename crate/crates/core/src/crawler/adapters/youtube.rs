use url::Url;

use super::{date_in, first_text, Outlink, Page, PageKind, PageParse, ParseError, SiteAdapter};
use crate::crawler::policy::Site;
use crate::store::{Iri, RecordDraft};
use crate::vocab;

/// Front page at `/`, video pages at `/watch?v=<id>`.
///
/// Tags are search links, so there are no tag pages to enter from and no
/// related tags.
pub struct YouTube;

fn video_id(url: &Url) -> Option<String> {
    url.query_pairs()
        .find(|(k, _)| k == "v")
        .map(|(_, v)| v.into_owned())
        .filter(|v| !v.is_empty())
}

impl SiteAdapter for YouTube {
    fn site(&self) -> Site {
        Site::YouTube
    }

    fn classify(&self, url: &Url) -> PageKind {
        match url.path() {
            "" | "/" => PageKind::Index,
            "/watch" if video_id(url).is_some() => PageKind::ObjectPage,
            _ => PageKind::Unknown,
        }
    }

    fn supports_related_tags(&self) -> bool {
        false
    }

    fn parse(&self, html: &str, url: &Url) -> Result<PageParse, ParseError> {
        let page = Page::new(html, url);
        match self.classify(url) {
            PageKind::Index => {
                let videos = page.required("#videos")?;
                let mut out = PageParse::new(PageKind::Index);
                out.outlinks = page.links_in(videos, "a[href]").into_iter().map(Outlink::plain).collect();
                Ok(out)
            }
            PageKind::ObjectPage => video_page(&page),
            _ => Err(ParseError::Unclassified { url: url.to_string() }),
        }
    }
}

fn tag_iri(text: &str) -> Option<Iri> {
    Iri::new(format!(
        "{}{}{}",
        vocab::YOUTUBE_TAG_PREFIX,
        vocab::encode_tag(text),
        vocab::YOUTUBE_TAG_SUFFIX
    ))
    .ok()
}

fn video_page(page: &Page<'_>) -> Result<PageParse, ParseError> {
    let info = page.required("#watch")?;
    let id = video_id(page.url).ok_or_else(|| page.bad("video id", page.url.as_str()))?;
    let object = Iri::new(format!("http://www.youtube.com/watch?v={}", vocab::encode_tag(&id)))
        .map_err(|_| page.bad("video id", id.clone()))?;
    let tagger = first_text(info, ".uploader a").ok_or_else(|| page.missing(".uploader a"))?;
    let rating = page.required(".rating[data-stars]")?;
    let raw = rating.value().attr("data-stars").unwrap_or_default();
    let stars = raw
        .trim()
        .parse::<u64>()
        .ok()
        .filter(|s| (1..=5).contains(s))
        .ok_or_else(|| page.bad("star rating", raw))?;
    let mut tags = Vec::new();
    for a in info.select(&super::sel("#tags a")) {
        let text = super::text_of(a);
        if text.is_empty() {
            continue;
        }
        let t = tag_iri(&text).ok_or_else(|| page.bad("tag", text.clone()))?;
        if !tags.contains(&t) {
            tags.push(t);
        }
    }
    let comment = [first_text(info, "h1.title"), first_text(info, ".description")]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" | ");
    let mut out = PageParse::new(PageKind::ObjectPage);
    out.records.push(RecordDraft {
        entry_tag: None,
        tags,
        tagger,
        object,
        source: Iri::new(vocab::YOUTUBE_SOURCE).expect("constant IRI"),
        date: date_in(page, info)?,
        comment: (!comment.is_empty()).then_some(comment),
        vote: Some(stars),
    });
    if let Ok(related) = page.required("#related") {
        out.outlinks = page.links_in(related, "a[href]").into_iter().map(Outlink::plain).collect();
    }
    Ok(out)
}
