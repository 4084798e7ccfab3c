use url::Url;

use super::{
    bare_iri, date_in, dedup_tags, first_text, parse_count, Outlink, Page, PageKind, PageParse, ParseError,
    SiteAdapter,
};
use crate::crawler::policy::Site;
use crate::store::RecordDraft;

/// Tag cloud at `/photos/tags`, tag pages at `/photos/tags/<tag>`, photo
/// pages at `/photos/<owner>/<id>/`.
///
/// Tag pages only link to photos; the record comes from the photo page,
/// with the photo file as object and the page itself as source.
pub struct Flickr;

impl SiteAdapter for Flickr {
    fn site(&self) -> Site {
        Site::Flickr
    }

    fn classify(&self, url: &Url) -> PageKind {
        let segs: Vec<&str> = url
            .path_segments()
            .map(|s| s.filter(|p| !p.is_empty()).collect())
            .unwrap_or_default();
        match segs.as_slice() {
            ["photos", "tags"] => PageKind::Index,
            ["photos", "tags", _] => PageKind::TagPage,
            ["photos", _, id] if id.bytes().all(|b| b.is_ascii_digit()) => PageKind::ObjectPage,
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
            PageKind::TagPage => {
                let photos = page.required("#photos")?;
                let entry = bare_iri(url).ok_or_else(|| page.bad("tag page URL", url.as_str()))?;
                let mut out = PageParse::new(PageKind::TagPage);
                out.outlinks = page
                    .links_in(photos, "a.photo[href]")
                    .into_iter()
                    .map(|u| Outlink {
                        url: u,
                        entry_tag: Some(entry.clone()),
                    })
                    .collect();
                if let Ok(next) = page.required("#pagination a.next[href]") {
                    out.outlinks.extend(next.value().attr("href").and_then(|h| page.resolve(h)).map(Outlink::plain));
                }
                Ok(out)
            }
            PageKind::ObjectPage => photo_page(&page),
            _ => Err(ParseError::Unclassified { url: url.to_string() }),
        }
    }
}

fn photo_page(page: &Page<'_>) -> Result<PageParse, ParseError> {
    let body = page.required("#photo")?;
    let img = page.required("img.main-photo")?;
    let src = img.value().attr("src").ok_or_else(|| page.missing("img.main-photo[src]"))?;
    let object = page.iri(src, "photo URL")?;
    let tagger = first_text(body, ".owner .username").ok_or_else(|| page.missing(".owner .username"))?;
    let comment = [first_text(body, ".photo-title"), first_text(body, ".photo-description")]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" | ");
    let vote = match first_text(body, ".favorites") {
        Some(s) => Some(parse_count(&s).ok_or_else(|| page.bad("favorite count", s))?),
        None => None,
    };
    let tags = page.links_in(body, "#tags a.tag[href]").iter().filter_map(bare_iri).collect();
    let mut out = PageParse::new(PageKind::ObjectPage);
    out.records.push(RecordDraft {
        entry_tag: None,
        tags: dedup_tags(tags),
        tagger,
        object,
        source: bare_iri(page.url).ok_or_else(|| page.bad("photo page URL", page.url.as_str()))?,
        date: date_in(page, body)?,
        comment: (!comment.is_empty()).then_some(comment),
        vote,
    });
    Ok(out)
}
