use url::Url;

use super::{date_in, dedup_tags, parse_count, Outlink, Page, PageKind, PageParse, ParseError, SiteAdapter};
use crate::crawler::policy::Site;
use crate::store::{Iri, RecordDraft};

/// Synthetic corpus format. Records are `div.record` elements under `main`
/// carrying everything in data attributes:
///
/// ```html
/// <div class="record" data-tagger="ann" data-object="http://o/1"
///      data-date="Jun 07" data-tags="a b" data-vote="3"
///      data-comment="..." data-entry="a"></div>
/// ```
///
/// Tags are words, minted as `<origin>/tag/<word>`; `data-source` defaults
/// to the page origin. Every link on the page is an outlink.
pub struct GenericFixture;

impl SiteAdapter for GenericFixture {
    fn site(&self) -> Site {
        Site::GenericFixture
    }

    fn classify(&self, _url: &Url) -> PageKind {
        PageKind::ObjectPage
    }

    fn parse(&self, html: &str, url: &Url) -> Result<PageParse, ParseError> {
        let page = Page::new(html, url);
        let main = page.required("main")?;
        let origin = url.origin().ascii_serialization();
        let tag = |word: &str| page.iri(&format!("{origin}/tag/{}", crate::vocab::encode_tag(word)), "tag");
        let mut out = PageParse::new(PageKind::ObjectPage);
        for rec in main.select(&super::sel("div.record")) {
            let attr = |name: &'static str| rec.value().attr(name);
            let need = |name: &'static str| attr(name).ok_or_else(|| page.missing(name));
            let tags = dedup_tags(
                attr("data-tags")
                    .unwrap_or_default()
                    .split_whitespace()
                    .map(tag)
                    .collect::<Result<Vec<Iri>, _>>()?,
            );
            let vote = match attr("data-vote") {
                Some(v) => Some(parse_count(v).ok_or_else(|| page.bad("vote", v))?),
                None => None,
            };
            out.records.push(RecordDraft {
                entry_tag: attr("data-entry").map(tag).transpose()?,
                tags,
                tagger: need("data-tagger")?.trim().to_string(),
                object: page.iri(need("data-object")?, "object")?,
                source: page.iri(attr("data-source").unwrap_or(&origin), "source")?,
                date: date_in(&page, rec)?,
                comment: attr("data-comment").map(str::to_string),
                vote,
            });
        }
        out.outlinks = page
            .links_in(page.doc.root_element(), "a[href]")
            .into_iter()
            .map(Outlink::plain)
            .collect();
        Ok(out)
    }
}
