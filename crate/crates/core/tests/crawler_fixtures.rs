mod common;

use std::collections::BTreeMap;

use common::*;
use uto_core::crawler::{adapter_for, crawl, CountingFetcher, CrawlPolicy, CrawlStats, FixtureFetcher, Site};
use uto_core::ontology::{builtin, validate, Relation};
use uto_core::store::record_to_triples;
use uto_core::vocab;
use uto_core::{Graph, TaggingRecord, Term};

struct Run {
    stats: CrawlStats,
    records: Vec<TaggingRecord>,
    graph: Graph,
}

fn run(site: Site, seed_url: &str, policy: CrawlPolicy, dir: &std::path::Path) -> Run {
    let fetcher = FixtureFetcher::open(dir).unwrap();
    let mut records = Vec::new();
    let mut graph = Graph::new();
    let mut sink = |r: &TaggingRecord, g: Graph| {
        records.push(r.clone());
        graph.extend(g);
    };
    let stats = crawl(&[seed_url], adapter_for(site), &fetcher, &policy, &mut sink).unwrap();
    Run { stats, records, graph }
}

fn site_run(site: Site, seed_url: &str) -> Run {
    run(site, seed_url, CrawlPolicy::for_site(site), &site_dir(site.name()))
}

fn counts(s: &CrawlStats) -> [usize; 8] {
    [
        s.pages_fetched,
        s.fetch_failures,
        s.parse_failures,
        s.records_emitted,
        s.duplicate_records,
        s.distinct_tags,
        s.distinct_taggers,
        s.distinct_objects,
    ]
}

fn by_tagger(records: &[TaggingRecord]) -> BTreeMap<&str, &TaggingRecord> {
    records.iter().map(|r| (r.tagger.as_str(), r)).collect()
}

#[test]
fn delicious_fixture_crawl() {
    let r = site_run(Site::Delicious, "http://delicious.com/tag");
    println!("{}", r.stats);
    // "design" is tagged under both hosts, so 14 tag IRIs for 13 words
    assert_eq!(counts(&r.stats), [6, 0, 0, 7, 1, 14, 7, 5]);
    assert!(!r.stats.budget_exhausted);
    assert_eq!(validate(&r.graph, builtin()), vec![]);

    let taggers = by_tagger(&r.records);
    let names: Vec<&str> = taggers.keys().copied().collect();
    assert_eq!(names, ["amyo", "inna", "jdoe", "karenyan119", "mkay", "pkline", "sborrelli"]);

    // the published record, reached through the Web2.0 tag page history
    let s = taggers["sborrelli"];
    let expected = commoncraft_record(true);
    assert_eq!(
        TaggingRecord { tagging_id: expected.tagging_id.clone(), ..s.clone() },
        expected
    );

    // no tags: the bookmark title stands in as the comment
    let amyo = taggers["amyo"];
    assert!(amyo.tags.is_empty());
    assert!(amyo.comment.is_some());
}

#[test]
fn flickr_fixture_crawl() {
    let r = site_run(Site::Flickr, "http://flickr.com/photos/tags");
    println!("{}", r.stats);
    assert_eq!(counts(&r.stats), [6, 0, 0, 3, 0, 4, 3, 3]);
    assert_eq!(validate(&r.graph, builtin()), vec![]);
    let sam = by_tagger(&r.records)["samthesham"];
    assert_eq!(sam.object.as_str(), "http://farm3.static.flickr.com/2113/1899425530_7f10c0338a.jpg?v=0");
    assert_eq!(sam.date.to_string(), "Dec 06");
    assert_eq!(sam.vote, Some(12));
    assert_eq!(sam.source.as_str(), "http://flickr.com/photos/samthesham/1991811650/");
    let tags: Vec<String> = sam.tags.iter().map(|t| vocab::tag_text(t.as_str()).unwrap()).collect();
    assert_eq!(tags, ["2006", "harbour", "night"]);
    assert_eq!(sam.entry_tag.as_ref().map(|t| t.as_str()), Some("http://flickr.com/photos/tags/2006"));
}

#[test]
fn youtube_fixture_crawl() {
    let r = site_run(Site::YouTube, "http://youtube.com/");
    println!("{}", r.stats);
    assert_eq!(counts(&r.stats), [4, 0, 0, 3, 0, 5, 2, 3]);
    assert_eq!(validate(&r.graph, builtin()), vec![]);
    let votes: Vec<(&str, Option<u64>)> = r.records.iter().map(|r| (r.tagger.as_str(), r.vote)).collect();
    assert_eq!(votes, [("karenyan119", Some(4)), ("moviebuff", Some(5)), ("karenyan119", Some(3))]);
    assert!(r.records.iter().all(|r| r.entry_tag.is_none()));
    assert_eq!(r.graph.with_predicate(builtin().relation_iri(Relation::HasRelatedTag).as_str()).count(), 0);
    let birds = r.records.iter().find(|r| r.vote == Some(3)).unwrap();
    assert!(birds.tags.iter().any(|t| vocab::tag_text(t.as_str()).as_deref() == Some("the birds")));
    assert!(birds.object.as_str().starts_with("http://www.youtube.com/watch?v="));
}

#[test]
fn emitted_graphs_are_the_record_triples() {
    let fetcher = FixtureFetcher::open(site_dir("delicious")).unwrap();
    let mut pairs = Vec::new();
    let mut sink = |r: &TaggingRecord, g: Graph| pairs.push((r.clone(), g));
    crawl(
        &["http://delicious.com/tag"],
        adapter_for(Site::Delicious),
        &fetcher,
        &CrawlPolicy::for_site(Site::Delicious),
        &mut sink,
    )
    .unwrap();
    for (r, g) in pairs {
        assert_eq!(g, record_to_triples(&r, builtin()).unwrap());
    }
}

#[test]
fn stats_count_the_sink_output() {
    for (site, seed) in [
        (Site::Delicious, "http://delicious.com/tag"),
        (Site::Flickr, "http://flickr.com/photos/tags"),
        (Site::YouTube, "http://youtube.com/"),
    ] {
        let r = site_run(site, seed);
        assert_eq!(r.stats.records_emitted, r.records.len());
        let objects: std::collections::BTreeSet<_> = r.records.iter().map(|x| &x.object).collect();
        let tags: std::collections::BTreeSet<_> = r.records.iter().flat_map(|x| &x.tags).collect();
        let taggers: std::collections::BTreeSet<_> = r.records.iter().map(|x| &x.tagger).collect();
        assert_eq!(r.stats.distinct_objects, objects.len(), "{site}");
        assert_eq!(r.stats.distinct_tags, tags.len(), "{site}");
        assert_eq!(r.stats.distinct_taggers, taggers.len(), "{site}");
        let creator = builtin().relation_iri(Relation::HasCreator);
        let tagger_literals: std::collections::BTreeSet<&Term> = r
            .graph
            .with_predicate(creator.as_str())
            .map(|t| &t.object)
            .collect();
        assert_eq!(tagger_literals.len(), taggers.len(), "{site}");
    }
}

#[test]
fn zero_budget_fetches_nothing() {
    let dir = site_dir("delicious");
    let fetcher = CountingFetcher::new(FixtureFetcher::open(&dir).unwrap());
    let policy = CrawlPolicy::for_site(Site::Delicious).with_max_pages(0);
    let mut g = Graph::new();
    let stats = crawl(&["http://delicious.com/tag"], adapter_for(Site::Delicious), &fetcher, &policy, &mut g).unwrap();
    assert_eq!(fetcher.calls(), 0);
    assert_eq!(stats.pages_fetched, 0);
    assert!(g.is_empty());
}

#[test]
fn budget_stops_the_crawl() {
    let r = run(
        Site::Delicious,
        "http://delicious.com/tag",
        CrawlPolicy::for_site(Site::Delicious).with_max_pages(2),
        &site_dir("delicious"),
    );
    assert_eq!(r.stats.pages_fetched, 2);
    assert!(r.stats.budget_exhausted);
}

#[test]
fn corpus_pages_are_fetched_once_each() {
    let dir = tempfile::tempdir().unwrap();
    let variants = write_corpus(dir.path(), 11);
    assert_eq!(variants, CORPUS_PAGES * CORPUS_VARIANTS_PER_PAGE);
    let fetcher = CountingFetcher::new(FixtureFetcher::open(dir.path()).unwrap());
    let policy = CrawlPolicy::for_site(Site::GenericFixture).with_workers(4);
    let mut g = Graph::new();
    let stats = crawl(&[&corpus_url(0)], adapter_for(Site::GenericFixture), &fetcher, &policy, &mut g).unwrap();
    assert_eq!(fetcher.calls(), CORPUS_PAGES);
    assert_eq!(stats.pages_fetched, CORPUS_PAGES);
    assert_eq!(stats.fetch_failures, 0);
    assert_eq!(stats.records_emitted + stats.duplicate_records, 2 * CORPUS_PAGES);
}

#[test]
fn worker_count_does_not_change_the_output() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path(), 5);
    let crawl_with = |workers: usize| {
        let policy = CrawlPolicy::for_site(Site::GenericFixture).with_workers(workers).with_seed(99);
        run(Site::GenericFixture, &corpus_url(0), policy, dir.path())
    };
    let one = crawl_with(1);
    for _ in 0..5 {
        let eight = crawl_with(8);
        assert_eq!(eight.records, one.records);
        assert_eq!(eight.graph, one.graph);
        assert_eq!(counts(&eight.stats), counts(&one.stats));
    }
}

