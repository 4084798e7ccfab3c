//! The release gate: one PASS/FAIL line per criterion, then a single
//! assertion over all of them. Run with `--nocapture` to see the lines.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::*;
use uto_core::analysis::{
    bucket_rows, fit_power_law, frequency_table, occurrence_share, SourceSummary, TagHistogram, DEFAULT_EDGES,
};
use uto_core::crawler::{adapter_for, crawl, CountingFetcher, CrawlPolicy, FixtureFetcher, Site};
use uto_core::ontology::{builtin, infer_closure, validate, Relation, Rule};
use uto_core::query::{eval, objects_by_tag, objects_of_tagger, taggers_of_object};
use uto_core::store::{merge, parse_turtle, record_to_triples, serialize_turtle};
use uto_core::vocab;
use uto_core::{Graph, Iri, Literal, MonthStamp, TaggingRecord, Term, Triple};

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn c1_published_record() {
    let g = commoncraft_graph();
    assert_eq!(g.len(), 10);
    let s = builtin();
    let subject = iri(COMMONCRAFT_ID);
    let count = |r: Relation| g.objects(&subject, s.relation_iri(r).as_str()).count();
    assert_eq!(count(Relation::HasTag), 5);
    for r in [Relation::HasVote, Relation::HasCreator, Relation::HasObject, Relation::HasComment, Relation::HasDate] {
        assert_eq!(count(r), 1, "{r:?}");
    }
    let one = |r: Relation| g.objects(&subject, s.relation_iri(r).as_str()).next().unwrap().text().to_string();
    assert_eq!(one(Relation::HasVote), "103");
    assert_eq!(one(Relation::HasCreator), "sborrelli");
    assert_eq!(one(Relation::HasDate), "Jun 07");
    assert_eq!(one(Relation::HasObject), COMMONCRAFT);
    assert_eq!(one(Relation::HasComment), COMMONCRAFT_COMMENT);
    assert_eq!(parse_turtle(&serialize_turtle(&g)).unwrap(), g);
    // same statements as the RDF/XML block, read by an independent parser
    let rdf = read_rdfxml(&std::fs::read_to_string(fixtures().join("commoncraft.rdf")).unwrap());
    assert_eq!(plain_literals(&g), rdf);
}

fn c2_source_ratios() {
    let rows = [
        ("Delicious", 996_748, 2_787_860, 9_282_058, [9.31, 3.33, 0.36]),
        ("Flickr", 295_837, 153_778, 1_351_201, [4.57, 8.79, 1.92]),
        ("YouTube", 527_924, 185_975, 1_443_924, [2.74, 7.76, 2.84]),
    ];
    for (site, objects, taggers, tags, expected) in rows {
        let s = SourceSummary::from_counts(site, objects, taggers, tags);
        let got = [s.tag_per_object.value(), s.tag_per_tagger.value(), s.object_per_tagger.value()];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() <= 0.005, "{site}: {got:?} vs {expected:?}");
        }
    }
}

const TABLE6_COUNTS: [u64; 17] = [
    357_028, 217_746, 27_404, 11_524, 6_656, 4_454, 3_387, 2_461, 2_066, 1_597, 1_348, 6_193, 2_151, 1_044, 645,
    1_301, 1_363,
];
const TABLE6_CUMULATIVE: [f64; 17] = [
    55.07, 88.65, 92.88, 94.65, 95.68, 96.37, 96.89, 97.27, 97.59, 97.83, 98.04, 99.00, 99.33, 99.49, 99.59, 99.79,
    100.00,
];

fn c3_frequency_table() {
    assert_eq!(TABLE6_COUNTS.iter().sum::<u64>(), 648_368);
    let check = |rows: &[uto_core::analysis::BucketRow]| {
        assert_eq!(rows.len(), TABLE6_CUMULATIVE.len());
        for (row, want) in rows.iter().zip(TABLE6_CUMULATIVE) {
            assert!((row.cumulative_pct.value() - want).abs() <= 0.01, "{}: {} vs {want}", row.label(), row.cumulative_pct);
        }
    };
    check(&bucket_rows(&DEFAULT_EDGES, &TABLE6_COUNTS).unwrap());
    // and through a histogram with that many tags per bucket
    let mut lo = 1;
    let mut pairs = Vec::with_capacity(648_368);
    for (&hi, &n) in DEFAULT_EDGES.iter().zip(&TABLE6_COUNTS) {
        for k in 0..n {
            pairs.push((format!("{hi}:{k}"), lo + k % (hi - lo + 1)));
        }
        lo = hi + 1;
    }
    let h = TagHistogram::from_counts(pairs);
    assert_eq!(h.unique_tags(), 648_368);
    let rows = frequency_table(&h, &DEFAULT_EDGES).unwrap();
    assert_eq!(rows.iter().map(|r| r.unique_count).collect::<Vec<_>>(), TABLE6_COUNTS);
    check(&rows);
}

fn c4_corpus_shares() {
    let total: u64 = [9_282_058u64, 1_351_201, 1_443_924].iter().sum();
    assert_eq!(total, 12_077_183);
    let design = occurrence_share(101_786, total);
    let blog = occurrence_share(90_242, total);
    assert!((design - 0.843).abs() <= 0.001, "{design}");
    assert!((blog - 0.747).abs() <= 0.001, "{blog}");
}

fn c5_query_oracle() {
    runner(1000, 5)
        .run(&(arb_query_graph(), arb_query()), |(g, q)| {
            prop_assert_eq!(eval(&q, &g).unwrap().rows, oracle_eval(&q, &g));
            Ok(())
        })
        .unwrap();
}

fn record(n: u32, tagger: &str, object: &str, tags: &[Iri], vote: u64) -> Graph {
    let r = TaggingRecord {
        tagging_id: iri(&format!("http://ex.test/tagging/{n}")),
        entry_tag: None,
        tags: tags.to_vec(),
        tagger: tagger.into(),
        object: iri(object),
        source: iri(vocab::DELICIOUS_SOURCE),
        date: MonthStamp::new(3, 8).unwrap(),
        comment: None,
        vote: Some(vote),
    };
    record_to_triples(&r, builtin()).unwrap()
}

fn c6_scenarios() {
    let g = commoncraft_graph();
    let hits = objects_by_tag("design", &g);
    assert_eq!(hits.len(), 1);
    assert_eq!((hits[0].object.text(), hits[0].vote_value()), (COMMONCRAFT, Some(103)));
    let groups = taggers_of_object(&iri(COMMONCRAFT), &g);
    assert_eq!(groups.len(), 1);
    assert_eq!((groups[0].key.text(), groups[0].tags.len()), ("sborrelli", 5));
    let groups = objects_of_tagger("sborrelli", &g);
    assert_eq!(groups.len(), 1);
    assert_eq!((groups[0].key.text(), groups[0].tags.len()), (COMMONCRAFT, 5));

    let design = iri(&vocab::tag_iri_candidates("design")[1]);
    let flickr = iri(&vocab::tag_iri_candidates("design")[2]);
    let g = merge([
        g,
        record(1, "zed", "http://a.test/", std::slice::from_ref(&design), 7),
        record(2, "amy", COMMONCRAFT, std::slice::from_ref(&flickr), 1000),
        record(3, "bo", "http://a.test/", std::slice::from_ref(&design), 7),
        record(4, "sborrelli", "http://0.test/", &[flickr], 12),
    ]);
    let votes: Vec<(String, u64)> = objects_by_tag("design", &g)
        .iter()
        .map(|h| (h.object.text().to_string(), h.vote_value().unwrap()))
        .collect();
    let want = [(COMMONCRAFT, 1000), (COMMONCRAFT, 103), ("http://0.test/", 12), ("http://a.test/", 7)];
    assert_eq!(votes, want.map(|(o, v)| (o.to_string(), v)));
    let taggers: Vec<String> = taggers_of_object(&iri(COMMONCRAFT), &g).iter().map(|t| t.key.text().to_string()).collect();
    assert_eq!(taggers, ["amy", "sborrelli"]);
    let objects: Vec<String> = objects_of_tagger("sborrelli", &g).iter().map(|t| t.key.text().to_string()).collect();
    assert_eq!(objects, ["http://0.test/", COMMONCRAFT]);
}

fn c7_closure() {
    let s = builtin();
    runner(500, 7)
        .run(&(arb_closure_graph(), arb_closure_graph()), |(g, h)| {
            let c = infer_closure(&g, s);
            prop_assert_eq!(&c, &oracle_closure(&g, s));
            prop_assert_eq!(&infer_closure(&c, s), &c);
            let big: Graph = g.iter().chain(&h).cloned().collect();
            prop_assert!(c.is_subset(&infer_closure(&big, s)));
            Ok(())
        })
        .unwrap();
}

fn c8_crawler() {
    let dir = tempfile::tempdir().unwrap();
    let variants = write_corpus(dir.path(), 8);
    assert!(variants >= 400, "{variants}");
    let crawl_with = |workers: usize| {
        let fetcher = CountingFetcher::new(FixtureFetcher::open(dir.path()).unwrap());
        let policy = CrawlPolicy::for_site(Site::GenericFixture).with_workers(workers).with_seed(8);
        let mut records = Vec::new();
        let mut sink = |r: &TaggingRecord, _: Graph| records.push(r.clone());
        crawl(&[&corpus_url(0)], adapter_for(Site::GenericFixture), &fetcher, &policy, &mut sink).unwrap();
        assert_eq!(fetcher.calls(), CORPUS_PAGES, "{workers} workers");
        records.sort_by(|a, b| a.tagging_id.cmp(&b.tagging_id));
        records
    };
    let baseline = crawl_with(1);
    assert!(!baseline.is_empty());
    for _ in 0..20 {
        assert_eq!(crawl_with(1), baseline);
        assert_eq!(crawl_with(8), baseline);
    }
}

fn c9_power_law() {
    for s in [0.7, 1.0, 1.3] {
        let h = TagHistogram::from_counts((1..=10_000u32).map(|r| (format!("t{r}"), (1e12 / f64::from(r).powf(s)).floor() as u64)));
        let fit = fit_power_law(&h).unwrap();
        assert!((fit.exponent - s).abs() <= 0.05, "s={s}: {fit:?}");
    }
}

fn c10_validation() {
    let s = builtin();
    runner(1000, 10)
        .run(&arb_record(), |r| {
            prop_assert_eq!(validate(&record_to_triples(&r, s).unwrap(), s), vec![]);
            Ok(())
        })
        .unwrap();

    let t = iri("http://ex.test/t");
    let base = || {
        let mut g = Graph::new();
        g.add(t.clone(), uto("hasCreator"), Literal::plain("ann"));
        g.add(t.clone(), uto("hasObject"), iri("http://ex.test/o"));
        g.add(t.clone(), uto("hasDate"), Literal::plain("Jun 07"));
        g
    };
    let rules = |g: &Graph| validate(g, s).into_iter().map(|v| v.rule).collect::<Vec<_>>();
    assert_eq!(rules(&base()), []);
    for rel in ["hasCreator", "hasObject", "hasDate"] {
        let g: Graph = base().into_iter().filter(|x| x.predicate != uto(rel)).collect();
        assert_eq!(rules(&g), [Rule::Cardinality], "{rel}");
    }
    let with = |extra: Triple| {
        let mut g = base();
        g.insert(extra);
        rules(&g)
    };
    assert_eq!(with(Triple::new(t.clone(), uto("hasVote"), Literal::plain("lots"))), [Rule::VoteType]);
    let g: Graph = base()
        .into_iter()
        .map(|x| if x.predicate == uto("hasDate") { Triple::new(x.subject, x.predicate, Literal::plain("June 2007")) } else { x })
        .collect();
    assert_eq!(rules(&g), [Rule::DateFormat]);
    assert_eq!(
        with(Triple::new(iri("http://ex.test/o"), iri(vocab::RDF_TYPE), Term::from(uto("Tagger")))),
        [Rule::RangeType]
    );
}

type Criterion = (u8, &'static str, Duration, fn());

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, "published record fixture", Duration::from_secs(1), c1_published_record),
        (2, "per-source ratios", Duration::from_secs(1), c2_source_ratios),
        (3, "frequency table", Duration::from_secs(1), c3_frequency_table),
        (4, "corpus shares", Duration::from_secs(1), c4_corpus_shares),
        (5, "query oracle", Duration::from_secs(60), c5_query_oracle),
        (6, "scenario queries", Duration::from_secs(10), c6_scenarios),
        (7, "inference closure", Duration::from_secs(30), c7_closure),
        (8, "crawler dedup and determinism", Duration::from_secs(30), c8_crawler),
        (9, "power-law recovery", Duration::from_secs(10), c9_power_law),
        (10, "validation", Duration::from_secs(10), c10_validation),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit:?} limit)"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({})", msg.lines().next().unwrap_or(""))
            }
        };
        // straight to the handle so the verdicts show without --nocapture
        let _ = writeln!(std::io::stderr(), "criterion {n}: {verdict} - {name} [{took:.2?}]");
        if !verdict.starts_with("PASS") {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
