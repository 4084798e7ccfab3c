mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::*;
use uto_core::ontology::builtin;
use uto_core::query::{
    eval, objects_by_tag, objects_of_tagger, parse_query, taggers_of_object, Query,
};
use uto_core::store::{merge, record_to_triples};
use uto_core::vocab;
use uto_core::{Graph, Iri, Literal, MonthStamp, TaggingRecord, Term};

/// Renders a query in the text form accepted by `parse_query`.
fn to_text(q: &Query) -> String {
    let mut s = String::from("SELECT ");
    if q.distinct {
        s.push_str("DISTINCT ");
    }
    for v in &q.select_vars {
        s.push_str(&format!("?{v} "));
    }
    s.push_str("WHERE {\n");
    let groups: Vec<String> = q
        .blocks
        .iter()
        .map(|b| {
            let body: Vec<String> = b.iter().map(|p| format!("{} {} {}", p.subject, p.predicate, p.object)).collect();
            format!("  {{ {} }}", body.join(" . "))
        })
        .collect();
    s.push_str(&groups.join("\n  UNION\n"));
    s.push_str("\n}");
    if let Some(o) = &q.order_by {
        let inner = if o.numeric { format!("xsd:integer(?{})", o.var) } else { format!("?{}", o.var) };
        s.push_str(&if o.descending { format!(" ORDER BY DESC({inner})") } else { format!(" ORDER BY ASC({inner})") });
    }
    s
}

fn shuffled(q: &Query, seed: u64) -> Query {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut q = q.clone();
    for b in &mut q.blocks {
        b.shuffle(&mut rng);
    }
    q.blocks.shuffle(&mut rng);
    q
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eval_matches_the_enumeration_oracle(g in arb_query_graph(), q in arb_query()) {
        let rs = eval(&q, &g).unwrap();
        prop_assert_eq!(&rs.vars, &q.select_vars);
        prop_assert_eq!(rs.rows, oracle_eval(&q, &g));
    }

    #[test]
    fn pattern_and_branch_order_do_not_matter(g in arb_query_graph(), q in arb_query(), seed in any::<u64>()) {
        prop_assert_eq!(eval(&shuffled(&q, seed), &g).unwrap(), eval(&q, &g).unwrap());
    }

    #[test]
    fn distinct_rows_are_unique(g in arb_query_graph(), q in arb_query()) {
        let rows = eval(&q.clone().distinct(), &g).unwrap().rows;
        let unique: HashSet<_> = rows.iter().collect();
        prop_assert_eq!(unique.len(), rows.len());
        // and nothing is lost
        let all: HashSet<_> = eval(&Query { distinct: false, ..q }, &g).unwrap().rows.into_iter().collect();
        prop_assert_eq!(all, rows.into_iter().collect::<HashSet<_>>());
    }

    #[test]
    fn text_form_round_trips(q in arb_query()) {
        let text = to_text(&q);
        prop_assert_eq!(parse_query(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?, q);
    }
}

#[test]
fn scenarios_on_the_published_record() {
    let g = commoncraft_graph();
    let hits = objects_by_tag("design", &g);
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].object, Term::from(iri(COMMONCRAFT)));
    assert_eq!(hits[0].vote_value(), Some(103));
    assert!(objects_by_tag("snow", &g).is_empty());

    let groups = taggers_of_object(&iri(COMMONCRAFT), &g);
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].key, Term::from(Literal::plain("sborrelli")));
    assert_eq!(groups[0].tagging, Term::from(iri(COMMONCRAFT_ID)));
    let mut tags: Vec<String> = groups[0].tags.iter().map(|t| vocab::tag_text(t.text()).unwrap()).collect();
    tags.sort();
    let mut expected: Vec<String> = COMMONCRAFT_TAGS.iter().map(|s| s.to_string()).collect();
    expected.sort();
    assert_eq!(tags, expected);

    let groups = objects_of_tagger("sborrelli", &g);
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].key, Term::from(iri(COMMONCRAFT)));
    assert_eq!(groups[0].tags.len(), 5);
    assert!(objects_of_tagger("nobody", &g).is_empty());
}

fn record(n: u32, tagger: &str, object: &str, tags: &[Iri], vote: u64) -> Graph {
    let r = TaggingRecord {
        tagging_id: iri(&format!("http://ex.test/tagging/{n}")),
        entry_tag: None,
        tags: tags.to_vec(),
        tagger: tagger.into(),
        object: iri(object),
        source: iri("http://ex.test"),
        date: MonthStamp::new(3, 8).unwrap(),
        comment: None,
        vote: Some(vote),
    };
    record_to_triples(&r, builtin()).unwrap()
}

#[test]
fn every_site_template_is_searched() {
    for (k, tag) in vocab::tag_iri_candidates("web design").iter().enumerate() {
        let g = record(1, "ann", &format!("http://ex.test/o{k}"), &[iri(tag)], 5);
        let hits = objects_by_tag("web design", &g);
        assert_eq!(hits.len(), 1, "template {k}: {tag}");
        assert_eq!(hits[0].object, Term::from(iri(&format!("http://ex.test/o{k}"))));
    }
}

#[test]
fn multi_row_ordering() {
    let design = iri(&vocab::tag_iri_candidates("design")[0]);
    let snow = iri(&vocab::tag_iri_candidates("snow")[2]);
    let flickr_design = iri(&vocab::tag_iri_candidates("design")[2]);
    let g = merge([
        record(1, "cat", "http://ex.test/b", std::slice::from_ref(&design), 9),
        record(2, "ann", "http://ex.test/a", &[design.clone(), snow.clone()], 100),
        record(3, "bob", "http://ex.test/c", &[flickr_design], 9),
        record(4, "ann", "http://ex.test/b", std::slice::from_ref(&snow), 9),
        record(5, "bob", "http://ex.test/b", std::slice::from_ref(&design), 9),
    ]);

    // votes compare as numbers: 100 before 9; ties by object
    let hits: Vec<(String, u64)> = objects_by_tag("design", &g)
        .iter()
        .map(|h| (h.object.text().to_string(), h.vote_value().unwrap()))
        .collect();
    assert_eq!(
        hits,
        [("http://ex.test/a".into(), 100), ("http://ex.test/b".into(), 9), ("http://ex.test/c".into(), 9)]
    );

    let groups = taggers_of_object(&iri("http://ex.test/b"), &g);
    let taggers: Vec<&str> = groups.iter().map(|t| t.key.text()).collect();
    assert_eq!(taggers, ["ann", "bob", "cat"]);

    let objects: Vec<(String, usize)> = objects_of_tagger("ann", &g)
        .iter()
        .map(|t| (t.key.text().to_string(), t.tags.len()))
        .collect();
    assert_eq!(objects, [("http://ex.test/a".into(), 2), ("http://ex.test/b".into(), 1)]);
}
