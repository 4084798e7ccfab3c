//! Fixtures, generators and reference implementations shared by the
//! integration tests. The oracles here are deliberately naive.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uto_core::ontology::{builtin, normalize_literals, Relation, UtoSchema};
use uto_core::query::{Pattern, Query, Slot};
use uto_core::store::{mint_tagging_id, parse_turtle, LiteralKind};
use uto_core::vocab;
use uto_core::{Graph, Iri, Literal, MonthStamp, TaggingRecord, Term, Triple};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn site_dir(site: &str) -> PathBuf {
    fixtures().join("sites").join(site)
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn uto(local: &str) -> Iri {
    iri(&vocab::term(vocab::UTO, local))
}

pub const COMMONCRAFT_ID: &str = "http://info.slis.indiana.edu/~dingying/10357fc9-f6d2-4347-998c-aa26d63ef81b";
pub const COMMONCRAFT: &str = "http://www.commoncraft.com/show";
pub const COMMONCRAFT_COMMENT: &str = "The CommonCraft Show | Common Craft - Social Design for the Web";
pub const COMMONCRAFT_TAGS: [&str; 5] = ["social_networking", "design", "Web2.0", "instructional_design", "tutorials"];

/// The commoncraft Turtle fixture as read by `import`.
pub fn commoncraft_graph() -> Graph {
    let text = fs::read_to_string(fixtures().join("commoncraft.ttl")).unwrap();
    normalize_literals(&parse_turtle(&text).unwrap(), builtin())
}

pub fn commoncraft_record(with_entry: bool) -> TaggingRecord {
    let tags: Vec<Iri> = COMMONCRAFT_TAGS
        .iter()
        .map(|t| iri(&format!("{}{t}", vocab::DELICIOUS_LEGACY_TAG)))
        .collect();
    TaggingRecord {
        tagging_id: iri(COMMONCRAFT_ID),
        entry_tag: with_entry.then(|| tags[2].clone()),
        tags,
        tagger: "sborrelli".into(),
        object: iri(COMMONCRAFT),
        source: iri(vocab::DELICIOUS_SOURCE),
        date: MonthStamp::new(6, 7).unwrap(),
        comment: Some(COMMONCRAFT_COMMENT.into()),
        vote: Some(103),
    }
}

/// Reads RDF/XML with an independent parser, literals as plain.
pub fn read_rdfxml(text: &str) -> Graph {
    use rio_api::model::{Literal as RioLiteral, Subject, Term as RioTerm};
    use rio_api::parser::TriplesParser;
    let mut g = Graph::new();
    let mut parser = rio_xml::RdfXmlParser::new(text.as_bytes(), None);
    parser
        .parse_all(&mut |t| -> Result<(), rio_xml::RdfXmlError> {
            let Subject::NamedNode(s) = t.subject else { panic!("blank subject") };
            let object: Term = match t.object {
                RioTerm::NamedNode(n) => iri(n.iri).into(),
                RioTerm::Literal(RioLiteral::Simple { value }) => Literal::plain(value).into(),
                RioTerm::Literal(RioLiteral::Typed { value, .. }) => Literal::plain(value).into(),
                other => panic!("unexpected object {other}"),
            };
            g.insert(Triple::new(iri(s.iri), iri(t.predicate.iri), object));
            Ok(())
        })
        .unwrap();
    g
}

/// Replaces every literal with a plain one of the same text.
pub fn plain_literals(g: &Graph) -> Graph {
    g.iter()
        .map(|t| match &t.object {
            Term::Literal(l) if l.kind() != LiteralKind::Plain => {
                Triple::new(t.subject.clone(), t.predicate.clone(), Literal::plain(l.lexical()))
            }
            _ => t.clone(),
        })
        .collect()
}

// ---------------------------------------------------------------- query oracle

const Q_SUBJECTS: usize = 6;
const Q_PREDICATES: usize = 3;
const Q_VARS: [&str; 3] = ["x", "y", "z"];

fn q_subject(i: usize) -> Iri {
    iri(&format!("http://ex.test/s{i}"))
}

fn q_predicate(i: usize) -> Iri {
    iri(&format!("http://ex.test/p{i}"))
}

/// Objects: the subjects again (so joins cross positions) and a few
/// literals, numeric and not, plain and typed.
fn q_object(i: usize) -> Term {
    match i {
        i if i < Q_SUBJECTS => q_subject(i).into(),
        6 => Literal::plain("1").into(),
        7 => Literal::plain("10").into(),
        8 => Literal::integer(2).into(),
        _ => Literal::plain("a").into(),
    }
}

const Q_OBJECTS: usize = 10;

pub fn arb_query_graph() -> impl Strategy<Value = Graph> {
    proptest::collection::vec((0..Q_SUBJECTS, 0..Q_PREDICATES, 0..Q_OBJECTS), 0..=200).prop_map(|ts| {
        ts.into_iter()
            .map(|(s, p, o)| Triple::new(q_subject(s), q_predicate(p), q_object(o)))
            .collect()
    })
}

/// Slot code: 0..3 a variable, otherwise a constant index.
fn slot(code: u8, constant: impl Fn(usize) -> Term) -> Slot {
    let c = usize::from(code);
    if c < Q_VARS.len() {
        Slot::var(Q_VARS[c])
    } else {
        Slot::Term(constant(c - Q_VARS.len()))
    }
}

type RawPattern = (u8, u8, u8);

fn build_block(raw: &[RawPattern]) -> Vec<Pattern> {
    raw.iter()
        .enumerate()
        .map(|(i, &(s, p, o))| {
            // first pattern always binds ?x so every block shares it
            let s = if i == 0 { Slot::var("x") } else { slot(s % 9, |k| q_subject(k % Q_SUBJECTS).into()) };
            // predicates are mostly constant
            let p = if p % 5 == 0 { Slot::var(Q_VARS[usize::from(p / 5) % 3]) } else { Slot::Term(q_predicate(usize::from(p) % Q_PREDICATES).into()) };
            let o = slot(o % 13, |k| q_object(k % Q_OBJECTS));
            Pattern { subject: s, predicate: p, object: o }
        })
        .collect()
}

fn block_vars(block: &[Pattern]) -> BTreeSet<String> {
    block.iter().flat_map(|p| p.vars().map(str::to_string)).collect()
}

pub fn arb_query() -> impl Strategy<Value = Query> {
    let block = proptest::collection::vec(any::<RawPattern>(), 1..=4);
    (
        proptest::collection::vec(block, 1..=3),
        1u8..8,
        proptest::option::of((any::<u8>(), any::<bool>(), any::<bool>())),
        any::<bool>(),
    )
        .prop_map(|(raw_blocks, mask, order, distinct)| {
            let blocks: Vec<Vec<Pattern>> = raw_blocks.iter().map(|b| build_block(b)).collect();
            let common: Vec<String> = blocks
                .iter()
                .map(|b| block_vars(b))
                .reduce(|a, b| a.intersection(&b).cloned().collect())
                .unwrap()
                .into_iter()
                .collect();
            let mut select: Vec<&str> = common
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.as_str())
                .collect();
            if select.is_empty() {
                select.push("x");
            }
            let mut q = Query::select(&select);
            for b in blocks {
                q = q.block(b);
            }
            if let Some((v, numeric, desc)) = order {
                q = q.order_by(&common[usize::from(v) % common.len()], numeric, desc);
            }
            if distinct {
                q = q.distinct();
            }
            q
        })
}

fn numeric(t: &Term) -> Option<i128> {
    let Term::Literal(l) = t else { return None };
    let s = l.lexical();
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Enumerates every assignment of the block's variables over all terms in
/// sight and keeps those under which each pattern is a triple of `g`.
pub fn oracle_eval(q: &Query, g: &Graph) -> Vec<Vec<Term>> {
    let mut universe: BTreeSet<Term> = BTreeSet::new();
    for t in g {
        universe.insert(t.subject.clone().into());
        universe.insert(t.predicate.clone().into());
        universe.insert(t.object.clone());
    }
    for block in &q.blocks {
        for p in block {
            for s in p.slots() {
                if let Slot::Term(t) = s {
                    universe.insert(t.clone());
                }
            }
        }
    }
    let universe: Vec<Term> = universe.into_iter().collect();
    let order_var = q.order_by.as_ref().map(|o| o.var.clone());
    let hidden = order_var.as_ref().filter(|v| !q.select_vars.contains(v)).cloned();
    let mut rows: Vec<Vec<Term>> = Vec::new();
    for block in &q.blocks {
        let vars: Vec<String> = block_vars(block).into_iter().collect();
        let mut idx = vec![0usize; vars.len()];
        if universe.is_empty() && !vars.is_empty() {
            continue;
        }
        loop {
            let value = |name: &str| &universe[idx[vars.iter().position(|v| v == name).unwrap()]];
            let holds = block.iter().all(|p| {
                let get = |s: &Slot| match s {
                    Slot::Term(t) => t.clone(),
                    Slot::Var(v) => value(v).clone(),
                };
                match (get(&p.subject), get(&p.predicate)) {
                    (Term::Iri(s), Term::Iri(pr)) => g.contains(&Triple::new(s, pr, get(&p.object))),
                    _ => false,
                }
            });
            if holds {
                let mut row: Vec<Term> = q.select_vars.iter().map(|v| value(v).clone()).collect();
                if let Some(h) = &hidden {
                    row.push(value(h).clone());
                }
                rows.push(row);
            }
            // odometer
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < universe.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let width = q.select_vars.len();
    let key_col = order_var.map(|v| q.select_vars.iter().position(|s| *s == v).unwrap_or(width));
    rows.sort_by(|a, b| {
        let primary = match (&q.order_by, key_col) {
            (Some(o), Some(c)) => {
                
                if o.numeric {
                    match (numeric(&a[c]), numeric(&b[c])) {
                        (Some(x), Some(y)) => if o.descending { y.cmp(&x) } else { x.cmp(&y) },
                        (Some(_), None) => Ordering::Less,
                        (None, Some(_)) => Ordering::Greater,
                        (None, None) => Ordering::Equal,
                    }
                } else if o.descending {
                    b[c].cmp(&a[c])
                } else {
                    a[c].cmp(&b[c])
                }
            }
            _ => Ordering::Equal,
        };
        primary.then_with(|| a[..width].cmp(&b[..width])).then_with(|| a.cmp(b))
    });
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for mut r in rows {
        r.truncate(width);
        if q.distinct && !seen.insert(r.clone()) {
            continue;
        }
        out.push(r);
    }
    out
}

// ------------------------------------------------------------- closure oracle

pub fn arb_closure_graph() -> impl Strategy<Value = Graph> {
    let node = 0usize..6;
    let predicate = 0usize..(Relation::ALL.len() + 2);
    let object = 0usize..8;
    proptest::collection::vec((node, predicate, object), 0..=50).prop_map(|ts| {
        let s = builtin();
        ts.into_iter()
            .map(|(n, p, o)| {
                let pred = match p {
                    p if p < Relation::ALL.len() => s.relation_iri(Relation::ALL[p]),
                    p if p == Relation::ALL.len() => iri(vocab::RDF_TYPE),
                    _ => iri("http://ex.test/other"),
                };
                let obj: Term = match o {
                    6 => Literal::plain("x").into(),
                    7 => Literal::integer(3).into(),
                    o => iri(&format!("http://ex.test/n{o}")).into(),
                };
                Triple::new(iri(&format!("http://ex.test/n{n}")), pred, obj)
            })
            .collect()
    })
}

/// Applies inverse, symmetry, transitivity and hub projection to the whole
/// graph until a round adds nothing.
pub fn oracle_closure(g: &Graph, s: &UtoSchema) -> Graph {
    let mut g = g.clone();
    let has_object = s.relation_iri(Relation::HasObject);
    loop {
        let mut new = Vec::new();
        for t in &g {
            let Some(rel) = s.relation_for_iri(t.predicate.as_str()) else { continue };
            let def = s.relation(rel);
            let Term::Iri(o) = &t.object else { continue };
            if let Some(inv) = def.inverse_name.and_then(Relation::from_name) {
                new.push(Triple::new(o.clone(), s.relation_iri(inv), t.subject.clone()));
            }
            if def.symmetric {
                new.push(Triple::new(o.clone(), t.predicate.clone(), t.subject.clone()));
            }
            // composition only makes sense when domain and range agree
            if def.transitive && def.domain == def.range {
                for u in &g {
                    if u.predicate == t.predicate && &u.subject == o && u.object.as_iri().is_some() {
                        new.push(Triple::new(t.subject.clone(), t.predicate.clone(), u.object.clone()));
                    }
                }
            }
            if t.predicate == has_object {
                for u in &g {
                    let hub = u.subject == t.subject
                        && s.relation_for_iri(u.predicate.as_str()).is_some_and(|r| s.relation(r).hub_projected);
                    if hub {
                        new.push(Triple::new(o.clone(), u.predicate.clone(), u.object.clone()));
                    }
                }
            }
        }
        let before = g.len();
        g.extend(new);
        if g.len() == before {
            return g;
        }
    }
}

// ---------------------------------------------------------------- records

fn arb_tag() -> impl Strategy<Value = Iri> {
    (0usize..5, "[a-zA-Z0-9_.+ -]{1,12}").prop_map(|(site, text)| iri(&vocab::tag_iri_candidates(&text)[site]))
}

/// Records satisfying their own invariants.
pub fn arb_record() -> impl Strategy<Value = TaggingRecord> {
    (
        proptest::collection::vec(arb_tag(), 0..6),
        any::<prop::sample::Index>(),
        any::<bool>(),
        "[^\u{0}]{1,16}",
        (1u8..=12, 0u8..100),
        proptest::option::of("\\PC{0,40}"),
        proptest::option::of(any::<u64>()),
        any::<u64>(),
        0usize..3,
    )
        .prop_map(|(tags, pick, use_entry, tagger, (m, y), comment, vote, seed, src)| {
            let mut seen = HashSet::new();
            let tags: Vec<Iri> = tags.into_iter().filter(|t| seen.insert(t.clone())).collect();
            let entry_tag = (use_entry && !tags.is_empty()).then(|| pick.get(&tags).clone());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let source = [vocab::DELICIOUS_SOURCE, vocab::YOUTUBE_SOURCE, "http://flickr.com/photos/a/1/"][src];
            TaggingRecord {
                tagging_id: mint_tagging_id(&iri(vocab::TAGGING_BASE), &mut rng),
                entry_tag,
                tags,
                tagger,
                object: iri(&format!("http://objects.test/{}", rng.random::<u32>())),
                source: iri(source),
                date: MonthStamp::new(m, y).unwrap(),
                comment,
                vote,
            }
        })
}

// ------------------------------------------------------------ generic corpus

pub const CORPUS_PAGES: usize = 50;
pub const CORPUS_VARIANTS_PER_PAGE: usize = 9;

pub fn corpus_url(i: usize) -> String {
    format!("http://corpus.test/p/{i}.html")
}

/// Writes a 50-page generic-fixture corpus with a manifest into `dir`.
///
/// Page i links to page i+1 plainly (so all pages are reachable from page 0)
/// and to nine random pages through query-string, fragment and host-case
/// variants, 450 variant links in all. Each page carries two records.
pub fn write_corpus(dir: &Path, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let taggers = ["ann", "bob", "cy", "dee", "eve", "fay", "gus", "hal", "ivy", "jo"];
    let words = ["design", "blog", "web", "music", "art", "news", "video", "howto", "css", "travel"];
    let mut manifest = String::from("# generated corpus\n");
    let mut variants = 0;
    for i in 0..CORPUS_PAGES {
        let mut html = String::from("<!DOCTYPE html>\n<html><body><main>\n");
        for r in 0..2 {
            let n_tags = rng.random_range(1..=4);
            let mut tags: Vec<&str> = Vec::new();
            while tags.len() < n_tags {
                let w = words[rng.random_range(0..words.len())];
                if !tags.contains(&w) {
                    tags.push(w);
                }
            }
            writeln!(
                html,
                r#"<div class="record" data-tagger="{}" data-object="http://objects.test/{i}/{r}" data-date="2007-{:02}-15" data-tags="{}" data-vote="{}"></div>"#,
                taggers[rng.random_range(0..taggers.len())],
                rng.random_range(1..=12),
                tags.join(" "),
                rng.random_range(0..500),
            )
            .unwrap();
        }
        writeln!(html, r#"<a href="/p/{}.html">next</a>"#, (i + 1) % CORPUS_PAGES).unwrap();
        for k in 0..CORPUS_VARIANTS_PER_PAGE {
            let target = rng.random_range(0..CORPUS_PAGES);
            let href = match k % 3 {
                0 => format!("/p/{target}.html?ref=p{i}&n={k}"),
                1 => format!("http://CORPUS.test/p/{target}.html?utm_source=x{k}#s{i}"),
                _ => format!("p/../{target}.html?session={}", rng.random::<u32>()),
            };
            writeln!(html, r#"<a href="{href}">variant</a>"#).unwrap();
            variants += 1;
        }
        html.push_str("</main></body></html>\n");
        let file = format!("p{i}.html");
        fs::write(dir.join(&file), html).unwrap();
        writeln!(manifest, "{}\t{file}", corpus_url(i)).unwrap();
    }
    fs::write(dir.join("manifest.tsv"), manifest).unwrap();
    variants
}
