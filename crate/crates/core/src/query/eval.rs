use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use super::pattern::{Pattern, Query, QueryError, Slot};
use crate::store::{Graph, Iri, Term, Triple};

/// Variable assignment produced by pattern matching.
pub type Bindings = BTreeMap<String, Term>;

/// Triples of a graph indexed by each position.
struct Index<'g> {
    all: Vec<&'g Triple>,
    by_subject: HashMap<&'g Iri, Vec<&'g Triple>>,
    by_predicate: HashMap<&'g Iri, Vec<&'g Triple>>,
    by_object: HashMap<&'g Term, Vec<&'g Triple>>,
}

impl<'g> Index<'g> {
    fn new(g: &'g Graph) -> Self {
        let mut idx = Index {
            all: Vec::with_capacity(g.len()),
            by_subject: HashMap::new(),
            by_predicate: HashMap::new(),
            by_object: HashMap::new(),
        };
        for t in g {
            idx.all.push(t);
            idx.by_subject.entry(&t.subject).or_default().push(t);
            idx.by_predicate.entry(&t.predicate).or_default().push(t);
            idx.by_object.entry(&t.object).or_default().push(t);
        }
        idx
    }

    /// Smallest candidate list for a pattern whose bound positions are given.
    fn candidates(&self, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> &[&'g Triple] {
        const EMPTY: &[&Triple] = &[];
        let mut best: &[&'g Triple] = &self.all;
        if let Some(s) = s {
            let Some(s) = s.as_iri() else { return EMPTY };
            best = shorter(best, self.by_subject.get(s));
        }
        if let Some(p) = p {
            let Some(p) = p.as_iri() else { return EMPTY };
            best = shorter(best, self.by_predicate.get(p));
        }
        if let Some(o) = o {
            best = shorter(best, self.by_object.get(o));
        }
        best
    }
}

fn shorter<'a, 'g>(current: &'a [&'g Triple], list: Option<&'a Vec<&'g Triple>>) -> &'a [&'g Triple] {
    match list {
        None => &[],
        Some(l) if l.len() < current.len() => l,
        Some(_) => current,
    }
}

fn resolve<'a>(slot: &'a Slot, b: &'a Bindings) -> Option<&'a Term> {
    match slot {
        Slot::Term(t) => Some(t),
        Slot::Var(v) => b.get(v),
    }
}

fn bind(slot: &Slot, value: Term, b: &mut Bindings) -> bool {
    match slot {
        Slot::Term(t) => *t == value,
        Slot::Var(v) => match b.get(v) {
            Some(existing) => *existing == value,
            None => {
                b.insert(v.clone(), value);
                true
            }
        },
    }
}

/// All assignments under which every pattern is a triple of `g`.
pub fn match_bgp(patterns: &[Pattern], g: &Graph) -> Vec<Bindings> {
    let idx = Index::new(g);
    match_with(patterns, &idx)
}

fn match_with(patterns: &[Pattern], idx: &Index<'_>) -> Vec<Bindings> {
    let mut out = Vec::new();
    let mut used = vec![false; patterns.len()];
    extend(patterns, idx, &mut used, Bindings::new(), &mut out);
    out
}

fn extend(patterns: &[Pattern], idx: &Index<'_>, used: &mut [bool], b: Bindings, out: &mut Vec<Bindings>) {
    // most selective remaining pattern first
    let next = (0..patterns.len()).filter(|&i| !used[i]).min_by_key(|&i| {
        let p = &patterns[i];
        idx.candidates(resolve(&p.subject, &b), resolve(&p.predicate, &b), resolve(&p.object, &b))
            .len()
    });
    let Some(i) = next else {
        out.push(b);
        return;
    };
    let p = &patterns[i];
    used[i] = true;
    let candidates = idx.candidates(resolve(&p.subject, &b), resolve(&p.predicate, &b), resolve(&p.object, &b));
    for t in candidates {
        let mut nb = b.clone();
        if bind(&p.subject, Term::Iri(t.subject.clone()), &mut nb)
            && bind(&p.predicate, Term::Iri(t.predicate.clone()), &mut nb)
            && bind(&p.object, t.object.clone(), &mut nb)
        {
            extend(patterns, idx, used, nb, out);
        }
    }
    used[i] = false;
}

/// Projected query answers. Rows are aligned with `vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultSet {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl ResultSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Value of `var` in row `row`.
    pub fn get(&self, row: usize, var: &str) -> Option<&Term> {
        self.rows.get(row)?.get(self.column(var)?)
    }
}

/// Integer value of a term for numeric ordering.
pub(crate) fn numeric_value(t: &Term) -> Option<i128> {
    let lit = t.as_literal()?;
    let s = lit.lexical();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Row order for a query: the ORDER BY column `(index, numeric, descending)`
/// first, then the first `width` values, then the rest.
pub(crate) fn compare_rows(a: &[Term], b: &[Term], key: Option<(usize, bool, bool)>, width: usize) -> Ordering {
    let primary = match key {
        None => Ordering::Equal,
        Some((col, true, descending)) => match (numeric_value(&a[col]), numeric_value(&b[col])) {
            (Some(x), Some(y)) => directed(x.cmp(&y), descending),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        },
        Some((col, false, descending)) => directed(a[col].cmp(&b[col]), descending),
    };
    primary
        .then_with(|| a[..width].cmp(&b[..width]))
        .then_with(|| a.cmp(b))
}

fn directed(o: Ordering, descending: bool) -> Ordering {
    if descending {
        o.reverse()
    } else {
        o
    }
}

/// Evaluates `q` over `g`.
///
/// UNION branches are concatenated (bag semantics) unless `distinct` is set.
/// Rows come back in ORDER BY order with ties broken by comparing projected
/// rows; without ORDER BY they are simply sorted.
pub fn eval(q: &Query, g: &Graph) -> Result<ResultSet, QueryError> {
    q.check()?;
    let idx = Index::new(g);
    let width = q.select_vars.len();
    let mut columns: Vec<&String> = q.select_vars.iter().collect();
    let key = q.order_by.as_ref().map(|o| {
        let col = match q.select_vars.iter().position(|v| *v == o.var) {
            Some(c) => c,
            None => {
                // bound but not projected: sort on an extra column
                columns.push(&o.var);
                width
            }
        };
        (col, o.numeric, o.descending)
    });
    let mut rows: Vec<Vec<Term>> = Vec::new();
    for block in &q.blocks {
        for b in match_with(block, &idx) {
            rows.push(columns.iter().map(|v| b[*v].clone()).collect());
        }
    }
    rows.sort_by(|a, b| compare_rows(a, b, key, width));
    for r in &mut rows {
        r.truncate(width);
    }
    if q.distinct {
        let mut seen = HashSet::new();
        rows.retain(|r| seen.insert(r.clone()));
    }
    Ok(ResultSet {
        vars: q.select_vars.clone(),
        rows,
    })
}
