//! A small SPARQL-like text form for [`Query`] values.
//!
//! ```text
//! PREFIX ex: <http://example.org/>
//! SELECT DISTINCT ?object ?vote WHERE {
//!   { ?x uto:hasObject ?object . ?x uto:hasVote ?vote . ?x uto:hasTag deltag:design }
//!   UNION
//!   { ?x uto:hasObject ?object . ?x uto:hasVote ?vote . ?x uto:hasTag flickr:design }
//! }
//! ORDER BY DESC(xsd:integer(?vote))
//! ```
//!
//! The prefixes of the Turtle writer are predeclared. A `WHERE` body is
//! either a single group of patterns or braced groups joined by `UNION`.
//! `ORDER BY` takes `?v`, `ASC(?v)` or `DESC(?v)`, and `xsd:integer(?v)`
//! inside either for a numeric sort. Comments start with `#`.

use super::pattern::{OrderBy, Pattern, Query, QueryError, Slot};
use crate::store::turtle::Cursor;
use crate::store::{Iri, Term, TurtleError};
use crate::vocab;

fn is_var_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn variable(cur: &mut Cursor<'_>) -> Result<Option<String>, TurtleError> {
    cur.skip_ws();
    if !matches!(cur.peek(), Some('?') | Some('$')) {
        return Ok(None);
    }
    cur.take_while(|c| c == '?' || c == '$');
    let name = cur.take_while(is_var_char);
    if name.is_empty() {
        return Err(cur.error("empty variable name"));
    }
    Ok(Some(name.to_string()))
}

fn slot(cur: &mut Cursor<'_>, object: bool) -> Result<Slot, TurtleError> {
    if let Some(v) = variable(cur)? {
        return Ok(Slot::Var(v));
    }
    if object {
        Ok(Slot::Term(cur.object()?))
    } else if cur.eat_keyword("a") {
        Ok(Slot::Term(Term::Iri(Iri::new(vocab::RDF_TYPE).expect("valid"))))
    } else {
        Ok(Slot::Term(Term::Iri(cur.iri()?)))
    }
}

/// Patterns up to the closing `}` of the current group.
fn group(cur: &mut Cursor<'_>) -> Result<Vec<Pattern>, TurtleError> {
    let mut patterns = Vec::new();
    loop {
        cur.skip_ws();
        if cur.peek() == Some('}') {
            return Ok(patterns);
        }
        let subject = slot(cur, false)?;
        loop {
            let predicate = slot(cur, false)?;
            loop {
                let object = slot(cur, true)?;
                patterns.push(Pattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if !cur.eat(',') {
                    break;
                }
            }
            if !cur.eat(';') {
                break;
            }
        }
        if !cur.eat('.') {
            cur.skip_ws();
            if cur.peek() != Some('}') {
                return Err(cur.error(format!("expected `.` or `}}`, found {}", cur.describe_next())));
            }
        }
    }
}

fn order_key(cur: &mut Cursor<'_>) -> Result<OrderBy, TurtleError> {
    let descending = if cur.eat_keyword("DESC") {
        true
    } else {
        cur.eat_keyword("ASC");
        false
    };
    let wrapped = cur.eat('(');
    let mut numeric = false;
    let var = match variable(cur)? {
        Some(v) => v,
        None => {
            let cast = cur.iri()?;
            if cast.as_str() != vocab::XSD_INTEGER {
                return Err(cur.error(format!("unsupported cast <{cast}>")));
            }
            numeric = true;
            cur.expect('(')?;
            let v = variable(cur)?.ok_or_else(|| cur.error("expected variable"))?;
            cur.expect(')')?;
            v
        }
    };
    if wrapped {
        cur.expect(')')?;
    }
    Ok(OrderBy {
        var,
        numeric,
        descending,
    })
}

/// Parses the text form into a checked [`Query`].
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let mut cur = Cursor::new(text);
    for (prefix, ns) in vocab::PREFIXES {
        cur.prefixes.insert(prefix.to_string(), ns.to_string());
    }
    loop {
        if cur.eat_keyword("PREFIX") {
            let prefix = cur.pname_ns()?;
            let ns = cur.iriref()?;
            cur.prefixes.insert(prefix, ns.into_string());
        } else if cur.eat_keyword("@prefix") {
            let prefix = cur.pname_ns()?;
            let ns = cur.iriref()?;
            cur.prefixes.insert(prefix, ns.into_string());
            cur.expect('.')?;
        } else {
            break;
        }
    }
    if !cur.eat_keyword("SELECT") {
        return Err(cur.error(format!("expected SELECT, found {}", cur.describe_next())).into());
    }
    let distinct = cur.eat_keyword("DISTINCT");
    let mut select_vars = Vec::new();
    while let Some(v) = variable(&mut cur)? {
        select_vars.push(v);
    }
    cur.eat_keyword("WHERE");
    cur.expect('{')?;
    let mut blocks = Vec::new();
    cur.skip_ws();
    if cur.peek() == Some('{') {
        loop {
            cur.expect('{')?;
            blocks.push(group(&mut cur)?);
            cur.expect('}')?;
            if !cur.eat_keyword("UNION") {
                break;
            }
        }
    } else {
        blocks.push(group(&mut cur)?);
    }
    cur.expect('}')?;
    let order_by = if cur.eat_keyword("ORDER") {
        if !cur.eat_keyword("BY") {
            return Err(cur.error("expected BY after ORDER").into());
        }
        Some(order_key(&mut cur)?)
    } else {
        None
    };
    if !cur.at_end() {
        return Err(cur.error(format!("unexpected trailing input {}", cur.describe_next())).into());
    }
    let q = Query {
        select_vars,
        blocks,
        distinct,
        order_by,
    };
    q.check()?;
    Ok(q)
}
