//! Turtle reading and writing.
//!
//! The reader covers the subset the toolkit produces and consumes: `@prefix`
//! / `PREFIX` directives, IRIs in angle brackets, prefixed names, the `a`
//! keyword, quoted and long-quoted strings, bare integers, `^^` datatypes and
//! the `;` / `,` continuations. Blank nodes, language tags and `@base` are
//! rejected with a syntax error.
//!
//! Whitespace just inside `<` and `>` is tolerated and trimmed, since
//! hand-written documents in the wild contain `< http://...>`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use super::graph::Graph;
use super::term::{Iri, Literal, LiteralKind, Term, TermError, Triple};
use crate::ontology::Relation;
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown prefix `{prefix}:`")]
    UnknownPrefix { line: usize, prefix: String },
    #[error("line {line}: {source}")]
    Term {
        line: usize,
        #[source]
        source: TermError,
    },
}

impl TurtleError {
    pub fn line(&self) -> usize {
        match self {
            TurtleError::Syntax { line, .. }
            | TurtleError::UnknownPrefix { line, .. }
            | TurtleError::Term { line, .. } => *line,
        }
    }
}

/// Character cursor with line tracking and the Turtle term lexers.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    pub(crate) prefixes: HashMap<String, String>,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor {
            src,
            pos: 0,
            line: 1,
            prefixes: HashMap::new(),
        }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    /// Consumes the longest prefix whose chars satisfy `pred`.
    pub(crate) fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> TurtleError {
        TurtleError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    /// Skips whitespace and `#` comments.
    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), TurtleError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    pub(crate) fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let snippet: String = self.rest().chars().take(12).collect();
                format!("`{snippet}`")
            }
        }
    }

    /// Consumes `word` case-insensitively if it is followed by a non-name char.
    pub(crate) fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.len() >= word.len()
            && rest.is_char_boundary(word.len())
            && rest[..word.len()].eq_ignore_ascii_case(word)
            && !rest[word.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_alphanumeric() || c == '_' || c == ':')
        {
            for _ in 0..word.chars().count() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn make_iri(&self, value: &str) -> Result<Iri, TurtleError> {
        Iri::new(value).map_err(|source| TurtleError::Term {
            line: self.line,
            source,
        })
    }

    /// `<...>` with surrounding whitespace inside the brackets trimmed.
    pub(crate) fn iriref(&mut self) -> Result<Iri, TurtleError> {
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("unterminated IRI")),
                Some('>') => break,
                Some('\\') => value.push(self.unicode_escape()?),
                Some('\n') => return Err(self.error("newline inside IRI")),
                Some(c) => value.push(c),
            }
        }
        self.make_iri(value.trim())
    }

    fn unicode_escape(&mut self) -> Result<char, TurtleError> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error("invalid escape in IRI")),
        };
        self.hex_char(width)
    }

    fn hex_char(&mut self, width: usize) -> Result<char, TurtleError> {
        let mut code = 0u32;
        for _ in 0..width {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error("invalid hex digit in escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.error("escape is not a Unicode scalar"))
    }

    /// `PN_PREFIX? ':'` including the colon. Returns the prefix text.
    pub(crate) fn pname_ns(&mut self) -> Result<String, TurtleError> {
        self.skip_ws();
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                self.bump();
                return Ok(prefix);
            }
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                prefix.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Err(self.error(format!("expected prefix name, found {}", self.describe_next())))
    }

    /// A prefixed name such as `uto:hasTag` or `deltag:Web2.0`.
    pub(crate) fn prefixed_name(&mut self) -> Result<Iri, TurtleError> {
        let line = self.line;
        let prefix = self.pname_ns()?;
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%') {
                local.push(c);
                self.bump();
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => local.push(e),
                    _ => return Err(self.error("invalid local name escape")),
                }
            } else {
                break;
            }
        }
        // a trailing dot terminates the statement rather than the name
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
        }
        let ns = self
            .prefixes
            .get(&prefix)
            .ok_or(TurtleError::UnknownPrefix { line, prefix })?;
        self.make_iri(&format!("{ns}{local}"))
    }

    pub(crate) fn iri(&mut self) -> Result<Iri, TurtleError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => self.iriref(),
            Some('_') if self.rest().starts_with("_:") => {
                Err(self.error("blank nodes are not supported"))
            }
            Some('[') => Err(self.error("blank nodes are not supported")),
            Some(c) if c.is_alphanumeric() || c == ':' => self.prefixed_name(),
            _ => Err(self.error(format!("expected IRI, found {}", self.describe_next()))),
        }
    }

    fn string_body(&mut self) -> Result<String, TurtleError> {
        let quote = self.bump().ok_or_else(|| self.error("expected string"))?;
        let long = self.rest().starts_with(&format!("{quote}{quote}"));
        if long {
            self.bump();
            self.bump();
        }
        let mut out = String::new();
        loop {
            let c = self.bump().ok_or_else(|| self.error("unterminated string"))?;
            if c == quote {
                if !long {
                    break;
                }
                let closing: String = [quote, quote].iter().collect();
                if self.rest().starts_with(&closing) {
                    self.bump();
                    self.bump();
                    // allow up to two extra quotes right before the delimiter
                    while self.rest().starts_with(&format!("{quote}{quote}{quote}")) {
                        out.push(quote);
                        self.bump();
                    }
                    break;
                }
                out.push(c);
                continue;
            }
            match c {
                '\\' => {
                    let e = self.bump().ok_or_else(|| self.error("unterminated escape"))?;
                    out.push(match e {
                        't' => '\t',
                        'b' => '\u{8}',
                        'n' => '\n',
                        'r' => '\r',
                        'f' => '\u{c}',
                        '"' => '"',
                        '\'' => '\'',
                        '\\' => '\\',
                        'u' => self.hex_char(4)?,
                        'U' => self.hex_char(8)?,
                        other => return Err(self.error(format!("invalid escape `\\{other}`"))),
                    });
                }
                '\n' | '\r' if !long => return Err(self.error("newline in short string")),
                c => out.push(c),
            }
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal, TurtleError> {
        let lexical = self.string_body()?;
        if self.peek() == Some('@') {
            return Err(self.error("language-tagged literals are not supported"));
        }
        if !self.rest().starts_with("^^") {
            return Ok(Literal::plain(lexical));
        }
        self.bump();
        self.bump();
        let datatype = self.iri()?;
        let line = self.line;
        let term_err = |source| TurtleError::Term { line, source };
        match datatype.as_str() {
            vocab::XSD_STRING => Ok(Literal::plain(lexical)),
            vocab::XSD_INTEGER => Literal::integer_lexical(&lexical).map_err(term_err),
            vocab::MONTHSTAMP_DATATYPE => super::MonthStamp::parse(&lexical)
                .map(Literal::month)
                .map_err(term_err),
            other => Err(self.error(format!("unsupported datatype <{other}>"))),
        }
    }

    /// Object position: IRI, quoted literal or bare integer.
    pub(crate) fn object(&mut self) -> Result<Term, TurtleError> {
        self.skip_ws();
        match self.peek() {
            Some('"') | Some('\'') => Ok(Term::Literal(self.literal()?)),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                let start = self.pos;
                if matches!(c, '+' | '-') {
                    self.bump();
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                if self.peek().is_some_and(|c| c == '.' || c == 'e' || c == 'E')
                    && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit())
                {
                    return Err(self.error("decimal and double literals are not supported"));
                }
                let text = &self.src[start..self.pos];
                Literal::integer_lexical(text.trim_start_matches('+'))
                    .map(Term::Literal)
                    .map_err(|source| TurtleError::Term {
                        line: self.line,
                        source,
                    })
            }
            _ => Ok(Term::Iri(self.iri()?)),
        }
    }

    fn prefix_directive(&mut self, sparql_style: bool) -> Result<(), TurtleError> {
        let prefix = self.pname_ns()?;
        let ns = self.iriref()?;
        self.prefixes.insert(prefix, ns.into_string());
        if !sparql_style {
            self.expect('.')?;
        }
        Ok(())
    }
}

/// Parses a Turtle document into a graph.
pub fn parse_turtle(text: &str) -> Result<Graph, TurtleError> {
    let mut cur = Cursor::new(text);
    let mut graph = Graph::new();
    while !cur.at_end() {
        if cur.eat_keyword("@prefix") {
            cur.prefix_directive(false)?;
            continue;
        }
        if cur.eat_keyword("PREFIX") {
            cur.prefix_directive(true)?;
            continue;
        }
        if cur.rest().starts_with('@') || cur.eat_keyword("BASE") {
            return Err(cur.error("only @prefix / PREFIX directives are supported"));
        }
        let subject = cur.iri()?;
        loop {
            let predicate = if cur.eat_keyword("a") {
                Iri::new(vocab::RDF_TYPE).expect("rdf:type is a valid IRI")
            } else {
                cur.iri()?
            };
            loop {
                let object = cur.object()?;
                graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
                if !cur.eat(',') {
                    break;
                }
            }
            if cur.eat(';') {
                // `;` may be repeated or trail before the final `.`
                while cur.eat(';') {}
                cur.skip_ws();
                if cur.peek() == Some('.') {
                    break;
                }
                continue;
            }
            break;
        }
        cur.expect('.')?;
    }
    Ok(graph)
}

/// Position of a predicate in the writer's ordering: `rdf:type`, then UTO
/// relations in declaration order, then everything else by IRI.
pub(crate) fn predicate_rank(predicate: &Iri) -> (u8, usize) {
    if predicate.as_str() == vocab::RDF_TYPE {
        return (0, 0);
    }
    match Relation::from_iri(predicate.as_str()) {
        Some(rel) => (1, rel.declaration_index()),
        None => (2, 0),
    }
}

fn is_local_name(local: &str) -> bool {
    let Some(first) = local.chars().next() else {
        return false;
    };
    (first.is_ascii_alphanumeric() || first == '_')
        && !local.ends_with('.')
        && local
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

struct PrefixWriter {
    used: Vec<bool>,
}

impl PrefixWriter {
    fn abbreviate(&mut self, iri: &Iri) -> Option<String> {
        let s = iri.as_str();
        // longest namespace wins, e.g. uto.owl# over the tagging base
        let (idx, (prefix, ns)) = vocab::PREFIXES
            .iter()
            .enumerate()
            .filter(|(_, (_, ns))| s.starts_with(ns) && is_local_name(&s[ns.len()..]))
            .max_by_key(|(_, (_, ns))| ns.len())?;
        self.used[idx] = true;
        Some(format!("{prefix}:{}", &s[ns.len()..]))
    }

    fn iri(&mut self, iri: &Iri) -> String {
        self.abbreviate(iri).unwrap_or_else(|| format!("<{iri}>"))
    }

    fn term(&mut self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Literal(lit) => match lit.kind() {
                LiteralKind::Plain => quote(lit.lexical()),
                LiteralKind::Integer => lit.lexical().to_string(),
                LiteralKind::MonthStamp => {
                    let dt = Iri::new(vocab::MONTHSTAMP_DATATYPE).expect("valid datatype");
                    format!("{}^^{}", quote(lit.lexical()), self.iri(&dt))
                }
            },
        }
    }
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Writes `graph` as Turtle.
///
/// Output is deterministic: subjects sorted, predicates ranked by
/// `rdf:type` / UTO declaration order / IRI, objects sorted. Only prefixes
/// that are actually used are declared.
pub fn serialize_turtle(graph: &Graph) -> String {
    let mut writer = PrefixWriter {
        used: vec![false; vocab::PREFIXES.len()],
    };
    let mut by_subject: BTreeMap<&Iri, Vec<&Triple>> = BTreeMap::new();
    for t in graph {
        by_subject.entry(&t.subject).or_default().push(t);
    }
    let mut body = String::new();
    for (subject, mut triples) in by_subject {
        triples.sort_by(|a, b| {
            (predicate_rank(&a.predicate), &a.predicate, &a.object).cmp(&(
                predicate_rank(&b.predicate),
                &b.predicate,
                &b.object,
            ))
        });
        body.push('\n');
        body.push_str(&writer.iri(subject));
        let last = triples.len() - 1;
        for (i, t) in triples.iter().enumerate() {
            let p = writer.iri(&t.predicate);
            let o = writer.term(&t.object);
            let end = if i == last { " ." } else { " ;" };
            let _ = write!(body, "\n  {p} {o}{end}");
        }
        body.push('\n');
    }
    let mut out = String::new();
    for (used, (prefix, ns)) in writer.used.iter().zip(vocab::PREFIXES) {
        if *used {
            let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
        }
    }
    out.push_str(&body);
    out
}
