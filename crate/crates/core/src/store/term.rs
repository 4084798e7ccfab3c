use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("empty IRI")]
    EmptyIri,
    #[error("IRI `{0}` has no scheme")]
    MissingScheme(String),
    #[error("IRI `{iri}` contains forbidden character {ch:?}")]
    ForbiddenChar { iri: String, ch: char },
    #[error("`{0}` is not a non-negative base-10 integer")]
    NotAnInteger(String),
    #[error("`{0}` is not a month stamp of the form \"Mmm YY\"")]
    NotAMonthStamp(String),
}

/// An absolute IRI.
///
/// Scheme and host are lowercased on construction; everything else is kept
/// verbatim, so equality is exact string equality on the normalized form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(TermError::EmptyIri);
        }
        if let Some(ch) = value
            .chars()
            .find(|c| c.is_whitespace() || c.is_control() || "<>\"{}|\\^`".contains(*c))
        {
            return Err(TermError::ForbiddenChar {
                iri: value.to_string(),
                ch,
            });
        }
        let colon = match value.find(':') {
            Some(i) if i > 0 => i,
            _ => return Err(TermError::MissingScheme(value.to_string())),
        };
        let scheme = &value[..colon];
        let mut chars = scheme.chars();
        let first_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
        if !first_ok
            || !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
            || colon + 1 == value.len()
        {
            return Err(TermError::MissingScheme(value.to_string()));
        }
        Ok(Iri(normalize_scheme_and_host(value, colon)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Sentinel below every valid IRI, for range scans only.
    pub(crate) fn minimal() -> Self {
        Iri(String::new())
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Appends `suffix` to this IRI. The result is re-validated.
    pub fn join_suffix(&self, suffix: &str) -> Result<Iri, TermError> {
        Iri::new(format!("{}{}", self.0, suffix))
    }
}

fn normalize_scheme_and_host(value: &str, colon: usize) -> String {
    let mut out = value[..colon].to_ascii_lowercase();
    out.push(':');
    let rest = &value[colon + 1..];
    let Some(after) = rest.strip_prefix("//") else {
        out.push_str(rest);
        return out;
    };
    out.push_str("//");
    let auth_end = after.find(['/', '?', '#']).unwrap_or(after.len());
    let (authority, tail) = after.split_at(auth_end);
    let (userinfo, hostport) = match authority.rfind('@') {
        Some(at) => authority.split_at(at + 1),
        None => ("", authority),
    };
    out.push_str(userinfo);
    // keep the port (and IPv6 brackets) but lowercase the host name itself
    let host_end = if hostport.starts_with('[') {
        hostport.find(']').map(|i| i + 1).unwrap_or(hostport.len())
    } else {
        hostport.rfind(':').unwrap_or(hostport.len())
    };
    out.push_str(&hostport[..host_end].to_ascii_lowercase());
    out.push_str(&hostport[host_end..]);
    out.push_str(tail);
    out
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Iri {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::new(s)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// The three literal kinds the store distinguishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiteralKind {
    Plain,
    Integer,
    MonthStamp,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    kind: LiteralKind,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            kind: LiteralKind::Plain,
        }
    }

    pub fn integer(value: u64) -> Self {
        Literal {
            lexical: value.to_string(),
            kind: LiteralKind::Integer,
        }
    }

    /// Integer literal from its lexical form; only ASCII digits are accepted.
    pub fn integer_lexical(lexical: &str) -> Result<Self, TermError> {
        if lexical.is_empty() || !lexical.bytes().all(|b| b.is_ascii_digit()) {
            return Err(TermError::NotAnInteger(lexical.to_string()));
        }
        Ok(Literal {
            lexical: lexical.to_string(),
            kind: LiteralKind::Integer,
        })
    }

    pub fn month(stamp: MonthStamp) -> Self {
        Literal {
            lexical: stamp.to_string(),
            kind: LiteralKind::MonthStamp,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn kind(&self) -> LiteralKind {
        self.kind
    }

    /// The value as a non-negative integer, whatever the literal kind.
    pub fn as_u64(&self) -> Option<u64> {
        parse_non_negative(&self.lexical)
    }
}

pub(crate) fn parse_non_negative(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Object position of a triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }

    /// IRI string or literal lexical form.
    pub fn text(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::Literal(lit) => lit.lexical(),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal(lit) => match lit.kind() {
                LiteralKind::Plain => f.write_str(&super::turtle::quote(lit.lexical())),
                LiteralKind::Integer => f.write_str(lit.lexical()),
                LiteralKind::MonthStamp => {
                    write!(f, "{}^^<{}>", super::turtle::quote(lit.lexical()), crate::vocab::MONTHSTAMP_DATATYPE)
                }
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject,
            predicate,
            object: object.into(),
        }
    }
}

const MONTHS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

/// Month-granularity tagging date, rendered as `Mmm YY` (e.g. `Jun 07`).
///
/// Two-digit years are read as 2000–2099.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthStamp {
    year: u8,
    month: u8,
}

impl MonthStamp {
    /// `month` is 1–12, `year` is 0–99 (i.e. 2000–2099).
    pub fn new(month: u8, year: u8) -> Option<Self> {
        ((1..=12).contains(&month) && year < 100).then_some(MonthStamp { year, month })
    }

    /// Builds a stamp from a full calendar year in 2000–2099.
    pub fn from_calendar(month: u8, full_year: i32) -> Option<Self> {
        if !(2000..=2099).contains(&full_year) {
            return None;
        }
        MonthStamp::new(month, (full_year - 2000) as u8)
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    pub fn year(&self) -> u8 {
        self.year
    }

    pub fn full_year(&self) -> i32 {
        2000 + i32::from(self.year)
    }

    /// Parses `Mmm YY`; the month abbreviation is case-insensitive.
    pub fn parse(s: &str) -> Result<Self, TermError> {
        let err = || TermError::NotAMonthStamp(s.to_string());
        let b = s.as_bytes();
        if b.len() != 6 || b[3] != b' ' || !b[4].is_ascii_digit() || !b[5].is_ascii_digit() {
            return Err(err());
        }
        let month = month_from_abbrev(&s[..3]).ok_or_else(err)?;
        let year = (b[4] - b'0') * 10 + (b[5] - b'0');
        MonthStamp::new(month, year).ok_or_else(err)
    }
}

/// 1-based month number for a three-letter English abbreviation.
pub(crate) fn month_from_abbrev(s: &str) -> Option<u8> {
    MONTHS
        .iter()
        .position(|m| m.eq_ignore_ascii_case(s))
        .map(|i| i as u8 + 1)
}

impl fmt::Display for MonthStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:02}", MONTHS[usize::from(self.month - 1)], self.year)
    }
}

impl FromStr for MonthStamp {
    type Err = TermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MonthStamp::parse(s)
    }
}
