use std::fmt;

use thiserror::Error;

use crate::store::{Iri, Term, TurtleError};

/// One position of a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Term(Term),
    Var(String),
}

impl Slot {
    pub fn var(name: impl Into<String>) -> Self {
        Slot::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Slot::Var(v) => Some(v),
            Slot::Term(_) => None,
        }
    }
}

impl From<Iri> for Slot {
    fn from(iri: Iri) -> Self {
        Slot::Term(Term::Iri(iri))
    }
}

impl From<Term> for Slot {
    fn from(t: Term) -> Self {
        Slot::Term(t)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Var(v) => write!(f, "?{v}"),
            Slot::Term(t) => t.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub subject: Slot,
    pub predicate: Slot,
    pub object: Slot,
}

impl Pattern {
    pub fn new(subject: impl Into<Slot>, predicate: impl Into<Slot>, object: impl Into<Slot>) -> Self {
        Pattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn slots(&self) -> [&Slot; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.slots().into_iter().filter_map(Slot::as_var)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBy {
    pub var: String,
    /// Compare values as integers; non-integers sort last.
    pub numeric: bool,
    pub descending: bool,
}

/// `SELECT [DISTINCT] vars WHERE { block } UNION { block } ... [ORDER BY]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub select_vars: Vec<String>,
    pub blocks: Vec<Vec<Pattern>>,
    pub distinct: bool,
    pub order_by: Option<OrderBy>,
}

impl Query {
    pub fn select(vars: &[&str]) -> Self {
        Query {
            select_vars: vars.iter().map(|v| v.to_string()).collect(),
            blocks: Vec::new(),
            distinct: false,
            order_by: None,
        }
    }

    pub fn block(mut self, patterns: Vec<Pattern>) -> Self {
        self.blocks.push(patterns);
        self
    }

    pub fn distinct(mut self) -> Self {
        self.distinct = true;
        self
    }

    pub fn order_by(mut self, var: &str, numeric: bool, descending: bool) -> Self {
        self.order_by = Some(OrderBy {
            var: var.to_string(),
            numeric,
            descending,
        });
        self
    }

    /// Checks that every block is non-empty and binds every projected and
    /// ordering variable.
    pub fn check(&self) -> Result<(), QueryError> {
        if self.select_vars.is_empty() {
            return Err(QueryError::NoProjection);
        }
        if self.blocks.is_empty() {
            return Err(QueryError::EmptyBlock(0));
        }
        let order = self.order_by.iter().map(|o| &o.var);
        let needed: Vec<&String> = self.select_vars.iter().chain(order).collect();
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(QueryError::EmptyBlock(i));
            }
            for var in &needed {
                if !block.iter().any(|p| p.vars().any(|v| v == var.as_str())) {
                    return Err(QueryError::Unbound {
                        var: var.to_string(),
                        block: i,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("query projects no variables")]
    NoProjection,
    #[error("block {0} has no patterns")]
    EmptyBlock(usize),
    #[error("variable ?{var} is not bound in block {block}")]
    Unbound { var: String, block: usize },
    #[error(transparent)]
    Syntax(#[from] TurtleError),
}
