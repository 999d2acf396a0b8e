//! Concrete syntax for programs with coclauses (`.colp` files) and queries.
//!
//! ```text
//! all_pos([]).
//! all_pos([N|L]) :- N > 0, all_pos(L).
//! all_pos(_) :~.                      % cofact
//! ?- L = [1,2|L], all_pos(L).
//! ```

mod lexer;
mod parser;
mod print;

use std::fmt;

use crate::term::{vars_in_order, Atom, Var};

pub use parser::{parse_program, parse_query, parse_term};
pub use print::{print_answer, Co};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub origin: Option<String>,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { origin: None, line, col, message: message.into() }
    }

    pub fn in_file(mut self, origin: &str) -> Self {
        self.origin = Some(origin.to_string());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(o) = &self.origin {
            write!(f, "{o}:")?;
        }
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// Program text plus where it came from (file name or `<repl>`).
#[derive(Clone, Debug)]
pub struct SourceProgram {
    pub text: String,
    pub origin: String,
}

impl SourceProgram {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> Self {
        SourceProgram { text: text.into(), origin: origin.into() }
    }

    pub fn from_file(path: &std::path::Path) -> std::io::Result<Self> {
        Ok(SourceProgram::new(std::fs::read_to_string(path)?, path.display().to_string()))
    }
}

/// A query `?- A1, ..., An.`; equations appear as `=`/2 atoms. The query
/// `true` has no atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedQuery {
    pub atoms: Vec<Atom>,
}

impl ParsedQuery {
    /// Query variables in order of first occurrence. Anonymous variables
    /// are not reported.
    pub fn variables(&self) -> Vec<Var> {
        vars_in_order(&self.atoms)
            .into_iter()
            .filter(|v| !v.name.starts_with("_G"))
            .collect()
    }
}

impl fmt::Display for ParsedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?- ")?;
        if self.atoms.is_empty() {
            write!(f, "true")?;
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ".")
    }
}
