use std::fmt;
use std::str::FromStr;

use crate::term::{Atom, Clause, ProgramPair, Term, Var};

/// Which interpretation the program's predicates get.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Use the program's own coclauses.
    #[default]
    Flexible,
    /// Drop all coclauses: plain SLD resolution.
    Inductive,
    /// Replace coclauses by a universal cofact per predicate: coSLD.
    Coinductive,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flexible" => Ok(Mode::Flexible),
            "inductive" => Ok(Mode::Inductive),
            "coinductive" => Ok(Mode::Coinductive),
            other => Err(format!("unknown mode {other:?} (expected flexible, inductive or coinductive)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Mode::Flexible => "flexible",
            Mode::Inductive => "inductive",
            Mode::Coinductive => "coinductive",
        })
    }
}

pub fn apply_mode(prog: &ProgramPair, mode: Mode) -> ProgramPair {
    match mode {
        Mode::Flexible => prog.clone(),
        Mode::Inductive => ProgramPair::new(prog.clauses.clone(), Vec::new()),
        Mode::Coinductive => {
            let cofacts = prog
                .clause_predicates()
                .into_iter()
                .map(|sig| {
                    let args = (1..=sig.arity)
                        .map(|i| Term::Var(Var::new(&format!("X{i}"))))
                        .collect();
                    Clause::fact(Atom { pred: sig.name, args })
                })
                .collect();
            ProgramPair::new(prog.clauses.clone(), cofacts)
        }
    }
}
