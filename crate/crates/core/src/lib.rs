//! Flexible coinductive logic programming over rational terms.
//!
//! A program pairs ordinary clauses (`head :- body.`) with coclauses
//! (`head :~ body.`). Clauses are read inductively; coclauses decide which
//! infinite derivations are accepted. The crate provides:
//!
//! - [`term`] and [`syntax`]: terms, clauses, the parser and printer;
//! - [`equations`]: equation sets solved over rational trees;
//! - [`engine`]: the resolution engine with its three modes;
//! - [`semantics`]: reference fixed-point semantics over a finite universe;
//! - [`cli`]: the `colp` command line and the engine/oracle cross-check.
//!
//! ```
//! use colp::engine::{run_query, EngineConfig};
//! use colp::syntax::{parse_program, parse_query, print_answer, SourceProgram};
//!
//! let src = "maxElem([N], N).\n\
//!            maxElem([N|L], M) :- maxElem(L, M1), M is max(N, M1).\n\
//!            maxElem([N|_], N) :~.";
//! let prog = parse_program(&SourceProgram::new(src, "max.colp")).unwrap();
//! let q = parse_query("?- L = [1,2|L], maxElem(L, M).").unwrap();
//! let cfg = EngineConfig { max_answers: Some(1), ..EngineConfig::default() };
//! let out = run_query(&prog, &q, &cfg).into_outcome();
//! assert_eq!(print_answer(&out.answers[0].solved, &q.variables()), "L = [1,2|L]\nM = 2");
//! ```

pub mod cli;
pub mod engine;
pub mod equations;
pub mod semantics;
pub mod syntax;
pub mod term;
