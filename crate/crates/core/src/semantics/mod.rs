//! Reference semantics over a finite universe of ground rational terms:
//! grounding, the one-step inference operator, least and greatest fixed
//! points, the interpretation selected by coclauses, and the Loop system.
//!
//! ```
//! use colp::semantics::{semantics_suite, Universe};
//! use colp::syntax::{parse_program, SourceProgram};
//!
//! let prog = parse_program(&SourceProgram::new("p(X) :- p(s(X)).\np(_) :~.", "p")).unwrap();
//! let u = Universe::parse("z\ns(z)\nomega := s(omega)", "u").unwrap();
//! let s = semantics_suite(&prog, &u);
//! assert!(s.ind.is_empty());
//! assert_eq!(s.gen_reg.show(&u), vec!["p(omega)"]);
//! ```

mod ground;
mod loops;
mod universe;

pub use ground::{
    all_assignments, answers_in, brute_force_reg, full_base, ground_program, lfp, max_consistent_within, reg_answers,
    semantics_suite, show_answer, t_op, GroundAnswer, GroundAtom, GroundRule, Grounding, Interpretation,
    Semantics,
};
pub use loops::{loop_derivable, loop_reg_agree, LoopSystem};
pub use universe::{Universe, UniverseError};
