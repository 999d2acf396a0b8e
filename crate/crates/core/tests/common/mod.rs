#![allow(dead_code)]

use std::sync::atomic::{AtomicUsize, Ordering};

use colp::engine::{solve_goal, Answer, EngineConfig, Goal, Outcome};
use colp::semantics::Universe;
use colp::syntax::{parse_program, SourceProgram};
use colp::term::{vars_of, Atom, Clause, ProgramPair, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub const LISTS: &str = include_str!("../../programs/lists.colp");
pub const FIG1: &str = include_str!("../../programs/fig1.colp");
pub const P_PROG: &str = include_str!("../../programs/p.colp");
pub const P_UNIV: &str = include_str!("../../programs/p.univ");
pub const LTL: &str = include_str!("../../programs/ltl.colp");
pub const BIGSTEP: &str = include_str!("../../programs/bigstep.colp");
pub const REGEX: &str = include_str!("../../programs/regex.colp");
pub const REGEX_UNIV: &str = include_str!("../../programs/regex.univ");
pub const LISTS_UNIV: &str = include_str!("../../programs/lists.univ");

pub fn prog(text: &str) -> ProgramPair {
    parse_program(&SourceProgram::new(text, "<test>")).unwrap_or_else(|e| panic!("{e:?}"))
}

pub fn univ(text: &str) -> Universe {
    Universe::parse(text, "<test>").unwrap()
}

static ANSWERS_SEEN: AtomicUsize = AtomicUsize::new(0);
static GROWTH_VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Answers checked for equation growth so far, and how many violated it.
pub fn growth_counts() -> (usize, usize) {
    (ANSWERS_SEEN.load(Ordering::SeqCst), GROWTH_VIOLATIONS.load(Ordering::SeqCst))
}

/// Check answers against the growth property: the initial equations are
/// kept and every goal variable is constrained.
pub fn record_growth(goal: &Goal, answers: &[Answer]) {
    let goal_vars = vars_of(&goal.atoms);
    for a in answers {
        ANSWERS_SEEN.fetch_add(1, Ordering::SeqCst);
        let keeps = goal.eqs.is_subset(&a.eqs);
        let covers = goal_vars.is_subset(&vars_of(&a.eqs));
        if !(keeps && covers) {
            GROWTH_VIOLATIONS.fetch_add(1, Ordering::SeqCst);
        }
    }
}

/// Run the engine, recording every answer with [`record_growth`].
pub fn solve_checked(p: &ProgramPair, goal: &Goal, cfg: &EngineConfig) -> Outcome {
    let out = solve_goal(p, goal, cfg).into_outcome();
    record_growth(goal, &out.answers);
    out
}

fn atom(pred: &str, args: Vec<Term>) -> Atom {
    Atom::new(pred, args)
}

/// A random program with variables over one of a few small universes,
/// together with that universe. The Herbrand base over the universe has
/// at most `max_base` atoms. Roughly a third of the programs have no
/// coclauses.
pub fn random_program(rng: &mut impl Rng, max_base: usize) -> (ProgramPair, Universe) {
    let kind = rng.gen_range(0..3);
    random_program_of(rng, max_base, kind, true)
}

/// A random program over the constants `a`, `b`, `c` without builtins:
/// every ground instance stays inside the universe.
pub fn random_closed_program(rng: &mut impl Rng, max_base: usize) -> (ProgramPair, Universe) {
    random_program_of(rng, max_base, 0, false)
}

fn random_program_of(rng: &mut impl Rng, max_base: usize, kind: u32, builtins: bool) -> (ProgramPair, Universe) {
    let x = Term::var("X");
    let y = Term::var("Y");
    let (u, args): (Universe, Vec<Term>) = match kind {
        0 => (univ("a\nb\nc"), vec![x.clone(), y.clone(), Term::constant("a"), Term::constant("b")]),
        1 => (
            univ("z\ns(z)\nomega := s(omega)"),
            vec![
                x.clone(),
                y.clone(),
                Term::constant("z"),
                Term::compound("s", vec![x.clone()]),
                Term::compound("s", vec![y.clone()]),
            ],
        ),
        _ => (
            univ("0\n[0]\nzs := [0|zs]"),
            vec![x.clone(), y.clone(), Term::Int(0), Term::cons(Term::Int(0), x.clone())],
        ),
    };
    let n = u.len();
    let mut preds: Vec<(&str, usize)> = Vec::new();
    let mut base = 0;
    for (name, arity) in [("p", 1), ("q", 1), ("r", 1), ("s", 0), ("t", 2), ("v", 0)] {
        let size = n.pow(arity as u32);
        if base + size <= max_base && (preds.is_empty() || rng.gen_bool(0.7)) {
            preds.push((name, arity));
            base += size;
        }
    }
    let random_atom = |rng: &mut dyn rand::RngCore| -> Atom {
        if builtins && rng.gen_bool(0.1) {
            let op = if rng.gen_bool(0.5) { "=" } else { "\\=" };
            return atom(op, vec![args.choose(rng).unwrap().clone(), args.choose(rng).unwrap().clone()]);
        }
        let &(name, arity) = preds.choose(rng).unwrap();
        atom(name, (0..arity).map(|_| args.choose(rng).unwrap().clone()).collect())
    };
    let mut clauses = Vec::new();
    for _ in 0..rng.gen_range(2..=7) {
        let mut head = random_atom(rng);
        while head.is_builtin() {
            head = random_atom(rng);
        }
        let body = (0..rng.gen_range(0..=3)).map(|_| random_atom(rng)).collect();
        clauses.push(Clause::new(head, body));
    }
    let mut coclauses = Vec::new();
    if rng.gen_range(0..3) > 0 {
        for _ in 0..rng.gen_range(1..=3) {
            let mut head = random_atom(rng);
            while head.is_builtin() {
                head = random_atom(rng);
            }
            let body = (0..rng.gen_range(0..=1)).map(|_| random_atom(rng)).collect();
            coclauses.push(Clause::new(head, body));
        }
    }
    (ProgramPair::new(clauses, coclauses), u)
}

/// A random variable-free program over the constants `a` and `b` whose
/// terms all lie in the returned universe, with at least one coclause.
pub fn random_ground_program(rng: &mut impl Rng) -> (ProgramPair, Universe) {
    let consts = ["a", "b"];
    let preds: [(&str, usize); 3] = [("p", 1), ("q", 1), ("r", 0)];
    let random_atom = |rng: &mut dyn rand::RngCore| -> Atom {
        let &(name, arity) = preds.choose(rng).unwrap();
        atom(name, (0..arity).map(|_| Term::constant(consts.choose(rng).unwrap())).collect())
    };
    let mut clauses: Vec<Clause> = Vec::new();
    for _ in 0..rng.gen_range(2..=6) {
        let head = random_atom(rng);
        let body = (0..rng.gen_range(0..=2)).map(|_| random_atom(rng)).collect();
        let c = Clause::new(head, body);
        if !clauses.contains(&c) {
            clauses.push(c);
        }
    }
    let mut coclauses: Vec<Clause> = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let head = random_atom(rng);
        let body = (0..rng.gen_range(0..=1)).map(|_| random_atom(rng)).collect();
        let c = Clause::new(head, body);
        if !coclauses.contains(&c) {
            coclauses.push(c);
        }
    }
    (ProgramPair::new(clauses, coclauses), univ("a\nb"))
}
