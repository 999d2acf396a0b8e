//! Resolution engine: rules `empty`, `step` and `co-hyp` with depth-first
//! or iterative-deepening search, builtins and the three semantic modes.
//!
//! ```
//! use colp::engine::{run_query, EngineConfig};
//! use colp::syntax::{parse_program, parse_query, print_answer, SourceProgram};
//!
//! let prog = parse_program(&SourceProgram::new(
//!     "p(X) :- p(s(X)).\np(_) :~.",
//!     "p.colp",
//! ))
//! .unwrap();
//! let q = parse_query("?- p(X).").unwrap();
//! let cfg = EngineConfig { max_answers: Some(1), ..EngineConfig::default() };
//! let out = run_query(&prog, &q, &cfg).into_outcome();
//! assert_eq!(print_answer(&out.answers[0].solved, &q.variables()), "X = s(X)");
//! ```

mod builtins;
mod machine;
mod mode;

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use crate::equations::{
    solve, solved_values, un_eq, EquationSet, RationalTerm, SolvedForm,
};
use crate::syntax::ParsedQuery;
use crate::term::{fresh_rename, vars_of, Atom, Builtin, Clause, FreshCounter, ProgramPair, Term, Var};

pub use builtins::{builtin_eval, BuiltinError};
pub use mode::{apply_mode, Mode};

use machine::Machine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    Dfs,
    /// Restart depth-first search with budgets 1, 2, 4, … up to the budget.
    #[default]
    Iddfs,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dfs" => Ok(Strategy::Dfs),
            "iddfs" => Ok(Strategy::Iddfs),
            other => Err(format!("unknown strategy {other:?} (expected dfs or iddfs)")),
        }
    }
}

/// Which alternatives are tried first for an atom with hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Prefer {
    #[default]
    CoHyp,
    Step,
}

impl FromStr for Prefer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cohyp" => Ok(Prefer::CoHyp),
            "step" => Ok(Prefer::Step),
            other => Err(format!("unknown preference {other:?} (expected cohyp or step)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub mode: Mode,
    pub strategy: Strategy,
    /// Maximum number of `step`/`co-hyp` applications on one derivation
    /// path, inner runs included. Values below 1 are treated as 1.
    pub budget: usize,
    /// Stop after this many answers.
    pub max_answers: Option<usize>,
    pub prefer: Prefer,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            mode: Mode::Flexible,
            strategy: Strategy::Iddfs,
            budget: 1000,
            max_answers: None,
            prefer: Prefer::CoHyp,
        }
    }
}

/// Why the search stopped producing answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    /// The whole search space was explored and held no answer.
    FinitelyFailed,
    /// Some derivation was cut off by the budget at every level.
    BudgetExhausted,
    /// The whole search space was explored after at least one answer.
    Complete,
}

impl fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exhaustion::FinitelyFailed => "finitely failed",
            Exhaustion::BudgetExhausted => "budget exhausted",
            Exhaustion::Complete => "complete",
        })
    }
}

/// A builtin that could not be evaluated. The branch is abandoned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub atom: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// An answer: the final equation set and its solved form.
#[derive(Clone, Debug)]
pub struct Answer {
    pub eqs: EquationSet,
    pub solved: SolvedForm,
}

/// Result of one depth-first pass at a fixed budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub budget: usize,
    /// Answers first found at this level.
    pub new_answers: usize,
    /// Whether some applicable rule was pruned by the budget.
    pub cut: bool,
}

/// A goal: atoms to prove under initial equations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Goal {
    pub atoms: Vec<Atom>,
    pub eqs: EquationSet,
}

impl Goal {
    pub fn new(atoms: Vec<Atom>, eqs: EquationSet) -> Self {
        Goal { atoms, eqs }
    }
}

impl From<&ParsedQuery> for Goal {
    fn from(q: &ParsedQuery) -> Self {
        Goal { atoms: q.atoms.clone(), eqs: EquationSet::new() }
    }
}

/// Everything a finished search produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub answers: Vec<Answer>,
    /// `None` when the search was stopped by `max_answers`.
    pub exhaustion: Option<Exhaustion>,
    pub levels: Vec<LevelReport>,
    pub diagnostics: Vec<Diagnostic>,
}

fn budget_levels(cfg: &EngineConfig) -> Vec<usize> {
    let budget = cfg.budget.max(1);
    match cfg.strategy {
        Strategy::Dfs => vec![budget],
        Strategy::Iddfs => {
            let mut v: Vec<usize> = std::iter::successors(Some(1usize), |b| b.checked_mul(2))
                .take_while(|&b| b < budget)
                .collect();
            v.push(budget);
            v
        }
    }
}

/// Lazy answer stream. Pulling drives the search.
pub struct Solutions<'a> {
    prog: Rc<ProgramPair>,
    goal: Goal,
    cfg: EngineConfig,
    budgets: Vec<usize>,
    level: usize,
    machine: Machine<'a>,
    query_terms: Vec<Term>,
    seen: Vec<RationalTerm>,
    emitted: usize,
    level_answers: usize,
    exhaustion: Option<Exhaustion>,
    levels: Vec<LevelReport>,
    diagnostics: Vec<Diagnostic>,
}

impl<'a> Solutions<'a> {
    fn new(prog: ProgramPair, goal: Goal, cfg: EngineConfig) -> Self {
        let prog = Rc::new(prog);
        let budgets = budget_levels(&cfg);
        let machine = Machine::new(prog.clone(), &goal.atoms, &goal.eqs, budgets[0], cfg.prefer, FreshCounter::new());
        let mut vars: Vec<Var> = crate::term::vars_in_order(&goal.atoms);
        for v in vars_of(&goal.eqs) {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        Solutions {
            prog,
            goal,
            cfg,
            budgets,
            level: 0,
            machine,
            query_terms: vars.into_iter().map(Term::Var).collect(),
            seen: Vec::new(),
            emitted: 0,
            level_answers: 0,
            exhaustion: None,
            levels: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    /// Receive one line per rule application.
    pub fn with_trace(mut self, sink: impl FnMut(&str) + 'a) -> Self {
        self.machine.trace = Some(Box::new(sink));
        self
    }

    /// Set once the search space has been fully explored or budgeted out.
    pub fn exhaustion(&self) -> Option<Exhaustion> {
        self.exhaustion
    }

    pub fn levels(&self) -> &[LevelReport] {
        &self.levels
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = self.diagnostics.clone();
        for d in &self.machine.diagnostics {
            if !out.contains(d) {
                out.push(d.clone());
            }
        }
        out
    }

    fn finish_level(&mut self) {
        self.levels.push(LevelReport {
            budget: self.budgets[self.level],
            new_answers: self.level_answers,
            cut: self.machine.cut,
        });
        for d in std::mem::take(&mut self.machine.diagnostics) {
            if !self.diagnostics.contains(&d) {
                self.diagnostics.push(d);
            }
        }
        if !self.machine.cut {
            self.exhaustion = Some(if self.emitted == 0 {
                Exhaustion::FinitelyFailed
            } else {
                Exhaustion::Complete
            });
        } else if self.level + 1 < self.budgets.len() {
            self.level += 1;
            self.level_answers = 0;
            let mut next = Machine::new(
                self.prog.clone(),
                &self.goal.atoms,
                &self.goal.eqs,
                self.budgets[self.level],
                self.cfg.prefer,
                FreshCounter::new(),
            );
            next.trace = self.machine.trace.take();
            self.machine = next;
        } else {
            self.exhaustion = Some(Exhaustion::BudgetExhausted);
        }
    }

    /// Drain the stream (up to `max_answers`).
    pub fn into_outcome(mut self) -> Outcome {
        let answers: Vec<Answer> = self.by_ref().collect();
        Outcome {
            answers,
            exhaustion: self.exhaustion,
            diagnostics: self.diagnostics(),
            levels: self.levels,
        }
    }
}

impl Iterator for Solutions<'_> {
    type Item = Answer;

    fn next(&mut self) -> Option<Answer> {
        loop {
            if self.exhaustion.is_some() || self.cfg.max_answers.is_some_and(|m| self.emitted >= m) {
                return None;
            }
            if !self.machine.next_answer() {
                self.finish_level();
                continue;
            }
            if self.cfg.strategy == Strategy::Iddfs {
                let (g, _) = solved_values(self.machine.solved(), &self.query_terms);
                let key = g.up_to_renaming();
                if self.seen.contains(&key) {
                    continue;
                }
                self.seen.push(key);
            }
            self.emitted += 1;
            self.level_answers += 1;
            if self.query_terms.is_empty() && self.cfg.strategy == Strategy::Iddfs {
                // A variable-free goal has a single answer up to renaming.
                self.exhaustion = Some(Exhaustion::Complete);
            }
            return Some(self.machine.answer());
        }
    }
}

/// Solve `goal` against `prog` under `cfg`.
pub fn solve_goal<'a>(prog: &ProgramPair, goal: &Goal, cfg: &EngineConfig) -> Solutions<'a> {
    Solutions::new(apply_mode(prog, cfg.mode), goal.clone(), cfg.clone())
}

/// Solve a parsed query against `prog` under `cfg`.
pub fn run_query<'a>(prog: &ProgramPair, q: &ParsedQuery, cfg: &EngineConfig) -> Solutions<'a> {
    solve_goal(prog, &Goal::from(q), cfg)
}

/// One goal atom with its local coinductive hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoalFrame {
    pub atom: Atom,
    /// In insertion order.
    pub hyps: Vec<Atom>,
}

/// A single resolution state, for applying rules one at a time.
#[derive(Clone, Debug)]
pub struct EngineState {
    pub frames: Vec<GoalFrame>,
    pub eqs: EquationSet,
    pub fresh: FreshCounter,
}

impl EngineState {
    pub fn new(atoms: Vec<Atom>, eqs: EquationSet) -> Self {
        EngineState {
            frames: atoms.into_iter().map(|atom| GoalFrame { atom, hyps: Vec::new() }).collect(),
            eqs,
            fresh: FreshCounter::new(),
        }
    }
}

/// Position of the frame to resolve next: the leftmost one, except that
/// builtins still waiting for their inputs are passed over. `None` when no
/// frame is left or only waiting builtins remain.
pub fn select_atom(st: &EngineState) -> Option<usize> {
    let s = solve(&st.eqs).ok()?;
    st.frames.iter().position(|f| match Builtin::of(&f.atom) {
        None => true,
        Some(b) => builtins::ready(b, &f.atom, &s),
    })
}

/// Rule `step`: resolve frame `pos` with a fresh renaming of `clause`.
pub fn step_rule(st: &EngineState, pos: usize, clause: &Clause) -> Option<EngineState> {
    let frame = &st.frames[pos];
    let mut fresh = st.fresh;
    let c = fresh_rename(clause, &mut fresh);
    let eqs = crate::equations::unifiable(&st.eqs, &frame.atom, &c.head)?;
    let mut hyps = frame.hyps.clone();
    if !hyps.contains(&frame.atom) {
        hyps.push(frame.atom.clone());
    }
    let body = c.body.into_iter().map(|atom| GoalFrame {
        hyps: if atom.is_builtin() { Vec::new() } else { hyps.clone() },
        atom,
    });
    let mut frames: Vec<GoalFrame> = st.frames[..pos].to_vec();
    frames.extend(body);
    frames.extend(st.frames[pos + 1..].iter().cloned());
    Some(EngineState { frames, eqs, fresh })
}

/// Rule `co-hyp`: unify frame `pos` with `hyp`, then prove the atom by SLD
/// resolution in `P ∪ coP`. Returns one state per inner answer found within
/// `budget` rule applications.
pub fn co_hyp_rule(
    prog: &ProgramPair,
    st: &EngineState,
    pos: usize,
    hyp: &Atom,
    budget: usize,
) -> Vec<EngineState> {
    let frame = &st.frames[pos];
    if prog.coclauses.is_empty() || !frame.hyps.contains(hyp) {
        return Vec::new();
    }
    let Some(added) = un_eq(&frame.atom, hyp) else {
        return Vec::new();
    };
    let start = st.eqs.union(&added);
    if solve(&start).is_err() {
        return Vec::new();
    }
    let inner = Rc::new(prog.merged());
    let mut m = Machine::new(inner, std::slice::from_ref(&frame.atom), &start, budget, Prefer::Step, st.fresh);
    let mut out = Vec::new();
    while m.next_answer() {
        let ans = m.answer();
        let mut frames = st.frames.clone();
        frames.remove(pos);
        let fresh = FreshCounter::starting_at(max_index(&ans.eqs).max(st.fresh.peek() - 1) + 1);
        out.push(EngineState { frames, eqs: ans.eqs, fresh });
    }
    out
}

fn max_index(e: &EquationSet) -> u32 {
    vars_of(e).iter().map(|v| v.index).max().unwrap_or(0)
}

#[cfg(test)]
mod tests;
