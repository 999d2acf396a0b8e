use std::fmt;

use crate::engine::{run_query, Answer, EngineConfig, Exhaustion, Strategy};
use crate::equations::{Label, SolvedForm};
use crate::semantics::{reg_answers, show_answer, GroundAnswer, Universe};
use crate::syntax::{print_answer, ParsedQuery};
use crate::term::{Atom, ProgramPair, Term, Var};

/// Engine answers compared against the regular answers of the oracle.
#[derive(Clone, Debug)]
pub struct CheckReport {
    /// Ground answers in the regular semantics, rendered.
    pub expected: Vec<String>,
    /// Engine answers, rendered.
    pub engine: Vec<String>,
    /// Universe instances of engine answers missing from the regular answers.
    pub unsound: Vec<String>,
    /// Regular answers not covered by any engine answer.
    pub missing: Vec<String>,
    /// Engine answers compared, when produced by [`check_goal`].
    pub answers: Vec<Answer>,
    /// How the engine search ended; `None` if it stopped early.
    pub exhaustion: Option<Exhaustion>,
}

impl CheckReport {
    pub fn sound(&self) -> bool {
        self.unsound.is_empty()
    }

    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.sound() && self.complete()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(f, "soundness: {}", verdict(self.sound()))?;
        writeln!(f, "completeness: {}", verdict(self.complete()))?;
        if !self.passed() {
            writeln!(f, "engine answers:")?;
            for a in &self.engine {
                writeln!(f, "  {}", a.replace('\n', ", "))?;
            }
            writeln!(f, "regular answers:")?;
            for a in &self.expected {
                writeln!(f, "  {a}")?;
            }
            for a in &self.unsound {
                writeln!(f, "+ {a}")?;
            }
            for a in &self.missing {
                writeln!(f, "- {a}")?;
            }
        }
        write!(f, "{}", verdict(self.passed()))
    }
}

/// Whether the ground answer `g` is an instance of the engine answer `s`:
/// the answer's equations stay solvable once each goal variable is set to
/// its universe element.
pub fn is_instance(s: &SolvedForm, g: &GroundAnswer, u: &Universe) -> bool {
    let mut s = s.clone();
    let mut next = 0;
    for (v, &i) in g {
        let t = u.term(i);
        let base = next;
        next += t.len() as u32;
        let node_var = |n: usize| Term::Var(Var::with_index("$u", base + n as u32));
        for n in 0..t.len() {
            let node = t.node(n);
            let rhs = match &node.label {
                Label::Int(k) => Term::Int(*k),
                Label::Functor(f) => Term::Compound(f.clone(), node.children.iter().map(|&c| node_var(c)).collect()),
                Label::Var(_) => unreachable!("universe elements are ground"),
            };
            if s.unify(&node_var(n), &rhs).is_err() {
                return false;
            }
        }
        if s.unify(&Term::Var(v.clone()), &node_var(t.root())).is_err() {
            return false;
        }
    }
    true
}

/// Compare engine answers for `goal` with its regular answers over `u`.
/// Soundness: every universe instance of an engine answer is regular.
/// Completeness: every regular answer is an instance of some engine answer.
pub fn check_answers(goal: &[Atom], prog: &ProgramPair, u: &Universe, answers: &[SolvedForm]) -> CheckReport {
    let expected = reg_answers(goal, u, prog);
    let vars = crate::term::vars_in_order(goal);
    let all: Vec<GroundAnswer> = crate::semantics::all_assignments(&vars, u);
    let mut unsound = Vec::new();
    for (k, s) in answers.iter().enumerate() {
        for g in &all {
            if is_instance(s, g, u) && !expected.contains(g) {
                unsound.push(format!("{} (instance of engine answer {})", show_answer(g, u), k + 1));
            }
        }
    }
    let missing = expected
        .iter()
        .filter(|g| !answers.iter().any(|s| is_instance(s, g, u)))
        .map(|g| show_answer(g, u))
        .collect();
    CheckReport {
        expected: expected.iter().map(|g| show_answer(g, u)).collect(),
        engine: answers.iter().map(|s| print_answer(s, &vars)).collect(),
        unsound,
        missing,
        answers: Vec::new(),
        exhaustion: None,
    }
}

/// Run the engine on `q` with iterative deepening and compare. The search
/// stops as soon as every regular answer is covered by some engine answer;
/// otherwise it runs until the budget or the answer limit is reached.
pub fn check_goal(q: &ParsedQuery, prog: &ProgramPair, u: &Universe, cfg: &EngineConfig) -> CheckReport {
    let cfg = EngineConfig { strategy: Strategy::Iddfs, ..cfg.clone() };
    let oracle = crate::engine::apply_mode(prog, cfg.mode);
    let expected = reg_answers(&q.atoms, u, &oracle);
    let mut uncovered = expected.clone();
    let mut sols = run_query(prog, q, &cfg);
    let mut answers = Vec::new();
    while expected.is_empty() || !uncovered.is_empty() {
        let Some(a) = sols.next() else { break };
        uncovered.retain(|g| !is_instance(&a.solved, g, u));
        answers.push(a);
    }
    let exhaustion = sols.exhaustion();
    let solved: Vec<SolvedForm> = answers.iter().map(|a| a.solved.clone()).collect();
    CheckReport { answers, exhaustion, ..check_answers(&q.atoms, &oracle, u, &solved) }
}
