//! Depth-first search over big-step derivations, reified as a goal stack.
//!
//! Each goal frame carries its own hypothesis set, so the body atoms of a
//! `step` see the selected atom while their siblings do not. A `co-hyp`
//! application replaces the frame by an *inner* frame: inner frames are
//! resolved by plain SLD over `P ∪ coP` and never add hypotheses.

use std::rc::Rc;

use crate::equations::{un_eq, Equation, EquationSet, Mark, SolvedForm};
use crate::term::{fresh_rename, Atom, Builtin, Clause, FreshCounter, ProgramPair};

use super::builtins::{eval_in, ready, BuiltinError};
use super::{Answer, Diagnostic, Prefer};

/// Persistent singly linked list, shared between choice points.
pub(crate) struct Node<T> {
    pub(crate) head: T,
    pub(crate) tail: List<T>,
}

pub(crate) type List<T> = Option<Rc<Node<T>>>;

fn cons<T>(head: T, tail: List<T>) -> List<T> {
    Some(Rc::new(Node { head, tail }))
}

pub(crate) fn iter<T>(mut l: &List<T>) -> impl Iterator<Item = &T> {
    std::iter::from_fn(move || {
        let n = l.as_ref()?;
        l = &n.tail;
        Some(&n.head)
    })
}

#[derive(Clone)]
pub(crate) struct Frame {
    pub(crate) atom: Atom,
    /// Newest first, no duplicates.
    pub(crate) hyps: List<Atom>,
    pub(crate) inner: bool,
    pub(crate) depth: usize,
}

#[derive(Clone)]
pub(crate) struct State {
    pub(crate) goals: List<Frame>,
    pub(crate) eqs: List<Equation>,
    pub(crate) fresh: FreshCounter,
    pub(crate) steps: usize,
}

#[derive(Clone)]
enum Alt {
    CoHyp(Atom),
    /// Index into the step rules: clauses first, then coclauses.
    Step(usize),
}

struct ChoicePoint {
    state: State,
    frame: Frame,
    alts: Vec<Alt>,
    next: usize,
    mark: Mark,
}

enum Selection {
    Empty,
    Atom(Frame, List<Frame>),
    Builtin(Builtin, Frame, List<Frame>),
    Flounder(Frame),
}

/// Leftmost frame, skipping builtins whose inputs are not yet bound.
fn select(goals: &List<Frame>, s: &SolvedForm) -> Selection {
    let mut first = None;
    for (i, f) in iter(goals).enumerate() {
        first.get_or_insert(f);
        let pick = match Builtin::of(&f.atom) {
            None => None,
            Some(b) if ready(b, &f.atom, s) => Some(b),
            Some(_) => continue,
        };
        let rest = remove_at(goals, i);
        return match pick {
            None => Selection::Atom(f.clone(), rest),
            Some(b) => Selection::Builtin(b, f.clone(), rest),
        };
    }
    match first {
        None => Selection::Empty,
        Some(f) => Selection::Flounder(f.clone()),
    }
}

fn remove_at(goals: &List<Frame>, i: usize) -> List<Frame> {
    let prefix: Vec<&Frame> = iter(goals).take(i).collect();
    let mut rest = goals.clone();
    for _ in 0..=i {
        rest = rest.and_then(|n| n.tail.clone());
    }
    prefix.into_iter().rev().fold(rest, |acc, f| cons(f.clone(), acc))
}

pub(crate) type TraceSink<'a> = Box<dyn FnMut(&str) + 'a>;

pub(crate) struct Machine<'a> {
    prog: Rc<ProgramPair>,
    budget: usize,
    prefer: Prefer,
    solved: SolvedForm,
    stack: Vec<ChoicePoint>,
    current: Option<State>,
    /// State of the most recent answer.
    last: Option<State>,
    pub(crate) cut: bool,
    pub(crate) diagnostics: Vec<Diagnostic>,
    pub(crate) trace: Option<TraceSink<'a>>,
    #[cfg(test)]
    pub(crate) on_state: Option<StateHook<'a>>,
}

#[cfg(test)]
pub(crate) type StateHook<'a> = Box<dyn FnMut(&State) + 'a>;

impl<'a> Machine<'a> {
    /// A machine for goal `atoms` under the initial equations `eqs`.
    pub(crate) fn new(
        prog: Rc<ProgramPair>,
        atoms: &[Atom],
        eqs: &EquationSet,
        budget: usize,
        prefer: Prefer,
        fresh: FreshCounter,
    ) -> Self {
        let mut solved = SolvedForm::new();
        let consistent = eqs.iter().all(|e| solved.unify(&e.lhs, &e.rhs).is_ok());
        solved.clear_trail();
        let current = consistent.then(|| State {
            goals: atoms.iter().rev().fold(None, |acc, a| {
                cons(Frame { atom: a.clone(), hyps: None, inner: false, depth: 0 }, acc)
            }),
            eqs: eqs.iter().fold(None, |acc, e| cons(e.clone(), acc)),
            fresh,
            steps: 0,
        });
        Machine {
            prog,
            budget,
            prefer,
            solved,
            stack: Vec::new(),
            current,
            last: None,
            cut: false,
            diagnostics: Vec::new(),
            trace: None,
            #[cfg(test)]
            on_state: None,
        }
    }

    fn rule(&self, i: usize) -> &Clause {
        let n = self.prog.clauses.len();
        if i < n {
            &self.prog.clauses[i]
        } else {
            &self.prog.coclauses[i - n]
        }
    }

    fn rule_id(&self, i: usize) -> String {
        let n = self.prog.clauses.len();
        if i < n {
            format!("clause {}", i + 1)
        } else {
            format!("coclause {}", i - n + 1)
        }
    }

    fn emit(&mut self, depth: usize, line: String) {
        if let Some(t) = self.trace.as_mut() {
            t(&format!("{}{line}", "  ".repeat(depth)));
        }
    }

    fn diagnose(&mut self, atom: &Atom, message: String) {
        let d = Diagnostic { atom: atom.to_string(), message };
        if !self.diagnostics.contains(&d) {
            self.diagnostics.push(d);
        }
    }

    /// Applicable alternatives for `frame`, in preference order.
    fn alternatives(&self, frame: &Frame) -> Vec<Alt> {
        let sig = frame.atom.signature();
        let mut steps: Vec<Alt> = self
            .prog
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.head.signature() == sig)
            .map(|(i, _)| Alt::Step(i))
            .collect();
        if frame.inner {
            let n = self.prog.clauses.len();
            steps.extend(
                self.prog
                    .coclauses
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.head.signature() == sig)
                    .map(|(i, _)| Alt::Step(n + i)),
            );
            return steps;
        }
        let mut hyps: Vec<Alt> = if self.prog.coclauses.is_empty() {
            Vec::new()
        } else {
            let mut hs: Vec<Alt> = iter(&frame.hyps)
                .filter(|h| h.signature() == sig)
                .map(|h| Alt::CoHyp(h.clone()))
                .collect();
            hs.reverse();
            hs
        };
        match self.prefer {
            Prefer::CoHyp => {
                hyps.extend(steps);
                hyps
            }
            Prefer::Step => {
                steps.extend(hyps);
                steps
            }
        }
    }

    fn applicable(&mut self, frame: &Frame, alt: &Alt) -> bool {
        let head = match alt {
            Alt::CoHyp(h) => h.clone(),
            Alt::Step(i) => fresh_rename(self.rule(*i), &mut FreshCounter::starting_at(u32::MAX - 1)).head,
        };
        let Some(eqs) = un_eq(&frame.atom, &head) else {
            return false;
        };
        let pairs: Vec<_> = eqs.iter().map(|e| (e.lhs.clone(), e.rhs.clone())).collect();
        self.solved.can_unify(&pairs)
    }

    /// Apply `alt` to `frame`; `st` is the state with the frame removed.
    fn apply(&mut self, mut st: State, frame: &Frame, alt: &Alt) -> Option<State> {
        let (head, body) = match alt {
            Alt::CoHyp(h) => (h.clone(), Vec::new()),
            Alt::Step(i) => {
                let c = fresh_rename(self.rule(*i), &mut st.fresh);
                (c.head, c.body)
            }
        };
        if head.signature() != frame.atom.signature() {
            return None;
        }
        for (l, r) in frame.atom.args.iter().zip(&head.args) {
            self.solved.unify(l, r).ok()?;
        }
        for (l, r) in frame.atom.args.iter().zip(head.args) {
            st.eqs = cons(Equation::new(l.clone(), r), st.eqs);
        }
        if self.trace.is_some() {
            let line = match alt {
                Alt::CoHyp(h) => format!("COHYP {} ~ {h}", frame.atom),
                Alt::Step(i) => format!("STEP {} via {}", frame.atom, self.rule_id(*i)),
            };
            self.emit(frame.depth, line);
        }
        st.steps += 1;
        match alt {
            Alt::CoHyp(_) => {
                let inner = Frame { atom: frame.atom.clone(), hyps: None, inner: true, depth: frame.depth + 1 };
                st.goals = cons(inner, st.goals);
            }
            Alt::Step(_) => {
                let hyps = if frame.inner || iter(&frame.hyps).any(|h| *h == frame.atom) {
                    frame.hyps.clone()
                } else {
                    cons(frame.atom.clone(), frame.hyps.clone())
                };
                for a in body.into_iter().rev() {
                    let hyps = if a.is_builtin() { None } else { hyps.clone() };
                    st.goals = cons(Frame { atom: a, hyps, inner: frame.inner, depth: frame.depth + 1 }, st.goals);
                }
            }
        }
        Some(st)
    }

    pub(crate) fn solved(&self) -> &SolvedForm {
        &self.solved
    }

    /// Materialize the most recent answer.
    pub(crate) fn answer(&self) -> Answer {
        let st = self.last.as_ref().expect("no answer yet");
        let mut eqs: Vec<Equation> = iter(&st.eqs).cloned().collect();
        eqs.reverse();
        let mut solved = self.solved.clone();
        solved.clear_trail();
        Answer { eqs: eqs.into_iter().collect(), solved }
    }

    /// Advance to the next answer; see [`Machine::answer`].
    pub(crate) fn next_answer(&mut self) -> bool {
        loop {
            if let Some(mut st) = self.current.take() {
                #[cfg(test)]
                if let Some(f) = self.on_state.as_mut() {
                    f(&st);
                }
                match select(&st.goals, &self.solved) {
                    Selection::Empty => {
                        self.emit(0, "EMPTY".to_string());
                        self.last = Some(st);
                        return true;
                    }
                    Selection::Flounder(f) => {
                        self.diagnose(&f.atom, format!("type error: {}: insufficiently instantiated", f.atom));
                    }
                    Selection::Builtin(b, f, rest) => match eval_in(b, &f.atom, &mut self.solved) {
                        Ok(added) => {
                            for e in added {
                                st.eqs = cons(e, st.eqs);
                            }
                            st.goals = rest;
                            self.current = Some(st);
                        }
                        Err(BuiltinError::Fail) => {}
                        Err(BuiltinError::Type(m)) => self.diagnose(&f.atom, format!("type error: {m}")),
                    },
                    Selection::Atom(frame, rest) => {
                        let alts = self.alternatives(&frame);
                        if st.steps >= self.budget {
                            if !self.cut && alts.iter().any(|a| self.applicable(&frame, a)) {
                                self.cut = true;
                            }
                            continue;
                        }
                        st.goals = rest;
                        let mark = self.solved.mark();
                        self.stack.push(ChoicePoint { state: st, frame, alts, next: 0, mark });
                    }
                }
            } else {
                let Some(cp) = self.stack.last_mut() else {
                    return false;
                };
                let mark = cp.mark;
                if cp.next >= cp.alts.len() {
                    self.stack.pop();
                    continue;
                }
                let alt = cp.alts[cp.next].clone();
                cp.next += 1;
                let (st, frame) = (cp.state.clone(), cp.frame.clone());
                self.solved.undo_to(mark);
                self.current = self.apply(st, &frame, &alt);
                if self.current.is_none() {
                    self.solved.undo_to(mark);
                }
            }
        }
    }
}
