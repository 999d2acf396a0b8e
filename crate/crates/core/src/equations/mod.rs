//! Equation sets over finite terms and their solutions over rational trees.
//!
//! Possibly infinite terms are represented the way coinductive logic
//! programming usually does it: by a finite set of equations such as
//! `L = [1,2|L]`. Solving never performs an occurs check, so cyclic bindings
//! are ordinary solutions; the only source of unsolvability is a clash of
//! functors, arities or integers.

mod rational;
mod solved;

use std::collections::BTreeSet;

use rustc_hash::FxHashSet as HashSet;
use std::fmt;

use crate::term::{Atom, HasVars, Term, Var};

pub use rational::{
    rt_equal, solved_values, ArithError, GraphBuilder, Label, RationalTerm, RtNode, Truncated,
};
pub use solved::{Mark, SolvedForm};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }
}

/// A finite set of equations, kept in insertion order.
#[derive(Clone, Debug, Default)]
pub struct EquationSet {
    eqs: Vec<Equation>,
    members: HashSet<Equation>,
}

impl PartialEq for EquationSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for EquationSet {}

impl EquationSet {
    pub fn new() -> Self {
        EquationSet::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Term, Term)>) -> Self {
        let mut e = EquationSet::new();
        for (l, r) in pairs {
            e.insert(Equation::new(l, r));
        }
        e
    }

    /// Returns false when the equation was already present.
    pub fn insert(&mut self, eq: Equation) -> bool {
        if !self.members.insert(eq.clone()) {
            return false;
        }
        self.eqs.push(eq);
        true
    }

    pub fn extend(&mut self, other: &EquationSet) {
        for e in &other.eqs {
            self.insert(e.clone());
        }
    }

    pub fn union(&self, other: &EquationSet) -> EquationSet {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    pub fn contains(&self, eq: &Equation) -> bool {
        self.members.contains(eq)
    }

    pub fn is_subset(&self, other: &EquationSet) -> bool {
        self.eqs.iter().all(|e| other.contains(e))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Equation> {
        self.eqs.iter()
    }

    pub fn len(&self) -> usize {
        self.eqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eqs.is_empty()
    }
}

impl FromIterator<Equation> for EquationSet {
    fn from_iter<I: IntoIterator<Item = Equation>>(iter: I) -> Self {
        let mut e = EquationSet::new();
        for x in iter {
            e.insert(x);
        }
        e
    }
}

impl HasVars for Equation {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.lhs.collect_vars(out);
        self.rhs.collect_vars(out);
    }
}

impl HasVars for EquationSet {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.eqs.iter().for_each(|e| e.collect_vars(out));
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for EquationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.eqs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// No solution exists: two terms clash.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unsolvable: {left} and {right} clash")]
pub struct Unsolvable {
    pub left: String,
    pub right: String,
}

impl Unsolvable {
    pub(crate) fn clash(a: &Term, b: &Term) -> Self {
        Unsolvable { left: shallow(a), right: shallow(b) }
    }
}

fn shallow(t: &Term) -> String {
    match t {
        Term::Var(v) => v.to_string(),
        Term::Int(n) => n.to_string(),
        Term::Compound(f, args) => format!("{f}/{}", args.len()),
    }
}

/// Pairwise argument equations of two atoms with the same predicate and
/// arity; `None` when predicates or arities differ.
pub fn un_eq(a: &Atom, b: &Atom) -> Option<EquationSet> {
    if a.pred != b.pred || a.args.len() != b.args.len() {
        return None;
    }
    Some(
        a.args
            .iter()
            .zip(&b.args)
            .map(|(s, t)| Equation::new(s.clone(), t.clone()))
            .collect(),
    )
}

pub fn solve(e: &EquationSet) -> Result<SolvedForm, Unsolvable> {
    let mut s = SolvedForm::new();
    for eq in e.iter() {
        s.unify(&eq.lhs, &eq.rhs)?;
    }
    s.clear_trail();
    Ok(s)
}

/// `E ∪ un_eq(A, B)` when `A` and `B` are unifiable in `E`.
pub fn unifiable(e: &EquationSet, a: &Atom, b: &Atom) -> Option<EquationSet> {
    let eqs = e.union(&un_eq(a, b)?);
    solve(&eqs).ok().map(|_| eqs)
}

/// The rational term denoted by `t` under `s`.
pub fn canonical_value(s: &SolvedForm, t: &Term) -> RationalTerm {
    RationalTerm::from_solved(s, t)
}

pub fn is_ground_under(s: &SolvedForm, t: &Term) -> bool {
    s.is_ground(t)
}

/// Equations reconstructing a solved form (one per binding).
pub fn equations_of(s: &SolvedForm) -> EquationSet {
    s.bindings()
        .into_iter()
        .map(|(v, t)| Equation::new(Term::Var(v.clone()), t.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn c(n: &str) -> Term {
        Term::constant(n)
    }
    fn f(name: &str, args: Vec<Term>) -> Term {
        Term::compound(name, args)
    }

    #[test]
    fn un_eq_examples() {
        let a = Atom::new("p", vec![v("X"), c("a")]);
        let b = Atom::new("p", vec![c("b"), v("Y")]);
        assert_eq!(un_eq(&a, &b), Some(EquationSet::from_pairs([(v("X"), c("b")), (c("a"), v("Y"))])));
        assert_eq!(un_eq(&Atom::new("p", vec![c("a")]), &Atom::new("q", vec![c("a")])), None);
        assert_eq!(un_eq(&Atom::new("p", vec![c("a")]), &Atom::new("p", vec![])), None);

        // maxElem(L,M) against the renamed coclause head maxElem([N#1|L#1], N#1).
        let n1 = Term::Var(Var::with_index("N", 1));
        let l1 = Term::Var(Var::with_index("L", 1));
        let a = Atom::new("maxElem", vec![v("L"), v("M")]);
        let b = Atom::new("maxElem", vec![Term::cons(n1.clone(), l1.clone()), n1.clone()]);
        assert_eq!(
            un_eq(&a, &b),
            Some(EquationSet::from_pairs([(v("L"), Term::cons(n1.clone(), l1)), (v("M"), n1)]))
        );
    }

    #[test]
    fn solve_examples() {
        let s = solve(&EquationSet::from_pairs([(v("X"), f("f", vec![v("X")]))])).unwrap();
        assert_eq!(s.get(&Var::new("X")), Some(&f("f", vec![v("X")])));
        assert!(canonical_value(&s, &v("X")).is_cyclic());

        let s = solve(&EquationSet::from_pairs([(
            f("f", vec![v("X"), c("a")]),
            f("f", vec![c("b"), v("Y")]),
        )]))
        .unwrap();
        assert_eq!(s.deref(&v("X")), &c("b"));
        assert_eq!(s.deref(&v("Y")), &c("a"));

        assert!(solve(&EquationSet::from_pairs([(f("f", vec![v("X")]), f("g", vec![v("X")]))])).is_err());

        let l = v("L");
        let lw = Term::list(vec![Term::Int(1), Term::Int(2)], l.clone());
        assert!(solve(&EquationSet::from_pairs([(l, lw), (v("M"), Term::Int(2))])).is_ok());
    }

    #[test]
    fn unifiable_examples() {
        let px = Atom::new("p", vec![v("X")]);
        assert!(unifiable(&EquationSet::new(), &px, &Atom::new("p", vec![c("a")])).is_some());
        let e = EquationSet::from_pairs([(v("X"), c("a"))]);
        assert!(unifiable(&e, &px, &Atom::new("p", vec![c("b")])).is_none());

        let e = EquationSet::from_pairs([(v("L"), Term::list(vec![Term::Int(1), Term::Int(2)], v("L")))]);
        let n1 = Term::Var(Var::with_index("N", 1));
        let l1 = Term::Var(Var::with_index("L", 1));
        let a = Atom::new("maxElem", vec![v("L"), v("M")]);
        let b = Atom::new("maxElem", vec![Term::cons(n1.clone(), l1), n1]);
        let combined = unifiable(&e, &a, &b).expect("unifiable");
        assert_eq!(combined.len(), 3);
    }

    #[test]
    fn canonical_value_examples() {
        let g = canonical_value(&SolvedForm::new(), &f("g", vec![c("a"), c("b")]));
        assert_eq!(g.len(), 3);
        assert!(!g.is_cyclic());

        let l = v("L");
        let s = solve(&EquationSet::from_pairs([
            (l.clone(), Term::list(vec![Term::Int(1), Term::Int(2)], l.clone())),
            (v("M"), Term::Int(2)),
        ]))
        .unwrap();
        let lw = canonical_value(&s, &l);
        // Two cons cells plus the two integer leaves.
        assert_eq!(lw.canonical().len(), 4);
        assert!(lw.is_cyclic() && lw.is_ground());
    }

    #[test]
    fn groundness_examples() {
        let s = solve(&EquationSet::from_pairs([(v("X"), f("f", vec![v("X")]))])).unwrap();
        assert!(is_ground_under(&s, &v("X")));
        assert!(!is_ground_under(&SolvedForm::new(), &v("X")));
        let s = solve(&EquationSet::from_pairs([(v("X"), f("g", vec![v("Y")]))])).unwrap();
        assert!(!is_ground_under(&s, &v("X")));
    }
}
