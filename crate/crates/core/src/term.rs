//! Finite syntactic terms, atoms, clauses and programs with coclauses.
//!
//! Everything here is a finite tree. Possibly infinite (rational) terms are
//! never represented directly: they arise as solutions of equation sets, see
//! [`crate::equations`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Interned-ish symbol name shared between terms.
pub type Sym = Arc<str>;

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

/// A logic variable: the name it was written with plus a rename index.
///
/// Index `0` is a variable as parsed; fresh renamings stamp a new index on
/// every variable of the renamed clause.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Sym,
    pub index: u32,
}

impl Var {
    pub fn new(name: &str) -> Self {
        Var { name: sym(name), index: 0 }
    }

    pub fn with_index(name: &str, index: u32) -> Self {
        Var { name: sym(name), index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}#{}", self.name, self.index)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    /// Functor applied to arguments; constants are 0-ary compounds.
    Compound(Sym, Vec<Term>),
    Int(i64),
}

pub const NIL: &str = "[]";
pub const CONS: &str = ".";

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::Compound(sym(name), Vec::new())
    }

    pub fn compound(functor: &str, args: Vec<Term>) -> Term {
        Term::Compound(sym(functor), args)
    }

    pub fn nil() -> Term {
        Term::constant(NIL)
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::compound(CONS, vec![head, tail])
    }

    /// `[a, b, c | tail]`
    pub fn list(items: Vec<Term>, tail: Term) -> Term {
        items.into_iter().rev().fold(tail, |acc, t| Term::cons(t, acc))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Int(_) => true,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Maximum nesting depth; constants, integers and variables have height 1.
    pub fn height(&self) -> usize {
        match self {
            Term::Compound(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
            _ => 1,
        }
    }

    fn map_vars(&self, f: &mut impl FnMut(&Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::Int(n) => Term::Int(*n),
            Term::Compound(name, args) => {
                Term::Compound(name.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
        }
    }
}

impl From<i64> for Term {
    fn from(n: i64) -> Self {
        Term::Int(n)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Self {
        Atom { pred: sym(pred), args }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn signature(&self) -> Signature {
        Signature { name: self.pred.clone(), arity: self.args.len() }
    }

    pub fn is_builtin(&self) -> bool {
        Builtin::of(self).is_some()
    }

    /// The atom viewed as a term (used when printing).
    pub fn to_term(&self) -> Term {
        Term::Compound(self.pred.clone(), self.args.clone())
    }
}

/// Predicate or functor key: name plus arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Signature {
    pub name: Sym,
    pub arity: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Predicates evaluated by the engine rather than resolved against clauses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Builtin {
    Unify,
    NotEqual,
    Less,
    Greater,
    LessEq,
    GreaterEq,
    Is,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Unify,
        Builtin::NotEqual,
        Builtin::Less,
        Builtin::Greater,
        Builtin::LessEq,
        Builtin::GreaterEq,
        Builtin::Is,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Unify => "=",
            Builtin::NotEqual => "\\=",
            Builtin::Less => "<",
            Builtin::Greater => ">",
            Builtin::LessEq => "=<",
            Builtin::GreaterEq => ">=",
            Builtin::Is => "is",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    /// All builtins are binary.
    pub fn of(atom: &Atom) -> Option<Builtin> {
        if atom.args.len() != 2 {
            return None;
        }
        Builtin::from_name(&atom.pred)
    }
}

/// A definite clause `head :- body` (or coclause `head :~ body`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Atom>) -> Self {
        Clause { head, body }
    }

    pub fn fact(head: Atom) -> Self {
        Clause { head, body: Vec::new() }
    }
}

/// A logic program with coclauses: the pair of clause list and coclause list.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ProgramPair {
    pub clauses: Vec<Clause>,
    pub coclauses: Vec<Clause>,
}

impl ProgramPair {
    pub fn new(clauses: Vec<Clause>, coclauses: Vec<Clause>) -> Self {
        ProgramPair { clauses, coclauses }
    }

    /// User predicate signatures occurring anywhere in P or coP (heads and
    /// bodies), sorted. Builtins are excluded.
    pub fn predicates(&self) -> Vec<Signature> {
        let mut out = BTreeSet::new();
        for c in self.clauses.iter().chain(&self.coclauses) {
            for a in std::iter::once(&c.head).chain(&c.body) {
                if !a.is_builtin() {
                    out.insert(a.signature());
                }
            }
        }
        out.into_iter().collect()
    }

    /// Predicate signatures occurring in P only.
    pub fn clause_predicates(&self) -> Vec<Signature> {
        ProgramPair::new(self.clauses.clone(), Vec::new()).predicates()
    }

    /// P ∪ coP, clauses first.
    pub fn merged(&self) -> ProgramPair {
        let mut clauses = self.clauses.clone();
        clauses.extend(self.coclauses.iter().cloned());
        ProgramPair { clauses, coclauses: Vec::new() }
    }
}

/// Finite map from variables to terms. Identity bindings are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn insert(&mut self, var: Var, term: Term) {
        if term == Term::Var(var.clone()) {
            self.map.remove(&var);
        } else {
            self.map.insert(var, term);
        }
    }

    pub fn get(&self, var: &Var) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.insert(v, t);
        }
        s
    }
}

/// Anything variables can be collected from.
pub trait HasVars {
    fn collect_vars(&self, out: &mut BTreeSet<Var>);
}

impl HasVars for Term {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Int(_) => {}
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

impl HasVars for Atom {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }
}

impl HasVars for Clause {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.head.collect_vars(out);
        self.body.iter().for_each(|a| a.collect_vars(out));
    }
}

impl<T: HasVars> HasVars for [T] {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.iter().for_each(|x| x.collect_vars(out));
    }
}

impl<T: HasVars> HasVars for Vec<T> {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.as_slice().collect_vars(out)
    }
}

pub fn vars_of<T: HasVars + ?Sized>(x: &T) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    x.collect_vars(&mut out);
    out
}

/// Variables in order of first occurrence (left to right, depth first).
pub fn vars_in_order(atoms: &[Atom]) -> Vec<Var> {
    fn walk(t: &Term, seen: &mut BTreeSet<Var>, out: &mut Vec<Var>) {
        match t {
            Term::Var(v) => {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
            Term::Int(_) => {}
            Term::Compound(_, args) => args.iter().for_each(|a| walk(a, seen, out)),
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in atoms {
        a.args.iter().for_each(|t| walk(t, &mut seen, &mut out));
    }
    out
}

/// Things a substitution can be applied to.
pub trait Substitutable: Sized {
    fn apply(&self, s: &Substitution) -> Self;
}

impl Substitutable for Term {
    fn apply(&self, s: &Substitution) -> Term {
        self.map_vars(&mut |v| s.get(v).cloned().unwrap_or_else(|| Term::Var(v.clone())))
    }
}

impl Substitutable for Atom {
    fn apply(&self, s: &Substitution) -> Atom {
        Atom { pred: self.pred.clone(), args: self.args.iter().map(|a| a.apply(s)).collect() }
    }
}

impl Substitutable for Clause {
    fn apply(&self, s: &Substitution) -> Clause {
        Clause { head: self.head.apply(s), body: self.body.iter().map(|a| a.apply(s)).collect() }
    }
}

/// Simultaneous replacement of the variables in `dom(s)`.
pub fn apply_subst<T: Substitutable>(s: &Substitution, x: &T) -> T {
    x.apply(s)
}

/// Source of rename indices. One counter per resolution run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreshCounter {
    next: u32,
}

impl Default for FreshCounter {
    fn default() -> Self {
        FreshCounter { next: 1 }
    }
}

impl FreshCounter {
    pub fn new() -> Self {
        FreshCounter::default()
    }

    pub fn starting_at(next: u32) -> Self {
        FreshCounter { next: next.max(1) }
    }

    pub fn peek(&self) -> u32 {
        self.next
    }

    pub fn bump(&mut self) -> u32 {
        let n = self.next;
        self.next += 1;
        n
    }
}

/// A variant of `c` whose variables all carry a rename index never handed
/// out before by `gen`.
pub fn fresh_rename(c: &Clause, gen: &mut FreshCounter) -> Clause {
    let index = gen.bump();
    let mut rename = |v: &Var| Term::Var(Var { name: v.name.clone(), index });
    Clause {
        head: rename_atom(&c.head, &mut rename),
        body: c.body.iter().map(|a| rename_atom(a, &mut rename)).collect(),
    }
}

fn rename_atom(a: &Atom, f: &mut impl FnMut(&Var) -> Term) -> Atom {
    Atom { pred: a.pred.clone(), args: a.args.iter().map(|t| t.map_vars(f)).collect() }
}

/// `a ⊑ b` for finite maps: `dom(a) ⊆ dom(b)` and they agree on `dom(a)`.
pub fn map_leq<K: Ord, V: PartialEq>(a: &BTreeMap<K, V>, b: &BTreeMap<K, V>) -> bool {
    a.iter().all(|(k, v)| b.get(k) == Some(v))
}

/// Substitution extension order.
pub fn subst_leq(s: &Substitution, t: &Substitution) -> bool {
    map_leq(&s.map, &t.map)
}
