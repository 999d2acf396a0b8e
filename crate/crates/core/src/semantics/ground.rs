use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap as HashMap;

use crate::equations::{rt_equal, GraphBuilder, RationalTerm};
use crate::term::{vars_in_order, Atom, Builtin, Clause, ProgramPair, Sym, Term, Var};

use super::universe::{tuples, Universe};

/// An atom whose arguments are universe elements (by index).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub pred: Sym,
    pub args: Vec<usize>,
}

impl GroundAtom {
    pub fn new(pred: &str, args: Vec<usize>) -> Self {
        GroundAtom { pred: crate::term::sym(pred), args }
    }

    pub fn show(&self, u: &Universe) -> String {
        if self.args.is_empty() {
            return self.pred.to_string();
        }
        let args: Vec<String> = self.args.iter().map(|&i| u.show(i)).collect();
        format!("{}({})", self.pred, args.join(","))
    }
}

/// `conclusion ⇐ premises`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundRule {
    pub premises: BTreeSet<GroundAtom>,
    pub conclusion: GroundAtom,
}

impl GroundRule {
    pub fn show(&self, u: &Universe) -> String {
        let c = self.conclusion.show(u);
        if self.premises.is_empty() {
            return c;
        }
        let ps: Vec<String> = self.premises.iter().map(|p| p.show(u)).collect();
        format!("{c} <= {}", ps.join(", "))
    }
}

/// A set of ground atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation(pub BTreeSet<GroundAtom>);

impl Interpretation {
    pub fn new() -> Self {
        Interpretation::default()
    }

    pub fn contains(&self, a: &GroundAtom) -> bool {
        self.0.contains(a)
    }

    pub fn insert(&mut self, a: GroundAtom) -> bool {
        self.0.insert(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundAtom> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.intersection(&other.0).cloned().collect())
    }

    /// Display forms, sorted.
    pub fn show(&self, u: &Universe) -> Vec<String> {
        let mut v: Vec<String> = self.0.iter().map(|a| a.show(u)).collect();
        v.sort();
        v
    }
}

impl FromIterator<GroundAtom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = GroundAtom>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

/// Ground instances of a clause list, plus closure warnings.
#[derive(Clone, Debug, Default)]
pub struct Grounding {
    pub rules: BTreeSet<GroundRule>,
    pub warnings: BTreeSet<String>,
}

/// Value of `t` with its variables replaced by universe elements.
fn instantiate(t: &Term, assign: &HashMap<Var, usize>, u: &Universe) -> RationalTerm {
    let mut b = GraphBuilder::new();
    let mut placed: HashMap<Var, usize> = HashMap::default();
    let root = b.add_term(t, &mut |b, v| {
        *placed.entry(v.clone()).or_insert_with(|| b.embed(u.term(assign[v])))
    });
    b.finish(root)
}

enum Arg {
    Elem(usize),
    Escapes(RationalTerm),
}

fn arg_value(t: &Term, assign: &HashMap<Var, usize>, u: &Universe) -> Arg {
    if let Term::Var(v) = t {
        return Arg::Elem(assign[v]);
    }
    let g = instantiate(t, assign, u);
    match u.lookup(&g) {
        Some(i) => Arg::Elem(i),
        None => Arg::Escapes(g),
    }
}

/// Ground instance of an atom, or the first argument that escapes `u`.
fn ground_atom(a: &Atom, assign: &HashMap<Var, usize>, u: &Universe) -> Result<GroundAtom, RationalTerm> {
    let mut args = Vec::with_capacity(a.args.len());
    for t in &a.args {
        match arg_value(t, assign, u) {
            Arg::Elem(i) => args.push(i),
            Arg::Escapes(g) => return Err(g),
        }
    }
    Ok(GroundAtom { pred: a.pred.clone(), args })
}

/// Truth of a builtin instance; `Err` on a type error.
pub(crate) fn eval_builtin(
    b: Builtin,
    a: &Atom,
    assign: &HashMap<Var, usize>,
    u: &Universe,
) -> Result<bool, String> {
    let l = instantiate(&a.args[0], assign, u);
    let r = instantiate(&a.args[1], assign, u);
    let num = |g: &RationalTerm| g.eval_arith().map_err(|e| format!("{a}: {e}"));
    Ok(match b {
        Builtin::Unify => rt_equal(&l, &r),
        Builtin::NotEqual => !rt_equal(&l, &r),
        Builtin::Is => rt_equal(&l, &RationalTerm::from_term(&Term::Int(num(&r)?))),
        Builtin::Less => num(&l)? < num(&r)?,
        Builtin::Greater => num(&l)? > num(&r)?,
        Builtin::LessEq => num(&l)? <= num(&r)?,
        Builtin::GreaterEq => num(&l)? >= num(&r)?,
    })
}

/// Every assignment of `vars` to universe elements.
pub(crate) fn assignments<'a>(vars: &'a [Var], u: &'a Universe) -> impl Iterator<Item = HashMap<Var, usize>> + 'a {
    let n = u.len();
    let total = if vars.is_empty() {
        1
    } else if n == 0 {
        0
    } else {
        n.checked_pow(vars.len() as u32).expect("too many instances to enumerate")
    };
    let vars = vars.to_vec();
    (0..total).map(move |mut k| {
        let mut m = HashMap::default();
        for v in &vars {
            m.insert(v.clone(), k % n);
            k /= n;
        }
        m
    })
}

/// Every ground answer for `vars` over `u`, in a fixed order.
pub fn all_assignments(vars: &[Var], u: &Universe) -> Vec<GroundAnswer> {
    assignments(vars, u).map(|m| m.into_iter().collect()).collect()
}

fn clause_vars(c: &Clause) -> Vec<Var> {
    let mut atoms = vec![c.head.clone()];
    atoms.extend(c.body.iter().cloned());
    vars_in_order(&atoms)
}

/// Ground instances of `clauses` over `u`. Builtins in bodies are evaluated
/// and removed; an instance with an argument outside `u` is dropped with a
/// warning.
pub fn ground_program(clauses: &[Clause], u: &Universe) -> Grounding {
    let mut out = Grounding::default();
    ground_into(&mut out, clauses, u, "clause");
    out
}

fn ground_into(out: &mut Grounding, clauses: &[Clause], u: &Universe, kind: &str) {
    for (ci, c) in clauses.iter().enumerate() {
        let vars = clause_vars(c);
        'inst: for assign in assignments(&vars, u) {
            let mut premises = BTreeSet::new();
            let mut escaping = None;
            for a in &c.body {
                if let Some(b) = Builtin::of(a) {
                    match eval_builtin(b, a, &assign, u) {
                        Ok(true) => {}
                        Ok(false) => continue 'inst,
                        Err(m) => {
                            out.warnings.insert(format!("{kind} {}: type error: {m}", ci + 1));
                            continue 'inst;
                        }
                    }
                } else {
                    match ground_atom(a, &assign, u) {
                        Ok(g) => {
                            premises.insert(g);
                        }
                        Err(t) => {
                            escaping.get_or_insert(t);
                        }
                    }
                }
            }
            let conclusion = match ground_atom(&c.head, &assign, u) {
                Ok(g) => g,
                Err(t) => {
                    escaping.get_or_insert(t);
                    GroundAtom::new("", Vec::new())
                }
            };
            if let Some(t) = escaping {
                out.warnings.insert(format!(
                    "{kind} {}: instance dropped, {} is outside the universe",
                    ci + 1,
                    u.show_graph(&t)
                ));
                continue;
            }
            out.rules.insert(GroundRule { premises, conclusion });
        }
    }
}

/// Conclusions of the rules whose premises all lie in `i`.
pub fn t_op(rules: &BTreeSet<GroundRule>, i: &Interpretation) -> Interpretation {
    rules
        .iter()
        .filter(|r| r.premises.iter().all(|p| i.contains(p)))
        .map(|r| r.conclusion.clone())
        .collect()
}

/// Least fixed point of `t_op`.
pub fn lfp(rules: &BTreeSet<GroundRule>) -> Interpretation {
    let mut x = Interpretation::new();
    loop {
        let next = t_op(rules, &x);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Largest `X ⊆ b` with `X ⊆ t_op(X)`.
pub fn max_consistent_within(rules: &BTreeSet<GroundRule>, b: &Interpretation) -> Interpretation {
    let mut x = b.clone();
    loop {
        let next = x.intersection(&t_op(rules, &x));
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Union of all `X ⊆ b` with `X ⊆ t_op(X)`, by enumerating subsets.
pub fn brute_force_reg(rules: &BTreeSet<GroundRule>, b: &Interpretation) -> Result<Interpretation, String> {
    const LIMIT: usize = 16;
    if b.len() > LIMIT {
        return Err(format!("base of {} atoms exceeds the limit of {LIMIT}", b.len()));
    }
    let atoms: Vec<&GroundAtom> = b.iter().collect();
    let mut union = Interpretation::new();
    for mask in 0u32..(1 << atoms.len()) {
        let x: Interpretation = atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, a)| (*a).clone())
            .collect();
        if x.is_subset(&t_op(rules, &x)) {
            union.0.extend(x.0);
        }
    }
    Ok(union)
}

/// Every atom over the program's predicates with arguments from `u`.
pub fn full_base(prog: &ProgramPair, u: &Universe) -> Interpretation {
    let elems: Vec<usize> = u.indices().collect();
    let mut base = Interpretation::new();
    for sig in prog.predicates() {
        for args in tuples(&elems, sig.arity) {
            base.insert(GroundAtom { pred: sig.name.clone(), args });
        }
    }
    base
}

/// The interpretations of a program over a finite universe.
#[derive(Clone, Debug)]
pub struct Semantics {
    pub rules: BTreeSet<GroundRule>,
    /// Ground instances of the clauses together with the coclauses.
    pub rules_with_co: BTreeSet<GroundRule>,
    /// Least fixed point of the clauses.
    pub ind: Interpretation,
    /// Largest consistent subset of the whole base.
    pub coind: Interpretation,
    /// Least fixed point of clauses and coclauses together.
    pub ind_with_co: Interpretation,
    /// Largest consistent subset of `ind_with_co`.
    pub gen_reg: Interpretation,
    pub base: Interpretation,
    pub warnings: Vec<String>,
}

pub fn semantics_suite(prog: &ProgramPair, u: &Universe) -> Semantics {
    let p = ground_program(&prog.clauses, u);
    let mut pc = p.clone();
    ground_into(&mut pc, &prog.coclauses, u, "coclause");
    let base = full_base(prog, u);
    let ind = lfp(&p.rules);
    let coind = max_consistent_within(&p.rules, &base);
    let ind_with_co = lfp(&pc.rules);
    let gen_reg = max_consistent_within(&p.rules, &ind_with_co);
    let mut warnings: BTreeSet<String> = p.warnings;
    warnings.extend(pc.warnings);
    Semantics {
        rules: p.rules,
        rules_with_co: pc.rules,
        ind,
        coind,
        ind_with_co,
        gen_reg,
        base,
        warnings: warnings.into_iter().collect(),
    }
}

/// A ground answer: each goal variable mapped to a universe element.
pub type GroundAnswer = BTreeMap<Var, usize>;

/// Assignments of the goal's variables to universe elements under which
/// every builtin holds and every other atom lies in `model`.
pub fn answers_in(goal: &[Atom], u: &Universe, model: &Interpretation) -> Vec<GroundAnswer> {
    let vars = vars_in_order(goal);
    let mut out = BTreeSet::new();
    'inst: for assign in assignments(&vars, u) {
        for a in goal {
            let holds = match Builtin::of(a) {
                Some(b) => eval_builtin(b, a, &assign, u).unwrap_or(false),
                None => ground_atom(a, &assign, u).is_ok_and(|g| model.contains(&g)),
            };
            if !holds {
                continue 'inst;
            }
        }
        out.insert(assign.into_iter().collect::<GroundAnswer>());
    }
    out.into_iter().collect()
}

/// Answers to `goal` correct in the regular semantics of `prog` over `u`.
pub fn reg_answers(goal: &[Atom], u: &Universe, prog: &ProgramPair) -> Vec<GroundAnswer> {
    answers_in(goal, u, &semantics_suite(prog, u).gen_reg)
}

pub fn show_answer(a: &GroundAnswer, u: &Universe) -> String {
    if a.is_empty() {
        return "true".into();
    }
    let parts: Vec<String> = a.iter().map(|(v, &i)| format!("{v} = {}", u.show(i))).collect();
    parts.join(", ")
}
