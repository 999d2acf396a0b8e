use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap as HashMap;

use crate::term::ProgramPair;

use super::ground::{semantics_suite, GroundAtom, GroundRule, Interpretation};
use super::universe::Universe;

/// Derivability of judgements `H ⊢ A` in the Loop system: an atom already
/// among the hypotheses is accepted when it is in the least fixed point of
/// clauses and coclauses; otherwise some clause instance for it must have
/// every premise derivable with `A` added to the hypotheses.
pub struct LoopSystem {
    by_conclusion: BTreeMap<GroundAtom, Vec<GroundRule>>,
    ind_with_co: Interpretation,
    memo: HashMap<(BTreeSet<GroundAtom>, GroundAtom), bool>,
}

impl LoopSystem {
    pub fn new(rules: &BTreeSet<GroundRule>, ind_with_co: Interpretation) -> Self {
        let mut by_conclusion: BTreeMap<GroundAtom, Vec<GroundRule>> = BTreeMap::new();
        for r in rules {
            by_conclusion.entry(r.conclusion.clone()).or_default().push(r.clone());
        }
        LoopSystem { by_conclusion, ind_with_co, memo: HashMap::default() }
    }

    pub fn for_program(prog: &ProgramPair, u: &Universe) -> Self {
        let s = semantics_suite(prog, u);
        LoopSystem::new(&s.rules, s.ind_with_co)
    }

    pub fn derivable(&mut self, hyps: &BTreeSet<GroundAtom>, a: &GroundAtom) -> bool {
        if hyps.contains(a) {
            return self.ind_with_co.contains(a);
        }
        let key = (hyps.clone(), a.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut inner = hyps.clone();
        inner.insert(a.clone());
        let rules = self.by_conclusion.get(a).cloned().unwrap_or_default();
        let result = rules.iter().any(|r| r.premises.iter().all(|p| self.derivable(&inner, p)));
        self.memo.insert(key, result);
        result
    }
}

pub fn loop_derivable(prog: &ProgramPair, u: &Universe, hyps: &BTreeSet<GroundAtom>, a: &GroundAtom) -> bool {
    LoopSystem::for_program(prog, u).derivable(hyps, a)
}

/// Whether `∅ ⊢ A` is derivable exactly for the atoms of the regular
/// semantics, over the whole base.
pub fn loop_reg_agree(prog: &ProgramPair, u: &Universe) -> bool {
    let s = semantics_suite(prog, u);
    let mut sys = LoopSystem::new(&s.rules, s.ind_with_co.clone());
    let empty = BTreeSet::new();
    let agree = s.base.iter().all(|a| sys.derivable(&empty, a) == s.gen_reg.contains(a));
    agree
}
