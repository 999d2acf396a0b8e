use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use crate::term::{Term, Var};

use super::Unsolvable;

/// Solved form of an equation set over rational trees.
///
/// Each key occurs once; right-hand sides may mention bound variables, so
/// bindings such as `X ↦ f(X)` denote cyclic (infinite) terms. Variable
/// chains always end at an unbound variable or a non-variable term.
///
/// Bindings are recorded on a trail so a caller can take a [`Mark`] and
/// undo everything bound after it.
#[derive(Clone, Debug, Default)]
pub struct SolvedForm {
    bindings: HashMap<Var, Term>,
    trail: Vec<(Var, Option<Term>)>,
}

/// Trail position returned by [`SolvedForm::mark`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mark(usize);

impl PartialEq for SolvedForm {
    fn eq(&self, other: &Self) -> bool {
        self.bindings == other.bindings
    }
}

impl SolvedForm {
    pub fn new() -> Self {
        SolvedForm::default()
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.bindings.get(v)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Bindings sorted by variable.
    pub fn bindings(&self) -> Vec<(&Var, &Term)> {
        let mut v: Vec<_> = self.bindings.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn mark(&self) -> Mark {
        Mark(self.trail.len())
    }

    pub fn undo_to(&mut self, mark: Mark) {
        while self.trail.len() > mark.0 {
            let (v, old) = self.trail.pop().expect("trail underflow");
            match old {
                Some(t) => self.bindings.insert(v, t),
                None => self.bindings.remove(&v),
            };
        }
    }

    /// Forget the undo history (bindings are kept).
    pub fn clear_trail(&mut self) {
        self.trail.clear();
    }

    fn bind(&mut self, v: Var, t: Term) {
        debug_assert!(t != Term::Var(v.clone()));
        let old = self.bindings.insert(v.clone(), t);
        self.trail.push((v, old));
    }

    /// Follow variable-to-variable links. Returns the end of the chain and,
    /// when the chain ends at a non-variable term, the last variable whose
    /// binding that term is.
    pub fn walk<'a>(&'a self, t: &'a Term) -> (&'a Term, Option<&'a Var>) {
        let mut cur = t;
        let mut last = None;
        while let Term::Var(v) = cur {
            match self.bindings.get(v) {
                Some(next) => {
                    last = Some(v);
                    cur = next;
                }
                None => return (cur, None),
            }
        }
        (cur, last)
    }

    /// Representative of a term's class: the unbound variable ending its
    /// chain, or the non-variable term it is bound to.
    pub fn deref<'a>(&'a self, t: &'a Term) -> &'a Term {
        self.walk(t).0
    }

    /// Add `s = t`. On failure the form may be partially extended; callers
    /// that need atomicity take a mark first.
    pub fn unify(&mut self, s: &Term, t: &Term) -> Result<(), Unsolvable> {
        let mut work: Vec<(Term, Term)> = vec![(s.clone(), t.clone())];
        while let Some((a, b)) = work.pop() {
            let (ra, va) = {
                let (r, v) = self.walk(&a);
                (r.clone(), v.cloned())
            };
            let (rb, vb) = {
                let (r, v) = self.walk(&b);
                (r.clone(), v.cloned())
            };
            match (&ra, &rb) {
                (Term::Var(x), Term::Var(y)) => {
                    if x != y {
                        // Orient toward the lower variable.
                        if x < y {
                            self.bind(y.clone(), ra.clone());
                        } else {
                            self.bind(x.clone(), rb.clone());
                        }
                    }
                }
                (Term::Var(x), _) => {
                    let target = vb.map(Term::Var).unwrap_or(rb);
                    self.bind(x.clone(), target);
                }
                (_, Term::Var(y)) => {
                    let target = va.map(Term::Var).unwrap_or(ra);
                    self.bind(y.clone(), target);
                }
                (Term::Int(m), Term::Int(n)) => {
                    if m != n {
                        return Err(Unsolvable::clash(&ra, &rb));
                    }
                }
                (Term::Compound(f, xs), Term::Compound(g, ys)) => {
                    if f != g || xs.len() != ys.len() {
                        return Err(Unsolvable::clash(&ra, &rb));
                    }
                    if let (Some(va), Some(vb)) = (&va, &vb) {
                        if va == vb {
                            continue;
                        }
                        // Merge the two classes before descending so cyclic
                        // terms are visited once.
                        if va < vb {
                            self.bind(vb.clone(), Term::Var(va.clone()));
                        } else {
                            self.bind(va.clone(), Term::Var(vb.clone()));
                        }
                    }
                    for (x, y) in xs.iter().zip(ys.iter()).rev() {
                        work.push((x.clone(), y.clone()));
                    }
                }
                _ => return Err(Unsolvable::clash(&ra, &rb)),
            }
        }
        Ok(())
    }

    /// Unify without keeping the result.
    pub fn can_unify(&mut self, pairs: &[(Term, Term)]) -> bool {
        let m = self.mark();
        let ok = pairs.iter().all(|(s, t)| self.unify(s, t).is_ok());
        self.undo_to(m);
        ok
    }

    /// True iff the value of `t` contains no unbound variable.
    pub fn is_ground(&self, t: &Term) -> bool {
        let mut seen: HashSet<Var> = HashSet::default();
        let mut stack = vec![t];
        while let Some(cur) = stack.pop() {
            let (r, via) = self.walk(cur);
            match r {
                Term::Var(_) => return false,
                Term::Int(_) => {}
                Term::Compound(_, args) => {
                    if let Some(v) = via {
                        if !seen.insert(v.clone()) {
                            continue;
                        }
                    }
                    stack.extend(args.iter());
                }
            }
        }
        true
    }

    /// Variables that are keys of the form.
    pub fn bound_vars(&self) -> impl Iterator<Item = &Var> {
        self.bindings.keys()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn f(args: Vec<Term>) -> Term {
        Term::compound("f", args)
    }

    #[test]
    fn var_var_orients_to_lower() {
        let mut s = SolvedForm::new();
        s.unify(&v("Y"), &v("X")).unwrap();
        assert_eq!(s.get(&Var::new("Y")), Some(&v("X")));
        assert_eq!(s.get(&Var::new("X")), None);
    }

    #[test]
    fn cyclic_vs_cyclic_terminates() {
        let mut s = SolvedForm::new();
        s.unify(&v("X"), &f(vec![v("X")])).unwrap();
        s.unify(&v("Y"), &f(vec![v("Y")])).unwrap();
        s.unify(&v("X"), &v("Y")).unwrap();
        s.unify(&v("X"), &f(vec![f(vec![v("Y")])])).unwrap();
        assert!(s.is_ground(&v("X")));
    }

    #[test]
    fn undo_restores() {
        let mut s = SolvedForm::new();
        s.unify(&v("X"), &Term::Int(1)).unwrap();
        let m = s.mark();
        s.unify(&v("Y"), &v("X")).unwrap();
        s.unify(&v("Z"), &f(vec![v("Z")])).unwrap();
        s.undo_to(m);
        assert_eq!(s.len(), 1);
        assert!(s.can_unify(&[(v("Y"), Term::Int(2))]));
        assert!(!s.can_unify(&[(v("X"), Term::Int(2))]));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn int_clashes() {
        let mut s = SolvedForm::new();
        assert!(s.unify(&Term::Int(1), &Term::Int(2)).is_err());
        assert!(s.unify(&Term::Int(1), &Term::constant("a")).is_err());
        assert!(s.unify(&Term::Int(1), &Term::Int(1)).is_ok());
    }
}
