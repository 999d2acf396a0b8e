use crate::equations::{rt_equal, solve, Equation, EquationSet, RationalTerm, SolvedForm};
use crate::term::{Atom, Builtin, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    /// The builtin is false: this branch fails.
    #[error("builtin failed")]
    Fail,
    /// The builtin cannot be evaluated (wrong operand kind, missing binding).
    #[error("type error: {0}")]
    Type(String),
}

/// Can the builtin be evaluated now? Unification always can; the others
/// need their inputs ground.
pub(crate) fn ready(b: Builtin, atom: &Atom, s: &SolvedForm) -> bool {
    match b {
        Builtin::Unify => true,
        Builtin::Is => s.is_ground(&atom.args[1]),
        _ => s.is_ground(&atom.args[0]) && s.is_ground(&atom.args[1]),
    }
}

fn arith(s: &SolvedForm, t: &Term) -> Result<i64, BuiltinError> {
    RationalTerm::from_solved(s, t)
        .eval_arith()
        .map_err(|e| BuiltinError::Type(format!("{t}: {e}")))
}

/// Evaluate a builtin atom against the solved form, extending it in place.
/// Returns the equations the builtin contributes.
pub(crate) fn eval_in(
    b: Builtin,
    atom: &Atom,
    s: &mut SolvedForm,
) -> Result<Vec<Equation>, BuiltinError> {
    let (l, r) = (&atom.args[0], &atom.args[1]);
    match b {
        Builtin::Unify => {
            s.unify(l, r).map_err(|_| BuiltinError::Fail)?;
            Ok(vec![Equation::new(l.clone(), r.clone())])
        }
        Builtin::NotEqual => {
            if !(s.is_ground(l) && s.is_ground(r)) {
                return Err(BuiltinError::Type(format!("{atom}: operands must be ground")));
            }
            let a = RationalTerm::from_solved(s, l);
            let c = RationalTerm::from_solved(s, r);
            if rt_equal(&a, &c) {
                Err(BuiltinError::Fail)
            } else {
                Ok(Vec::new())
            }
        }
        Builtin::Is => {
            let v = arith(s, r)?;
            s.unify(l, &Term::Int(v)).map_err(|_| BuiltinError::Fail)?;
            Ok(vec![Equation::new(l.clone(), Term::Int(v))])
        }
        cmp => {
            let (x, y) = (arith(s, l)?, arith(s, r)?);
            let holds = match cmp {
                Builtin::Less => x < y,
                Builtin::Greater => x > y,
                Builtin::LessEq => x <= y,
                Builtin::GreaterEq => x >= y,
                _ => unreachable!(),
            };
            if holds {
                Ok(Vec::new())
            } else {
                Err(BuiltinError::Fail)
            }
        }
    }
}

/// Evaluate a builtin atom under `eqs`; on success returns `eqs` extended
/// with whatever the builtin adds.
pub fn builtin_eval(atom: &Atom, eqs: &EquationSet) -> Result<EquationSet, BuiltinError> {
    let b = Builtin::of(atom).ok_or_else(|| BuiltinError::Type(format!("{atom} is not a builtin")))?;
    let mut s = solve(eqs).map_err(|_| BuiltinError::Fail)?;
    let added = eval_in(b, atom, &mut s)?;
    let mut out = eqs.clone();
    for e in added {
        out.insert(e);
    }
    Ok(out)
}
