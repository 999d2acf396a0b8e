use rustc_hash::FxHashMap as HashMap;
use std::fmt::{self, Write as _};

use crate::equations::{solved_values, Label, SolvedForm};
use crate::term::{Atom, Clause, ProgramPair, Term, Var, CONS, NIL};

use super::parser::infix;

fn plain_name(name: &str) -> bool {
    name == NIL
        || name.chars().next().is_some_and(|c| c.is_lowercase())
            && name.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn write_name(out: &mut String, name: &str) {
    if plain_name(name) {
        out.push_str(name);
    } else {
        out.push('\'');
        out.push_str(&name.replace('\'', "''"));
        out.push('\'');
    }
}

fn write_term(out: &mut String, t: &Term, max: u32) {
    match t {
        Term::Var(v) => {
            let _ = write!(out, "{v}");
        }
        Term::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Term::Compound(f, args) if &**f == CONS && args.len() == 2 => {
            out.push('[');
            write_term(out, &args[0], 999);
            let mut tail = &args[1];
            loop {
                match tail {
                    Term::Compound(g, xs) if &**g == CONS && xs.len() == 2 => {
                        out.push(',');
                        write_term(out, &xs[0], 999);
                        tail = &xs[1];
                    }
                    Term::Compound(g, xs) if &**g == NIL && xs.is_empty() => break,
                    other => {
                        out.push('|');
                        write_term(out, other, 999);
                        break;
                    }
                }
            }
            out.push(']');
        }
        Term::Compound(f, args) => {
            if let (Some((prec, left_assoc)), [l, r]) = (infix(f), args.as_slice()) {
                let paren = prec > max;
                if paren {
                    out.push('(');
                }
                write_term(out, l, if left_assoc { prec } else { prec - 1 });
                let _ = write!(out, " {f} ");
                // A negative literal right of a minus still reads back as one.
                write_term(out, r, prec - 1);
                if paren {
                    out.push(')');
                }
                return;
            }
            write_name(out, f);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_term(out, a, 999);
                }
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, self, 1200);
        f.write_str(&s)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, &self.to_term(), 999);
        f.write_str(&s)
    }
}

fn write_body(f: &mut fmt::Formatter<'_>, body: &[Atom]) -> fmt::Result {
    for (i, a) in body.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.body.is_empty() {
            write!(f, "{}.", self.head)
        } else {
            write!(f, "{} :- ", self.head)?;
            write_body(f, &self.body)?;
            write!(f, ".")
        }
    }
}

/// Coclause rendering: `head :~ body.` or `head :~.`
pub struct Co<'a>(pub &'a Clause);

impl fmt::Display for Co<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.body.is_empty() {
            write!(f, "{} :~.", self.0.head)
        } else {
            write!(f, "{} :~ ", self.0.head)?;
            write_body(f, &self.0.body)?;
            write!(f, ".")
        }
    }
}

impl fmt::Display for ProgramPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        for c in &self.coclauses {
            writeln!(f, "{}", Co(c))?;
        }
        Ok(())
    }
}

/// One `Var = value` line per query variable, cyclic values written as
/// equations (`L = [1,2|L]`). Variables left unbound and unaliased are
/// omitted; with nothing to show the answer is `true`.
pub fn print_answer(s: &SolvedForm, query_vars: &[Var]) -> String {
    let terms: Vec<Term> = query_vars.iter().cloned().map(Term::Var).collect();
    let (graph, _) = solved_values(s, &terms);
    let graph = graph.canonical();
    let roots = graph.node(graph.root()).children.clone();

    let mut names: HashMap<usize, Var> = HashMap::default();
    for (q, &r) in query_vars.iter().zip(&roots) {
        if matches!(graph.node(r).label, Label::Var(_)) {
            names.entry(r).or_insert_with(|| q.clone());
        }
    }
    let mut aux = Vec::new();
    for t in graph.back_edge_targets(&roots) {
        if names.contains_key(&t) {
            continue;
        }
        let name = match roots.iter().position(|&r| r == t) {
            Some(i) => query_vars[i].clone(),
            None => {
                let v = Var::new(&format!("_S{}", aux.len() + 1));
                aux.push(t);
                v
            }
        };
        names.insert(t, name);
    }
    // Remaining free leaves, numbered in order of appearance.
    let mut fresh = 0;
    let mut stack: Vec<usize> = roots.iter().rev().copied().collect();
    let mut seen = vec![false; graph.len()];
    while let Some(n) = stack.pop() {
        if std::mem::replace(&mut seen[n], true) {
            continue;
        }
        let node = graph.node(n);
        if matches!(node.label, Label::Var(_)) && !names.contains_key(&n) {
            fresh += 1;
            names.insert(n, Var::new(&format!("_G{fresh}")));
        }
        stack.extend(node.children.iter().rev());
    }

    let mut lines = Vec::new();
    for (q, &r) in query_vars.iter().zip(&roots) {
        match names.get(&r) {
            Some(n) if n == q && matches!(graph.node(r).label, Label::Var(_)) => {}
            Some(n) if n != q => lines.push(format!("{q} = {n}")),
            _ => lines.push(format!("{q} = {}", graph.to_named_term(&names, r))),
        }
    }
    for t in aux {
        lines.push(format!("{} = {}", names[&t], graph.to_named_term(&names, t)));
    }
    if lines.is_empty() {
        "true".to_string()
    } else {
        lines.join("\n")
    }
}
