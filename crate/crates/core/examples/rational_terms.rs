//! Equation sets solved over rational trees without an occurs check.
//!
//! ```text
//! cargo run --example rational_terms
//! ```

use colp::equations::{canonical_value, rt_equal, solve, EquationSet};
use colp::syntax::{parse_term, print_answer};
use colp::term::{Term, Var};

fn equations(pairs: &[(&str, &str)]) -> EquationSet {
    EquationSet::from_pairs(pairs.iter().map(|(l, r)| (parse_term(l).unwrap(), parse_term(r).unwrap())))
}

fn main() {
    let e = equations(&[("X", "f(X)"), ("Y", "f(f(Y))"), ("L", "[1,2|L]"), ("K", "[1|T]"), ("T", "[2,1|T]")]);
    println!("equations: {e}");
    let s = solve(&e).expect("cyclic bindings are solvable");
    let vars: Vec<Var> = ["X", "Y", "L", "K"].iter().map(|v| Var::new(v)).collect();
    println!("solved form:\n{}", print_answer(&s, &vars));

    let value = |v: &str| canonical_value(&s, &Term::var(v));
    println!("X and Y denote the same tree: {}", rt_equal(&value("X"), &value("Y")));
    println!("L and K denote the same list: {}", rt_equal(&value("L"), &value("K")));
    println!("first levels of L: {}", value("L").truncate(6));

    let clash = equations(&[("X", "f(X)"), ("X", "f(g(X))")]);
    match solve(&clash) {
        Ok(_) => println!("{clash} solved"),
        Err(err) => println!("{clash}: {err}"),
    }
}
