//! Inductive, coinductive and regular interpretations of a program over a
//! finite universe of rational terms.
//!
//! ```text
//! cargo run --example oracle
//! ```

use colp::semantics::{semantics_suite, Universe};
use colp::syntax::{parse_program, SourceProgram};

const P_PROG: &str = include_str!("../programs/p.colp");
const P_UNIV: &str = include_str!("../programs/p.univ");
const LISTS: &str = include_str!("../programs/lists.colp");
const LISTS_UNIV: &str = include_str!("../programs/lists.univ");

fn report(name: &str, prog_text: &str, univ_text: &str) {
    let prog = parse_program(&SourceProgram::new(prog_text, name)).expect("program parses");
    let u = Universe::parse(univ_text, name).expect("universe parses");
    let s = semantics_suite(&prog, &u);
    println!("== {name} over {} terms", u.len());
    for (label, model) in [("Ind", &s.ind), ("CoInd", &s.coind), ("Reg", &s.gen_reg)] {
        let atoms = model.show(&u);
        println!("{label:<6} {} atom(s): {}", atoms.len(), atoms.join(" "));
    }
    if let Some(first) = s.warnings.first() {
        println!("{} grounding warning(s), first: {first}", s.warnings.len());
    }
    println!();
}

fn main() {
    report("p.colp", P_PROG, P_UNIV);
    report("lists.colp", LISTS, LISTS_UNIV);
}
