//! Engine answers compared with the regular answers of the reference
//! semantics: every instance must be regular and every regular answer
//! must be covered.
//!
//! ```text
//! cargo run --example cross_check
//! ```

use colp::cli::check_goal;
use colp::engine::EngineConfig;
use colp::semantics::Universe;
use colp::syntax::{parse_program, parse_query, SourceProgram};

const P_PROG: &str = include_str!("../programs/p.colp");
const P_UNIV: &str = include_str!("../programs/p.univ");
const LISTS: &str = include_str!("../programs/lists.colp");
const LISTS_UNIV: &str = include_str!("../programs/lists.univ");

fn main() {
    let cases = [
        (P_PROG, P_UNIV, "?- p(X)."),
        (LISTS, LISTS_UNIV, "?- L = [1,2|L], all_pos(L)."),
        (LISTS, LISTS_UNIV, "?- L = [1,2|L], member(X, L)."),
        (LISTS, LISTS_UNIV, "?- L = [2|T], T = [1|L], maxElem(L, M)."),
    ];
    let cfg = EngineConfig { budget: 64, ..EngineConfig::default() };
    for (prog_text, univ_text, query) in cases {
        let prog = parse_program(&SourceProgram::new(prog_text, "program")).expect("program parses");
        let u = Universe::parse(univ_text, "universe").expect("universe parses");
        let q = parse_query(query).expect("query parses");
        let report = check_goal(&q, &prog, &u, &cfg);
        println!("{query}  engine answers: {}, regular answers: {}", report.engine.len(), report.expected.len());
        println!("{report}\n");
    }
}
