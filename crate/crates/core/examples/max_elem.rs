//! The maximum of a cyclic list, found through a coclause.
//!
//! ```text
//! cargo run --example max_elem
//! ```

use colp::engine::{run_query, EngineConfig, Mode};
use colp::syntax::{parse_program, parse_query, print_answer, SourceProgram};

const LISTS: &str = include_str!("../programs/lists.colp");

fn main() {
    let prog = parse_program(&SourceProgram::new(LISTS, "lists.colp")).expect("program parses");
    println!("{prog}\n");
    for (text, mode) in [
        ("?- maxElem([3,1,2], M).", Mode::Flexible),
        ("?- L = [1,2|L], maxElem(L, M).", Mode::Flexible),
        ("?- L = [1,2|L], maxElem(L, M).", Mode::Inductive),
    ] {
        let q = parse_query(text).expect("query parses");
        let cfg = EngineConfig { mode, budget: 64, max_answers: Some(1), ..EngineConfig::default() };
        let out = run_query(&prog, &q, &cfg).into_outcome();
        println!("{text}   [{mode}]");
        match out.answers.first() {
            Some(a) => println!("{}\n", print_answer(&a.solved, &q.variables())),
            None => println!("no answer ({})\n", out.exhaustion.map_or("stopped".into(), |e| e.to_string())),
        }
    }
}
