//! Big-step evaluation of diverging programs with output.
//!
//! ```text
//! cargo run --example big_step
//! ```

use colp::engine::{run_query, EngineConfig};
use colp::syntax::{parse_program, parse_query, print_answer, SourceProgram};

const BIGSTEP: &str = include_str!("../programs/bigstep.colp");

fn main() {
    let prog = parse_program(&SourceProgram::new(BIGSTEP, "bigstep.colp")).expect("program parses");
    let queries = [
        "?- eval(seq(out(1), out(2)), R, S).",
        "?- E = seq(skip, E), eval(E, div, []).",
        "?- E = seq(E, E), eval(seq(out(1), E), div, [1]).",
        "?- E = seq(out(1), E), S = [1|S], eval(E, div, S).",
        "?- E = seq(out(1), E), eval(E, R, S).",
    ];
    for text in queries {
        let q = parse_query(text).expect("query parses");
        let cfg = EngineConfig { budget: 128, max_answers: Some(1), ..EngineConfig::default() };
        let out = run_query(&prog, &q, &cfg).into_outcome();
        println!("{text}");
        match out.answers.first() {
            Some(a) => println!("  {}", print_answer(&a.solved, &q.variables()).replace('\n', "\n  ")),
            None => println!("  no answer ({})", out.exhaustion.map_or("stopped".into(), |e| e.to_string())),
        }
    }
}
