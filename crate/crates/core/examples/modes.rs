//! One program run inductively, coinductively and with its own coclauses.
//!
//! ```text
//! cargo run --example modes
//! ```

use colp::engine::{run_query, EngineConfig, Mode};
use colp::syntax::{parse_program, parse_query, print_answer, SourceProgram};

const FIG1: &str = include_str!("../programs/fig1.colp");

fn main() {
    let prog = parse_program(&SourceProgram::new(FIG1, "fig1.colp")).expect("program parses");
    let queries = ["?- member(1, [0,1]).", "?- L = [0|L], member(1, L).", "?- L = [1|L], all_pos(L)."];
    for text in queries {
        let q = parse_query(text).expect("query parses");
        println!("{text}");
        for mode in [Mode::Inductive, Mode::Coinductive, Mode::Flexible] {
            let cfg = EngineConfig { mode, budget: 64, max_answers: Some(1), ..EngineConfig::default() };
            let out = run_query(&prog, &q, &cfg).into_outcome();
            let result = match out.answers.first() {
                Some(a) => print_answer(&a.solved, &q.variables()).replace('\n', ", "),
                None => format!("no answer ({})", out.exhaustion.map_or("stopped".into(), |e| e.to_string())),
            };
            println!("  {mode:<12} {result}");
        }
    }
}
