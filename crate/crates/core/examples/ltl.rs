//! LTL `always` and `until` over infinite words on {0,1}.
//!
//! ```text
//! cargo run --example ltl
//! ```

use colp::engine::{run_query, EngineConfig};
use colp::syntax::{parse_program, parse_query, SourceProgram};

const LTL: &str = include_str!("../programs/ltl.colp");

fn main() {
    let prog = parse_program(&SourceProgram::new(LTL, "ltl.colp")).expect("program parses");
    let queries = [
        "?- W0 = [0|W0], sat(W0, always(zero)).",
        "?- W1 = [1|W1], sat([1,1,0|W1], until(one, zero)).",
        "?- W0 = [0|W0], sat([1,1|W0], until(one, always(zero))).",
        "?- W1 = [1|W1], sat(W1, until(one, zero)).",
        "?- W1 = [1|W1], sat(W1, always(zero)).",
    ];
    for text in queries {
        let q = parse_query(text).expect("query parses");
        let cfg = EngineConfig { budget: 64, max_answers: Some(1), ..EngineConfig::default() };
        let out = run_query(&prog, &q, &cfg).into_outcome();
        let verdict = match (out.answers.is_empty(), out.exhaustion) {
            (false, _) => "holds".to_string(),
            (true, Some(e)) => format!("no proof ({e})"),
            (true, None) => "no proof".to_string(),
        };
        println!("{text:<60} {verdict}");
    }
}
