//! Regular expressions with omega-power matched against finite and
//! infinite words, with the engine checked against the reference semantics.
//!
//! ```text
//! cargo run --example regex
//! ```

use colp::cli::check_goal;
use colp::engine::{run_query, EngineConfig};
use colp::semantics::Universe;
use colp::syntax::{parse_program, parse_query, SourceProgram};

const REGEX: &str = include_str!("../programs/regex.colp");
const REGEX_UNIV: &str = include_str!("../programs/regex.univ");

fn main() {
    let prog = parse_program(&SourceProgram::new(REGEX, "regex.colp")).expect("program parses");
    let cfg = EngineConfig { budget: 64, max_answers: Some(1), ..EngineConfig::default() };
    for text in [
        "?- W = [0|W], match(W, omega(0)).",
        "?- W = [0,1|W], match(W, omega(cat(0,1))).",
        "?- match([0,1], cat(0,1)).",
        "?- match([0,1], star(0)).",
    ] {
        let q = parse_query(text).expect("query parses");
        let out = run_query(&prog, &q, &cfg).into_outcome();
        let verdict = if out.answers.is_empty() { "no match" } else { "match" };
        println!("{text:<48} {verdict}");
    }

    let u = Universe::parse(REGEX_UNIV, "regex.univ").expect("universe parses");
    let q = parse_query("?- match([0,1], cat(0,1)).").unwrap();
    println!("\nagainst the regular semantics over {} terms:\n{}", u.len(), check_goal(&q, &prog, &u, &cfg));
}
