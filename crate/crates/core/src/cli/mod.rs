//! Command-line front end: batch runs, an interactive loop, fixed-point
//! tables over a universe, and engine-versus-oracle checks.
//!
//! Every command writes to caller-supplied streams and returns its exit
//! code, so sessions can be driven from tests.

mod check;

use std::cell::RefCell;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::rc::Rc;

use clap::{Args, Parser, Subcommand};

use crate::engine::{run_query, EngineConfig, Exhaustion, Mode, Prefer, Solutions, Strategy};
use crate::semantics::{semantics_suite, Interpretation, Universe};
use crate::syntax::{parse_program, parse_query, print_answer, ParsedQuery, SourceProgram};
use crate::term::ProgramPair;

pub use check::{check_answers, check_goal, is_instance, CheckReport};

pub const EXIT_ANSWERS: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "colp", version, about = "Logic programs with coclauses over rational terms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Answer one query and exit.
    Run {
        program: PathBuf,
        query: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Read queries interactively.
    Repl {
        program: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print the inductive, coinductive and regular models over a universe.
    Semantics { program: PathBuf, universe: PathBuf },
    /// Compare engine answers with the regular answers over a universe.
    Check {
        program: PathBuf,
        universe: PathBuf,
        query: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// flexible, inductive or coinductive
    #[arg(long, default_value = "flexible")]
    pub mode: Mode,
    /// dfs or iddfs
    #[arg(long, default_value = "iddfs")]
    pub strategy: Strategy,
    /// Maximum rule applications per derivation
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    /// Number of answers to print (default 1 for `run`, all otherwise)
    #[arg(long)]
    pub answers: Option<usize>,
    /// Print each rule application
    #[arg(long)]
    pub trace: bool,
    /// Try co-hyp (cohyp) or step (step) first
    #[arg(long, default_value = "cohyp")]
    pub prefer: Prefer,
}

impl Flags {
    pub fn config(&self, default_answers: Option<usize>) -> EngineConfig {
        EngineConfig {
            mode: self.mode,
            strategy: self.strategy,
            budget: self.budget,
            max_answers: self.answers.or(default_answers),
            prefer: self.prefer,
        }
    }
}

type TraceBuffer = Rc<RefCell<Vec<String>>>;

fn start<'a>(prog: &ProgramPair, q: &ParsedQuery, cfg: &EngineConfig, trace: bool) -> (Solutions<'a>, TraceBuffer) {
    let buf: TraceBuffer = Rc::default();
    let mut sols = run_query(prog, q, cfg);
    if trace {
        let sink = buf.clone();
        sols = sols.with_trace(move |line| sink.borrow_mut().push(line.to_string()));
    }
    (sols, buf)
}

fn flush_trace(buf: &TraceBuffer, w: &mut dyn Write) -> io::Result<()> {
    for line in buf.borrow_mut().drain(..) {
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn status_line(e: Exhaustion, answers: usize) -> &'static str {
    match e {
        Exhaustion::Complete | Exhaustion::FinitelyFailed if answers > 0 => "no more answers",
        Exhaustion::Complete | Exhaustion::FinitelyFailed => "failed",
        Exhaustion::BudgetExhausted => "budget exhausted",
    }
}

/// Answer `query`, printing up to the configured number of answers and a
/// closing status line. The exit code reflects the outcome category.
pub fn cmd_run(prog: &ProgramPair, query: &str, flags: &Flags, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let q = match parse_query(query) {
        Ok(q) => q,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    run_parsed(prog, &q, flags, out, err).unwrap_or(EXIT_ERROR)
}

fn run_parsed(prog: &ProgramPair, q: &ParsedQuery, flags: &Flags, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let cfg = flags.config(Some(1));
    let vars = q.variables();
    let (mut sols, trace) = start(prog, q, &cfg, flags.trace);
    let mut count = 0;
    for a in sols.by_ref() {
        flush_trace(&trace, err)?;
        if count > 0 {
            writeln!(out, ";")?;
        }
        writeln!(out, "{}", print_answer(&a.solved, &vars))?;
        count += 1;
    }
    flush_trace(&trace, err)?;
    if let Some(e) = sols.exhaustion() {
        writeln!(out, "{}", status_line(e, count))?;
    }
    let diagnostics = sols.diagnostics();
    for d in &diagnostics {
        writeln!(err, "{}: {d}", d.atom)?;
    }
    Ok(match sols.exhaustion() {
        _ if count > 0 => EXIT_ANSWERS,
        _ if !diagnostics.is_empty() => EXIT_ERROR,
        Some(Exhaustion::BudgetExhausted) => EXIT_EXHAUSTED,
        _ => EXIT_FAILED,
    })
}

const REPL_HELP: &str = "\
?- Goal.          answer a query; `;` asks for the next answer, `.` stops
:mode M           flexible, inductive or coinductive
:budget N         maximum rule applications per derivation
:strategy S       dfs or iddfs
:prefer P         cohyp or step
:trace [on|off]   print rule applications
:quit             leave";

/// Interactive loop reading queries and commands from `input`.
pub fn cmd_repl(prog: &ProgramPair, flags: &Flags, input: &mut dyn BufRead, out: &mut dyn Write) -> io::Result<()> {
    let mut flags = flags.clone();
    let mut line = String::new();
    loop {
        write!(out, "?- ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(());
        }
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(cmd) = text.strip_prefix(':') {
            let mut words = cmd.split_whitespace();
            let name = words.next().unwrap_or("");
            let arg = words.next();
            let result: Result<String, String> = match (name, arg) {
                ("quit" | "q", _) => return Ok(()),
                ("help", _) => Ok(REPL_HELP.to_string()),
                ("mode", Some(a)) => a.parse().map(|m| {
                    flags.mode = m;
                    format!("mode: {m}")
                }),
                ("budget", Some(a)) => a.parse().map_err(|_| format!("invalid budget {a:?}")).map(|b| {
                    flags.budget = b;
                    format!("budget: {b}")
                }),
                ("strategy", Some(a)) => a.parse().map(|s| {
                    flags.strategy = s;
                    format!("strategy: {a}")
                }),
                ("prefer", Some(a)) => a.parse().map(|p| {
                    flags.prefer = p;
                    format!("prefer: {a}")
                }),
                ("trace", a) => match a {
                    None => Ok(!flags.trace),
                    Some("on") => Ok(true),
                    Some("off") => Ok(false),
                    Some(other) => Err(format!("expected on or off, got {other:?}")),
                }
                .map(|t| {
                    flags.trace = t;
                    format!("trace: {}", if t { "on" } else { "off" })
                }),
                (
                    "mode" | "budget" | "strategy" | "prefer",
                    None,
                ) => Err(format!(":{name} needs an argument")),
                _ => Err(format!("unknown command :{name} (try :help)")),
            };
            match result {
                Ok(msg) => writeln!(out, "{msg}")?,
                Err(msg) => writeln!(out, "error: {msg}")?,
            }
            continue;
        }
        let q = match parse_query(text) {
            Ok(q) => q,
            Err(e) => {
                writeln!(out, "error: {e}")?;
                continue;
            }
        };
        repl_query(prog, &q, &flags, input, out)?;
    }
}

fn repl_query(
    prog: &ProgramPair,
    q: &ParsedQuery,
    flags: &Flags,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> io::Result<()> {
    let cfg = EngineConfig { max_answers: flags.answers, ..flags.config(None) };
    let vars = q.variables();
    let (mut sols, trace) = start(prog, q, &cfg, flags.trace);
    let mut count = 0;
    let mut reply = String::new();
    loop {
        let Some(a) = sols.next() else {
            flush_trace(&trace, out)?;
            if let Some(e) = sols.exhaustion() {
                writeln!(out, "{}", status_line(e, count))?;
            }
            break;
        };
        flush_trace(&trace, out)?;
        count += 1;
        write!(out, "{} ", print_answer(&a.solved, &vars))?;
        out.flush()?;
        reply.clear();
        if input.read_line(&mut reply)? == 0 || reply.trim() != ";" {
            if reply.is_empty() {
                writeln!(out)?;
            }
            break;
        }
    }
    for d in sols.diagnostics() {
        writeln!(out, "{}: {d}", d.atom)?;
    }
    Ok(())
}

fn write_table(out: &mut dyn Write, title: &str, i: &Interpretation, u: &Universe) -> io::Result<()> {
    writeln!(out, "{title}:")?;
    if i.is_empty() {
        writeln!(out, "  (empty)")?;
    }
    for a in i.show(u) {
        writeln!(out, "  {a}")?;
    }
    Ok(())
}

/// Print the inductive, coinductive and regular models of `prog` over `u`,
/// one sorted atom per line. Grounding warnings go to `err`.
pub fn cmd_semantics(prog: &ProgramPair, u: &Universe, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let s = semantics_suite(prog, u);
    let written = (|| -> io::Result<()> {
        write_table(out, "Ind", &s.ind, u)?;
        write_table(out, "CoInd", &s.coind, u)?;
        write_table(out, "Reg", &s.gen_reg, u)?;
        for w in &s.warnings {
            writeln!(err, "warning: {w}")?;
        }
        Ok(())
    })();
    if written.is_ok() {
        EXIT_ANSWERS
    } else {
        EXIT_ERROR
    }
}

/// Run the engine with iterative deepening and compare its answers with
/// the regular answers over `u`; see [`check_goal`].
pub fn cmd_check(
    prog: &ProgramPair,
    u: &Universe,
    query: &str,
    flags: &Flags,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let q = match parse_query(query) {
        Ok(q) => q,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let report = check_goal(&q, prog, u, &flags.config(None));
    let exhaustion = report.exhaustion.map_or("stopped once all regular answers were covered".to_string(), |e| e.to_string());
    let written = writeln!(out, "engine: {} answer(s), {exhaustion}", report.answers.len())
        .and_then(|_| writeln!(out, "regular: {} answer(s)", report.expected.len()))
        .and_then(|_| writeln!(out, "{report}"));
    match written {
        Err(_) => EXIT_ERROR,
        Ok(()) if report.passed() => EXIT_ANSWERS,
        Ok(()) => EXIT_FAILED,
    }
}

fn load_program(path: &Path, err: &mut dyn Write) -> Option<ProgramPair> {
    let src = match SourceProgram::from_file(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return None;
        }
    };
    match parse_program(&src) {
        Ok(p) => Some(p),
        Err(errors) => {
            for e in errors {
                let _ = writeln!(err, "error: {e}");
            }
            None
        }
    }
}

fn load_universe(path: &Path, err: &mut dyn Write) -> Option<Universe> {
    match Universe::from_file(path) {
        Ok(u) => Some(u),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            None
        }
    }
}

/// Dispatch a parsed command line.
pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Run { program, query, flags } => match load_program(&program, err) {
            Some(p) => cmd_run(&p, &query, &flags, out, err),
            None => EXIT_ERROR,
        },
        Command::Repl { program, flags } => match load_program(&program, err) {
            Some(p) => match cmd_repl(&p, &flags, input, out) {
                Ok(()) => EXIT_ANSWERS,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_ERROR
                }
            },
            None => EXIT_ERROR,
        },
        Command::Semantics { program, universe } => {
            match (load_program(&program, err), load_universe(&universe, err)) {
                (Some(p), Some(u)) => cmd_semantics(&p, &u, out, err),
                _ => EXIT_ERROR,
            }
        }
        Command::Check { program, universe, query, flags } => {
            match (load_program(&program, err), load_universe(&universe, err)) {
                (Some(p), Some(u)) => cmd_check(&p, &u, &query, &flags, out, err),
                _ => EXIT_ERROR,
            }
        }
    }
}

#[cfg(test)]
mod tests;
