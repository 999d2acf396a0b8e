use super::*;
use crate::semantics::Universe;

const LISTS: &str = include_str!("../../programs/lists.colp");
const FIG1: &str = include_str!("../../programs/fig1.colp");
const P_PROG: &str = include_str!("../../programs/p.colp");
const P_UNIV: &str = include_str!("../../programs/p.univ");
const LTL: &str = include_str!("../../programs/ltl.colp");

fn prog(text: &str) -> ProgramPair {
    parse_program(&SourceProgram::new(text, "<test>")).unwrap()
}

fn flags(budget: usize) -> Flags {
    Flags { budget, ..Flags::default() }
}

fn run_cmd(text: &str, query: &str, f: &Flags) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cmd_run(&prog(text), query, f, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn repl(text: &str, session: &str) -> String {
    let mut out = Vec::new();
    cmd_repl(&prog(text), &flags(64), &mut session.as_bytes(), &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn run_prints_answers_and_exit_codes() {
    let (code, out, _) = run_cmd(LISTS, "?- L=[1,2|L], maxElem(L,M).", &flags(1000));
    assert_eq!(code, EXIT_ANSWERS);
    assert_eq!(out, "L = [1,2|L]\nM = 2\n");

    let (code, out, _) = run_cmd(P_PROG, "?- p(z).", &flags(32));
    assert_eq!(code, EXIT_EXHAUSTED);
    assert_eq!(out, "budget exhausted\n");

    let (code, out, _) = run_cmd(FIG1, "?- member(1,[0,1]).", &flags(1000));
    assert_eq!(code, EXIT_ANSWERS);
    assert_eq!(out, "true\nno more answers\n");

    let (code, out, _) = run_cmd(FIG1, "?- member(2,[0,1]).", &flags(1000));
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(out, "failed\n");

    let all = Flags { answers: Some(10), ..flags(100) };
    let (code, out, _) = run_cmd(FIG1, "?- member(X,[0,1]).", &all);
    assert_eq!(code, EXIT_ANSWERS);
    assert_eq!(out, "X = 0\n;\nX = 1\nno more answers\n");
}

#[test]
fn run_reports_errors() {
    let (code, _, err) = run_cmd(FIG1, "?- member(X,", &flags(10));
    assert_eq!(code, EXIT_ERROR);
    assert!(err.starts_with("error:"), "{err}");
    let (code, _, err) = run_cmd("q(X) :- X > 0.", "?- q(a).", &flags(10));
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("type error"), "{err}");
}

#[test]
fn run_trace_goes_to_error_stream() {
    let f = Flags { trace: true, ..flags(4) };
    let (_, out, err) = run_cmd(P_PROG, "?- p(X).", &f);
    assert_eq!(out, "X = s(X)\n");
    assert!(err.lines().any(|l| l.trim_start().starts_with("COHYP")), "{err}");
}

#[test]
fn inductive_and_flexible_agree_without_coclauses() {
    for q in ["?- member(X,[0,1]).", "?- maxElem([3,1,2],M).", "?- all_pos([1,0])."] {
        let flexible = Flags { answers: Some(5), ..flags(64) };
        let inductive = Flags { mode: Mode::Inductive, ..flexible.clone() };
        assert_eq!(run_cmd(FIG1, q, &flexible), run_cmd(FIG1, q, &inductive));
    }
}

#[test]
fn repl_session() {
    let out = repl(
        LTL,
        "?- W0=[0|W0], sat(W0, always(zero)).\n.\n\n\
         ?- W1=[1|W1], sat([1,1,0|W1], until(one,zero)).\n.\n\
         :budget 32\n\
         ?- W1=[1|W1], sat(W1, until(one,zero)).\n\
         ?- sat(\n\
         :quit\n",
    );
    assert_eq!(
        out,
        "?- W0 = [0|W0] ?- ?- W1 = [1|W1] ?- budget: 32\n\
         ?- budget exhausted\n\
         ?- error: 1:7: expected a term, found end of input\n\
         ?- "
    );
}

#[test]
fn repl_enumerates_on_semicolon() {
    let out = repl(FIG1, "member(X,[0,1]).\n;\n;\n:mode coinductive\n:trace on\n:nonsense\n:quit\n");
    assert!(out.contains("X = 0 ?- ") || out.contains("X = 0 X = 1"), "{out}");
    assert!(out.contains("X = 1 no more answers"), "{out}");
    assert!(out.contains("mode: coinductive"));
    assert!(out.contains("trace: on"));
    assert!(out.contains("error: unknown command :nonsense"));
}

#[test]
fn semantics_tables() {
    let u = Universe::parse(P_UNIV, "p.univ").unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(cmd_semantics(&prog(P_PROG), &u, &mut out, &mut err), EXIT_ANSWERS);
    let out = String::from_utf8(out).unwrap();
    assert_eq!(out, "Ind:\n  (empty)\nCoInd:\n  p(omega)\nReg:\n  p(omega)\n");
    assert!(String::from_utf8(err).unwrap().starts_with("warning: clause 1"));
}

fn tables(text: &str, univ: &str) -> Vec<String> {
    let u = Universe::parse(univ, "u").unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    cmd_semantics(&prog(text), &u, &mut out, &mut err);
    let out = String::from_utf8(out).unwrap();
    let mut sections = Vec::new();
    for line in out.lines() {
        if line.ends_with(':') {
            sections.push(String::new());
        } else {
            let s = sections.last_mut().unwrap();
            s.push_str(line);
            s.push('\n');
        }
    }
    sections
}

#[test]
fn semantics_without_coclauses_reg_is_ind() {
    let t = tables(FIG1, "0\n1\n2\n[]\n[1]\n[0,1]\n[2]\n[1,2]");
    assert_eq!(t[0], t[2]);
    assert!(t[0].contains("member(1,[0,1])"));
}

#[test]
fn semantics_universal_cofacts_reg_is_coind() {
    let co = crate::engine::apply_mode(&prog(FIG1), Mode::Coinductive);
    let u = Universe::parse("0\n1\nz := [0|z]\n[1|z]", "u").unwrap();
    let s = semantics_suite(&co, &u);
    assert_eq!(s.gen_reg, s.coind);
}

fn check(text: &str, univ: &str, query: &str, budget: usize) -> (i32, String) {
    let u = Universe::parse(univ, "u").unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cmd_check(&prog(text), &u, query, &flags(budget), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn check_p_program() {
    let (code, out) = check(P_PROG, P_UNIV, "?- p(X).", 32);
    assert_eq!(code, EXIT_ANSWERS, "{out}");
    assert!(out.ends_with("PASS\n"));
    assert!(out.contains("engine: 1 answer(s)"));
    assert!(out.contains("regular: 1 answer(s)"));
}

#[test]
fn check_member() {
    let (code, out) = check(FIG1, "0\n1\n[]\n[1]\n[0,1]", "?- member(X,[0,1]).", 100);
    assert_eq!(code, EXIT_ANSWERS, "{out}");
    assert!(out.contains("engine: 2 answer(s), stopped once all regular answers were covered"), "{out}");
}

#[test]
fn check_detects_wrong_answers() {
    let p = prog(P_PROG);
    let u = Universe::parse(P_UNIV, "u").unwrap();
    let q = parse_query("?- p(X).").unwrap();
    // An answer binding X to z is unsound, and it misses X = omega.
    let mut bogus = crate::equations::SolvedForm::new();
    bogus.unify(&crate::term::Term::var("X"), &crate::term::Term::constant("z")).unwrap();
    let report = check_answers(&q.atoms, &p, &u, &[bogus]);
    assert!(!report.sound());
    assert!(!report.complete());
    let text = report.to_string();
    assert!(text.contains("+ X = z"), "{text}");
    assert!(text.contains("- X = omega"), "{text}");
    assert!(text.ends_with("FAIL"));
    // No answers at all: sound but incomplete.
    let report = check_answers(&q.atoms, &p, &u, &[]);
    assert!(report.sound() && !report.complete());
}

#[test]
fn instances_of_open_answers() {
    let u = Universe::parse(P_UNIV, "u").unwrap();
    let open = crate::equations::SolvedForm::new();
    let g: crate::semantics::GroundAnswer = [(crate::term::Var::new("X"), 0)].into_iter().collect();
    assert!(is_instance(&open, &g, &u));
    let mut cyclic = crate::equations::SolvedForm::new();
    let x = crate::term::Term::var("X");
    cyclic.unify(&x, &crate::term::Term::compound("s", vec![x.clone()])).unwrap();
    let omega = (0..u.len()).find(|&i| u.show(i) == "omega").unwrap();
    let z = (0..u.len()).find(|&i| u.show(i) == "z").unwrap();
    assert!(is_instance(&cyclic, &[(crate::term::Var::new("X"), omega)].into_iter().collect(), &u));
    assert!(!is_instance(&cyclic, &[(crate::term::Var::new("X"), z)].into_iter().collect(), &u));
}

#[test]
fn command_line_parsing() {
    let cli = Cli::try_parse_from(["colp", "run", "p.colp", "?- p(X).", "--mode", "coinductive", "--budget", "7"]).unwrap();
    match cli.command {
        Command::Run { flags, query, .. } => {
            assert_eq!(flags.mode, Mode::Coinductive);
            assert_eq!(flags.budget, 7);
            assert_eq!(flags.strategy, Strategy::Iddfs);
            assert_eq!(flags.prefer, Prefer::CoHyp);
            assert_eq!(query, "?- p(X).");
        }
        other => panic!("{other:?}"),
    }
    assert!(Cli::try_parse_from(["colp", "run", "p.colp", "q", "--mode", "lazy"]).is_err());
    assert!(Cli::try_parse_from(["colp", "semantics", "p.colp"]).is_err());
    assert!(Cli::try_parse_from(["colp", "check", "p.colp", "p.univ", "?- p(X).", "--prefer", "step"]).is_ok());
}

#[test]
fn missing_files_are_errors() {
    let cli = Cli::try_parse_from(["colp", "run", "/nonexistent.colp", "?- p."]).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(cli, &mut &b""[..], &mut out, &mut err), EXIT_ERROR);
}
