use super::*;
use crate::equations::{rt_equal, Equation};
use crate::syntax::{parse_program, parse_query, parse_term, print_answer, SourceProgram};
use crate::term::vars_of;

const LISTS: &str = "
all_pos([]).
all_pos([N|L]) :- N > 0, all_pos(L).
all_pos(_) :~.
member(X, [X|_]).
member(X, [Y|L]) :- X \\= Y, member(X, L).
maxElem([N], N).
maxElem([N|L], M) :- maxElem(L, M1), M is max(N, M1).
maxElem([N|_], N) :~.
";

const P_PROG: &str = "p(X) :- p(s(X)).\np(_) :~.";

fn prog(text: &str) -> ProgramPair {
    parse_program(&SourceProgram::new(text, "<test>")).unwrap()
}

fn run(text: &str, query: &str, cfg: EngineConfig) -> (Outcome, Vec<String>) {
    let q = parse_query(query).unwrap();
    let out = run_query(&prog(text), &q, &cfg).into_outcome();
    let shown = out.answers.iter().map(|a| print_answer(&a.solved, &q.variables())).collect();
    (out, shown)
}

fn cfg(budget: usize) -> EngineConfig {
    EngineConfig { budget, ..EngineConfig::default() }
}

#[test]
fn max_elem_of_cyclic_list() {
    let (out, shown) = run(LISTS, "?- L = [1,2|L], maxElem(L, M).", EngineConfig { max_answers: Some(1), ..cfg(1000) });
    assert_eq!(shown, vec!["L = [1,2|L]\nM = 2"]);
    assert_eq!(out.exhaustion, None);
    let (out, shown) = run(LISTS, "?- L = [1,2|L], maxElem(L, M).", cfg(64));
    assert_eq!(shown, vec!["L = [1,2|L]\nM = 2"]);
    assert_eq!(out.exhaustion, Some(Exhaustion::BudgetExhausted));
}

#[test]
fn only_the_infinite_term() {
    let (out, shown) = run(P_PROG, "?- p(X).", cfg(64));
    assert_eq!(shown, vec!["X = s(X)"]);
    assert_eq!(out.exhaustion, Some(Exhaustion::BudgetExhausted));
    let (out, shown) = run(P_PROG, "?- p(z).", cfg(64));
    assert!(shown.is_empty());
    assert_eq!(out.exhaustion, Some(Exhaustion::BudgetExhausted));
    assert!(out.levels.iter().all(|l| l.cut && l.new_answers == 0));
}

#[test]
fn trivial_goal() {
    let (out, shown) = run(LISTS, "?- true.", cfg(10));
    assert_eq!(shown, vec!["true"]);
    assert_eq!(out.exhaustion, Some(Exhaustion::Complete));
}

#[test]
fn inductive_member() {
    let (out, shown) = run(LISTS, "?- member(1, [0,1]).", EngineConfig { mode: Mode::Inductive, ..cfg(100) });
    assert_eq!(shown, vec!["true"]);
    assert_eq!(out.exhaustion, Some(Exhaustion::Complete));
    let (out, shown) = run(LISTS, "?- member(X, [0,1]).", EngineConfig { mode: Mode::Inductive, ..cfg(100) });
    assert_eq!(shown, vec!["X = 0", "X = 1"]);
    assert_eq!(out.exhaustion, Some(Exhaustion::Complete));
    let (out, _) = run(LISTS, "?- member(2, [0,1]).", EngineConfig { mode: Mode::Inductive, ..cfg(100) });
    assert!(out.answers.is_empty());
    assert_eq!(out.exhaustion, Some(Exhaustion::FinitelyFailed));
}

#[test]
fn member_of_zero_stream_diverges_in_flexible_mode() {
    let (out, _) = run(LISTS, "?- L = [0|L], member(1, L).", cfg(50));
    assert!(out.answers.is_empty());
    assert_eq!(out.exhaustion, Some(Exhaustion::BudgetExhausted));
}

#[test]
fn coinductive_mode_is_co_sld() {
    let (out, shown) = run(LISTS, "?- L = [0|L], member(1, L).", EngineConfig { mode: Mode::Coinductive, ..cfg(50) });
    assert_eq!(shown.first().map(String::as_str), Some("L = [0|L]"));
    assert!(!out.answers.is_empty());
}

#[test]
fn all_pos_of_streams() {
    let (_, shown) = run(LISTS, "?- L = [1,2|L], all_pos(L).", cfg(50));
    assert_eq!(shown.first().map(String::as_str), Some("L = [1,2|L]"));
    let (out, _) = run(LISTS, "?- L = [1,0|L], all_pos(L).", cfg(50));
    assert!(out.answers.is_empty());
    assert_eq!(out.exhaustion, Some(Exhaustion::FinitelyFailed));
}

#[test]
fn type_errors_are_diagnostics() {
    let (out, _) = run("q(X) :- X > 0.", "?- q(a).", cfg(10));
    assert!(out.answers.is_empty());
    assert_eq!(out.diagnostics.len(), 1);
    assert!(out.diagnostics[0].message.starts_with("type error"));
    let (out, _) = run("q(X, Y) :- X \\= Y.", "?- q(A, B).", cfg(10));
    assert!(out.answers.is_empty());
    assert_eq!(out.diagnostics.len(), 1);
}

#[test]
fn delayed_builtins_wait_for_bindings() {
    let (_, shown) = run("q(X) :- X > 1, r(X).\nr(1).\nr(2).\nr(3).", "?- q(X).", cfg(10));
    assert_eq!(shown, vec!["X = 2", "X = 3"]);
}

#[test]
fn dfs_without_dedup_repeats_nothing_here() {
    let (out, shown) = run(LISTS, "?- member(X, [0,1]).", EngineConfig { strategy: Strategy::Dfs, ..cfg(10) });
    assert_eq!(shown, vec!["X = 0", "X = 1"]);
    assert_eq!(out.exhaustion, Some(Exhaustion::Complete));
    assert_eq!(out.levels.len(), 1);
}

#[test]
fn iddfs_levels_double() {
    assert_eq!(budget_levels(&cfg(10)), vec![1, 2, 4, 8, 10]);
    assert_eq!(budget_levels(&cfg(8)), vec![1, 2, 4, 8]);
    assert_eq!(budget_levels(&cfg(0)), vec![1]);
}

#[test]
fn equations_grow() {
    let p = prog(LISTS);
    let e_in = EquationSet::from_pairs([(Term::var("L"), parse_term("[1,2|L]").unwrap())]);
    let goal = Goal::new(parse_query("maxElem(L, M)").unwrap().atoms, e_in.clone());
    let out = solve_goal(&p, &goal, &cfg(32)).into_outcome();
    assert!(!out.answers.is_empty());
    for a in &out.answers {
        assert!(e_in.is_subset(&a.eqs));
        assert!(vars_of(&goal.atoms).is_subset(&vars_of(&a.eqs)));
        assert!(a.eqs.contains(&Equation::new(Term::var("L"), parse_term("[1,2|L]").unwrap())));
    }
}

#[test]
fn unsolvable_initial_equations_fail() {
    let goal = Goal::new(Vec::new(), EquationSet::from_pairs([(Term::constant("a"), Term::constant("b"))]));
    let out = solve_goal(&prog(LISTS), &goal, &cfg(5)).into_outcome();
    assert!(out.answers.is_empty());
    assert_eq!(out.exhaustion, Some(Exhaustion::FinitelyFailed));
}

#[test]
fn trace_lines() {
    let q = parse_query("?- p(X).").unwrap();
    let mut lines = Vec::new();
    let p = prog(P_PROG);
    let cfg = EngineConfig { strategy: Strategy::Dfs, max_answers: Some(1), ..cfg(3) };
    let n = run_query(&p, &q, &cfg).with_trace(|l| lines.push(l.to_string())).count();
    assert_eq!(n, 1);
    assert_eq!(
        lines,
        vec![
            "STEP p(X) via clause 1",
            "  COHYP p(s(X#1)) ~ p(X)",
            "    STEP p(s(X#1)) via clause 1",
            "    STEP p(s(X#1)) via coclause 1",
            "EMPTY",
        ]
    );
}

#[test]
fn hypotheses_stay_within_equation_variables() {
    let p = Rc::new(apply_mode(&prog(LISTS), Mode::Flexible));
    let q = parse_query("?- L = [1,2|L], maxElem(L, M), all_pos(L), member(2, L).").unwrap();
    let mut m = Machine::new(p, &q.atoms, &EquationSet::new(), 24, Prefer::CoHyp, FreshCounter::new());
    let mut checked = 0;
    let mut violations = 0;
    m.on_state = Some(Box::new(|st: &machine::State| {
        let mut evars = std::collections::BTreeSet::new();
        for e in machine::iter(&st.eqs) {
            evars.extend(vars_of(e));
        }
        for f in machine::iter(&st.goals) {
            for h in machine::iter(&f.hyps) {
                if !vars_of(h).is_subset(&evars) {
                    violations += 1;
                }
            }
        }
        checked += 1;
    }));
    while m.next_answer() {}
    drop(m);
    assert!(checked > 10);
    assert_eq!(violations, 0);
}

#[test]
fn answers_satisfy_their_equations() {
    let (out, _) = run(LISTS, "?- L = [1,2|L], maxElem(L, M).", cfg(32));
    for a in &out.answers {
        let s = solve(&a.eqs).unwrap();
        let m1 = crate::equations::canonical_value(&s, &Term::var("M"));
        let m2 = crate::equations::canonical_value(&a.solved, &Term::var("M"));
        assert!(rt_equal(&m1, &m2));
    }
}

// Single-rule API.

#[test]
fn select_leftmost() {
    let atoms = parse_query("a, b, c").unwrap().atoms;
    assert_eq!(select_atom(&EngineState::new(atoms, EquationSet::new())), Some(0));
    assert_eq!(select_atom(&EngineState::new(Vec::new(), EquationSet::new())), None);
    let atoms = parse_query("X > 0, b").unwrap().atoms;
    assert_eq!(select_atom(&EngineState::new(atoms, EquationSet::new())), Some(1));
}

#[test]
fn step_adds_hypothesis_to_body_only() {
    let p = prog(LISTS);
    let atoms = parse_query("maxElem(L, M), all_pos(L)").unwrap().atoms;
    let st = EngineState::new(atoms.clone(), EquationSet::new());
    let next = step_rule(&st, 0, &p.clauses[5]).unwrap();
    assert_eq!(next.frames.len(), 3);
    assert_eq!(next.frames[0].atom.to_string(), "maxElem(L#1,M1#1)");
    assert_eq!(next.frames[0].hyps, vec![atoms[0].clone()]);
    assert_eq!(next.frames[1].atom.to_string(), "M#1 is max(N#1,M1#1)");
    assert!(next.frames[1].hyps.is_empty());
    assert_eq!(next.frames[2].atom, atoms[1]);
    assert!(next.frames[2].hyps.is_empty());
    // A fact adds no frames; a clash is no alternative.
    let st = EngineState::new(parse_query("maxElem([3], M)").unwrap().atoms, EquationSet::new());
    let next = step_rule(&st, 0, &p.clauses[4]).unwrap();
    assert!(next.frames.is_empty());
    assert_eq!(next.eqs.len(), 2);
    assert!(step_rule(&st, 0, &p.clauses[0]).is_none());
}

#[test]
fn co_hyp_runs_inner_sld() {
    let p = prog(LISTS);
    let eq_l = EquationSet::from_pairs([(Term::var("L"), parse_term("[1,2|L]").unwrap())]);
    let hyp = parse_query("maxElem(L, M)").unwrap().atoms.remove(0);
    let mut st = EngineState::new(parse_query("maxElem(L, M2)").unwrap().atoms, eq_l);
    st.frames[0].hyps.push(hyp.clone());
    let outs = co_hyp_rule(&p, &st, 0, &hyp, 16);
    assert!(!outs.is_empty());
    let s = solve(&outs[0].eqs).unwrap();
    let m = crate::equations::canonical_value(&s, &Term::var("M"));
    let m2 = crate::equations::canonical_value(&s, &Term::var("M2"));
    assert!(rt_equal(&m, &m2));
    assert!(outs[0].frames.is_empty());
    // No coclauses, no co-hyp.
    assert!(co_hyp_rule(&prog("p(X) :- p(X)."), &st, 0, &hyp, 16).is_empty());
}

#[test]
fn ltl_always_zero() {
    let ltl = "
sat([S|_], P) :- holds(S, P).
sat(W, always(P)) :- W = [_|W1], sat(W, P), sat(W1, always(P)).
sat(_, always(_)) :~.
holds(0, zero).
";
    let (_, shown) = run(ltl, "?- W0 = [0|W0], sat(W0, always(zero)).", cfg(32));
    assert_eq!(shown.first().map(String::as_str), Some("W0 = [0|W0]"));
}
