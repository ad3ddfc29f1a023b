//! Acceptance suite. Each test exercises one numbered criterion and
//! prints a pass line on success (visible with `--nocapture`):
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

mod common;

use common::{random_closed_term, random_open_term, term_size};
use lambdakit::boehm::{bt_compute, bt_le, BTNode, Seq};
use lambdakit::combinatory::{
    cl_to_lambda, closure_generates, compile, fix_curry, fix_turing, lib_lookup, make_pair,
    numeral_decode, numeral_encode, solve_equation,
};
use lambdakit::reduction::{
    beta_eta_eq, contract, find_redexes, normalize, reduces_to, solvable, Outcome, TraceStatus,
};
use lambdakit::syntax::{parse, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(src: &str) -> Term {
    parse(src, true).unwrap()
}

fn pv(src: &str) -> Term {
    parse(src, false).unwrap()
}

fn pass(n: u32, what: &str) {
    println!("ACCEPTANCE {n:2} PASS: {what}");
}

#[test]
fn criterion_01_one_point_basis() {
    assert!(beta_eta_eq(&p("X X X"), &p("K"), 200).is_positive());
    assert!(beta_eta_eq(&p("X (X X)"), &p("S"), 200).is_positive());
    pass(1, "X X X = K and X (X X) = S at fuel 200");
}

#[test]
fn criterion_02_i_derivation() {
    let trace = normalize(&p("S K K"), 100);
    assert_eq!(trace.status, TraceStatus::NormalForm);
    assert!(trace.final_term.alpha_eq(&pv(r"\x.x")));
    pass(2, "S K K normalizes to λx.x");
}

#[test]
fn criterion_03_turing_property() {
    let f = pv("f");
    let theta_f = fix_turing(&f);
    let unfolded = Term::app(f, theta_f.clone());
    match reduces_to(&theta_f, &unfolded, 10, 50) {
        Outcome::Positive(witness) => assert_eq!(witness.len(), 3, "expected a 2-step witness"),
        other => panic!("expected Positive, got {other:?}"),
    }
    pass(3, "Θ f ↠ f (Θ f) with a 2-step witness");
}

#[test]
fn criterion_04_fixed_point_theorem() {
    let f = pv("f");
    let fixed = fix_curry(&f);
    assert!(reduces_to(&fixed, &Term::app(f, fixed.clone()), 10, 50).is_positive());
    pass(4, "fix_curry(f) ↠ f (fix_curry(f))");
}

#[test]
fn criterion_05_solvability_examples() {
    assert!(beta_eta_eq(&fix_turing(&p("K I")), &p("I"), 500).is_positive());
    assert!(matches!(solvable(&p("Omega"), 10_000), Outcome::Unknown(_)));
    pass(5, "Θ (K I) = I while Ω stays unsolved at fuel 10000");
}

#[test]
fn criterion_06_pairs() {
    let pair = make_pair(&pv("a"), &pv("b"));
    let truth = lib_lookup("T").unwrap();
    let falsity = lib_lookup("F").unwrap();
    assert!(reduces_to(&Term::app(pair.clone(), truth), &pv("a"), 20, 50).is_positive());
    assert!(reduces_to(&Term::app(pair, falsity), &pv("b"), 20, 50).is_positive());
    pass(6, "[a,b] T ↠ a and [a,b] F ↠ b");
}

#[test]
fn criterion_07_numerals() {
    let truth = lib_lookup("T").unwrap();
    let falsity = lib_lookup("F").unwrap();
    let zero_test = lib_lookup("Zero").unwrap();
    let pred = lib_lookup("Pred").unwrap();
    let succ = lib_lookup("Succ").unwrap();
    assert!(beta_eta_eq(&Term::app(zero_test.clone(), numeral_encode(0)), &truth, 500).is_positive());
    for n in 0..=20u64 {
        let num = numeral_encode(n);
        assert_eq!(numeral_decode(&num, 500), Outcome::Positive(n));
        let next = numeral_encode(n + 1);
        assert!(
            beta_eta_eq(&Term::app(succ.clone(), num.clone()), &next, 500).is_positive(),
            "Succ law failed at {n}"
        );
        assert!(
            beta_eta_eq(&Term::app(zero_test.clone(), next.clone()), &falsity, 500).is_positive(),
            "Zero law failed at {n}"
        );
        assert!(
            beta_eta_eq(&Term::app(pred.clone(), next), &num, 500).is_positive(),
            "Pred law failed at {n}"
        );
    }
    pass(7, "numeral laws and decode∘encode identity for n ≤ 20");
}

// One biased step: mostly the rightmost redex (which sits inside a
// diverging argument for the demonstration term), occasionally uniform.
fn right_biased_step(term: &Term, rng: &mut ChaCha8Rng) -> Option<Term> {
    let redexes = find_redexes(term);
    if redexes.is_empty() {
        return None;
    }
    let pick = if rng.gen_bool(0.95) {
        redexes.len() - 1
    } else {
        rng.gen_range(0..redexes.len())
    };
    Some(contract(term, &redexes[pick]).unwrap())
}

#[test]
fn criterion_08_leftmost_normalizes_where_others_may_not() {
    let term = p(r"(\x.\y.x) I Omega");
    let trace = normalize(&term, 10);
    assert_eq!(trace.status, TraceStatus::NormalForm);
    assert!(trace.final_term.alpha_eq(&p("I")));

    let mut exhausted = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut current = term.clone();
        let mut finished = false;
        for _ in 0..50 {
            match right_biased_step(&current, &mut rng) {
                Some(next) => current = next,
                None => {
                    finished = true;
                    break;
                }
            }
        }
        if !finished {
            exhausted += 1;
        }
    }
    assert!(exhausted >= 1, "no right-biased run exhausted its fuel");
    pass(
        8,
        "F_l reaches I in 2 steps; right-biased random runs can diverge",
    );
}

// Bounded random-strategy run; None when fuel ran out or the reduct
// grew past the size cap without reaching a normal form.
fn random_run(term: &Term, fuel: u64, seed: u64) -> Option<Term> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = term.clone();
    for _ in 0..fuel {
        if term_size(&current) > 20_000 {
            return None;
        }
        match lambdakit::reduction::random_strategy_step(&current, &mut rng) {
            Some((next, _)) => current = next,
            None => return Some(current),
        }
    }
    if find_redexes(&current).is_empty() {
        Some(current)
    } else {
        None
    }
}

fn leftmost_run(term: &Term, fuel: u64) -> Option<Term> {
    let mut current = term.clone();
    for _ in 0..fuel {
        if term_size(&current) > 20_000 {
            return None;
        }
        match lambdakit::reduction::leftmost_step(&current) {
            Some((next, _)) => current = next,
            None => return Some(current),
        }
    }
    if find_redexes(&current).is_empty() {
        Some(current)
    } else {
        None
    }
}

#[test]
fn criterion_09_desk_scale_confluence() {
    for i in 0..200u64 {
        let term = random_closed_term(1000 + i, 12);
        let mut finals: Vec<Term> = Vec::new();
        if let Some(nf) = leftmost_run(&term, 500) {
            finals.push(nf);
        }
        for seed in 0..5u64 {
            if let Some(nf) = random_run(&term, 500, 31 * i + seed) {
                finals.push(nf);
            }
        }
        for pair in finals.windows(2) {
            assert!(
                pair[0].alpha_eq(&pair[1]),
                "confluence violated for {term}: {} vs {}",
                pair[0],
                pair[1]
            );
        }
    }
    pass(9, "200 closed terms: all terminating runs agree up to α");
}

#[test]
fn criterion_10_compile_soundness() {
    let mut tested = 0;
    let mut seed = 0u64;
    while tested < 100 {
        seed += 1;
        let term = random_open_term(5000 + seed, 10, &["a", "b"]);
        let trace = normalize(&term, 300);
        if trace.status != TraceStatus::NormalForm {
            continue;
        }
        let back = cl_to_lambda(&compile(&term));
        assert!(
            beta_eta_eq(&back, &term, 1000).is_positive(),
            "compile unsound for {term}"
        );
        tested += 1;
    }
    pass(10, "100 normalizing terms survive the compile round-trip");
}

#[test]
fn criterion_11_boehm_trees() {
    let omega = bt_compute(&p("Omega"), 4, 1000);
    assert!(matches!(
        omega.nodes.get(&Seq::empty()),
        Some(BTNode::Unresolved { .. })
    ));

    let identity = bt_compute(&p("I"), 2, 10);
    match identity.nodes.get(&Seq::empty()) {
        Some(BTNode::Labeled(l)) => {
            assert_eq!(l.binders.len(), 1);
            assert_eq!(l.head, l.binders[0]);
            assert_eq!(l.arity, 0);
        }
        other => panic!("unexpected root for I: {other:?}"),
    }

    let theta = bt_compute(&p("Theta"), 3, 200);
    for path in [Seq(vec![]), Seq(vec![0]), Seq(vec![0, 0])] {
        match theta.nodes.get(&path) {
            Some(BTNode::Labeled(l)) => {
                assert_eq!(l.arity, 1);
                if path.lh() == 0 {
                    assert_eq!(l.binders.len(), 1);
                    assert_eq!(l.head, l.binders[0]);
                } else {
                    assert!(l.binders.is_empty());
                    assert_eq!(l.head, "y");
                }
            }
            other => panic!("unexpected Θ node at {path}: {other:?}"),
        }
    }

    for i in 0..200u64 {
        let term = random_closed_term(1000 + i, 12);
        let (d, f) = (3, 50);
        assert!(
            bt_le(&bt_compute(&term, d, f), &bt_compute(&term, d + 2, 2 * f)),
            "monotonicity failed for {term}"
        );
    }
    pass(11, "Ω unresolved, I and Θ shaped as expected, approximants monotone");
}

#[test]
fn criterion_12_basis_search() {
    let x = lib_lookup("X").unwrap();
    let names = vec!["X".to_string()];
    match closure_generates(&[x.clone()], &p("K"), 3, 200).unwrap() {
        Outcome::Positive(w) => assert_eq!(w.render(&names), "X X X"),
        other => panic!("expected Positive for K, got {other:?}"),
    }
    match closure_generates(&[x], &p("S"), 3, 200).unwrap() {
        Outcome::Positive(w) => assert_eq!(w.render(&names), "X (X X)"),
        other => panic!("expected Positive for S, got {other:?}"),
    }
    pass(12, "basis search finds X X X for K and X (X X) for S");
}

#[test]
fn criterion_13_recursive_equation() {
    let f = solve_equation(&pv(r"\f.\x.\y.f y x f")).unwrap();
    let lhs = Term::apps(f.clone(), [pv("x"), pv("y")]);
    let rhs = Term::apps(f.clone(), [pv("y"), pv("x"), f.clone()]);
    assert!(reduces_to(&lhs, &rhs, 50, 500).is_positive());
    pass(13, "F := Θ (λf.λx.λy.f y x f) satisfies F x y ↠ F y x F");
}
