//! Shared generators for randomized tests: proptest strategies over
//! terms and a seeded generator for closed terms.

#![allow(dead_code)]

use lambdakit::syntax::Term;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: &[&str] = &["a", "b", "c", "x", "y", "z"];

pub fn arb_name() -> impl Strategy<Value = String> {
    prop::sample::select(NAMES).prop_map(String::from)
}

/// Arbitrary terms up to roughly `nodes` AST nodes.
pub fn arb_term(nodes: u32) -> BoxedStrategy<Term> {
    let leaf = arb_name().prop_map(Term::var).boxed();
    leaf.prop_recursive(nodes / 2, nodes, 2, |inner| {
        prop_oneof![
            (arb_name(), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            (inner.clone(), inner).prop_map(|(f, a)| Term::app(f, a)),
        ]
        .boxed()
    })
    .boxed()
}

pub fn term_size(t: &Term) -> usize {
    match t {
        Term::Var(_) => 1,
        Term::Lam(_, b) => 1 + term_size(b),
        Term::App(f, a) => 1 + term_size(f) + term_size(a),
    }
}

/// A seeded random term whose free variables all come from `ctx`
/// (closed when `ctx` starts empty), with at most `max_size` nodes.
pub fn random_term_in_ctx(rng: &mut ChaCha8Rng, ctx: &mut Vec<String>, budget: usize) -> Term {
    let can_var = !ctx.is_empty();
    let pick_var = budget <= 1 || (can_var && rng.gen_bool(0.4));
    if pick_var && can_var {
        let i = rng.gen_range(0..ctx.len());
        return Term::var(ctx[i].clone());
    }
    if !can_var || rng.gen_bool(0.5) || budget < 3 {
        // abstraction
        let name = format!("v{}", ctx.len());
        ctx.push(name.clone());
        let body = random_term_in_ctx(rng, ctx, budget.saturating_sub(1));
        ctx.pop();
        Term::lam(name, body)
    } else {
        let left_budget = rng.gen_range(1..budget - 1);
        let f = random_term_in_ctx(rng, ctx, left_budget);
        let a = random_term_in_ctx(rng, ctx, budget - 1 - left_budget);
        Term::app(f, a)
    }
}

pub fn random_closed_term(seed: u64, max_size: usize) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_term_in_ctx(&mut rng, &mut Vec::new(), max_size)
}

/// Seeded random term that may mention the free variables in `frees`.
pub fn random_open_term(seed: u64, max_size: usize, frees: &[&str]) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ctx: Vec<String> = frees.iter().map(|s| s.to_string()).collect();
    random_term_in_ctx(&mut rng, &mut ctx, max_size)
}
