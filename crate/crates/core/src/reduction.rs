//! Redex discovery, single contractions, the leftmost strategy, and
//! fuel-bounded queries built on it: normalization, head normalization,
//! solvability, beta-eta equality, and bounded reachability.

use crate::syntax::{fresh_var, Step, Term, TermPath};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RedexKind {
    Beta,
    Eta,
}

/// A redex occurrence: where it sits and which rule applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redex {
    pub path: TermPath,
    pub kind: RedexKind,
}

/// Result of a fuel-bounded, semi-decidable query. `Unknown` never
/// asserts nonexistence; `Negative` is produced only when a finite
/// certificate exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Positive(T),
    Negative,
    Unknown(u64),
}

impl<T> Outcome<T> {
    pub fn is_positive(&self) -> bool {
        matches!(self, Outcome::Positive(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStatus {
    NormalForm,
    FuelExhausted,
}

/// One recorded contraction: the term before the step and the redex
/// that was contracted in it.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub term: Term,
    pub redex: Redex,
}

/// A leftmost-reduction run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub final_term: Term,
    pub status: TraceStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("path {path} does not address a {kind:?} redex")]
pub struct InvalidRedex {
    pub path: TermPath,
    pub kind: RedexKind,
}

fn eta_body(term: &Term) -> Option<&Term> {
    // λx.M x with x not free in M
    if let Term::Lam(x, body) = term {
        if let Term::App(m, arg) = &**body {
            if matches!(&**arg, Term::Var(y) if y == x) && !m.free_vars().contains(x) {
                return Some(m);
            }
        }
    }
    None
}

/// All beta- and eta-redex occurrences, ordered by the textual position
/// of each redex's λ in the printed term. That order coincides with a
/// preorder traversal (Fun before Arg, binder before body); when a beta
/// redex and an eta redex share the same λ, the beta redex comes first.
pub fn find_redexes(term: &Term) -> Vec<Redex> {
    fn walk(t: &Term, path: &mut Vec<Step>, out: &mut Vec<Redex>) {
        match t {
            Term::Var(_) => {}
            Term::Lam(_, body) => {
                if eta_body(t).is_some() {
                    out.push(Redex {
                        path: TermPath(path.clone()),
                        kind: RedexKind::Eta,
                    });
                }
                path.push(Step::Body);
                walk(body, path, out);
                path.pop();
            }
            Term::App(f, a) => {
                if matches!(**f, Term::Lam(..)) {
                    // The λ of this beta redex is the first λ of the
                    // function part, so it precedes everything below.
                    out.push(Redex {
                        path: TermPath(path.clone()),
                        kind: RedexKind::Beta,
                    });
                }
                path.push(Step::Fun);
                walk(f, path, out);
                path.pop();
                path.push(Step::Arg);
                walk(a, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(term, &mut Vec::new(), &mut out);
    out
}

/// Contracts the given redex in place, leaving the context intact.
pub fn contract(term: &Term, redex: &Redex) -> Result<Term, InvalidRedex> {
    let invalid = || InvalidRedex {
        path: redex.path.clone(),
        kind: redex.kind,
    };
    let sub = term.at(&redex.path).ok_or_else(invalid)?;
    let contracted = match redex.kind {
        RedexKind::Beta => match sub {
            Term::App(f, a) => match &**f {
                Term::Lam(x, body) => body.substitute(x, a),
                _ => return Err(invalid()),
            },
            _ => return Err(invalid()),
        },
        RedexKind::Eta => eta_body(sub).cloned().ok_or_else(invalid)?,
    };
    term.replace_at(&redex.path, contracted).ok_or_else(invalid)
}

pub fn is_normal_form(term: &Term) -> bool {
    find_redexes(term).is_empty()
}

/// The leftmost one-step strategy F_l: contracts the beta redex with
/// the textually leftmost λ, or the leftmost eta redex if no beta redex
/// exists. Returns `None` on normal forms.
pub fn leftmost_step(term: &Term) -> Option<(Term, Redex)> {
    let redexes = find_redexes(term);
    let redex = redexes
        .iter()
        .find(|r| r.kind == RedexKind::Beta)
        .or_else(|| redexes.first())?
        .clone();
    let next = contract(term, &redex).expect("redex from find_redexes is valid");
    Some((next, redex))
}

/// Iterates the leftmost strategy for at most `fuel` contractions.
pub fn normalize(term: &Term, fuel: u64) -> Trace {
    let mut current = term.clone();
    let mut steps = Vec::new();
    for _ in 0..fuel {
        match leftmost_step(&current) {
            Some((next, redex)) => {
                steps.push(TraceStep {
                    term: current,
                    redex,
                });
                current = next;
            }
            None => {
                return Trace {
                    steps,
                    final_term: current,
                    status: TraceStatus::NormalForm,
                }
            }
        }
    }
    let status = if is_normal_form(&current) {
        TraceStatus::NormalForm
    } else {
        TraceStatus::FuelExhausted
    };
    Trace {
        steps,
        final_term: current,
        status,
    }
}

/// True iff the term has shape λx1…λxn.x M1…Mm with a variable in head
/// position (m, n ≥ 0).
pub fn is_hnf(term: &Term) -> bool {
    let mut t = term;
    while let Term::Lam(_, body) = t {
        t = body;
    }
    while let Term::App(f, _) = t {
        t = f;
    }
    matches!(t, Term::Var(_))
}

/// Runs the leftmost strategy until a head normal form appears.
/// `Positive` carries the principal hnf; head normal forms are only
/// semi-decidable, so the negative case is always `Unknown`.
pub fn head_normalize(term: &Term, fuel: u64) -> Outcome<Term> {
    let mut current = term.clone();
    let mut spent = 0;
    loop {
        if is_hnf(&current) {
            return Outcome::Positive(current);
        }
        if spent >= fuel {
            return Outcome::Unknown(spent);
        }
        match leftmost_step(&current) {
            Some((next, _)) => {
                current = next;
                spent += 1;
            }
            // Normal form that is not an hnf cannot happen (a normal
            // form has a variable head), but fuel-insensitive safety:
            None => return Outcome::Unknown(spent),
        }
    }
}

/// Closes a term over its free variables, binding them in name order.
pub fn close_over_free_vars(term: &Term) -> Term {
    term.free_vars()
        .into_iter()
        .rev()
        .fold(term.clone(), |acc, x| Term::lam(x, acc))
}

/// Solvability test: a term is solvable iff its closure has an hnf.
pub fn solvable(term: &Term, fuel: u64) -> Outcome<Term> {
    head_normalize(&close_over_free_vars(term), fuel)
}

/// Beta-eta convertibility through common normal forms. `Positive`
/// carries the shared normal form; `Negative` certifies distinctness by
/// two distinct normal forms; otherwise `Unknown`.
pub fn beta_eta_eq(a: &Term, b: &Term, fuel: u64) -> Outcome<Term> {
    let ta = normalize(a, fuel);
    let tb = normalize(b, fuel);
    match (ta.status, tb.status) {
        (TraceStatus::NormalForm, TraceStatus::NormalForm) => {
            if ta.final_term.alpha_eq(&tb.final_term) {
                Outcome::Positive(ta.final_term)
            } else {
                Outcome::Negative
            }
        }
        _ => Outcome::Unknown((ta.steps.len() + tb.steps.len()) as u64),
    }
}

/// Bounded breadth-first search for `from ↠ to`: at most `fuel` node
/// expansions and `width` frontier entries. `Positive` carries the
/// witnessing term sequence from `from` to the reduct alpha-equal to
/// `to`. States are deduplicated by alpha-canonical form.
pub fn reduces_to(from: &Term, to: &Term, fuel: u64, width: usize) -> Outcome<Vec<Term>> {
    let mut queue: VecDeque<Vec<Term>> = VecDeque::new();
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(from.canonical_key());
    queue.push_back(vec![from.clone()]);
    let mut expansions = 0;
    while let Some(path) = queue.pop_front() {
        let current = path.last().expect("paths are nonempty");
        if current.alpha_eq(to) {
            return Outcome::Positive(path);
        }
        if expansions >= fuel {
            // out of budget: keep draining the queue for equality
            // checks, but stop generating successors
            continue;
        }
        expansions += 1;
        for redex in find_redexes(current) {
            let next = contract(current, &redex).expect("redex is valid");
            if seen.insert(next.canonical_key()) && queue.len() < width {
                let mut extended = path.clone();
                extended.push(next);
                queue.push_back(extended);
            }
        }
    }
    Outcome::Unknown(expansions)
}

/// Contracts a uniformly chosen redex; deterministic given the RNG
/// state. Test oracle for confluence and normalization experiments.
pub fn random_strategy_step(term: &Term, rng: &mut impl Rng) -> Option<(Term, Redex)> {
    let redexes = find_redexes(term);
    let redex = redexes.choose(rng)?.clone();
    let next = contract(term, &redex).expect("redex is valid");
    Some((next, redex))
}

/// Renames all binders to the deterministic fresh scheme over the
/// term's free variables, so printed traces are stable.
pub fn alpha_canonicalize(term: &Term) -> Term {
    fn go(t: &Term, used: &mut crate::syntax::VarSet) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::App(f, a) => Term::app(go(f, used), go(a, used)),
            Term::Lam(x, body) => {
                let fresh = fresh_var(used, x);
                used.insert(fresh.clone());
                let body = if fresh == *x {
                    (**body).clone()
                } else {
                    body.substitute(x, &Term::var(fresh.clone()))
                };
                let result = Term::lam(fresh.clone(), go(&body, used));
                used.remove(&fresh);
                result
            }
        }
    }
    let mut used = term.free_vars();
    go(term, &mut used)
}
