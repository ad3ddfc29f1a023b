//! Combinatory logic side of the workbench: the standard combinator
//! library, bracket abstraction into {S, K, I}, CL reduction, the
//! standard numeral system, pairs, fixed-point combinators, and
//! applicative-closure basis search.

use crate::reduction::{beta_eta_eq, normalize, Outcome, TraceStatus};
use crate::syntax::{fresh_var, parse, Term};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

/// A combinatory-logic term over the atoms K, S, I plus free variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CLTerm {
    K,
    S,
    I,
    FreeVar(String),
    App(Box<CLTerm>, Box<CLTerm>),
}

impl CLTerm {
    pub fn app(fun: CLTerm, arg: CLTerm) -> CLTerm {
        CLTerm::App(Box::new(fun), Box::new(arg))
    }

    fn mentions(&self, var: &str) -> bool {
        match self {
            CLTerm::FreeVar(x) => x == var,
            CLTerm::App(f, a) => f.mentions(var) || a.mentions(var),
            _ => false,
        }
    }
}

impl fmt::Display for CLTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &CLTerm, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
            match t {
                CLTerm::K => write!(f, "K"),
                CLTerm::S => write!(f, "S"),
                CLTerm::I => write!(f, "I"),
                CLTerm::FreeVar(x) => write!(f, "{x}"),
                CLTerm::App(fun, arg) => {
                    if parens {
                        write!(f, "(")?;
                    }
                    go(fun, f, false)?;
                    write!(f, " ")?;
                    go(arg, f, true)?;
                    if parens {
                        write!(f, ")")
                    } else {
                        Ok(())
                    }
                }
            }
        }
        go(self, f, false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown constant '{0}'")]
pub struct UnknownConstant(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("recursive equation requires an abstraction λf.body")]
pub struct NotAnAbstraction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("basis must be nonempty")]
pub struct EmptyBasis;

/// Names and definitions of the standard combinator library, in the
/// spellings the CLI accepts.
const STDLIB_SOURCES: &[(&str, &str)] = &[
    ("S", r"\x.\y.\z.x z (y z)"),
    ("K", r"\x.\y.x"),
    ("I", r"\x.x"),
    ("T", r"\x.\y.x"),
    ("F", r"\x.\y.y"),
    ("omega", r"\x.x x"),
    ("Omega", r"(\x.x x) (\x.x x)"),
    // X ≡ λx.x K S K with K and S expanded
    ("X", r"\x.x (\a.\b.a) (\a.\b.\c.a c (b c)) (\a.\b.a)"),
    ("Theta", r"(\x.\y.y (x x y)) (\x.\y.y (x x y))"),
    ("Ycurry", r"\f.(\x.f (x x)) (\x.f (x x))"),
    ("Zero", r"\x.x (\a.\b.a)"),
    ("Succ", r"\x.\p.p (\a.\b.b) x"),
    ("Pred", r"\x.x (\a.\b.b)"),
    ("Pair", r"\x.\y.\z.z x y"),
];

fn stdlib() -> &'static BTreeMap<&'static str, Term> {
    static TABLE: OnceLock<BTreeMap<&'static str, Term>> = OnceLock::new();
    TABLE.get_or_init(|| {
        STDLIB_SOURCES
            .iter()
            .map(|(name, src)| (*name, parse(src, false).expect("stdlib sources parse")))
            .collect()
    })
}

/// The spellings accepted by `lib_lookup` and constant expansion.
pub fn lib_names() -> Vec<&'static str> {
    stdlib().keys().copied().collect()
}

/// Looks up a standard combinator by name, returning its defining term.
pub fn lib_lookup(name: &str) -> Result<Term, UnknownConstant> {
    stdlib()
        .get(name)
        .cloned()
        .ok_or_else(|| UnknownConstant(name.to_string()))
}

/// Bracket abstraction: compiles a lambda term into {S, K, I} applied
/// to free-variable atoms. The K rule is tried before the S rule.
pub fn compile(term: &Term) -> CLTerm {
    fn bracket(var: &str, t: CLTerm) -> CLTerm {
        match t {
            CLTerm::FreeVar(ref x) if x == var => CLTerm::I,
            t if !t.mentions(var) => CLTerm::app(CLTerm::K, t),
            CLTerm::App(p, q) => CLTerm::app(
                CLTerm::app(CLTerm::S, bracket(var, *p)),
                bracket(var, *q),
            ),
            _ => unreachable!("atoms not mentioning var are covered by the K rule"),
        }
    }
    match term {
        Term::Var(x) => CLTerm::FreeVar(x.clone()),
        Term::App(f, a) => CLTerm::app(compile(f), compile(a)),
        Term::Lam(x, body) => bracket(x, compile(body)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClStatus {
    NormalForm,
    FuelExhausted,
}

fn cl_contract_head(t: &CLTerm) -> Option<CLTerm> {
    match t {
        // I P → P
        CLTerm::App(f, p) if **f == CLTerm::I => Some((**p).clone()),
        CLTerm::App(fp, q) => match &**fp {
            // K P Q → P
            CLTerm::App(k, p) if **k == CLTerm::K => {
                let _ = q;
                Some((**p).clone())
            }
            // S P Q R → P R (Q R)
            CLTerm::App(sp, qq) => match &**sp {
                CLTerm::App(s, p) if **s == CLTerm::S => Some(CLTerm::app(
                    CLTerm::app((**p).clone(), (**q).clone()),
                    CLTerm::app((**qq).clone(), (**q).clone()),
                )),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

fn cl_step(t: &CLTerm) -> Option<CLTerm> {
    if let Some(r) = cl_contract_head(t) {
        return Some(r);
    }
    if let CLTerm::App(f, a) = t {
        if let Some(rf) = cl_step(f) {
            return Some(CLTerm::app(rf, (**a).clone()));
        }
        if let Some(ra) = cl_step(a) {
            return Some(CLTerm::app((**f).clone(), ra));
        }
    }
    None
}

/// Leftmost-outermost reduction by the CL axioms K P Q → P,
/// S P Q R → P R (Q R), and I P → P.
pub fn cl_reduce(term: &CLTerm, fuel: u64) -> (CLTerm, ClStatus) {
    let mut current = term.clone();
    for _ in 0..fuel {
        match cl_step(&current) {
            Some(next) => current = next,
            None => return (current, ClStatus::NormalForm),
        }
    }
    let status = if cl_step(&current).is_none() {
        ClStatus::NormalForm
    } else {
        ClStatus::FuelExhausted
    };
    (current, status)
}

/// Maps CL atoms back to their defining lambda terms, homomorphically.
pub fn cl_to_lambda(term: &CLTerm) -> Term {
    match term {
        CLTerm::K => lib_lookup("K").unwrap(),
        CLTerm::S => lib_lookup("S").unwrap(),
        CLTerm::I => lib_lookup("I").unwrap(),
        CLTerm::FreeVar(x) => Term::var(x.clone()),
        CLTerm::App(f, a) => Term::app(cl_to_lambda(f), cl_to_lambda(a)),
    }
}

/// The ordered pair [a, b] ≡ λx.x a b with x fresh for a and b.
pub fn make_pair(a: &Term, b: &Term) -> Term {
    let mut avoid = a.free_vars();
    avoid.extend(b.free_vars());
    let x = fresh_var(&avoid, "x");
    Term::lam(
        x.clone(),
        Term::app(Term::app(Term::var(x), a.clone()), b.clone()),
    )
}

/// Standard numerals: ⌜0⌝ ≡ I, ⌜n+1⌝ ≡ normal form of Succ ⌜n⌝.
pub fn numeral_encode(n: u64) -> Term {
    let succ = lib_lookup("Succ").unwrap();
    let mut numeral = lib_lookup("I").unwrap();
    for _ in 0..n {
        let trace = normalize(&Term::app(succ.clone(), numeral), 10_000);
        debug_assert_eq!(trace.status, TraceStatus::NormalForm);
        numeral = trace.final_term;
    }
    numeral
}

/// Counts Pred applications until the zero test answers true. Returns
/// `Unknown` when fuel runs out or a zero test is inconclusive (or
/// rejects both T and F, i.e. the input is not a numeral).
pub fn numeral_decode(term: &Term, fuel: u64) -> Outcome<u64> {
    let zero_test = lib_lookup("Zero").unwrap();
    let pred = lib_lookup("Pred").unwrap();
    let truth = lib_lookup("T").unwrap();
    let falsity = lib_lookup("F").unwrap();
    let mut current = term.clone();
    for n in 0..fuel {
        let tested = Term::app(zero_test.clone(), current.clone());
        match beta_eta_eq(&tested, &truth, fuel) {
            Outcome::Positive(_) => return Outcome::Positive(n),
            Outcome::Unknown(spent) => return Outcome::Unknown(spent),
            Outcome::Negative => match beta_eta_eq(&tested, &falsity, fuel) {
                Outcome::Positive(_) => {
                    current = normalize(&Term::app(pred.clone(), current), fuel).final_term;
                }
                // Neither T nor F: not a numeral, but only semi-decided.
                _ => return Outcome::Unknown(n),
            },
        }
    }
    Outcome::Unknown(fuel)
}

/// Curry's fixed point W W with W ≡ λx.f (x x); satisfies
/// fix_curry(f) ↠ f (fix_curry(f)).
pub fn fix_curry(f: &Term) -> Term {
    let x = fresh_var(&f.free_vars(), "x");
    let w = Term::lam(
        x.clone(),
        Term::app(f.clone(), Term::app(Term::var(x.clone()), Term::var(x))),
    );
    Term::app(w.clone(), w)
}

/// Turing's fixed point Θ f, with Θ f ↠ f (Θ f) in two beta steps.
pub fn fix_turing(f: &Term) -> Term {
    Term::app(lib_lookup("Theta").unwrap(), f.clone())
}

/// Solves F = functional F for a functional λf.body by taking
/// F ≡ Θ functional.
pub fn solve_equation(functional: &Term) -> Result<Term, NotAnAbstraction> {
    match functional {
        Term::Lam(..) => Ok(fix_turing(functional)),
        _ => Err(NotAnAbstraction),
    }
}

/// An applicative combination over a basis, by index into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisExpr {
    Atom(usize),
    App(Box<BasisExpr>, Box<BasisExpr>),
}

impl BasisExpr {
    pub fn to_term(&self, basis: &[Term]) -> Term {
        match self {
            BasisExpr::Atom(i) => basis[*i].clone(),
            BasisExpr::App(f, a) => Term::app(f.to_term(basis), a.to_term(basis)),
        }
    }

    /// Renders the shape with the given atom names, e.g. "X (X X)".
    pub fn render(&self, names: &[String]) -> String {
        fn go(e: &BasisExpr, names: &[String], parens: bool, out: &mut String) {
            match e {
                BasisExpr::Atom(i) => out.push_str(&names[*i]),
                BasisExpr::App(f, a) => {
                    if parens {
                        out.push('(');
                    }
                    go(f, names, false, out);
                    out.push(' ');
                    go(a, names, true, out);
                    if parens {
                        out.push(')');
                    }
                }
            }
        }
        let mut out = String::new();
        go(self, names, false, &mut out);
        out
    }
}

/// Searches the applicative closure of `basis` for a term beta-eta
/// equal to `target`, enumerating by ascending application-node count
/// up to `size_bound`. Positive carries the first witness in
/// enumeration order.
pub fn closure_generates(
    basis: &[Term],
    target: &Term,
    size_bound: usize,
    fuel: u64,
) -> Result<Outcome<BasisExpr>, EmptyBasis> {
    if basis.is_empty() {
        return Err(EmptyBasis);
    }
    // by_size[k] holds every shape with exactly k application nodes.
    let mut by_size: Vec<Vec<BasisExpr>> = Vec::new();
    by_size.push((0..basis.len()).map(BasisExpr::Atom).collect());
    let mut tried = 0u64;
    for size in 0..=size_bound {
        if size > 0 {
            let mut shapes = Vec::new();
            for left_size in 0..size {
                let right_size = size - 1 - left_size;
                for left in &by_size[left_size] {
                    for right in &by_size[right_size] {
                        shapes.push(BasisExpr::App(
                            Box::new(left.clone()),
                            Box::new(right.clone()),
                        ));
                    }
                }
            }
            by_size.push(shapes);
        }
        for shape in &by_size[size] {
            tried += 1;
            if beta_eta_eq(&shape.to_term(basis), target, fuel).is_positive() {
                return Ok(Outcome::Positive(shape.clone()));
            }
        }
    }
    Ok(Outcome::Unknown(tried))
}

/// Assembles the standard numeral system quadruple.
pub fn numeral_system() -> (Term, Term, Term, Term) {
    (
        lib_lookup("I").unwrap(),
        lib_lookup("Succ").unwrap(),
        lib_lookup("Zero").unwrap(),
        lib_lookup("Pred").unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduces_to;
    use crate::syntax::VarSet;

    fn p(s: &str) -> Term {
        parse(s, true).unwrap()
    }

    fn pv(s: &str) -> Term {
        parse(s, false).unwrap()
    }

    #[test]
    fn lib_lookup_examples() {
        assert!(lib_lookup("K").unwrap().alpha_eq(&pv(r"\x.\y.x")));
        assert!(lib_lookup("Omega")
            .unwrap()
            .alpha_eq(&pv(r"(\x.x x) (\x.x x)")));
        assert!(lib_lookup("Theta")
            .unwrap()
            .alpha_eq(&pv(r"(\x.\y.y (x x y)) (\x.\y.y (x x y))")));
        assert!(lib_lookup("Q").is_err());
    }

    #[test]
    fn stdlib_entries_are_combinators() {
        for name in lib_names() {
            assert!(
                lib_lookup(name).unwrap().is_combinator(),
                "{name} is not closed"
            );
        }
    }

    #[test]
    fn x_is_one_point_basis_element() {
        // X ≡ λx.x K S K is closed and X X X = K, X (X X) = S
        let x = lib_lookup("X").unwrap();
        assert!(x.is_combinator());
        assert!(beta_eta_eq(&p("X X X"), &p("K"), 200).is_positive());
        assert!(beta_eta_eq(&p("X (X X)"), &p("S"), 200).is_positive());
    }

    #[test]
    fn compile_examples() {
        assert_eq!(compile(&pv(r"\x.x")), CLTerm::I);
        assert_eq!(
            compile(&pv(r"\x.y")),
            CLTerm::app(CLTerm::K, CLTerm::FreeVar("y".into()))
        );
        // λx.λy.x → S (K K) I
        assert_eq!(
            compile(&pv(r"\x.\y.x")),
            CLTerm::app(
                CLTerm::app(CLTerm::S, CLTerm::app(CLTerm::K, CLTerm::K)),
                CLTerm::I
            )
        );
        // and the result still behaves like K
        let back = cl_to_lambda(&compile(&pv(r"\x.\y.x")));
        assert!(beta_eta_eq(&back, &p("K"), 500).is_positive());
    }

    #[test]
    fn cl_reduce_axioms() {
        let a = CLTerm::FreeVar("a".into());
        let b = CLTerm::FreeVar("b".into());
        let c = CLTerm::FreeVar("c".into());

        let kab = CLTerm::app(CLTerm::app(CLTerm::K, a.clone()), b.clone());
        assert_eq!(cl_reduce(&kab, 10), (a.clone(), ClStatus::NormalForm));

        let sabc = CLTerm::app(
            CLTerm::app(CLTerm::app(CLTerm::S, a.clone()), b.clone()),
            c.clone(),
        );
        let expected = CLTerm::app(
            CLTerm::app(a.clone(), c.clone()),
            CLTerm::app(b.clone(), c.clone()),
        );
        assert_eq!(cl_reduce(&sabc, 10), (expected, ClStatus::NormalForm));

        // S K K a → a, mirroring I = S K K
        let skka = CLTerm::app(
            CLTerm::app(CLTerm::app(CLTerm::S, CLTerm::K), CLTerm::K),
            a.clone(),
        );
        assert_eq!(cl_reduce(&skka, 10), (a, ClStatus::NormalForm));
    }

    #[test]
    fn cl_display_minimal_parens() {
        let t = compile(&pv(r"\x.\y.x"));
        assert_eq!(t.to_string(), "S (K K) I");
    }

    #[test]
    fn compile_omega_roundtrip() {
        let omega = p("omega");
        let back = cl_to_lambda(&compile(&omega));
        assert!(beta_eta_eq(&back, &omega, 500).is_positive());
    }

    #[test]
    fn pair_projections() {
        let pair = make_pair(&pv("m"), &pv("n"));
        let truth = lib_lookup("T").unwrap();
        let falsity = lib_lookup("F").unwrap();
        assert!(reduces_to(&Term::app(pair.clone(), truth), &pv("m"), 20, 50).is_positive());
        assert!(reduces_to(&Term::app(pair.clone(), falsity), &pv("n"), 20, 50).is_positive());

        let xx = make_pair(&pv("x"), &pv("x"));
        assert_eq!(xx.free_vars(), VarSet::from(["x".to_string()]));
    }

    #[test]
    fn numeral_encode_examples() {
        assert!(numeral_encode(0).alpha_eq(&pv(r"\x.x")));
        // ⌜1⌝ = [F, I]
        let one = numeral_encode(1);
        assert!(one.alpha_eq(&pv(r"\p.p (\a.\b.b) (\x.x)")));
        // Zero ⌜0⌝ = T
        let zero_test = Term::app(lib_lookup("Zero").unwrap(), numeral_encode(0));
        assert!(beta_eta_eq(&zero_test, &lib_lookup("T").unwrap(), 100).is_positive());
    }

    #[test]
    fn numeral_decode_examples() {
        assert_eq!(numeral_decode(&numeral_encode(3), 100), Outcome::Positive(3));
        assert_eq!(numeral_decode(&p("I"), 100), Outcome::Positive(0));
        assert!(matches!(numeral_decode(&p("Omega"), 50), Outcome::Unknown(_)));
    }

    #[test]
    fn fix_curry_properties() {
        // f = K I has fixed point beta-eta equal to I
        let fixed = fix_curry(&p("K I"));
        assert!(beta_eta_eq(&fixed, &p("I"), 500).is_positive());

        // for a free f, fix_curry(f) reduces to f (fix_curry(f))
        let f = pv("f");
        let x = fix_curry(&f);
        let fx = Term::app(f, x.clone());
        assert!(reduces_to(&x, &fx, 10, 50).is_positive());
    }

    #[test]
    fn fix_turing_properties() {
        let f = pv("f");
        let theta_f = fix_turing(&f);
        let unfolded = Term::app(f, theta_f.clone());
        match reduces_to(&theta_f, &unfolded, 10, 50) {
            Outcome::Positive(path) => assert_eq!(path.len(), 3, "expected exactly 2 steps"),
            other => panic!("expected Positive, got {other:?}"),
        }
        assert!(beta_eta_eq(&fix_turing(&p("K I")), &p("I"), 500).is_positive());
        assert!(lib_lookup("Theta").unwrap().is_combinator());
    }

    #[test]
    fn solve_equation_examples() {
        let f = solve_equation(&pv(r"\f.\x.\y.f y x f")).unwrap();
        let lhs = Term::apps(f.clone(), [pv("x"), pv("y")]);
        let rhs = Term::apps(f.clone(), [pv("y"), pv("x"), f.clone()]);
        assert!(reduces_to(&lhs, &rhs, 50, 200).is_positive());

        assert!(solve_equation(&pv("f")).is_err());

        let degenerate = solve_equation(&pv(r"\f.f")).unwrap();
        assert!(reduces_to(&degenerate, &degenerate, 0, 1).is_positive());

        let constant = solve_equation(&pv(r"\f.\x.x")).unwrap();
        assert!(beta_eta_eq(&Term::app(constant, pv("z")), &pv("z"), 500).is_positive());
    }

    #[test]
    fn closure_generates_one_point_basis() {
        let x = lib_lookup("X").unwrap();
        let witness_k = closure_generates(&[x.clone()], &p("K"), 3, 200).unwrap();
        match witness_k {
            Outcome::Positive(w) => assert_eq!(w.render(&["X".to_string()]), "X X X"),
            other => panic!("expected Positive, got {other:?}"),
        }
        let witness_s = closure_generates(&[x.clone()], &p("S"), 3, 200).unwrap();
        match witness_s {
            Outcome::Positive(w) => assert_eq!(w.render(&["X".to_string()]), "X (X X)"),
            other => panic!("expected Positive, got {other:?}"),
        }
        // K alone cannot produce S: every K-headed term stays K-headed.
        let k = lib_lookup("K").unwrap();
        assert!(matches!(
            closure_generates(&[k], &p("S"), 4, 200).unwrap(),
            Outcome::Unknown(_)
        ));
        assert_eq!(closure_generates(&[], &p("S"), 3, 100), Err(EmptyBasis));
    }
}
