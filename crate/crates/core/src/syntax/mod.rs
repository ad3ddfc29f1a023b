//! Terms of the untyped lambda calculus: syntax, free variables,
//! alpha-equivalence, and capture-avoiding substitution.

mod parse;

pub use parse::{parse, ParseError};

use std::collections::BTreeSet;
use std::fmt;

/// A lambda term: variable, abstraction, or application.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

/// One step down into a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Into the body of an abstraction.
    Body,
    /// Into the function part of an application.
    Fun,
    /// Into the argument part of an application.
    Arg,
}

/// A path from the root of a term to one of its subterm occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TermPath(pub Vec<Step>);

pub type VarSet = BTreeSet<String>;

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(binder: impl Into<String>, body: Term) -> Term {
        Term::Lam(binder.into(), Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Left-associated application `f a1 a2 ...`.
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    /// The set of free variables.
    pub fn free_vars(&self) -> VarSet {
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut VarSet) {
            match t {
                Term::Var(x) => {
                    if !bound.iter().any(|b| b == x) {
                        out.insert(x.clone());
                    }
                }
                Term::Lam(x, body) => {
                    bound.push(x.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
            }
        }
        let mut out = VarSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// True iff the term is closed (an element of Λ⁰).
    pub fn is_combinator(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All subterm occurrences in preorder (node before children, Fun
    /// before Arg), paired with their paths. Includes the term itself at
    /// the empty path.
    pub fn subterms(&self) -> Vec<(TermPath, Term)> {
        fn go(t: &Term, path: &mut Vec<Step>, out: &mut Vec<(TermPath, Term)>) {
            out.push((TermPath(path.clone()), t.clone()));
            match t {
                Term::Var(_) => {}
                Term::Lam(_, body) => {
                    path.push(Step::Body);
                    go(body, path, out);
                    path.pop();
                }
                Term::App(f, a) => {
                    path.push(Step::Fun);
                    go(f, path, out);
                    path.pop();
                    path.push(Step::Arg);
                    go(a, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// The subterm at `path`, if the path stays inside the tree.
    pub fn at(&self, path: &TermPath) -> Option<&Term> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (step, cur) {
                (Step::Body, Term::Lam(_, body)) => body,
                (Step::Fun, Term::App(f, _)) => f,
                (Step::Arg, Term::App(_, a)) => a,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuilds the term with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &TermPath, replacement: Term) -> Option<Term> {
        fn go(t: &Term, steps: &[Step], replacement: Term) -> Option<Term> {
            let Some((step, rest)) = steps.split_first() else {
                return Some(replacement);
            };
            match (step, t) {
                (Step::Body, Term::Lam(x, body)) => {
                    Some(Term::lam(x.clone(), go(body, rest, replacement)?))
                }
                (Step::Fun, Term::App(f, a)) => {
                    Some(Term::app(go(f, rest, replacement)?, (**a).clone()))
                }
                (Step::Arg, Term::App(f, a)) => {
                    Some(Term::app((**f).clone(), go(a, rest, replacement)?))
                }
                _ => None,
            }
        }
        go(self, &path.0, replacement)
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        // Bound variables are matched positionally via two parallel
        // binder stacks; free variables must coincide by name.
        fn go(a: &Term, b: &Term, env_a: &mut Vec<String>, env_b: &mut Vec<String>) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    let ia = env_a.iter().rposition(|n| n == x);
                    let ib = env_b.iter().rposition(|n| n == y);
                    match (ia, ib) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Lam(x, ba), Term::Lam(y, bb)) => {
                    env_a.push(x.clone());
                    env_b.push(y.clone());
                    let r = go(ba, bb, env_a, env_b);
                    env_a.pop();
                    env_b.pop();
                    r
                }
                (Term::App(fa, aa), Term::App(fb, ab)) => {
                    go(fa, fb, env_a, env_b) && go(aa, ab, env_a, env_b)
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Capture-avoiding substitution `self[var := replacement]`.
    ///
    /// Binders that clash with `var` or with the free variables of
    /// `replacement` are renamed to fresh identifiers first, so the
    /// textbook clauses apply verbatim afterwards.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Term {
        let repl_fv = replacement.free_vars();
        match self {
            Term::Var(x) => {
                if x == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Term::App(f, a) => Term::app(
                f.substitute(var, replacement),
                a.substitute(var, replacement),
            ),
            Term::Lam(x, body) => {
                if x == var {
                    // var is shadowed; no free occurrences below.
                    self.clone()
                } else if repl_fv.contains(x) && body.free_vars().contains(var) {
                    let mut avoid = body.free_vars();
                    avoid.extend(repl_fv.iter().cloned());
                    avoid.insert(var.to_string());
                    let fresh = fresh_var(&avoid, x);
                    let renamed = body.substitute(x, &Term::var(fresh.clone()));
                    Term::lam(fresh, renamed.substitute(var, replacement))
                } else {
                    Term::lam(x.clone(), body.substitute(var, replacement))
                }
            }
        }
    }

    /// A canonical printing in which bound variables are renamed by
    /// binder depth. Two terms have equal keys iff they are alpha-equal.
    pub fn canonical_key(&self) -> String {
        fn go(t: &Term, env: &mut Vec<String>, out: &mut String) {
            match t {
                Term::Var(x) => match env.iter().rposition(|n| n == x) {
                    Some(i) => out.push_str(&format!("b{i}")),
                    None => {
                        out.push('f');
                        out.push_str(x);
                    }
                },
                Term::Lam(x, body) => {
                    out.push('L');
                    env.push(x.clone());
                    go(body, env, out);
                    env.pop();
                }
                Term::App(f, a) => {
                    out.push('(');
                    go(f, env, out);
                    out.push(' ');
                    go(a, env, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Returns an identifier not in `avoid`: `base` itself if unused, else
/// `base1`, `base2`, ... with the smallest unused decimal suffix.
pub fn fresh_var(avoid: &VarSet, base: &str) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    for i in 1u64.. {
        let candidate = format!("{base}{i}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

// Printing uses the grammar's precedence: abstraction bodies extend
// maximally right, application is left-associative, so an abstraction in
// function or argument position and an application in argument position
// need parentheses.
fn fmt_term(t: &Term, f: &mut fmt::Formatter<'_>, parenthesize: bool) -> fmt::Result {
    match t {
        Term::Var(x) => write!(f, "{x}"),
        Term::Lam(x, body) => {
            if parenthesize {
                write!(f, "(λ{x}.")?;
                fmt_term(body, f, false)?;
                write!(f, ")")
            } else {
                write!(f, "λ{x}.")?;
                fmt_term(body, f, false)
            }
        }
        Term::App(fun, arg) => {
            if parenthesize {
                write!(f, "(")?;
            }
            // The function side keeps application unparenthesized
            // (left associativity) but still wraps abstractions.
            match **fun {
                Term::Lam(..) => fmt_term(fun, f, true)?,
                _ => fmt_term(fun, f, false)?,
            }
            write!(f, " ")?;
            fmt_term(arg, f, true)?;
            if parenthesize {
                write!(f, ")")
            } else {
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, f, false)
    }
}

impl TermPath {
    pub fn empty() -> TermPath {
        TermPath(Vec::new())
    }

    pub fn child(&self, step: Step) -> TermPath {
        let mut steps = self.0.clone();
        steps.push(step);
        TermPath(steps)
    }

    pub fn join(&self, other: &TermPath) -> TermPath {
        let mut steps = self.0.clone();
        steps.extend(other.0.iter().copied());
        TermPath(steps)
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Step::Body => "body",
                Step::Fun => "fun",
                Step::Arg => "arg",
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse(s, false).unwrap()
    }

    #[test]
    fn free_vars_clauses() {
        assert_eq!(p("x").free_vars(), VarSet::from(["x".to_string()]));
        assert_eq!(p("\\x.x y").free_vars(), VarSet::from(["y".to_string()]));
        assert!(p("(\\x.x) (\\y.y)").free_vars().is_empty());
    }

    #[test]
    fn is_combinator_examples() {
        assert!(p("\\x.x").is_combinator());
        assert!(!p("x y").is_combinator());
    }

    #[test]
    fn subterms_preorder() {
        let occs = p("x").subterms();
        assert_eq!(occs, vec![(TermPath::empty(), Term::var("x"))]);

        let occs = p("\\x.y").subterms();
        assert_eq!(occs.len(), 2);
        assert_eq!(occs[1], (TermPath(vec![Step::Body]), Term::var("y")));

        let occs = p("m n").subterms();
        assert!(occs.contains(&(TermPath(vec![Step::Fun]), Term::var("m"))));
        assert!(occs.contains(&(TermPath(vec![Step::Arg]), Term::var("n"))));
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(p("\\x.x").alpha_eq(&p("\\y.y")));
        assert!(!p("\\x.y").alpha_eq(&p("\\x.z")));
        assert!(p("\\x.\\y.x y").alpha_eq(&p("\\y.\\x.y x")));
        assert!(!p("\\x.\\y.x").alpha_eq(&p("\\x.\\y.y")));
    }

    #[test]
    fn substitution_clauses() {
        assert_eq!(p("x").substitute("x", &p("p q")), p("p q"));
        assert_eq!(p("y").substitute("x", &p("p q")), p("y"));
        // (λy.x)[x := y] must rename the binder.
        let result = p("\\y.x").substitute("x", &p("y"));
        assert!(result.alpha_eq(&p("\\z.y")));
    }

    #[test]
    fn fresh_var_scheme() {
        let avoid = VarSet::from(["x".to_string()]);
        assert_eq!(fresh_var(&avoid, "x"), "x1");
        assert_eq!(fresh_var(&VarSet::new(), "y"), "y");
        let avoid = VarSet::from(["x".to_string(), "x1".to_string()]);
        assert_eq!(fresh_var(&avoid, "x"), "x2");
    }

    #[test]
    fn printing_minimal_parens() {
        assert_eq!(p("m n p").to_string(), "m n p");
        assert_eq!(p("m (n p)").to_string(), "m (n p)");
        assert_eq!(p("\\x.x x").to_string(), "λx.x x");
        assert_eq!(p("(\\x.x) y").to_string(), "(λx.x) y");
        assert_eq!(p("x (\\y.y)").to_string(), "x (λy.y)");
    }

    #[test]
    fn replace_at_roundtrip() {
        let t = p("(\\x.x) (y z)");
        let path = TermPath(vec![Step::Arg, Step::Fun]);
        assert_eq!(t.at(&path), Some(&Term::var("y")));
        let replaced = t.replace_at(&path, Term::var("w")).unwrap();
        assert_eq!(replaced, p("(\\x.x) (w z)"));
    }
}
