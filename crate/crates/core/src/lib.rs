//! A workbench for the untyped extensional lambda calculus (λβη):
//! parsing and printing, capture-avoiding substitution, leftmost
//! beta-eta reduction, combinatory-logic compilation, the standard
//! numeral system, fixed-point combinators, and fuel-bounded Böhm-tree
//! approximants with the approximant order.
//!
//! All values are immutable and all operations are pure functions;
//! semi-decidable questions take an explicit fuel bound and answer with
//! a tri-state [`reduction::Outcome`].

pub mod boehm;
pub mod combinatory;
pub mod reduction;
pub mod syntax;

pub use boehm::{bt_compute, bt_le, bt_merge, bt_render, bt_subtree, BohmTree, BtFormat, Seq};
pub use combinatory::{
    cl_reduce, cl_to_lambda, closure_generates, compile, fix_curry, fix_turing, lib_lookup,
    make_pair, numeral_decode, numeral_encode, solve_equation, CLTerm,
};
pub use reduction::{
    beta_eta_eq, contract, find_redexes, head_normalize, is_hnf, is_normal_form, leftmost_step,
    normalize, reduces_to, solvable, Outcome, Redex, RedexKind, Trace, TraceStatus,
};
pub use syntax::{parse, Term, TermPath, VarSet};
