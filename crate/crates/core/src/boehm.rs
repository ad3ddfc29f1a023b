//! Fuel- and depth-bounded Böhm-tree approximants: child-index paths,
//! partially labelled trees, subtrees, the approximant order, and
//! rendering.

use crate::reduction::{head_normalize, Outcome};
use crate::syntax::Term;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A finite sequence of child indices, addressing a tree node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Seq(pub Vec<usize>);

impl Seq {
    pub fn empty() -> Seq {
        Seq(Vec::new())
    }

    /// Element count; lh(⟨⟩) = 0.
    pub fn lh(&self) -> usize {
        self.0.len()
    }

    /// Concatenation a * b.
    pub fn concat(&self, other: &Seq) -> Seq {
        let mut items = self.0.clone();
        items.extend(&other.0);
        Seq(items)
    }

    pub fn child(&self, k: usize) -> Seq {
        let mut items = self.0.clone();
        items.push(k);
        Seq(items)
    }

    /// True iff self is an initial segment of other.
    pub fn prefix_le(&self, other: &Seq) -> bool {
        self.lh() <= other.lh() && self.0.iter().zip(&other.0).all(|(a, b)| a == b)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "⟩")
    }
}

/// A node label ⟨λx1…xn.x, m⟩: binders, head variable, and child count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BTLabel {
    pub binders: Vec<String>,
    pub head: String,
    pub arity: usize,
}

impl fmt::Display for BTLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.binders {
            write!(f, "λ{b}.")?;
        }
        write!(f, "{}", self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BTNode {
    Labeled(BTLabel),
    /// Head normalization did not finish within the fuel budget (or the
    /// node sits on the depth frontier, with fuel_spent 0).
    Unresolved { fuel_spent: u64 },
}

/// A finite Böhm-tree approximant: a prefix-closed partial map from
/// paths to nodes, remembering the budgets it was built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BohmTree {
    pub nodes: BTreeMap<Seq, BTNode>,
    pub depth: u64,
    pub fuel: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("path {0} is outside the tree")]
pub struct PathOutsideTree(pub Seq);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BtFormat {
    Text,
    Json,
}

fn decompose_hnf(hnf: &Term) -> (Vec<String>, String, Vec<Term>) {
    let mut binders = Vec::new();
    let mut t = hnf;
    while let Term::Lam(x, body) = t {
        binders.push(x.clone());
        t = body;
    }
    let mut args = Vec::new();
    while let Term::App(f, a) = t {
        args.push((**a).clone());
        t = f;
    }
    args.reverse();
    let Term::Var(head) = t else {
        panic!("not a head normal form");
    };
    (binders, head.clone(), args)
}

/// Computes the Böhm-tree approximant of a term down to `depth`, head
/// normalizing each node with its own `fuel` budget. Children are taken
/// from the principal hnf. Nodes on the depth frontier are recorded
/// `Unresolved` with fuel_spent 0.
pub fn bt_compute(term: &Term, depth: u64, fuel: u64) -> BohmTree {
    fn go(term: &Term, path: Seq, depth: u64, fuel: u64, nodes: &mut BTreeMap<Seq, BTNode>) {
        if path.lh() as u64 >= depth {
            nodes.insert(path, BTNode::Unresolved { fuel_spent: 0 });
            return;
        }
        match head_normalize(term, fuel) {
            Outcome::Positive(hnf) => {
                let (binders, head, args) = decompose_hnf(&hnf);
                nodes.insert(
                    path.clone(),
                    BTNode::Labeled(BTLabel {
                        binders,
                        head,
                        arity: args.len(),
                    }),
                );
                for (k, child) in args.iter().enumerate() {
                    go(child, path.child(k), depth, fuel, nodes);
                }
            }
            Outcome::Unknown(spent) => {
                nodes.insert(path, BTNode::Unresolved { fuel_spent: spent });
            }
            Outcome::Negative => unreachable!("head_normalize never answers Negative"),
        }
    }
    let mut nodes = BTreeMap::new();
    go(term, Seq::empty(), depth, fuel, &mut nodes);
    BohmTree { nodes, depth, fuel }
}

/// The subtree at `at`: the partial map β ↦ tree(at * β).
pub fn bt_subtree(tree: &BohmTree, at: &Seq) -> Result<BohmTree, PathOutsideTree> {
    if !tree.nodes.contains_key(at) {
        return Err(PathOutsideTree(at.clone()));
    }
    let nodes = tree
        .nodes
        .iter()
        .filter(|(path, _)| at.prefix_le(path))
        .map(|(path, node)| (Seq(path.0[at.lh()..].to_vec()), node.clone()))
        .collect();
    Ok(BohmTree {
        nodes,
        depth: tree.depth,
        fuel: tree.fuel,
    })
}

/// The approximant order: every labeled node of `a` must exist in `b`
/// with the same label up to binder renaming consistent along
/// root-paths; unresolved nodes of `a` impose no constraint.
pub fn bt_le(a: &BohmTree, b: &BohmTree) -> bool {
    // map_ab pairs a-binders with b-binders introduced on the path from
    // the root; heads bound on one side must be bound correspondingly
    // on the other, free heads must match by name.
    fn le_at(
        a: &BohmTree,
        b: &BohmTree,
        path: &Seq,
        map_ab: &Vec<(String, String)>,
    ) -> bool {
        let label_a = match a.nodes.get(path) {
            Some(BTNode::Labeled(l)) => l,
            Some(BTNode::Unresolved { .. }) => return true,
            None => return true,
        };
        let Some(BTNode::Labeled(label_b)) = b.nodes.get(path) else {
            return false;
        };
        if label_a.arity != label_b.arity || label_a.binders.len() != label_b.binders.len() {
            return false;
        }
        let mut map = map_ab.clone();
        map.extend(
            label_a
                .binders
                .iter()
                .cloned()
                .zip(label_b.binders.iter().cloned()),
        );
        // Innermost pairing wins (shadowing); bound heads must point at
        // the same binder position on both sides.
        let bound_a = map.iter().rposition(|(x, _)| *x == label_a.head);
        let bound_b = map.iter().rposition(|(_, y)| *y == label_b.head);
        let heads_match = match (bound_a, bound_b) {
            (Some(i), Some(j)) => i == j,
            (None, None) => label_a.head == label_b.head,
            _ => false,
        };
        if !heads_match {
            return false;
        }
        (0..label_a.arity).all(|k| le_at(a, b, &path.child(k), &map))
    }
    le_at(a, b, &Seq::empty(), &Vec::new())
}

/// The least upper bound of two compatible approximants, or
/// `Incompatible` when two labels conflict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BtMerge {
    Merged(BohmTree),
    Incompatible,
}

pub fn bt_merge(a: &BohmTree, b: &BohmTree) -> BtMerge {
    let mut nodes = a.nodes.clone();
    for (path, node_b) in &b.nodes {
        match nodes.get(path) {
            None => {
                nodes.insert(path.clone(), node_b.clone());
            }
            Some(BTNode::Unresolved { fuel_spent }) => match node_b {
                BTNode::Labeled(_) => {
                    nodes.insert(path.clone(), node_b.clone());
                }
                BTNode::Unresolved { fuel_spent: other } => {
                    let merged = (*fuel_spent).max(*other);
                    nodes.insert(path.clone(), BTNode::Unresolved { fuel_spent: merged });
                }
            },
            Some(BTNode::Labeled(label_a)) => match node_b {
                BTNode::Labeled(label_b) if label_a == label_b => {}
                BTNode::Labeled(_) => return BtMerge::Incompatible,
                BTNode::Unresolved { .. } => {}
            },
        }
    }
    BtMerge::Merged(BohmTree {
        nodes,
        depth: a.depth.max(b.depth),
        fuel: a.fuel.max(b.fuel),
    })
}

/// Renders an approximant: indented text with one node per line, or the
/// documented JSON schema.
pub fn bt_render(tree: &BohmTree, format: BtFormat) -> String {
    match format {
        BtFormat::Text => {
            let mut out = String::new();
            // BTreeMap ordering on Seq is lexicographic, which is a
            // valid depth-first listing for rendering.
            for (path, node) in &tree.nodes {
                let indent = "  ".repeat(path.lh());
                match node {
                    BTNode::Labeled(label) => {
                        out.push_str(&format!("{indent}{path} {label} /{}\n", label.arity));
                    }
                    BTNode::Unresolved { .. } => {
                        out.push_str(&format!("{indent}{path} ⊥?\n"));
                    }
                }
            }
            out.pop();
            out
        }
        BtFormat::Json => {
            let mut paths: Vec<&Seq> = tree.nodes.keys().collect();
            paths.sort_by(|a, b| a.lh().cmp(&b.lh()).then(a.0.cmp(&b.0)));
            let nodes: Vec<_> = paths
                .into_iter()
                .map(|path| {
                    let node = &tree.nodes[path];
                    match node {
                        BTNode::Labeled(label) => json!({
                            "path": path.0,
                            "status": "labeled",
                            "binders": label.binders,
                            "head": label.head,
                            "arity": label.arity,
                        }),
                        BTNode::Unresolved { .. } => json!({
                            "path": path.0,
                            "status": "unresolved",
                        }),
                    }
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "budgets": { "depth": tree.depth, "fuel": tree.fuel },
                "nodes": nodes,
            }))
            .expect("json rendering cannot fail")
        }
    }
}

/// Direct check of the partial-tree conditions: prefix closure, the
/// arity bound, childlessness of unresolved nodes, and a present root.
pub fn bt_well_formed(tree: &BohmTree) -> bool {
    if !tree.nodes.contains_key(&Seq::empty()) {
        return false;
    }
    tree.nodes.iter().all(|(path, _)| {
        if path.lh() == 0 {
            return true;
        }
        let parent = Seq(path.0[..path.lh() - 1].to_vec());
        let k = *path.0.last().unwrap();
        match tree.nodes.get(&parent) {
            Some(BTNode::Labeled(label)) => k < label.arity,
            _ => false,
        }
    })
}
