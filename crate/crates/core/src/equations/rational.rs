//! Rational terms as finite rooted graphs.

use std::collections::BTreeMap;

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use std::fmt;

use crate::term::{Sym, Term, Var};

use super::SolvedForm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Functor(Sym),
    Int(i64),
    /// Unbound variable leaf.
    Var(Var),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RtNode {
    pub label: Label,
    pub children: Vec<usize>,
}

/// A possibly infinite tree with finitely many distinct subtrees, stored as
/// a finite graph. Every node is reachable from the root.
///
/// Structural equality (`==`) is graph identity; use [`rt_equal`] or compare
/// [`RationalTerm::canonical`] forms for tree equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalTerm {
    nodes: Vec<RtNode>,
    root: usize,
}

/// Unfolding cut at a fixed depth.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Truncated {
    Node(Label, Vec<Truncated>),
    Cut,
}

impl fmt::Display for Truncated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncated::Cut => write!(f, "..."),
            Truncated::Node(l, kids) => {
                match l {
                    Label::Functor(s) => write!(f, "{s}")?,
                    Label::Int(n) => write!(f, "{n}")?,
                    Label::Var(v) => write!(f, "{v}")?,
                }
                if !kids.is_empty() {
                    write!(f, "(")?;
                    for (i, k) in kids.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{k}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// Incremental graph construction; nodes may be allocated before their
/// children are known so cycles can be closed.
#[derive(Default, Debug)]
pub struct GraphBuilder {
    nodes: Vec<RtNode>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        GraphBuilder::default()
    }

    pub fn add(&mut self, label: Label, children: Vec<usize>) -> usize {
        self.nodes.push(RtNode { label, children });
        self.nodes.len() - 1
    }

    pub fn set(&mut self, id: usize, label: Label, children: Vec<usize>) {
        self.nodes[id] = RtNode { label, children };
    }

    /// Copy `r` into the builder, returning the id of its root.
    pub fn embed(&mut self, r: &RationalTerm) -> usize {
        let off = self.nodes.len();
        for n in &r.nodes {
            self.nodes.push(RtNode {
                label: n.label.clone(),
                children: n.children.iter().map(|c| c + off).collect(),
            });
        }
        r.root + off
    }

    /// Add a syntactic term; `leaf` decides what a variable becomes.
    pub fn add_term(&mut self, t: &Term, leaf: &mut impl FnMut(&mut Self, &Var) -> usize) -> usize {
        match t {
            Term::Var(v) => leaf(self, v),
            Term::Int(n) => self.add(Label::Int(*n), Vec::new()),
            Term::Compound(f, args) => {
                let kids = args.iter().map(|a| self.add_term(a, leaf)).collect();
                self.add(Label::Functor(f.clone()), kids)
            }
        }
    }

    pub fn finish(self, root: usize) -> RationalTerm {
        RationalTerm { nodes: self.nodes, root }.compact()
    }

    /// Several roots over one shared graph.
    pub fn finish_many(self, roots: &[usize]) -> (RationalTerm, Vec<usize>) {
        // A synthetic tuple node keeps all roots reachable.
        let mut b = self;
        let top = b.add(Label::Functor(crate::term::sym("$tuple")), roots.to_vec());
        let g = RationalTerm { nodes: b.nodes, root: top }.compact();
        let kids = g.nodes[g.root].children.clone();
        (g, kids)
    }
}

impl RationalTerm {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &RtNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The same graph viewed from another node.
    pub fn rooted_at(&self, id: usize) -> RationalTerm {
        RationalTerm { nodes: self.nodes.clone(), root: id }.compact()
    }

    /// Finite term as an acyclic graph; variables become leaves.
    pub fn from_term(t: &Term) -> RationalTerm {
        let mut b = GraphBuilder::new();
        let mut leaves: HashMap<Var, usize> = HashMap::default();
        let root = b.add_term(t, &mut |b, v| {
            *leaves.entry(v.clone()).or_insert_with(|| b.add(Label::Var(v.clone()), Vec::new()))
        });
        b.finish(root)
    }

    /// Unfold `t` through `s`, sharing nodes on cycles.
    pub fn from_solved(s: &SolvedForm, t: &Term) -> RationalTerm {
        let mut b = GraphBuilder::new();
        let mut memo = HashMap::default();
        let root = add_solved(&mut b, s, t, &mut memo);
        b.finish(root)
    }

    /// Drop unreachable nodes and renumber in DFS preorder from the root.
    fn compact(self) -> RationalTerm {
        const UNSEEN: usize = usize::MAX;
        let mut order = Vec::new();
        let mut new_id = vec![UNSEEN; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(n) = stack.pop() {
            if new_id[n] != UNSEEN {
                continue;
            }
            new_id[n] = order.len();
            order.push(n);
            for &c in self.nodes[n].children.iter().rev() {
                if new_id[c] == UNSEEN {
                    stack.push(c);
                }
            }
        }
        let nodes = order
            .iter()
            .map(|&old| RtNode {
                label: self.nodes[old].label.clone(),
                children: self.nodes[old].children.iter().map(|&c| new_id[c]).collect(),
            })
            .collect();
        RationalTerm { nodes, root: 0 }
    }

    pub fn is_ground(&self) -> bool {
        !self.nodes.iter().any(|n| matches!(n.label, Label::Var(_)))
    }

    pub fn free_vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self
            .nodes
            .iter()
            .filter_map(|n| match &n.label {
                Label::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_cyclic(&self) -> bool {
        // DFS with colours.
        fn visit(g: &RationalTerm, n: usize, colour: &mut [u8]) -> bool {
            colour[n] = 1;
            for &c in &g.nodes[n].children {
                if colour[c] == 1 || (colour[c] == 0 && visit(g, c, colour)) {
                    return true;
                }
            }
            colour[n] = 2;
            false
        }
        let mut colour = vec![0u8; self.nodes.len()];
        visit(self, self.root, &mut colour)
    }

    /// Unfolding to depth `k`; nodes at depth `k` become [`Truncated::Cut`].
    pub fn truncate(&self, k: usize) -> Truncated {
        self.truncate_from(self.root, k)
    }

    fn truncate_from(&self, n: usize, k: usize) -> Truncated {
        if k == 0 {
            return Truncated::Cut;
        }
        let node = &self.nodes[n];
        Truncated::Node(
            node.label.clone(),
            node.children.iter().map(|&c| self.truncate_from(c, k - 1)).collect(),
        )
    }

    /// Minimal graph (bisimulation quotient) renumbered canonically: two
    /// rational terms denote the same tree iff their canonical forms are
    /// structurally equal.
    pub fn canonical(&self) -> RationalTerm {
        let n = self.nodes.len();
        // Initial partition by label and arity.
        let mut class: Vec<usize> = {
            let mut ids: BTreeMap<(&Label, usize), usize> = BTreeMap::new();
            let keys: Vec<_> = self.nodes.iter().map(|x| (&x.label, x.children.len())).collect();
            for k in &keys {
                let next = ids.len();
                ids.entry(*k).or_insert(next);
            }
            keys.iter().map(|k| ids[k]).collect()
        };
        let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::default();
            let next: Vec<usize> = (0..n)
                .map(|i| {
                    let sig = (class[i], self.nodes[i].children.iter().map(|&c| class[c]).collect());
                    let len = ids.len();
                    *ids.entry(sig).or_insert(len)
                })
                .collect();
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // One representative node per class, then compact from the root.
        let mut rep = vec![usize::MAX; count];
        for (i, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = i;
            }
        }
        let mut b = GraphBuilder::new();
        b.nodes = rep
            .iter()
            .map(|&r| {
                let node = &self.nodes[r];
                RtNode { label: node.label.clone(), children: node.children.iter().map(|&k| class[k]).collect() }
            })
            .collect();
        b.finish(class[self.root])
    }

    /// Canonical form with variable leaves renamed by order of appearance,
    /// so that variants compare equal.
    pub fn up_to_renaming(&self) -> RationalTerm {
        let c = self.canonical();
        let mut seen: HashMap<Var, u32> = HashMap::default();
        let nodes = c
            .nodes
            .iter()
            .map(|n| match &n.label {
                Label::Var(v) => {
                    let k = seen.len() as u32;
                    let k = *seen.entry(v.clone()).or_insert(k);
                    RtNode { label: Label::Var(Var::with_index("_V", k)), children: Vec::new() }
                }
                _ => n.clone(),
            })
            .collect();
        RationalTerm { nodes, root: c.root }
    }

    /// Evaluate as an integer arithmetic expression over `+ - * max min`.
    pub fn eval_arith(&self) -> Result<i64, ArithError> {
        self.eval_node(self.root, &mut HashSet::default())
    }

    fn eval_node(&self, n: usize, active: &mut HashSet<usize>) -> Result<i64, ArithError> {
        let node = &self.nodes[n];
        if !active.insert(n) {
            return Err(ArithError::Cyclic);
        }
        let res = match (&node.label, node.children.as_slice()) {
            (Label::Int(v), []) => Ok(*v),
            (Label::Var(v), _) => Err(ArithError::NotGround(v.clone())),
            (Label::Functor(f), [a]) if &**f == "-" => {
                self.eval_node(*a, active)?.checked_neg().ok_or(ArithError::Overflow)
            }
            (Label::Functor(f), [a, b]) => {
                let x = self.eval_node(*a, active)?;
                let y = self.eval_node(*b, active)?;
                match &**f {
                    "+" => x.checked_add(y).ok_or(ArithError::Overflow),
                    "-" => x.checked_sub(y).ok_or(ArithError::Overflow),
                    "*" => x.checked_mul(y).ok_or(ArithError::Overflow),
                    "max" => Ok(x.max(y)),
                    "min" => Ok(x.min(y)),
                    _ => Err(ArithError::NotEvaluable(format!("{f}/2"))),
                }
            }
            (Label::Functor(f), kids) => Err(ArithError::NotEvaluable(format!("{f}/{}", kids.len()))),
            (Label::Int(_), _) => unreachable!("integer node with children"),
        };
        active.remove(&n);
        res
    }

    /// Expand node `top` into a finite term. Nodes in `names` below the top
    /// become variables with that name; every cycle must pass through one.
    pub fn to_named_term(&self, names: &HashMap<usize, Var>, top: usize) -> Term {
        self.named(top, names, true)
    }

    fn named(&self, n: usize, names: &HashMap<usize, Var>, top: bool) -> Term {
        if !top {
            if let Some(v) = names.get(&n) {
                return Term::Var(v.clone());
            }
        }
        let node = &self.nodes[n];
        match &node.label {
            Label::Int(v) => Term::Int(*v),
            Label::Var(v) => Term::Var(names.get(&n).cloned().unwrap_or_else(|| v.clone())),
            Label::Functor(f) => Term::Compound(
                f.clone(),
                node.children.iter().map(|&c| self.named(c, names, false)).collect(),
            ),
        }
    }

    /// Nodes that close a cycle when the graph is walked depth-first from
    /// `roots` in order.
    pub fn back_edge_targets(&self, roots: &[usize]) -> Vec<usize> {
        let mut colour = vec![0u8; self.nodes.len()];
        let mut targets = Vec::new();
        fn visit(g: &RationalTerm, n: usize, colour: &mut [u8], targets: &mut Vec<usize>) {
            colour[n] = 1;
            for &c in &g.nodes[n].children {
                match colour[c] {
                    0 => visit(g, c, colour, targets),
                    1 if !targets.contains(&c) => targets.push(c),
                    _ => {}
                }
            }
            colour[n] = 2;
        }
        for &r in roots {
            if colour[r] == 0 {
                visit(self, r, &mut colour, &mut targets);
            }
        }
        targets
    }
}

fn add_solved(
    b: &mut GraphBuilder,
    s: &SolvedForm,
    t: &Term,
    memo: &mut HashMap<Var, usize>,
) -> usize {
    let (r, via) = s.walk(t);
    match r {
        Term::Var(v) => {
            if let Some(&id) = memo.get(v) {
                return id;
            }
            let id = b.add(Label::Var(v.clone()), Vec::new());
            memo.insert(v.clone(), id);
            id
        }
        Term::Int(n) => b.add(Label::Int(*n), Vec::new()),
        Term::Compound(f, args) => {
            if let Some(v) = via {
                if let Some(&id) = memo.get(v) {
                    return id;
                }
                let id = b.add(Label::Int(0), Vec::new());
                memo.insert(v.clone(), id);
                let kids = args.iter().map(|a| add_solved(b, s, a, memo)).collect();
                b.set(id, Label::Functor(f.clone()), kids);
                id
            } else {
                let kids = args.iter().map(|a| add_solved(b, s, a, memo)).collect();
                b.add(Label::Functor(f.clone()), kids)
            }
        }
    }
}

/// Several terms unfolded through one solved form into a shared graph;
/// returns the graph and the node of each input term.
pub fn solved_values(s: &SolvedForm, ts: &[Term]) -> (RationalTerm, Vec<usize>) {
    let mut b = GraphBuilder::new();
    let mut memo = HashMap::default();
    let roots: Vec<usize> = ts.iter().map(|t| add_solved(&mut b, s, t, &mut memo)).collect();
    b.finish_many(&roots)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("arithmetic operand is not ground ({0} is unbound)")]
    NotGround(Var),
    #[error("cyclic arithmetic expression")]
    Cyclic,
    #[error("{0} is not an arithmetic function")]
    NotEvaluable(String),
    #[error("integer overflow")]
    Overflow,
}

/// Tree equality of two rational terms, by memoized coinductive descent: a
/// pair of nodes under comparison is assumed equal.
pub fn rt_equal(a: &RationalTerm, b: &RationalTerm) -> bool {
    let mut assumed: HashSet<(usize, usize)> = HashSet::default();
    let mut stack = vec![(a.root, b.root)];
    while let Some((x, y)) = stack.pop() {
        if !assumed.insert((x, y)) {
            continue;
        }
        let (nx, ny) = (&a.nodes[x], &b.nodes[y]);
        if nx.label != ny.label || nx.children.len() != ny.children.len() {
            return false;
        }
        stack.extend(nx.children.iter().copied().zip(ny.children.iter().copied()));
    }
    true
}
