//! NNF circuits: rooted DAGs of constants, literals, conjunctions and
//! disjunctions.
//!
//! Nodes are stored children-before-parents and the root is always the last
//! node, which is the c2d convention. Circuits are immutable once built;
//! every transformation returns a new circuit.

mod builder;
mod nnf_format;

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use builder::CircuitBuilder;
pub use nnf_format::{parse_nnf, serialize_nnf};

pub type NodeId = usize;

/// A propositional variable, indexed from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variables are indexed from 1");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn slot(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal { var, positive }
    }

    pub fn pos(var: Var) -> Literal {
        Literal::new(var, true)
    }

    pub fn neg(var: Var) -> Literal {
        Literal::new(var, false)
    }

    /// Signed DIMACS encoding; `0` has no literal.
    pub fn from_dimacs(code: i64) -> Option<Literal> {
        if code == 0 || code.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Literal::new(Var(code.unsigned_abs() as u32), code > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var.0 as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn complement(self) -> Literal {
        Literal::new(self.var, !self.positive)
    }

    /// Truth value of the literal when its variable takes `value`.
    #[inline]
    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NnfNode {
    True,
    False,
    Lit(Literal),
    /// Conjunction with at least one child.
    And(Vec<NodeId>),
    /// Disjunction with at least one child. `decision` is the c2d decision
    /// variable hint; it is carried through I/O but never interpreted.
    Or { decision: Option<Var>, children: Vec<NodeId> },
}

impl NnfNode {
    pub fn children(&self) -> &[NodeId] {
        match self {
            NnfNode::And(ch) | NnfNode::Or { children: ch, .. } => ch,
            _ => &[],
        }
    }
}

/// A complete assignment of `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    values: Vec<bool>,
}

impl Interpretation {
    /// All-false interpretation.
    pub fn new(num_vars: u32) -> Interpretation {
        Interpretation { values: vec![false; num_vars as usize] }
    }

    pub fn from_values(values: Vec<bool>) -> Interpretation {
        Interpretation { values }
    }

    /// Interpretation number `code` in the lexicographic enumeration where
    /// variable 1 is the most significant bit.
    pub fn from_lex_index(num_vars: u32, code: u64) -> Interpretation {
        let n = num_vars as usize;
        let values = (0..n).map(|i| (code >> (n - 1 - i)) & 1 == 1).collect();
        Interpretation { values }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    #[inline]
    pub fn get(&self, var: Var) -> bool {
        self.values[var.slot()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[var.slot()] = value;
    }

    #[inline]
    pub fn satisfies(&self, lit: Literal) -> bool {
        lit.holds(self.get(lit.var()))
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Keeps the first `num_vars` variables.
    pub fn project(&self, num_vars: u32) -> Interpretation {
        Interpretation { values: self.values[..num_vars as usize].to_vec() }
    }

    pub fn true_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Var::new(i as u32 + 1))
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "v{}={}", i + 1, u8::from(*v))?;
        }
        Ok(())
    }
}

/// A consistent partial assignment, also read as the term of its literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialInterpretation {
    assignment: BTreeMap<Var, bool>,
}

impl PartialInterpretation {
    pub fn new() -> PartialInterpretation {
        PartialInterpretation::default()
    }

    /// Fails on complementary literals; repeated identical literals are fine.
    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Result<PartialInterpretation> {
        let mut p = PartialInterpretation::new();
        for l in lits {
            p.assign(l.var(), l.is_positive())?;
        }
        Ok(p)
    }

    pub fn assign(&mut self, var: Var, value: bool) -> Result<()> {
        match self.assignment.insert(var, value) {
            Some(old) if old != value => {
                self.assignment.insert(var, old);
                Err(Error::InconsistentTerm(var.index()))
            }
            _ => Ok(()),
        }
    }

    pub fn unassign(&mut self, var: Var) -> Option<bool> {
        self.assignment.remove(&var)
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.assignment.get(&var).copied()
    }

    pub fn contains(&self, var: Var) -> bool {
        self.assignment.contains_key(&var)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.assignment.iter().map(|(&v, &b)| (v, b))
    }

    pub fn literals(&self) -> Vec<Literal> {
        self.iter().map(|(v, b)| Literal::new(v, b)).collect()
    }

    pub fn max_var(&self) -> u32 {
        self.assignment.keys().next_back().map_or(0, |v| v.index())
    }

    /// Disjoint union; `None` if the domains overlap.
    pub fn disjoint_union(&self, other: &PartialInterpretation) -> Option<PartialInterpretation> {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (v, b) in small.iter() {
            if out.assignment.insert(v, b).is_some() {
                return None;
            }
        }
        Some(out)
    }

    pub fn is_extended_by(&self, omega: &Interpretation) -> bool {
        self.iter().all(|(v, b)| omega.get(v) == b)
    }

    /// Sets every assigned variable in `omega`.
    pub fn apply_to(&self, omega: &mut Interpretation) {
        for (v, b) in self.iter() {
            omega.set(v, b);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NnfCircuit {
    nodes: Vec<NnfNode>,
    num_vars: u32,
}

impl NnfCircuit {
    /// Builds a circuit from a node list whose last entry is the root.
    pub fn from_nodes(nodes: Vec<NnfNode>, num_vars: u32) -> Result<NnfCircuit> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("a circuit needs at least one node".into()));
        }
        for (id, node) in nodes.iter().enumerate() {
            match node {
                NnfNode::Lit(l) if l.var().index() > num_vars => {
                    return Err(Error::VarOutOfRange { var: l.var().index(), num_vars });
                }
                NnfNode::And(ch) | NnfNode::Or { children: ch, .. } => {
                    if ch.is_empty() {
                        return Err(Error::InvalidArgument(format!(
                            "node {id}: empty gates must be written as constants"
                        )));
                    }
                    if let Some(&c) = ch.iter().find(|&&c| c >= id) {
                        return Err(Error::InvalidArgument(format!(
                            "node {id}: child {c} does not precede its parent"
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(NnfCircuit { nodes, num_vars })
    }

    pub fn constant(value: bool, num_vars: u32) -> NnfCircuit {
        let node = if value { NnfNode::True } else { NnfNode::False };
        NnfCircuit { nodes: vec![node], num_vars }
    }

    pub fn literal(lit: Literal, num_vars: u32) -> NnfCircuit {
        assert!(lit.var().index() <= num_vars);
        NnfCircuit { nodes: vec![NnfNode::Lit(lit)], num_vars }
    }

    pub fn nodes(&self) -> &[NnfNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &NnfNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Number of arcs.
    pub fn size(&self) -> usize {
        self.nodes.iter().map(|n| n.children().len()).sum()
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Same circuit over a larger variable universe.
    pub fn with_num_vars(&self, num_vars: u32) -> Result<NnfCircuit> {
        NnfCircuit::from_nodes(self.nodes.clone(), num_vars)
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[self.root()] = true;
        for id in (0..self.nodes.len()).rev() {
            if seen[id] {
                for &c in self.nodes[id].children() {
                    seen[c] = true;
                }
            }
        }
        seen
    }

    /// Literals of all reachable leaves, in node order.
    pub fn leaf_literals(&self) -> Vec<Literal> {
        let reach = self.reachable();
        self.nodes
            .iter()
            .zip(reach)
            .filter_map(|(n, r)| match n {
                NnfNode::Lit(l) if r => Some(*l),
                _ => None,
            })
            .collect()
    }

    /// `Vars(N)` for every node, as bitsets indexed by variable number.
    pub fn var_sets(&self) -> Vec<FixedBitSet> {
        let width = self.num_vars as usize + 1;
        let mut sets: Vec<FixedBitSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut s = FixedBitSet::with_capacity(width);
            match node {
                NnfNode::Lit(l) => s.insert(l.var().index() as usize),
                NnfNode::And(ch) | NnfNode::Or { children: ch, .. } => {
                    for &c in ch {
                        s.union_with(&sets[c]);
                    }
                }
                NnfNode::True | NnfNode::False => {}
            }
            sets.push(s);
        }
        sets
    }

    pub fn vars_of(&self, node: NodeId) -> Vec<Var> {
        let sets = self.var_sets();
        sets[node].ones().map(|i| Var::new(i as u32)).collect()
    }

    pub fn vars(&self) -> Vec<Var> {
        self.vars_of(self.root())
    }

    /// First reachable and-node, in id order, whose children share a
    /// variable.
    pub fn first_non_decomposable(&self) -> Option<NodeId> {
        let sets = self.var_sets();
        let reach = self.reachable();
        let width = self.num_vars as usize + 1;
        for (id, node) in self.nodes.iter().enumerate() {
            if let (NnfNode::And(ch), true) = (node, reach[id]) {
                let mut seen = FixedBitSet::with_capacity(width);
                for &c in ch {
                    if !seen.is_disjoint(&sets[c]) {
                        return Some(id);
                    }
                    seen.union_with(&sets[c]);
                }
            }
        }
        None
    }

    pub fn is_decomposable(&self) -> bool {
        self.first_non_decomposable().is_none()
    }

    pub(crate) fn require_decomposable(&self) -> Result<()> {
        match self.first_non_decomposable() {
            Some(id) => Err(Error::NotDecomposable(id)),
            None => Ok(()),
        }
    }

    pub fn evaluate(&self, omega: &Interpretation) -> bool {
        let mut val = Vec::with_capacity(self.nodes.len());
        self.evaluate_into(omega, &mut val)
    }

    /// Evaluation reusing a caller-owned buffer.
    pub(crate) fn evaluate_into(&self, omega: &Interpretation, val: &mut Vec<bool>) -> bool {
        val.clear();
        for node in &self.nodes {
            let v = match node {
                NnfNode::True => true,
                NnfNode::False => false,
                NnfNode::Lit(l) => omega.satisfies(*l),
                NnfNode::And(ch) => ch.iter().all(|&c| val[c]),
                NnfNode::Or { children, .. } => children.iter().any(|&c| val[c]),
            };
            val.push(v);
        }
        val[self.root()]
    }

    /// Bottom-up satisfiability flags with the variables of `fixed` pinned;
    /// only meaningful on decomposable circuits.
    fn sat_flags_under(&self, fixed: &PartialInterpretation) -> Vec<bool> {
        let mut sat = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                NnfNode::True => true,
                NnfNode::False => false,
                NnfNode::Lit(l) => fixed.get(l.var()).is_none_or(|b| l.holds(b)),
                NnfNode::And(ch) => ch.iter().all(|&c| sat[c]),
                NnfNode::Or { children, .. } => children.iter().any(|&c| sat[c]),
            };
            sat.push(v);
        }
        sat
    }

    /// Linear-time consistency test for DNNF.
    pub fn consistent(&self) -> Result<bool> {
        self.require_decomposable()?;
        Ok(self.sat_flags_under(&PartialInterpretation::new())[self.root()])
    }

    /// Consistency of `self | fixed`, computed without materializing the
    /// conditioned circuit. The caller guarantees decomposability.
    pub(crate) fn consistent_under(&self, fixed: &PartialInterpretation) -> bool {
        self.sat_flags_under(fixed)[self.root()]
    }

    /// A model of `self ∧ fixed` over `num_vars` variables: leaves picked by
    /// the first satisfiable child of each or-node, everything else false.
    /// The caller guarantees decomposability.
    pub(crate) fn model_under(&self, fixed: &PartialInterpretation, num_vars: u32) -> Option<Interpretation> {
        let sat = self.sat_flags_under(fixed);
        if !sat[self.root()] {
            return None;
        }
        let mut omega = Interpretation::new(num_vars);
        fixed.apply_to(&mut omega);
        let mut visited = vec![false; self.nodes.len()];
        let mut stack = vec![self.root()];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut visited[id], true) {
                continue;
            }
            match &self.nodes[id] {
                NnfNode::Lit(l) => omega.set(l.var(), l.is_positive()),
                NnfNode::And(ch) => stack.extend(ch.iter().copied()),
                NnfNode::Or { children, .. } => {
                    let pick = children.iter().copied().find(|&c| sat[c]).expect("satisfiable or-node");
                    stack.push(pick);
                }
                NnfNode::True | NnfNode::False => {}
            }
        }
        Some(omega)
    }

    /// `self | gamma`: literals over `gamma`'s variables become constants,
    /// then constants are propagated upwards.
    pub fn condition(&self, gamma: &PartialInterpretation) -> NnfCircuit {
        let reach = self.reachable();
        let mut b = CircuitBuilder::new(self.num_vars);
        let mut map = vec![usize::MAX; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if !reach[id] {
                continue;
            }
            map[id] = match node {
                NnfNode::True => b.constant(true),
                NnfNode::False => b.constant(false),
                NnfNode::Lit(l) => match gamma.get(l.var()) {
                    Some(value) => b.constant(l.holds(value)),
                    None => b.lit(*l),
                },
                NnfNode::And(ch) => b.and_folded(ch.iter().map(|&c| map[c]).collect()),
                NnfNode::Or { decision, children } => {
                    let hint = decision.filter(|v| !gamma.contains(*v));
                    b.or_folded(hint, children.iter().map(|&c| map[c]).collect())
                }
            };
        }
        b.finish(map[self.root()])
    }

    /// Conjoins the literals of `term` to the circuit. When the circuit is
    /// already conditioned on `term` the result stays decomposable.
    pub fn conjoin_term(&self, term: &PartialInterpretation) -> NnfCircuit {
        if term.is_empty() {
            return self.clone();
        }
        let mut b = CircuitBuilder::from_circuit(self);
        let mut children = vec![self.root()];
        children.extend(term.literals().into_iter().map(|l| b.lit(l)));
        let root = b.and_folded(children);
        b.finish(root)
    }

    /// Every reachable or-node has children mentioning the same variables.
    pub fn is_smooth(&self) -> bool {
        let sets = self.var_sets();
        let reach = self.reachable();
        self.nodes.iter().enumerate().all(|(id, node)| match node {
            NnfNode::Or { children, .. } if reach[id] => {
                children.windows(2).all(|w| sets[w[0]] == sets[w[1]])
            }
            _ => true,
        })
    }

    /// Smoothed copy mentioning every variable of `over`: children of each
    /// or-node, and the root, are padded with `x ∨ ¬x` gadgets.
    pub fn smooth(&self, over: &[Var]) -> Result<NnfCircuit> {
        self.require_decomposable()?;
        let width = self.num_vars as usize + 1;
        let mut scope = FixedBitSet::with_capacity(width);
        for v in over {
            if v.index() > self.num_vars {
                return Err(Error::VarOutOfRange { var: v.index(), num_vars: self.num_vars });
            }
            scope.insert(v.index() as usize);
        }
        let sets = self.var_sets();
        if !sets[self.root()].is_subset(&scope) {
            return Err(Error::InvalidArgument(
                "smoothing scope must contain every variable of the circuit".into(),
            ));
        }
        let reach = self.reachable();
        let mut b = CircuitBuilder::new(self.num_vars);
        let mut map = vec![usize::MAX; self.nodes.len()];

        fn pad(b: &mut CircuitBuilder, node: NodeId, missing: &FixedBitSet) -> NodeId {
            if missing.is_clear() {
                return node;
            }
            let mut ch = vec![node];
            for i in missing.ones() {
                let v = Var::new(i as u32);
                let p = b.lit(Literal::pos(v));
                let n = b.lit(Literal::neg(v));
                ch.push(b.or(vec![p, n]));
            }
            b.and(ch)
        }

        for (id, node) in self.nodes.iter().enumerate() {
            if !reach[id] {
                continue;
            }
            map[id] = match node {
                NnfNode::True => b.constant(true),
                NnfNode::False => b.constant(false),
                NnfNode::Lit(l) => b.lit(*l),
                NnfNode::And(ch) => b.and(ch.iter().map(|&c| map[c]).collect()),
                NnfNode::Or { decision, children } => {
                    let all = &sets[id];
                    let padded = children
                        .iter()
                        .map(|&c| {
                            let mut missing = all.clone();
                            missing.difference_with(&sets[c]);
                            pad(&mut b, map[c], &missing)
                        })
                        .collect();
                    b.or_with_hint(*decision, padded)
                }
            };
        }
        let mut missing = scope;
        missing.difference_with(&sets[self.root()]);
        let root = pad(&mut b, map[self.root()], &missing);
        Ok(b.finish(root))
    }

    /// Terms of a flat disjunction of terms. Accepted shapes: a constant, a
    /// literal, an and-of-literals, or an or-node whose children are any of
    /// those. Constant `True` is the empty term; `False` contributes no term.
    /// Terms may be internally inconsistent.
    pub fn dnf_terms(&self) -> Option<Vec<Vec<Literal>>> {
        fn as_term(c: &NnfCircuit, id: NodeId) -> Option<Option<Vec<Literal>>> {
            match c.node(id) {
                NnfNode::True => Some(Some(Vec::new())),
                NnfNode::False => Some(None),
                NnfNode::Lit(l) => Some(Some(vec![*l])),
                NnfNode::And(ch) => {
                    let mut term = Vec::with_capacity(ch.len());
                    for &k in ch {
                        match c.node(k) {
                            NnfNode::Lit(l) => term.push(*l),
                            NnfNode::True => {}
                            NnfNode::False => return Some(None),
                            _ => return None,
                        }
                    }
                    Some(Some(term))
                }
                NnfNode::Or { .. } => None,
            }
        }
        match self.node(self.root()) {
            NnfNode::Or { children, .. } => {
                let mut terms = Vec::with_capacity(children.len());
                for &c in children {
                    if let Some(t) = as_term(self, c)? {
                        terms.push(t);
                    }
                }
                Some(terms)
            }
            _ => as_term(self, self.root()).map(|t| t.into_iter().collect()),
        }
    }
}

#[cfg(test)]
mod tests;
