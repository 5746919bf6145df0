//! Reduced ordered binary decision diagrams under one variable order per
//! manager.

mod obdd_format;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::circuit::{CircuitBuilder, Interpretation, Literal, NnfCircuit, Var};
use crate::error::{Error, Result};

pub use obdd_format::serialize_obdd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObddId(u32);

impl ObddId {
    pub const FALSE: ObddId = ObddId(0);
    pub const TRUE: ObddId = ObddId(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn constant(value: bool) -> ObddId {
        if value {
            ObddId::TRUE
        } else {
            ObddId::FALSE
        }
    }
}

impl fmt::Display for ObddId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ObddNode {
    pub var: Var,
    pub lo: ObddId,
    pub hi: ObddId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    Iff,
}

impl BoolOp {
    fn eval(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Xor => a != b,
            BoolOp::Iff => a == b,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObddManager {
    order: Vec<Var>,
    /// Position in `order`, indexed by variable slot.
    level: Vec<u32>,
    /// Slots 0 and 1 are placeholders for the terminals.
    nodes: Vec<ObddNode>,
    unique: HashMap<ObddNode, ObddId>,
    cache: HashMap<(BoolOp, ObddId, ObddId), ObddId>,
}

impl ObddManager {
    /// Manager over `1..=num_vars` in natural order.
    pub fn new(num_vars: u32) -> ObddManager {
        ObddManager::with_order((1..=num_vars).map(Var::new).collect()).unwrap()
    }

    /// `order` must be a permutation of `1..=order.len()`.
    pub fn with_order(order: Vec<Var>) -> Result<ObddManager> {
        let n = order.len();
        let mut level = vec![u32::MAX; n];
        for (pos, v) in order.iter().enumerate() {
            let slot = v.slot();
            if slot >= n || level[slot] != u32::MAX {
                return Err(Error::OrderMismatch(format!("{order:?} is not a permutation of 1..={n}")));
            }
            level[slot] = pos as u32;
        }
        let dummy = ObddNode { var: Var::new(1), lo: ObddId::FALSE, hi: ObddId::FALSE };
        Ok(ObddManager { order, level, nodes: vec![dummy, dummy], unique: HashMap::new(), cache: HashMap::new() })
    }

    pub fn num_vars(&self) -> u32 {
        self.order.len() as u32
    }

    pub fn order(&self) -> &[Var] {
        &self.order
    }

    pub fn level(&self, var: Var) -> u32 {
        self.level[var.slot()]
    }

    /// Appends a fresh variable at the end of the order.
    pub fn new_var(&mut self) -> Var {
        let v = Var::new(self.num_vars() + 1);
        self.level.push(self.order.len() as u32);
        self.order.push(v);
        v
    }

    /// Total number of stored decision nodes.
    pub fn store_len(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn node(&self, id: ObddId) -> Option<ObddNode> {
        (!id.is_terminal()).then(|| self.nodes[id.0 as usize])
    }

    fn node_level(&self, id: ObddId) -> u32 {
        match self.node(id) {
            Some(n) => self.level(n.var),
            None => self.num_vars(),
        }
    }

    /// The unique reduced node for `(var, lo, hi)`.
    pub fn mk(&mut self, var: Var, lo: ObddId, hi: ObddId) -> ObddId {
        if lo == hi {
            return lo;
        }
        debug_assert!(self.level(var) < self.node_level(lo) && self.level(var) < self.node_level(hi));
        let key = ObddNode { var, lo, hi };
        if let Some(&id) = self.unique.get(&key) {
            return id;
        }
        let id = ObddId(self.nodes.len() as u32);
        self.nodes.push(key);
        self.unique.insert(key, id);
        id
    }

    pub fn literal(&mut self, lit: Literal) -> ObddId {
        if lit.is_positive() {
            self.mk(lit.var(), ObddId::FALSE, ObddId::TRUE)
        } else {
            self.mk(lit.var(), ObddId::TRUE, ObddId::FALSE)
        }
    }

    /// The conjunction of a consistent term.
    pub fn build_term(&mut self, term: &[Literal]) -> Result<ObddId> {
        let mut lits = term.to_vec();
        lits.sort_by_key(|l| std::cmp::Reverse(self.level(l.var())));
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(Error::InconsistentTerm(w[0].var().index()));
        }
        let mut acc = ObddId::TRUE;
        for l in lits {
            acc = if l.is_positive() {
                self.mk(l.var(), ObddId::FALSE, acc)
            } else {
                self.mk(l.var(), acc, ObddId::FALSE)
            };
        }
        Ok(acc)
    }

    fn cofactors(&self, f: ObddId, level: u32) -> (ObddId, ObddId) {
        match self.node(f) {
            Some(n) if self.level(n.var) == level => (n.lo, n.hi),
            _ => (f, f),
        }
    }

    pub fn apply(&mut self, op: BoolOp, f: ObddId, g: ObddId) -> ObddId {
        use ObddId as Id;
        if f.is_terminal() && g.is_terminal() {
            return Id::constant(op.eval(f == Id::TRUE, g == Id::TRUE));
        }
        match op {
            BoolOp::And => {
                if f == Id::FALSE || g == Id::FALSE {
                    return Id::FALSE;
                }
                if f == Id::TRUE || f == g {
                    return g;
                }
                if g == Id::TRUE {
                    return f;
                }
            }
            BoolOp::Or => {
                if f == Id::TRUE || g == Id::TRUE {
                    return Id::TRUE;
                }
                if f == Id::FALSE || f == g {
                    return g;
                }
                if g == Id::FALSE {
                    return f;
                }
            }
            BoolOp::Xor => {
                if f == g {
                    return Id::FALSE;
                }
                if f == Id::FALSE {
                    return g;
                }
                if g == Id::FALSE {
                    return f;
                }
            }
            BoolOp::Iff => {
                if f == g {
                    return Id::TRUE;
                }
                if f == Id::TRUE {
                    return g;
                }
                if g == Id::TRUE {
                    return f;
                }
            }
        }
        let (f, g) = if f <= g { (f, g) } else { (g, f) };
        if let Some(&r) = self.cache.get(&(op, f, g)) {
            return r;
        }
        let top = self.node_level(f).min(self.node_level(g));
        let var = self.order[top as usize];
        let (f0, f1) = self.cofactors(f, top);
        let (g0, g1) = self.cofactors(g, top);
        let lo = self.apply(op, f0, g0);
        let hi = self.apply(op, f1, g1);
        let r = self.mk(var, lo, hi);
        self.cache.insert((op, f, g), r);
        r
    }

    pub fn and(&mut self, f: ObddId, g: ObddId) -> ObddId {
        self.apply(BoolOp::And, f, g)
    }

    pub fn or(&mut self, f: ObddId, g: ObddId) -> ObddId {
        self.apply(BoolOp::Or, f, g)
    }

    pub fn not(&mut self, f: ObddId) -> ObddId {
        self.apply(BoolOp::Xor, f, ObddId::TRUE)
    }

    /// `fresh ⇔ f`, where `fresh` must come after every variable of `f`.
    pub fn biconditional_with_fresh(&mut self, fresh: Var, f: ObddId) -> Result<ObddId> {
        if fresh.index() > self.num_vars() {
            return Err(Error::VarOutOfRange { var: fresh.index(), num_vars: self.num_vars() });
        }
        let lvl = self.level(fresh);
        if self.support(f).iter().any(|&v| self.level(v) >= lvl) {
            return Err(Error::FreshVarOccurs(fresh.index()));
        }
        let x = self.literal(Literal::pos(fresh));
        Ok(self.apply(BoolOp::Iff, x, f))
    }

    /// Reachable decision nodes of `f`, in increasing id order.
    pub fn reachable(&self, f: ObddId) -> Vec<ObddId> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![f];
        while let Some(id) = stack.pop() {
            if let Some(n) = self.node(id) {
                if seen.insert(id) {
                    stack.push(n.lo);
                    stack.push(n.hi);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn size(&self, f: ObddId) -> usize {
        self.reachable(f).len()
    }

    pub fn support(&self, f: ObddId) -> Vec<Var> {
        let mut vars: Vec<Var> = self.reachable(f).iter().map(|&id| self.nodes[id.0 as usize].var).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn evaluate(&self, f: ObddId, omega: &Interpretation) -> bool {
        let mut id = f;
        while let Some(n) = self.node(id) {
            id = if omega.get(n.var) { n.hi } else { n.lo };
        }
        id == ObddId::TRUE
    }

    /// Number of models over all variables of the manager.
    pub fn model_count(&self, f: ObddId) -> BigUint {
        let mut memo: HashMap<ObddId, BigUint> = HashMap::new();
        let n = self.num_vars();
        // models over the variables at levels >= node_level(id)
        fn count(m: &ObddManager, id: ObddId, memo: &mut HashMap<ObddId, BigUint>) -> BigUint {
            if id == ObddId::TRUE {
                return BigUint::one();
            }
            if id == ObddId::FALSE {
                return BigUint::zero();
            }
            if let Some(c) = memo.get(&id) {
                return c.clone();
            }
            let node = m.node(id).unwrap();
            let l = m.level(node.var);
            let lo = count(m, node.lo, memo) << (m.node_level(node.lo) - l - 1);
            let hi = count(m, node.hi, memo) << (m.node_level(node.hi) - l - 1);
            let c = lo + hi;
            memo.insert(id, c.clone());
            c
        }
        count(self, f, &mut memo) << self.node_level(f).min(n)
    }

    /// DNNF encoding: every decision node becomes
    /// `Or(And(¬v, lo'), And(v, hi'))`.
    pub fn to_nnf(&self, f: ObddId) -> NnfCircuit {
        self.to_nnf_over(f, self.num_vars())
    }

    pub(crate) fn to_nnf_over(&self, f: ObddId, num_vars: u32) -> NnfCircuit {
        let mut b = CircuitBuilder::new(num_vars.max(self.num_vars()));
        let mut map: HashMap<ObddId, usize> = HashMap::new();
        map.insert(ObddId::FALSE, b.constant(false));
        map.insert(ObddId::TRUE, b.constant(true));
        for id in self.reachable(f) {
            let n = self.nodes[id.0 as usize];
            let neg = b.lit(Literal::neg(n.var));
            let pos = b.lit(Literal::pos(n.var));
            let lo = b.and(vec![neg, map[&n.lo]]);
            let hi = b.and(vec![pos, map[&n.hi]]);
            let or = b.or_with_hint(Some(n.var), vec![lo, hi]);
            map.insert(id, or);
        }
        b.finish(map[&f])
    }

    /// Loads an OBDD file into this manager; the file's order must equal the
    /// manager's.
    pub fn load(&mut self, text: &str) -> Result<ObddId> {
        obdd_format::load_into(self, text)
    }

    /// Parses an OBDD file into a fresh manager using the file's order.
    pub fn parse(text: &str) -> Result<(ObddManager, ObddId)> {
        obdd_format::parse_fresh(text)
    }
}

#[cfg(test)]
mod tests;
