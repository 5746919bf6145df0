//! Random instances for property tests and benchmarks.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{CircuitBuilder, Interpretation, Literal, NnfCircuit, NnfNode, NodeId, PartialInterpretation, Var};
use crate::compile::Cnf;
use crate::obdd::{BoolOp, ObddId, ObddManager};
use crate::objective::{weight, Formula, WeightedBase};

fn random_literal<R: Rng>(rng: &mut R, vars: &[Var]) -> Literal {
    Literal::new(*vars.choose(rng).unwrap(), rng.gen_bool(0.5))
}

fn all_vars(num_vars: u32) -> Vec<Var> {
    (1..=num_vars).map(Var::new).collect()
}

/// Arbitrary NNF DAG (usually not decomposable) with at most `max_edges`
/// edges.
pub fn random_nnf<R: Rng>(rng: &mut R, num_vars: u32, max_edges: usize) -> NnfCircuit {
    random_nnf_with(rng, num_vars, max_edges, false)
}

/// Like [`random_nnf`] with positive literals only.
pub fn random_monotone_nnf<R: Rng>(rng: &mut R, num_vars: u32, max_edges: usize) -> NnfCircuit {
    random_nnf_with(rng, num_vars, max_edges, true)
}

fn random_nnf_with<R: Rng>(rng: &mut R, num_vars: u32, max_edges: usize, positive: bool) -> NnfCircuit {
    let vars = all_vars(num_vars);
    let mut nodes = Vec::new();
    let leaves = if vars.is_empty() { 1 } else { rng.gen_range(1..=2 * vars.len()) };
    for _ in 0..leaves {
        let node = if vars.is_empty() || rng.gen_bool(0.05) {
            if rng.gen_bool(0.7) {
                NnfNode::True
            } else {
                NnfNode::False
            }
        } else {
            let l = random_literal(rng, &vars);
            NnfNode::Lit(if positive { Literal::pos(l.var()) } else { l })
        };
        nodes.push(node);
    }
    let mut budget = rng.gen_range(0..=max_edges);
    while budget > 0 {
        let k = rng.gen_range(1..=3).min(budget).min(nodes.len());
        budget -= k;
        let mut ids: Vec<NodeId> = (0..nodes.len()).collect();
        // bias towards recent nodes so the root sees most of the DAG
        let recent = ids.split_off(nodes.len().saturating_sub(6));
        let mut children: Vec<NodeId> = Vec::with_capacity(k);
        for _ in 0..k {
            let pool = if rng.gen_bool(0.6) || ids.is_empty() { &recent } else { &ids };
            let c = *pool.choose(rng).unwrap();
            if !children.contains(&c) {
                children.push(c);
            }
        }
        let node = if rng.gen_bool(0.5) {
            NnfNode::And(children)
        } else {
            let decision = (!vars.is_empty() && rng.gen_bool(0.1)).then(|| *vars.choose(rng).unwrap());
            NnfNode::Or { decision, children }
        };
        nodes.push(node);
    }
    NnfCircuit::from_nodes(nodes, num_vars).expect("generated circuit is well formed")
}

struct DnnfGen {
    b: CircuitBuilder,
    masks: HashMap<NodeId, u64>,
    pool: Vec<NodeId>,
    budget: usize,
}

impl DnnfGen {
    fn node<R: Rng>(&mut self, rng: &mut R, allowed: &[Var], depth: u32) -> NodeId {
        if allowed.is_empty() {
            return self.b.constant(rng.gen_bool(0.85));
        }
        let allowed_mask = allowed.iter().fold(0u64, |m, v| m | 1 << v.slot());
        if !self.pool.is_empty() && rng.gen_bool(0.15) {
            let fits: Vec<NodeId> =
                self.pool.iter().copied().filter(|id| self.masks[id] & !allowed_mask == 0).collect();
            if let Some(&id) = fits.choose(rng) {
                return id;
            }
        }
        if depth == 0 || self.budget < 2 || rng.gen_bool(0.2) {
            if rng.gen_bool(0.05) {
                return self.b.constant(rng.gen_bool(0.5));
            }
            let l = random_literal(rng, allowed);
            let id = self.b.lit(l);
            self.masks.insert(id, 1 << l.var().slot());
            return id;
        }
        let k = rng.gen_range(2..=3).min(self.budget);
        self.budget -= k;
        let mut children = Vec::with_capacity(k);
        if allowed.len() >= 2 && rng.gen_bool(0.5) {
            let mut shuffled = allowed.to_vec();
            shuffled.shuffle(rng);
            let k = k.min(shuffled.len());
            let mut cuts: Vec<usize> = (1..shuffled.len()).collect::<Vec<_>>();
            cuts.shuffle(rng);
            let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
            cuts.sort_unstable();
            let mut start = 0;
            for end in cuts.into_iter().chain([shuffled.len()]) {
                children.push(self.node(rng, &shuffled[start..end], depth - 1));
                start = end;
            }
            let id = self.b.and(children.clone());
            self.record(id, &children);
            id
        } else {
            for _ in 0..k {
                let mut sub = allowed.to_vec();
                sub.shuffle(rng);
                sub.truncate(rng.gen_range(1..=allowed.len()));
                sub.sort_unstable();
                children.push(self.node(rng, &sub, depth - 1));
            }
            let decision = rng.gen_bool(0.1).then(|| *allowed.choose(rng).unwrap());
            let id = self.b.or_with_hint(decision, children.clone());
            self.record(id, &children);
            id
        }
    }

    fn record(&mut self, id: NodeId, children: &[NodeId]) {
        let m = children.iter().map(|c| self.masks.get(c).copied().unwrap_or(0)).fold(0, |a, b| a | b);
        if self.masks.insert(id, m).is_none() {
            self.pool.push(id);
        }
    }
}

/// Random decomposable circuit over at most 64 variables.
pub fn random_dnnf<R: Rng>(rng: &mut R, num_vars: u32, max_edges: usize) -> NnfCircuit {
    assert!(num_vars <= 64, "random_dnnf supports at most 64 variables");
    let mut g = DnnfGen { b: CircuitBuilder::new(num_vars), masks: HashMap::new(), pool: Vec::new(), budget: max_edges };
    let root = g.node(rng, &all_vars(num_vars), 7);
    g.b.finish(root)
}

/// Flat disjunction of random terms; about one term in ten is inconsistent.
pub fn random_dnf<R: Rng>(rng: &mut R, num_vars: u32, max_terms: usize, max_len: usize) -> NnfCircuit {
    let vars = all_vars(num_vars);
    let mut b = CircuitBuilder::new(num_vars);
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mut t: Vec<Literal> = random_term(rng, num_vars, max_len).literals();
        if !t.is_empty() && rng.gen_bool(0.1) {
            t.push(t[0].complement());
        }
        if t.is_empty() && !vars.is_empty() {
            t.push(random_literal(rng, &vars));
        }
        let ids = t.into_iter().map(|l| b.lit(l)).collect();
        terms.push(b.and(ids));
    }
    let root = b.or(terms);
    b.finish(root)
}

/// Consistent term of at most `max_len` distinct variables.
pub fn random_term<R: Rng>(rng: &mut R, num_vars: u32, max_len: usize) -> PartialInterpretation {
    let mut vars = all_vars(num_vars);
    vars.shuffle(rng);
    let len = rng.gen_range(0..=max_len.min(vars.len()));
    PartialInterpretation::from_literals(vars[..len].iter().map(|&v| Literal::new(v, rng.gen_bool(0.5))))
        .expect("distinct variables")
}

pub fn random_interpretation<R: Rng>(rng: &mut R, num_vars: u32) -> Interpretation {
    Interpretation::from_values((0..num_vars).map(|_| rng.gen_bool(0.5)).collect())
}

/// Literal items, up to `max_per_var` per variable, in random order.
pub fn random_linear_base<R: Rng>(
    rng: &mut R,
    num_vars: u32,
    max_per_var: usize,
    weights: RangeInclusive<i64>,
) -> WeightedBase {
    let mut items = Vec::new();
    for v in all_vars(num_vars) {
        for _ in 0..rng.gen_range(0..=max_per_var) {
            items.push((Literal::new(v, rng.gen_bool(0.5)), rng.gen_range(weights.clone())));
        }
    }
    items.shuffle(rng);
    let mut b = WeightedBase::new(num_vars);
    for (l, w) in items {
        b.push(Formula::Literal(l), weight(w)).unwrap();
    }
    b
}

/// `n_items` term items of length at most `max_term_len`; the empty term
/// shows up now and then.
pub fn random_polynomial_base<R: Rng>(
    rng: &mut R,
    num_vars: u32,
    n_items: usize,
    max_term_len: usize,
    weights: RangeInclusive<i64>,
) -> WeightedBase {
    let mut b = WeightedBase::new(num_vars);
    for _ in 0..n_items {
        let t = if rng.gen_bool(0.1) { Vec::new() } else { nonempty_term(rng, num_vars, max_term_len) };
        b.push(Formula::term(t).unwrap(), weight(rng.gen_range(weights.clone()))).unwrap();
    }
    b
}

/// `n_items` two-literal terms; needs at least two variables.
pub fn random_quadratic_base<R: Rng>(
    rng: &mut R,
    num_vars: u32,
    n_items: usize,
    weights: RangeInclusive<i64>,
) -> WeightedBase {
    assert!(num_vars >= 2);
    let mut b = WeightedBase::new(num_vars);
    for _ in 0..n_items {
        let mut vars = all_vars(num_vars);
        vars.shuffle(rng);
        let t = vars[..2].iter().map(|&v| Literal::new(v, rng.gen_bool(0.5))).collect();
        b.push(Formula::term(t).unwrap(), weight(rng.gen_range(weights.clone()))).unwrap();
    }
    b
}

fn nonempty_term<R: Rng>(rng: &mut R, num_vars: u32, max_len: usize) -> Vec<Literal> {
    let mut vars = all_vars(num_vars);
    vars.shuffle(rng);
    let len = rng.gen_range(1..=max_len.min(vars.len()).max(1)).min(vars.len());
    vars[..len].iter().map(|&v| Literal::new(v, rng.gen_bool(0.5))).collect()
}

/// Random function over the manager's variables, built by `apply` on
/// literals up to the given depth.
pub fn random_obdd<R: Rng>(rng: &mut R, m: &mut ObddManager, depth: u32) -> ObddId {
    let vars = m.order().to_vec();
    if vars.is_empty() || depth == 0 || rng.gen_bool(0.25) {
        if vars.is_empty() || rng.gen_bool(0.05) {
            return ObddId::constant(rng.gen_bool(0.5));
        }
        return m.literal(random_literal(rng, &vars));
    }
    let op = *[BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Iff, BoolOp::And, BoolOp::Or].choose(rng).unwrap();
    let f = random_obdd(rng, m, depth - 1);
    let g = random_obdd(rng, m, depth - 1);
    m.apply(op, f, g)
}

/// `num_clauses` clauses of `k` distinct variables each.
pub fn random_cnf<R: Rng>(rng: &mut R, num_vars: u32, num_clauses: usize, k: usize) -> Cnf {
    let clauses = (0..num_clauses)
        .map(|_| {
            let mut vars = all_vars(num_vars);
            vars.shuffle(rng);
            vars[..k.min(vars.len())].iter().map(|&v| Literal::new(v, rng.gen_bool(0.5))).collect()
        })
        .collect();
    Cnf { num_vars, clauses }
}
