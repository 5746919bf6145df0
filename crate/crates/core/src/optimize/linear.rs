use std::cmp::Ordering;

use num_traits::Zero;

use super::{require_sum_or_leximax, width, OptResult};
use crate::circuit::{Interpretation, NnfCircuit, NnfNode, PartialInterpretation, Var};
use crate::error::{Error, Result};
use crate::objective::{classify, evaluate_base, sorted_desc, Aggregator, Family, Formula, Score, Weight, WeightedBase};

/// Partial interpretation whose extensions are the models of a leaf or
/// and-node, or include an optimal model of an or-node.
pub type ModelGenerator = PartialInterpretation;

/// A linear base grouped by variable.
#[derive(Clone, Debug)]
pub struct LinearBase {
    num_vars: u32,
    /// Weights of the items `x` and `¬x`, per variable slot.
    pos: Vec<Vec<Weight>>,
    neg: Vec<Vec<Weight>>,
    /// Weights of `⊤` items.
    constant: Vec<Weight>,
    /// Whether 1 is the strictly better value, per slot.
    prefer_one: Vec<bool>,
    leximax: bool,
}

impl LinearBase {
    pub fn new(b: &WeightedBase, agg: &Aggregator, num_vars: u32) -> Result<LinearBase> {
        require_sum_or_leximax(agg)?;
        let tag = classify(b);
        if tag.family != Family::L {
            return Err(Error::FamilyMismatch { expected: "L".into(), found: tag.to_string() });
        }
        let n = num_vars.max(b.num_vars()) as usize;
        let mut lb = LinearBase {
            num_vars: n as u32,
            pos: vec![Vec::new(); n],
            neg: vec![Vec::new(); n],
            constant: Vec::new(),
            prefer_one: vec![false; n],
            leximax: matches!(agg, Aggregator::Leximax),
        };
        for it in b.items() {
            match it.formula.term_literals() {
                Some([]) => lb.constant.push(it.weight.clone()),
                Some([l]) => {
                    let side = if l.is_positive() { &mut lb.pos } else { &mut lb.neg };
                    side[l.var().slot()].push(it.weight.clone());
                }
                _ => unreachable!("classified as linear"),
            }
        }
        for s in 0..n {
            lb.prefer_one[s] = lb.compare_values(s, true, false) == Ordering::Less;
        }
        Ok(lb)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Values of the items on `slot` when the variable takes `value`.
    fn contributions(&self, slot: usize, value: bool) -> impl Iterator<Item = Weight> + '_ {
        let (on, off) = if value { (&self.pos[slot], &self.neg[slot]) } else { (&self.neg[slot], &self.pos[slot]) };
        on.iter().cloned().chain(off.iter().map(|_| Weight::zero()))
    }

    fn sum(&self, slot: usize, value: bool) -> Weight {
        if value { self.pos[slot].iter().sum() } else { self.neg[slot].iter().sum() }
    }

    fn compare_values(&self, slot: usize, a: bool, b: bool) -> Ordering {
        if self.leximax {
            let x = sorted_desc(self.contributions(slot, a).collect());
            let y = sorted_desc(self.contributions(slot, b).collect());
            x.cmp(&y)
        } else {
            self.sum(slot, a).cmp(&self.sum(slot, b))
        }
    }

    fn value(&self, g: &PartialInterpretation, slot: usize) -> bool {
        g.get(Var::new(slot as u32 + 1)).unwrap_or(self.prefer_one[slot])
    }

    /// Score of the optimal completion of `g`.
    pub fn completion_score(&self, g: &PartialInterpretation) -> Score {
        if self.leximax {
            let mut v: Vec<Weight> = self.constant.clone();
            for s in 0..self.pos.len() {
                v.extend(self.contributions(s, self.value(g, s)));
            }
            Score::Vector(sorted_desc(v))
        } else {
            let mut total: Weight = self.constant.iter().sum();
            for s in 0..self.pos.len() {
                total += self.sum(s, self.value(g, s));
            }
            Score::Sum(total)
        }
    }

    /// Difference between the sum score of `g`'s completion and the best
    /// unconstrained one; orders completions exactly like their sums.
    fn sum_delta(&self, g: &PartialInterpretation) -> Weight {
        let mut d = Weight::zero();
        for (v, value) in g.iter() {
            let s = v.slot();
            if s < self.pos.len() && value != self.prefer_one[s] {
                d += self.sum(s, value) - self.sum(s, self.prefer_one[s]);
            }
        }
        d
    }
}

/// Extends `g` variable by variable with the value whose contributions are
/// smaller under the aggregator; ties and variables without items get 0.
pub fn complete_optimally(g: &ModelGenerator, lb: &LinearBase, num_vars: u32) -> Interpretation {
    let n = num_vars.max(lb.num_vars);
    let mut omega = Interpretation::new(n);
    for s in 0..n as usize {
        let v = Var::new(s as u32 + 1);
        let value = match g.get(v) {
            Some(x) => x,
            None => s < lb.prefer_one.len() && lb.prefer_one[s],
        };
        omega.set(v, value);
    }
    omega
}

/// `⊤ ↦ {}`, `x ↦ {x ↦ 1}`, `¬x ↦ {x ↦ 0}`, `⊥ ↦` none.
pub fn leaf_generator(node: &NnfNode) -> Option<ModelGenerator> {
    match node {
        NnfNode::True => Some(PartialInterpretation::new()),
        NnfNode::False => None,
        NnfNode::Lit(l) => Some(PartialInterpretation::from_literals([*l]).unwrap()),
        NnfNode::And(_) | NnfNode::Or { .. } => panic!("leaf_generator called on a gate"),
    }
}

/// Union of the children's generators, whose domains are disjoint under
/// decomposability.
pub fn and_generator(children: &[Option<&ModelGenerator>]) -> Option<ModelGenerator> {
    let mut acc = PartialInterpretation::new();
    for c in children {
        acc = acc.disjoint_union(c.as_ref()?).expect("children of a decomposable and-node share no variable");
    }
    Some(acc)
}

/// The child generator with the best optimal completion; lowest index on
/// ties.
pub fn or_generator(children: &[Option<&ModelGenerator>], lb: &LinearBase) -> Option<ModelGenerator> {
    let mut best: Option<(&ModelGenerator, Score)> = None;
    for g in children.iter().flatten() {
        let key = if lb.leximax { lb.completion_score(g) } else { Score::Sum(lb.sum_delta(g)) };
        if best.as_ref().is_none_or(|(_, k)| key.try_cmp(k).expect("same shape") == Ordering::Less) {
            best = Some((g, key));
        }
    }
    best.map(|(g, _)| g.clone())
}

/// One generator per node bottom-up, then an optimal completion at the
/// root. Polynomial for decomposable circuits and linear bases under sum
/// or leximax.
pub fn opt_dnnf_linear(phi: &NnfCircuit, b: &WeightedBase, agg: &Aggregator) -> Result<OptResult> {
    let lb = LinearBase::new(b, agg, phi.num_vars())?;
    phi.require_decomposable()?;
    let reach = phi.reachable();
    let mut gens: Vec<Option<ModelGenerator>> = vec![None; phi.num_nodes()];
    for (id, node) in phi.nodes().iter().enumerate() {
        if !reach[id] {
            continue;
        }
        gens[id] = match node {
            NnfNode::And(ch) => {
                let refs: Vec<_> = ch.iter().map(|&c| gens[c].as_ref()).collect();
                and_generator(&refs)
            }
            NnfNode::Or { children, .. } => {
                let refs: Vec<_> = children.iter().map(|&c| gens[c].as_ref()).collect();
                or_generator(&refs, &lb)
            }
            leaf => leaf_generator(leaf),
        };
    }
    let Some(root) = &gens[phi.root()] else {
        return Ok(OptResult::no_solution());
    };
    let omega = complete_optimally(root, &lb, width(phi, b));
    let score = evaluate_base(b, agg, &omega)?;
    Ok(OptResult::optimal(omega, score))
}

/// Optimal sum through the `(min, +)` semiring: `+` at and-nodes, `min` at
/// or-nodes, and at each literal leaf the weights of the base items equal
/// to that literal. Needs a smooth DNNF mentioning every variable of the
/// base.
pub fn semiring_minsum(phi: &NnfCircuit, b: &WeightedBase) -> Result<Weight> {
    let tag = classify(b);
    if tag.family != Family::L {
        return Err(Error::FamilyMismatch { expected: "L".into(), found: tag.to_string() });
    }
    phi.require_decomposable()?;
    if !phi.is_smooth() {
        return Err(Error::NotSmooth("or-node children mention different variables".into()));
    }
    let vars = phi.vars();
    let mut offset = Weight::zero();
    let mut leaf_weight = std::collections::HashMap::new();
    for it in b.items() {
        match &it.formula {
            Formula::Literal(l) => {
                if vars.binary_search(&l.var()).is_err() {
                    return Err(Error::NotSmooth(format!("variable {} of the base does not occur", l.var())));
                }
                *leaf_weight.entry(*l).or_insert_with(Weight::zero) += &it.weight;
            }
            _ => offset += &it.weight,
        }
    }
    let reach = phi.reachable();
    let mut val: Vec<Option<Weight>> = vec![None; phi.num_nodes()];
    for (id, node) in phi.nodes().iter().enumerate() {
        if !reach[id] {
            continue;
        }
        val[id] = match node {
            NnfNode::True => Some(Weight::zero()),
            NnfNode::False => None,
            NnfNode::Lit(l) => Some(leaf_weight.get(l).cloned().unwrap_or_else(Weight::zero)),
            NnfNode::And(ch) => ch.iter().map(|&c| val[c].clone()).sum(),
            NnfNode::Or { children, .. } => children.iter().filter_map(|&c| val[c].clone()).min(),
        };
    }
    match &val[phi.root()] {
        Some(v) => Ok(v + offset),
        None => Err(Error::Inconsistent),
    }
}
