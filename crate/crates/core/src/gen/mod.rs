//! Instance generators: the dependency example circuits, reduction
//! instances for the hard cells of the complexity map, and random inputs.

pub mod random;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::circuit::{CircuitBuilder, Literal, NnfCircuit, NnfNode, PartialInterpretation, Var};
use crate::compile::{build_dnf, compile_cnf_to_dnnf, Cnf};
use crate::error::{Error, Result};
use crate::obdd::{ObddId, ObddManager};
use crate::objective::{weight, Aggregator, Formula, Objective, Weight, WeightedBase};

/// Variable names, one per index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameTable {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

impl NameTable {
    pub fn new() -> NameTable {
        NameTable::default()
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<NameTable> {
        let mut t = NameTable::new();
        for n in names {
            t.push(n.as_ref())?;
        }
        Ok(t)
    }

    /// Registers the next variable under `name`.
    pub fn push(&mut self, name: &str) -> Result<Var> {
        if name.is_empty() || name.starts_with('-') || name.contains(char::is_whitespace) {
            return Err(Error::InvalidArgument(format!("bad variable name `{name}`")));
        }
        if self.index.contains_key(name) {
            return Err(Error::InvalidArgument(format!("duplicate variable name `{name}`")));
        }
        let v = Var::new(self.names.len() as u32 + 1);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        Ok(v)
    }

    fn intern(&mut self, name: &str) -> Result<Var> {
        match self.index.get(name) {
            Some(&v) => Ok(v),
            None => self.push(name),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> Option<&str> {
        self.names.get(v.slot()).map(String::as_str)
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    /// `A`, `-B1` by name, or `3`, `-3` by index.
    pub fn resolve_literal(&self, token: &str) -> Option<Literal> {
        if let Some(l) = token.parse::<i64>().ok().and_then(Literal::from_dimacs) {
            return Some(l);
        }
        let (positive, name) = match token.strip_prefix('-') {
            Some(rest) => (false, rest),
            None => (true, token),
        };
        self.var(name).map(|v| Literal::new(v, positive))
    }

    /// `<var index> <name>` lines.
    pub fn parse(text: &str) -> Result<NameTable> {
        let mut t = NameTable::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (idx, name) = line.split_once(char::is_whitespace).ok_or_else(|| Error::format(i + 1, "expected `<index> <name>`"))?;
            let idx: usize = idx.parse().map_err(|_| Error::format(i + 1, format!("bad index `{idx}`")))?;
            if idx != t.len() + 1 {
                return Err(Error::format(i + 1, format!("expected index {}, found {idx}", t.len() + 1)));
            }
            t.push(name.trim()).map_err(|e| Error::format(i + 1, e.to_string()))?;
        }
        Ok(t)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.names.iter().enumerate() {
            writeln!(out, "{} {n}", i + 1).unwrap();
        }
        out
    }
}

/// Hard constraint, objective and variable names produced by a generator.
#[derive(Clone, Debug)]
pub struct Instance {
    pub circuit: NnfCircuit,
    pub objective: Objective,
    pub names: NameTable,
}

fn lit(i: i64) -> Literal {
    Literal::from_dimacs(i).unwrap()
}

fn clauses(codes: &[&[i64]]) -> Vec<Vec<Literal>> {
    codes.iter().map(|c| c.iter().map(|&i| lit(i)).collect()).collect()
}

/// Names of the four variables of the small dependency example.
pub fn dependency_names() -> NameTable {
    NameTable::from_names(&["A1", "A2", "B", "C"]).unwrap()
}

/// `(¬A1 ∨ B) ∧ (¬A1 ∨ ¬A2) ∧ (B ∨ ¬A2) ∧ (¬A2 ∨ C)`.
pub fn dependency_cnf() -> Cnf {
    Cnf { num_vars: 4, clauses: clauses(&[&[-1, 3], &[-1, -2], &[3, -2], &[-2, 4]]) }
}

/// The CNF above as a circuit: one or-node per clause under a single
/// and-node, literal leaves shared.
pub fn dependency_cnf_circuit() -> NnfCircuit {
    let mut b = CircuitBuilder::new(4);
    let cnf = dependency_cnf();
    let mut ors = Vec::new();
    for c in &cnf.clauses {
        let ids = c.iter().map(|&l| b.lit(l)).collect();
        ors.push(ids);
    }
    let ors: Vec<_> = ors.into_iter().map(|ids| b.or(ids)).collect();
    let root = b.and(ors);
    b.finish(root)
}

/// `(A1 ∧ ¬A2 ∧ B) ∨ (¬A2 ∧ ¬A1) ∨ (B ∧ ¬A1 ∧ A2 ∧ C)`.
pub fn dependency_dnf_terms() -> Vec<Vec<Literal>> {
    clauses(&[&[1, -2, 3], &[-2, -1], &[3, -1, 2, 4]])
}

pub fn dependency_dnf_circuit() -> NnfCircuit {
    build_dnf(&dependency_dnf_terms(), 4)
}

/// Two-element sets over named elements, numbered in order of first
/// appearance.
fn index_pairs<S: AsRef<str>>(sets: &[Vec<S>], names: &mut NameTable) -> Result<Vec<(Var, Var)>> {
    let mut pairs = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        if s.len() != 2 || s[0].as_ref() == s[1].as_ref() {
            return Err(Error::BadSetSize(i));
        }
        let a = names.intern(s[0].as_ref())?;
        let b = names.intern(s[1].as_ref())?;
        pairs.push((a, b));
    }
    Ok(pairs)
}

fn sorted_pair((a, b): (Var, Var)) -> (Var, Var) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Positive 2-CNF with one clause per distinct set, and the unit-weight
/// positive linear base over all elements. The optimal sum is the size of
/// a smallest hitting set.
pub fn gen_hitting_set_linear<S: AsRef<str>>(sets: &[Vec<S>]) -> Result<Instance> {
    let mut names = NameTable::new();
    let pairs = index_pairs(sets, &mut names)?;
    let n = names.len() as u32;
    let mut b = CircuitBuilder::new(n);
    let mut seen = std::collections::HashSet::new();
    let mut clauses = Vec::new();
    for p in pairs {
        let (x, y) = sorted_pair(p);
        if seen.insert((x, y)) {
            let ids = vec![b.lit(Literal::pos(x)), b.lit(Literal::pos(y))];
            clauses.push(b.or(ids));
        }
    }
    let root = b.and(clauses);
    let mut base = WeightedBase::new(n);
    for i in 1..=n {
        base.push(Formula::Literal(Literal::pos(Var::new(i))), weight(1))?;
    }
    Ok(Instance { circuit: b.finish(root), objective: Objective { base, aggregator: Aggregator::Sum }, names })
}

/// For every term `l1 ∧ l2` the three unit-weight terms satisfied exactly
/// when it is not. The optimal sum is `|S|` minus the largest number of
/// simultaneously satisfiable terms.
pub fn gen_term_sat_quadratic(terms: &[[Literal; 2]], num_vars: u32) -> Result<Instance> {
    let mut base = WeightedBase::new(num_vars);
    for &[a, b] in terms {
        if a.var() == b.var() {
            return Err(Error::InconsistentTerm(a.var().index()));
        }
        for t in [[a.complement(), b], [a, b.complement()], [a.complement(), b.complement()]] {
            base.push(Formula::term(t.to_vec())?, weight(1))?;
        }
    }
    let names = NameTable::from_names(&(1..=num_vars).map(|i| format!("x{i}")).collect::<Vec<_>>())?;
    Ok(Instance {
        circuit: NnfCircuit::constant(true, num_vars),
        objective: Objective { base, aggregator: Aggregator::Sum },
        names,
    })
}

/// `(x ∧ y, 2)` per distinct set and `(x, −1)` per element, without
/// repetitions. Elements set to false form the hitting set, and
/// `|E| + optimum` is the size of a smallest one.
pub fn gen_hitting_set_qplus<S: AsRef<str>>(sets: &[Vec<S>]) -> Result<Instance> {
    let mut names = NameTable::new();
    let pairs = index_pairs(sets, &mut names)?;
    let n = names.len() as u32;
    let mut base = WeightedBase::new(n);
    let mut seen_pairs = std::collections::HashSet::new();
    let mut seen_vars = std::collections::HashSet::new();
    for p in pairs {
        let (x, y) = sorted_pair(p);
        if seen_pairs.insert((x, y)) {
            base.push(Formula::term(vec![Literal::pos(p.0), Literal::pos(p.1)])?, weight(2))?;
        }
        for v in [p.0, p.1] {
            if seen_vars.insert(v) {
                base.push(Formula::Literal(Literal::pos(v)), weight(-1))?;
            }
        }
    }
    Ok(Instance {
        circuit: NnfCircuit::constant(true, n),
        objective: Objective { base, aggregator: Aggregator::Sum },
        names,
    })
}

/// Rewrites a base of weighted two-literal terms with nonnegative weights
/// into a linear base and an OWA vector with
/// `g(ω) = f(ω) + K·n(n+1)/2`, where `K = max wᵢ + 1`.
pub fn gen_owa_from_quadratic(base: &WeightedBase) -> Result<Objective> {
    let n = base.len();
    let mut terms = Vec::with_capacity(n);
    for it in base.items() {
        match it.formula.term_literals() {
            Some(&[a, b]) if !num_traits::Signed::is_negative(&it.weight) => terms.push((a, b, it.weight.clone())),
            _ => {
                return Err(Error::FamilyMismatch {
                    expected: "two-literal terms with nonnegative weights".into(),
                    found: crate::objective::classify(base).to_string(),
                })
            }
        }
    }
    let k = terms.iter().map(|t| t.2.clone()).max().unwrap_or_else(|| weight(0)) + weight(1);
    let nw = weight(n as i64);
    let mut out = WeightedBase::new(base.num_vars());
    for (i, (a, b, w)) in terms.into_iter().enumerate() {
        let rank = weight((n - i) as i64);
        let hi = &nw * (&k * &rank + w);
        let lo = &nw * &k * &rank;
        out.push(Formula::Literal(a), hi.clone())?;
        out.push(Formula::Literal(b), hi)?;
        out.push(Formula::Literal(a.complement()), lo.clone())?;
        out.push(Formula::Literal(b.complement()), lo)?;
    }
    let mut p: Vec<Weight> = Vec::with_capacity(4 * n);
    for _ in 0..n {
        p.push(weight(0));
        p.push(Weight::new(1.into(), (n as i64).into()));
    }
    p.resize(4 * n, weight(0));
    Ok(Objective { base: out, aggregator: Aggregator::Owa(p) })
}

/// `K·n(n+1)/2` for a base produced from `base` by [`gen_owa_from_quadratic`].
pub fn owa_offset(base: &WeightedBase) -> Weight {
    let n = base.len() as i64;
    let k = base.items().iter().map(|it| it.weight.clone()).max().unwrap_or_else(|| weight(0)) + weight(1);
    k * weight(n * (n + 1) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosNegFlavor {
    /// `{(ψ⁺, −1), (¬ψ⁻, 1)}`: positive literals only.
    GplusLiterals,
    /// `{(¬ψ⁺, 1), (¬ψ⁻, 1)}`: nonnegative weights only.
    GplusWeights,
}

impl PosNegFlavor {
    /// Optimal sum reached exactly when `ψ⁺ ∧ ψ⁻` is satisfiable.
    pub fn sum_threshold(self) -> Weight {
        match self {
            PosNegFlavor::GplusLiterals => weight(-1),
            PosNegFlavor::GplusWeights => weight(0),
        }
    }

    /// Leximax counterpart of [`PosNegFlavor::sum_threshold`].
    pub fn leximax_threshold(self) -> Vec<Weight> {
        match self {
            PosNegFlavor::GplusLiterals => vec![weight(0), weight(-1)],
            PosNegFlavor::GplusWeights => vec![weight(0), weight(0)],
        }
    }
}

/// Conjunction of disjunctions, or its dual, as a small NNF circuit.
fn two_level(outer_and: bool, groups: &[Vec<Literal>], num_vars: u32) -> NnfCircuit {
    let mut b = CircuitBuilder::new(num_vars);
    let inner: Vec<_> = groups
        .iter()
        .map(|g| {
            let ids = g.iter().map(|&l| b.lit(l)).collect();
            if outer_and {
                b.or(ids)
            } else {
                b.and(ids)
            }
        })
        .collect();
    let root = if outer_and { b.and(inner) } else { b.or(inner) };
    b.finish(root)
}

/// Two-item general base over a positive CNF `ψ⁺` and a negative CNF `ψ⁻`.
pub fn gen_posneg_cnf(
    pos: &[Vec<Literal>],
    neg: &[Vec<Literal>],
    num_vars: u32,
    flavor: PosNegFlavor,
) -> Result<Instance> {
    for (i, c) in pos.iter().enumerate() {
        if !c.iter().all(|l| l.is_positive()) {
            return Err(Error::ClausePolarityViolation(i));
        }
    }
    for (i, c) in neg.iter().enumerate() {
        if c.iter().any(|l| l.is_positive()) {
            return Err(Error::ClausePolarityViolation(pos.len() + i));
        }
    }
    let complement = |cs: &[Vec<Literal>]| -> Vec<Vec<Literal>> {
        cs.iter().map(|c| c.iter().map(|l| l.complement()).collect()).collect()
    };
    let not_neg = two_level(false, &complement(neg), num_vars);
    let mut base = WeightedBase::new(num_vars);
    match flavor {
        PosNegFlavor::GplusLiterals => {
            base.push(Formula::circuit(two_level(true, pos, num_vars)), weight(-1))?;
            base.push(Formula::circuit(not_neg), weight(1))?;
        }
        PosNegFlavor::GplusWeights => {
            base.push(Formula::circuit(two_level(false, &complement(pos), num_vars)), weight(1))?;
            base.push(Formula::circuit(not_neg), weight(1))?;
        }
    }
    let names = NameTable::from_names(&(1..=num_vars).map(|i| format!("x{i}")).collect::<Vec<_>>())?;
    Ok(Instance {
        circuit: NnfCircuit::constant(true, num_vars),
        objective: Objective { base, aggregator: Aggregator::Sum },
        names,
    })
}

/// Result of [`eliminate_negative_literals`].
#[derive(Clone, Debug)]
pub struct NegLitElimination {
    pub base: WeightedBase,
    pub manager: ObddManager,
    /// `⋀ (¬x ⇔ n_x)` over the replaced variables.
    pub constraint: ObddId,
    /// `(x, n_x)` pairs; `n_x` is numbered after the original variables.
    pub fresh: Vec<(Var, Var)>,
}

/// Replaces each negative literal `¬x` by a fresh positive variable `n_x`.
/// Each `n_x` sits right after `x` in the OBDD order, so the constraint is
/// a chain of linear size.
pub fn eliminate_negative_literals(base: &WeightedBase) -> Result<NegLitElimination> {
    let n = base.num_vars();
    let mut negated: Vec<Var> = base
        .items()
        .iter()
        .flat_map(|it| it.formula.literals())
        .filter(|l| !l.is_positive())
        .map(|l| l.var())
        .collect();
    negated.sort();
    negated.dedup();
    let fresh: Vec<(Var, Var)> =
        negated.iter().enumerate().map(|(i, &x)| (x, Var::new(n + 1 + i as u32))).collect();
    let sub: HashMap<Var, Var> = fresh.iter().copied().collect();
    let total = n + fresh.len() as u32;
    let rename = |l: Literal| if l.is_positive() { l } else { Literal::pos(sub[&l.var()]) };

    let mut out = WeightedBase::new(total);
    for it in base.items() {
        let f = match &it.formula {
            Formula::Circuit(c) => {
                let nodes = c
                    .circuit
                    .nodes()
                    .iter()
                    .map(|node| match node {
                        NnfNode::Lit(l) => NnfNode::Lit(rename(*l)),
                        other => other.clone(),
                    })
                    .collect();
                Formula::circuit(NnfCircuit::from_nodes(nodes, total)?)
            }
            f => Formula::term(f.term_literals().unwrap().iter().map(|&l| rename(l)).collect())?,
        };
        out.push(f, it.weight.clone())?;
    }

    let mut order = Vec::with_capacity(total as usize);
    for i in 1..=n {
        let v = Var::new(i);
        order.push(v);
        if let Some(&nx) = sub.get(&v) {
            order.push(nx);
        }
    }
    let mut manager = ObddManager::with_order(order)?;
    let mut acc = ObddId::TRUE;
    for &(x, nx) in fresh.iter().rev() {
        let lo = manager.mk(nx, ObddId::FALSE, acc);
        let hi = manager.mk(nx, acc, ObddId::FALSE);
        acc = manager.mk(x, lo, hi);
    }
    Ok(NegLitElimination { base: out, manager, constraint: acc, fresh })
}

/// The package-installation example.
#[derive(Clone, Debug)]
pub struct PackageDemo {
    pub cnf: Cnf,
    /// `cnf` compiled to DNNF.
    pub circuit: NnfCircuit,
    pub names: NameTable,
    /// `A ∧ B1`.
    pub gamma: PartialInterpretation,
    /// Unit cost for every installed package.
    pub minimal_change: WeightedBase,
    /// Reward `−1` for every version-2 package.
    pub newest: WeightedBase,
}

pub const PACKAGE_NAMES: [&str; 9] = ["A", "A1", "A2", "B", "B1", "B2", "C", "C1", "C2"];

/// `(A ⇔ (A1 ∨ A2)) ∧ (B ⇔ (B1 ∨ B2)) ∧ (C ⇔ (C1 ∨ C2)) ∧ (A1 ⇒ B)
/// ∧ (A2 ⇒ (B ∧ C)) ∧ (¬A1 ∨ ¬A2)` with `γ = A ∧ B1`.
pub fn gen_package_demo() -> PackageDemo {
    let names = NameTable::from_names(&PACKAGE_NAMES).unwrap();
    let v = |s: &str| names.var(s).unwrap().index() as i64;
    let mut cl: Vec<Vec<i64>> = Vec::new();
    for p in ["A", "B", "C"] {
        let (x, x1, x2) = (v(p), v(&format!("{p}1")), v(&format!("{p}2")));
        cl.push(vec![-x, x1, x2]);
        cl.push(vec![-x1, x]);
        cl.push(vec![-x2, x]);
    }
    cl.push(vec![-v("A1"), v("B")]);
    cl.push(vec![-v("A2"), v("B")]);
    cl.push(vec![-v("A2"), v("C")]);
    cl.push(vec![-v("A1"), -v("A2")]);
    let cnf = Cnf { num_vars: 9, clauses: cl.iter().map(|c| c.iter().map(|&i| lit(i)).collect()).collect() };
    let circuit = compile_cnf_to_dnnf(&cnf);
    let gamma = PartialInterpretation::from_literals([lit(v("A")), lit(v("B1"))]).unwrap();
    let mut minimal_change = WeightedBase::new(9);
    let mut newest = WeightedBase::new(9);
    for name in PACKAGE_NAMES {
        let x = Literal::pos(names.var(name).unwrap());
        minimal_change.push(Formula::Literal(x), weight(1)).unwrap();
        if name.ends_with('2') {
            newest.push(Formula::Literal(x), weight(-1)).unwrap();
        }
    }
    PackageDemo { cnf, circuit, names, gamma, minimal_change, newest }
}

#[cfg(test)]
mod tests;
