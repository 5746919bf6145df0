//! DIMACS ingestion and a small top-down CNF to DNNF compiler: unit
//! propagation, connected components, lowest-index branching and a bounded
//! cache of residual clause sets.

mod dimacs;

use std::collections::HashMap;

use crate::circuit::{CircuitBuilder, Interpretation, Literal, NnfCircuit, NodeId, Var};

pub use dimacs::{parse_dimacs, serialize_dimacs, Cnf};

pub const DEFAULT_CACHE_CAP: usize = 1_000_000;

pub fn compile_cnf_to_dnnf(cnf: &Cnf) -> NnfCircuit {
    compile_with_cache_cap(cnf, DEFAULT_CACHE_CAP)
}

pub fn compile_with_cache_cap(cnf: &Cnf, cache_cap: usize) -> NnfCircuit {
    let mut clauses = Vec::with_capacity(cnf.clauses.len());
    for c in &cnf.clauses {
        let mut c = c.clone();
        c.sort();
        c.dedup();
        if c.is_empty() {
            let mut b = CircuitBuilder::new(cnf.num_vars);
            let f = b.constant(false);
            return b.finish(f);
        }
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            continue; // tautology
        }
        clauses.push(c);
    }
    let mut comp = Compiler { b: CircuitBuilder::new(cnf.num_vars), cache: HashMap::new(), cache_cap };
    let root = comp.compile(clauses);
    comp.b.finish(root)
}

type Clause = Vec<Literal>;

struct Compiler {
    b: CircuitBuilder,
    cache: HashMap<Vec<Clause>, NodeId>,
    cache_cap: usize,
}

/// `clauses | lit`, or `None` when a clause becomes empty.
fn assign(clauses: &[Clause], lit: Literal) -> Option<Vec<Clause>> {
    let mut out = Vec::with_capacity(clauses.len());
    for c in clauses {
        if c.contains(&lit) {
            continue;
        }
        let reduced: Clause = c.iter().copied().filter(|&l| l != lit.complement()).collect();
        if reduced.is_empty() {
            return None;
        }
        out.push(reduced);
    }
    Some(out)
}

/// Partitions clauses into variable-connected components, ordered by their
/// lowest variable.
fn components(clauses: Vec<Clause>) -> Vec<Vec<Clause>> {
    let width = clauses.iter().flatten().map(|l| l.var().slot() + 1).max().unwrap_or(0);
    let mut parent: Vec<usize> = (0..width).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for c in &clauses {
        let a = find(&mut parent, c[0].var().slot());
        for l in &c[1..] {
            let a = find(&mut parent, a);
            let b = find(&mut parent, l.var().slot());
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: Vec<(usize, Vec<Clause>)> = Vec::new();
    for c in clauses {
        let r = find(&mut parent, c[0].var().slot());
        match by_root.iter_mut().find(|(k, _)| *k == r) {
            Some((_, v)) => v.push(c),
            None => by_root.push((r, vec![c])),
        }
    }
    by_root.sort_by_key(|(k, _)| *k);
    by_root.into_iter().map(|(_, v)| v).collect()
}

impl Compiler {
    fn compile(&mut self, mut clauses: Vec<Clause>) -> NodeId {
        let mut units = Vec::new();
        while let Some(u) = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]) {
            units.push(u);
            match assign(&clauses, u) {
                Some(next) => clauses = next,
                None => return self.b.constant(false),
            }
        }
        units.sort();
        let mut children: Vec<NodeId> = units.iter().map(|&l| self.b.lit(l)).collect();
        if !clauses.is_empty() {
            for comp in components(clauses) {
                let c = self.compile_component(comp);
                children.push(c);
            }
        }
        if children.len() == 1 {
            return children[0];
        }
        self.b.and_folded(children)
    }

    fn compile_component(&mut self, mut clauses: Vec<Clause>) -> NodeId {
        for c in clauses.iter_mut() {
            c.sort();
        }
        clauses.sort();
        if let Some(&id) = self.cache.get(&clauses) {
            return id;
        }
        let x = clauses.iter().flat_map(|c| c.iter().map(|l| l.var())).min().expect("non-empty component");
        let mut branches = Vec::with_capacity(2);
        for lit in [Literal::neg(x), Literal::pos(x)] {
            let sub = match assign(&clauses, lit) {
                Some(rest) => self.compile(rest),
                None => self.b.constant(false),
            };
            let l = self.b.lit(lit);
            branches.push(self.b.and_folded(vec![l, sub]));
        }
        let id = self.b.or_folded(Some(x), branches);
        if self.cache.len() < self.cache_cap {
            self.cache.insert(clauses, id);
        }
        id
    }
}

/// Flat disjunction of terms; inconsistent terms are dropped.
pub fn build_dnf(terms: &[Vec<Literal>], num_vars: u32) -> NnfCircuit {
    let mut b = CircuitBuilder::new(num_vars);
    let mut children = Vec::new();
    for t in terms {
        let mut seen: HashMap<Var, bool> = HashMap::new();
        let mut lits = Vec::with_capacity(t.len());
        let mut ok = true;
        for &l in t {
            match seen.insert(l.var(), l.is_positive()) {
                Some(p) if p != l.is_positive() => ok = false,
                Some(_) => {}
                None => lits.push(l),
            }
        }
        if !ok {
            continue;
        }
        let ids = lits.into_iter().map(|l| b.lit(l)).collect();
        children.push(b.and(ids));
    }
    let root = b.or(children);
    b.finish(root)
}

/// Disjunction of the full terms of the given models.
pub fn build_mods(models: &[Interpretation], num_vars: u32) -> NnfCircuit {
    let terms: Vec<Vec<Literal>> = models
        .iter()
        .map(|m| (1..=num_vars).map(|i| Literal::new(Var::new(i), m.get(Var::new(i)))).collect())
        .collect();
    build_dnf(&terms, num_vars)
}

#[cfg(test)]
mod tests;
