use std::ops::Range;
use std::thread;

use super::{opt_dnnf_linear, require_sum_or_leximax, width, OptResult};
use crate::circuit::{Literal, NnfCircuit, PartialInterpretation};
use crate::error::{Error, Result};
use crate::obdd::{ObddId, ObddManager};
use crate::objective::{aggregate, classify, evaluate_base, Aggregator, Family, Formula, Score, Weight, WeightedBase};

pub const DEFAULT_N_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptOptions {
    /// Largest accepted number of items.
    pub n_cap: usize,
    /// Worker threads for the pattern enumeration; never changes the result.
    pub jobs: usize,
}

impl Default for FptOptions {
    fn default() -> Self {
        FptOptions { n_cap: DEFAULT_N_CAP, jobs: 1 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FptStats {
    /// Sign patterns enumerated, always `2ⁿ`.
    pub patterns: u64,
}

struct Pattern<'a> {
    phi: &'a NnfCircuit,
    terms: Vec<&'a [Literal]>,
    weights: Vec<&'a Weight>,
    agg: &'a Aggregator,
}

type Candidate = (u64, Score, PartialInterpretation);

impl Pattern<'_> {
    /// Score shared by every interpretation satisfying exactly the terms
    /// whose bit is set in `s`.
    fn score(&self, s: u64) -> Score {
        let values = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, &w)| if s >> i & 1 == 1 { w.clone() } else { Weight::from_integer(0.into()) })
            .collect();
        aggregate(self.agg, values).expect("validated aggregator")
    }

    /// First term, in left-to-right distribution order, that extends
    /// `p`, satisfies every clause from `k` on and keeps `φ | term`
    /// consistent. Clauses already satisfied by `p` are not distributed.
    fn distribute(&self, clauses: &[Vec<Literal>], k: usize, p: &mut PartialInterpretation) -> Option<PartialInterpretation> {
        if !self.phi.consistent_under(p) {
            return None;
        }
        let Some(c) = clauses.get(k) else {
            return Some(p.clone());
        };
        if c.iter().any(|l| p.get(l.var()) == Some(l.is_positive())) {
            return self.distribute(clauses, k + 1, p);
        }
        for &l in c {
            if p.contains(l.var()) {
                continue;
            }
            p.assign(l.var(), l.is_positive()).unwrap();
            let found = self.distribute(clauses, k + 1, p);
            p.unassign(l.var());
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn search(&self, range: Range<u64>) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        'patterns: for s in range {
            let score = self.score(s);
            if let Some((_, b, _)) = &best {
                if !score.try_cmp(b).unwrap().is_lt() {
                    continue;
                }
            }
            let mut p = PartialInterpretation::new();
            let mut clauses = Vec::new();
            for (i, t) in self.terms.iter().enumerate() {
                if s >> i & 1 == 1 {
                    for l in t.iter() {
                        if p.assign(l.var(), l.is_positive()).is_err() {
                            continue 'patterns;
                        }
                    }
                } else {
                    if t.is_empty() {
                        continue 'patterns;
                    }
                    clauses.push(t.iter().map(|l| l.complement()).collect());
                }
            }
            if let Some(term) = self.distribute(&clauses, 0, &mut p) {
                best = Some((s, score, term));
            }
        }
        best
    }
}

/// Enumerates the `2ⁿ` patterns of satisfied and falsified terms. Each
/// pattern is a conjunction of terms and negated terms; its clauses are
/// distributed into terms `t` until `φ | t` is consistent. Patterns whose
/// score cannot beat the best one so far are skipped.
pub fn opt_fpt_polynomial(
    phi: &NnfCircuit,
    b: &WeightedBase,
    agg: &Aggregator,
    opts: &FptOptions,
) -> Result<(OptResult, FptStats)> {
    require_sum_or_leximax(agg)?;
    let tag = classify(b);
    if tag.family > Family::P {
        return Err(Error::FamilyMismatch { expected: "P".into(), found: tag.to_string() });
    }
    if b.len() > opts.n_cap {
        return Err(Error::NExceedsCap { n: b.len(), cap: opts.n_cap });
    }
    phi.require_decomposable()?;
    let pat = Pattern {
        phi,
        terms: b.items().iter().map(|it| it.formula.term_literals().unwrap()).collect(),
        weights: b.items().iter().map(|it| &it.weight).collect(),
        agg,
    };
    let total = 1u64 << b.len();
    let jobs = (opts.jobs.max(1) as u64).min(total);
    let best = if jobs == 1 {
        pat.search(0..total)
    } else {
        let chunk = total.div_ceil(jobs);
        let found: Vec<Option<Candidate>> = thread::scope(|scope| {
            let pat = &pat;
            let handles: Vec<_> = (0..jobs)
                .map(|j| scope.spawn(move || pat.search(j * chunk..((j + 1) * chunk).min(total))))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut best: Option<Candidate> = None;
        for c in found.into_iter().flatten() {
            if best.as_ref().is_none_or(|(_, s, _)| c.1.try_cmp(s).unwrap().is_lt()) {
                best = Some(c);
            }
        }
        best
    };
    let stats = FptStats { patterns: total };
    let Some((_, score, term)) = best else {
        return Ok((OptResult::no_solution(), stats));
    };
    let omega = phi.model_under(&term, width(phi, b)).expect("consistent pattern term");
    debug_assert_eq!(evaluate_base(b, agg, &omega).unwrap(), score);
    Ok((OptResult::optimal(omega, score), stats))
}

/// Replaces every item that is not a literal by a fresh variable `y` with
/// `y ⇔ φᵢ` conjoined to the constraint, then optimizes the resulting
/// linear problem over the DNNF image of the OBDD. Fresh variables come
/// last in the order; the witness is projected back.
pub fn opt_obdd_linearize(
    m: &ObddManager,
    phi: ObddId,
    items: &[(ObddId, Weight)],
    agg: &Aggregator,
    n_cap: usize,
) -> Result<OptResult> {
    require_sum_or_leximax(agg)?;
    if items.len() > n_cap {
        return Err(Error::NExceedsCap { n: items.len(), cap: n_cap });
    }
    let orig = m.num_vars();
    let mut m2 = m.clone();
    let mut psi = phi;
    let mut lits = Vec::with_capacity(items.len());
    for &(f, _) in items {
        let lit = match m2.node(f) {
            Some(n) if n.lo.is_terminal() && n.hi.is_terminal() => Literal::new(n.var, n.hi == ObddId::TRUE),
            _ => {
                let y = m2.new_var();
                let eq = m2.biconditional_with_fresh(y, f)?;
                psi = m2.and(psi, eq);
                Literal::pos(y)
            }
        };
        lits.push(lit);
    }
    let circuit = m2.to_nnf(psi);
    let mut lin = WeightedBase::new(m2.num_vars());
    for (l, (_, w)) in lits.into_iter().zip(items) {
        lin.push(Formula::Literal(l), w.clone())?;
    }
    let r = opt_dnnf_linear(&circuit, &lin, agg)?;
    let Some(full) = r.model() else {
        return Ok(OptResult::no_solution());
    };
    let omega = full.project(orig);
    let values = items.iter().map(|(f, w)| if m.evaluate(*f, &omega) { w.clone() } else { Weight::from_integer(0.into()) }).collect();
    let score = aggregate(agg, values)?;
    debug_assert_eq!(Some(&score), r.score());
    Ok(OptResult::optimal(omega, score))
}
