use super::{require_sum_or_leximax, width, OptResult};
use crate::circuit::{Interpretation, NnfCircuit, PartialInterpretation};
use crate::error::{Error, Result};
use crate::objective::{classify, evaluate_base, Aggregator, WeightedBase};

/// For each consistent term, the interpretation satisfying it with every
/// other variable false; the best of these is optimal when every formula of
/// the base is monotone and every weight nonnegative.
pub fn opt_dnf_monotone(phi: &NnfCircuit, b: &WeightedBase, agg: &Aggregator) -> Result<OptResult> {
    require_sum_or_leximax(agg)?;
    let tag = classify(b);
    if !(tag.positive_literals && tag.nonnegative_weights) {
        return Err(Error::FamilyMismatch { expected: "G^+_+".into(), found: tag.to_string() });
    }
    let terms = phi.dnf_terms().ok_or(Error::NotDnfShape)?;
    let n = width(phi, b);
    let mut best: Option<(Interpretation, crate::objective::Score)> = None;
    for t in terms {
        let Ok(term) = PartialInterpretation::from_literals(t) else {
            continue;
        };
        let mut omega = Interpretation::new(n);
        term.apply_to(&mut omega);
        let score = evaluate_base(b, agg, &omega)?;
        if best.as_ref().is_none_or(|(_, s)| score.try_cmp(s).unwrap().is_lt()) {
            best = Some((omega, score));
        }
    }
    Ok(match best {
        Some((omega, score)) => OptResult::optimal(omega, score),
        None => OptResult::no_solution(),
    })
}
