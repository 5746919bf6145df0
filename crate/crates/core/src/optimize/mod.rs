//! Optimal models of a circuit under a weighted-base objective.
//!
//! | algorithm        | constraint | objective          | aggregators    |
//! |------------------|------------|--------------------|----------------|
//! | `dnnf-linear`    | DNNF       | literals           | sum, leximax   |
//! | `dnf-monotone`   | DNF        | positive, `w ≥ 0`  | sum, leximax   |
//! | `fpt-poly`       | DNNF       | terms, `n ≤ cap`   | sum, leximax   |
//! | `obdd-linearize` | OBDD       | OBDDs, `n ≤ cap`   | sum, leximax   |
//! | `brute`          | any NNF    | any                | any            |
//!
//! All algorithms break ties the same way: lowest child index at or-nodes,
//! value 0 for unconstrained variables, and the first optimum in
//! enumeration order.

mod dnf;
mod fpt;
mod linear;
mod oracle;

use std::fmt;

use crate::circuit::{Interpretation, Literal, NnfCircuit, PartialInterpretation};
use crate::compile::build_dnf;
use crate::error::{Error, Result};
use crate::objective::{classify, Aggregator, Family, Score, WeightedBase};

pub use dnf::opt_dnf_monotone;
pub use fpt::{opt_fpt_polynomial, opt_obdd_linearize, FptOptions, FptStats, DEFAULT_N_CAP};
pub use linear::{
    and_generator, complete_optimally, leaf_generator, opt_dnnf_linear, or_generator, semiring_minsum,
    LinearBase, ModelGenerator,
};
pub use oracle::{oracle_enumerate, ORACLE_VAR_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptStatus {
    Optimal { model: Interpretation, score: Score },
    NoSolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptResult {
    pub status: OptStatus,
}

impl OptResult {
    pub fn optimal(model: Interpretation, score: Score) -> OptResult {
        OptResult { status: OptStatus::Optimal { model, score } }
    }

    pub fn no_solution() -> OptResult {
        OptResult { status: OptStatus::NoSolution }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self.status, OptStatus::Optimal { .. })
    }

    pub fn model(&self) -> Option<&Interpretation> {
        match &self.status {
            OptStatus::Optimal { model, .. } => Some(model),
            OptStatus::NoSolution => None,
        }
    }

    pub fn score(&self) -> Option<&Score> {
        match &self.status {
            OptStatus::Optimal { score, .. } => Some(score),
            OptStatus::NoSolution => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    DnnfLinear,
    DnfMonotone,
    FptPolynomial,
    ObddLinearize,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DnnfLinear => "dnnf-linear",
            Algorithm::DnfMonotone => "dnf-monotone",
            Algorithm::FptPolynomial => "fpt-poly",
            Algorithm::ObddLinearize => "obdd-linearize",
            Algorithm::Brute => "brute",
        }
    }

    pub fn from_name(s: &str) -> Option<Algorithm> {
        [
            Algorithm::DnnfLinear,
            Algorithm::DnfMonotone,
            Algorithm::FptPolynomial,
            Algorithm::ObddLinearize,
            Algorithm::Brute,
        ]
        .into_iter()
        .find(|a| a.name() == s)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DispatchOptions {
    /// `None` picks the first applicable algorithm.
    pub algorithm: Option<Algorithm>,
    pub fpt: FptOptions,
}


pub(crate) fn require_sum_or_leximax(agg: &Aggregator) -> Result<()> {
    match agg {
        Aggregator::Sum | Aggregator::Leximax => Ok(()),
        Aggregator::Owa(_) => Err(Error::UnsupportedAggregator(agg.name().into())),
    }
}

/// Number of variables an interpretation needs to cover both inputs.
pub(crate) fn width(phi: &NnfCircuit, b: &WeightedBase) -> u32 {
    phi.num_vars().max(b.num_vars())
}

/// `φ | γ ∧ γ`. Flat DNFs stay flat: `γ` is distributed into every term.
pub fn condition_and_fix(phi: &NnfCircuit, gamma: &PartialInterpretation) -> NnfCircuit {
    if gamma.is_empty() {
        return phi.clone();
    }
    match phi.dnf_terms() {
        Some(terms) => {
            let fixed: Vec<Vec<Literal>> = terms
                .into_iter()
                .filter(|t| t.iter().all(|l| gamma.get(l.var()).is_none_or(|v| v == l.is_positive())))
                .map(|mut t| {
                    t.retain(|l| !gamma.contains(l.var()));
                    t.extend(gamma.literals());
                    t
                })
                .collect();
            build_dnf(&fixed, phi.num_vars())
        }
        None => phi.condition(gamma).conjoin_term(gamma),
    }
}

/// Why no polynomial or FPT algorithm covers the instance.
fn refusal(phi: &NnfCircuit, b: &WeightedBase, agg: &Aggregator, opts: &DispatchOptions) -> String {
    let tag = classify(b);
    let decomposable = phi.is_decomposable();
    let vars = width(phi, b);
    let mut msg = format!("{vars} variables exceed the enumeration cap of {ORACLE_VAR_CAP}; ");
    msg.push_str(&if let Aggregator::Owa(_) = agg {
        "OWA aggregation is NP-hard already for linear objectives with nonnegative weights and a trivial constraint".to_string()
    } else if !decomposable {
        "optimization over non-decomposable NNF constraints is NP-hard already for linear objectives".to_string()
    } else {
        match tag.family {
            Family::L => unreachable!("linear objectives over DNNF are always accepted"),
            Family::Q | Family::P => format!(
                "objectives made of terms are NP-hard over DNNF even when the constraint is true \
                 (family {tag}); they are only fixed-parameter tractable in the number of items, \
                 and n = {} exceeds the cap of {}",
                b.len(),
                opts.fpt.n_cap
            ),
            Family::G => format!(
                "objectives made of general formulas (family {tag}) are not fixed-parameter \
                 tractable in the number of items over DNNF, not even with two items"
            ),
        }
    });
    msg
}

/// Runs the requested algorithm, or the first applicable one:
/// `dnnf-linear`, `dnf-monotone`, `fpt-poly`, then `brute`.
pub fn dispatch(
    phi: &NnfCircuit,
    b: &WeightedBase,
    agg: &Aggregator,
    opts: &DispatchOptions,
) -> Result<(OptResult, Algorithm)> {
    agg.validate(b.len())?;
    if let Some(a) = opts.algorithm {
        let r = match a {
            Algorithm::DnnfLinear => opt_dnnf_linear(phi, b, agg)?,
            Algorithm::DnfMonotone => opt_dnf_monotone(phi, b, agg)?,
            Algorithm::FptPolynomial => opt_fpt_polynomial(phi, b, agg, &opts.fpt)?.0,
            Algorithm::Brute => oracle_enumerate(phi, b, agg)?,
            Algorithm::ObddLinearize => {
                return Err(Error::InvalidArgument("obdd-linearize needs OBDD inputs".into()))
            }
        };
        return Ok((r, a));
    }
    let tag = classify(b);
    let simple_agg = require_sum_or_leximax(agg).is_ok();
    let decomposable = phi.is_decomposable();
    if simple_agg && decomposable && tag.family == Family::L {
        return Ok((opt_dnnf_linear(phi, b, agg)?, Algorithm::DnnfLinear));
    }
    if simple_agg && tag.positive_literals && tag.nonnegative_weights && phi.dnf_terms().is_some() {
        return Ok((opt_dnf_monotone(phi, b, agg)?, Algorithm::DnfMonotone));
    }
    if simple_agg && decomposable && tag.family <= Family::P && b.len() <= opts.fpt.n_cap {
        return Ok((opt_fpt_polynomial(phi, b, agg, &opts.fpt)?.0, Algorithm::FptPolynomial));
    }
    if width(phi, b) <= ORACLE_VAR_CAP {
        return Ok((oracle_enumerate(phi, b, agg)?, Algorithm::Brute));
    }
    Err(Error::IntractableCombination(refusal(phi, b, agg, opts)))
}
