//! Weighted bases: pseudo-Boolean objective functions written as multisets
//! of weighted formulas, together with their aggregators and scores.

mod base_format;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::circuit::{Interpretation, Literal, NnfCircuit, PartialInterpretation};
use crate::error::{Error, Result};

pub use base_format::{load_objective, parse_objective, serialize_objective, write_objective, SerializedObjective};

/// Exact rational weight.
pub type Weight = BigRational;

pub fn weight(n: i64) -> Weight {
    Weight::from_integer(BigInt::from(n))
}

/// Parses `-3`, `2.5`, `+7/4` and the like.
pub fn parse_weight(s: &str) -> Option<Weight> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let w = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return None;
        }
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Weight::new(num.parse().ok()?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !digits(int) || !digits(frac) {
            return None;
        }
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let num: BigInt = format!("{int}{frac}").parse().ok()?;
        Weight::new(num, scale)
    } else {
        if !digits(body) {
            return None;
        }
        Weight::from_integer(body.parse().ok()?)
    };
    Some(if neg { -w } else { w })
}

pub fn format_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitFormula {
    pub circuit: Arc<NnfCircuit>,
    /// File the circuit was read from, relative to its weighted-base file.
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Literal(Literal),
    /// Conjunction of distinct, non-complementary literals; empty is true.
    Term(Vec<Literal>),
    Circuit(CircuitFormula),
}

impl Formula {
    /// A term; single-literal terms are stored as literals.
    pub fn term(lits: Vec<Literal>) -> Result<Formula> {
        let mut seen = PartialInterpretation::new();
        for l in &lits {
            if seen.contains(l.var()) {
                return Err(Error::InconsistentTerm(l.var().index()));
            }
            seen.assign(l.var(), l.is_positive())?;
        }
        Ok(match lits.as_slice() {
            [l] => Formula::Literal(*l),
            _ => Formula::Term(lits),
        })
    }

    pub fn circuit(circuit: NnfCircuit) -> Formula {
        Formula::Circuit(CircuitFormula { circuit: Arc::new(circuit), path: None })
    }

    pub fn truth() -> Formula {
        Formula::Term(Vec::new())
    }

    /// The literals of a literal or term formula.
    pub fn term_literals(&self) -> Option<&[Literal]> {
        match self {
            Formula::Literal(l) => Some(std::slice::from_ref(l)),
            Formula::Term(t) => Some(t),
            Formula::Circuit(_) => None,
        }
    }

    pub fn holds(&self, omega: &Interpretation) -> bool {
        match self {
            Formula::Literal(l) => omega.satisfies(*l),
            Formula::Term(t) => t.iter().all(|&l| omega.satisfies(l)),
            Formula::Circuit(c) => c.circuit.evaluate(omega),
        }
    }

    /// Every literal occurring in the formula.
    pub fn literals(&self) -> Vec<Literal> {
        match self {
            Formula::Circuit(c) => c.circuit.leaf_literals(),
            f => f.term_literals().unwrap().to_vec(),
        }
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Circuit(c) => c.circuit.num_vars(),
            f => f.term_literals().unwrap().iter().map(|l| l.var().index()).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedItem {
    pub formula: Formula,
    pub weight: Weight,
}

/// Ordered multiset of weighted formulas over `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedBase {
    items: Vec<WeightedItem>,
    num_vars: u32,
}

impl WeightedBase {
    pub fn new(num_vars: u32) -> WeightedBase {
        WeightedBase { items: Vec::new(), num_vars }
    }

    pub fn push(&mut self, formula: Formula, weight: Weight) -> Result<()> {
        let max = formula.max_var();
        if max > self.num_vars {
            return Err(Error::VarOutOfRange { var: max, num_vars: self.num_vars });
        }
        self.items.push(WeightedItem { formula, weight });
        Ok(())
    }

    pub fn with_item(mut self, formula: Formula, weight: Weight) -> Result<WeightedBase> {
        self.push(formula, weight)?;
        Ok(self)
    }

    pub fn items(&self) -> &[WeightedItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// `wᵢ·φᵢ(ω)` for each item, in item order.
    pub fn values(&self, omega: &Interpretation) -> Vec<Weight> {
        self.items
            .iter()
            .map(|it| if it.formula.holds(omega) { it.weight.clone() } else { Weight::zero() })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Literals (constants count as positive literals).
    L,
    /// Terms of at most two literals.
    Q,
    /// Terms.
    P,
    /// Arbitrary NNF formulas.
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyTag {
    pub family: Family,
    pub positive_literals: bool,
    pub nonnegative_weights: bool,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.family)?;
        if self.positive_literals {
            f.write_str("^+")?;
        }
        if self.nonnegative_weights {
            f.write_str("_+")?;
        }
        Ok(())
    }
}

pub fn classify(b: &WeightedBase) -> FamilyTag {
    let mut family = Family::L;
    let mut positive_literals = true;
    let mut nonnegative_weights = true;
    for it in b.items() {
        let f = match &it.formula {
            Formula::Literal(_) => Family::L,
            Formula::Term(t) if t.len() <= 1 => Family::L,
            Formula::Term(t) if t.len() == 2 => Family::Q,
            Formula::Term(_) => Family::P,
            Formula::Circuit(_) => Family::G,
        };
        family = family.max(f);
        positive_literals &= it.formula.literals().iter().all(|l| l.is_positive());
        nonnegative_weights &= !it.weight.is_negative();
    }
    FamilyTag { family, positive_literals, nonnegative_weights }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aggregator {
    Sum,
    Leximax,
    /// Ordered weighted average; `p[i]` weighs the i-th largest value.
    Owa(Vec<Weight>),
}

impl Aggregator {
    pub fn name(&self) -> &'static str {
        match self {
            Aggregator::Sum => "sum",
            Aggregator::Leximax => "leximax",
            Aggregator::Owa(_) => "owa",
        }
    }

    /// Checks an OWA vector against a base of `n` items. The empty vector
    /// is accepted for the empty base.
    pub fn validate(&self, n: usize) -> Result<()> {
        if let Aggregator::Owa(p) = self {
            if p.len() != n {
                return Err(Error::OwaArityMismatch { weights: p.len(), items: n });
            }
            let total: Weight = p.iter().sum();
            if n > 0 && !total.is_one() {
                return Err(Error::OwaNotNormalized(format_weight(&total)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Value of an interpretation: a rational for sum and OWA, the
/// non-increasingly sorted value vector for leximax.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Score {
    Sum(Weight),
    Vector(Vec<Weight>),
}

impl Score {
    pub fn try_cmp(&self, other: &Score) -> Result<Ordering> {
        compare_scores(self, other)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Sum(w) => f.write_str(&format_weight(w)),
            Score::Vector(v) => {
                f.write_str("(")?;
                for (i, w) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(&format_weight(w))?;
                }
                f.write_str(")")
            }
        }
    }
}

pub fn compare_scores(a: &Score, b: &Score) -> Result<Ordering> {
    match (a, b) {
        (Score::Sum(x), Score::Sum(y)) => Ok(x.cmp(y)),
        (Score::Vector(x), Score::Vector(y)) if x.len() == y.len() => Ok(x.cmp(y)),
        _ => Err(Error::IncomparableScores),
    }
}

pub(crate) fn sorted_desc(mut values: Vec<Weight>) -> Vec<Weight> {
    values.sort_unstable_by(|a, b| b.cmp(a));
    values
}

/// Aggregates a raw value vector.
pub fn aggregate(agg: &Aggregator, values: Vec<Weight>) -> Result<Score> {
    agg.validate(values.len())?;
    Ok(match agg {
        Aggregator::Sum => Score::Sum(values.into_iter().sum()),
        Aggregator::Leximax => Score::Vector(sorted_desc(values)),
        Aggregator::Owa(p) => {
            let sorted = sorted_desc(values);
            Score::Sum(p.iter().zip(&sorted).map(|(p, v)| p * v).sum())
        }
    })
}

pub fn evaluate_base(b: &WeightedBase, agg: &Aggregator, omega: &Interpretation) -> Result<Score> {
    aggregate(agg, b.values(omega))
}

/// A weighted base paired with its aggregator, as stored in `.wb` files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub base: WeightedBase,
    pub aggregator: Aggregator,
}
