use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{width, OptResult};
use crate::circuit::{Interpretation, NnfCircuit, Var};
use crate::error::{Error, Result};
use crate::objective::{evaluate_base, Aggregator, Formula, Score, Weight, WeightedBase};

pub const ORACLE_VAR_CAP: u32 = 24;

/// Comparison key of an interpretation. Weights are scaled to a common
/// denominator when the products stay far from `i128` overflow.
#[derive(PartialEq, Eq)]
enum Key {
    Int(i128),
    Vector(Vec<i128>),
    Exact(Score),
}

impl Key {
    fn cmp(&self, other: &Key) -> Ordering {
        match (self, other) {
            (Key::Int(a), Key::Int(b)) => a.cmp(b),
            (Key::Vector(a), Key::Vector(b)) => a.cmp(b),
            (Key::Exact(a), Key::Exact(b)) => a.try_cmp(b).expect("same shape"),
            _ => unreachable!("keys of one run share a shape"),
        }
    }
}

fn lcm_of_denominators<'a>(ws: impl Iterator<Item = &'a Weight>) -> BigInt {
    ws.fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
}

/// `w · scale` as an `i128` bounded by `2⁴⁰` in absolute value.
fn small(w: &Weight, scale: &BigInt) -> Option<i128> {
    let v = (w * Weight::from_integer(scale.clone())).to_integer();
    (v.abs() < BigInt::from(1u64 << 40)).then(|| v.to_i128()).flatten()
}

struct Scaled {
    weights: Vec<i128>,
    owa: Option<Vec<i128>>,
}

impl Scaled {
    fn new(b: &WeightedBase, agg: &Aggregator) -> Option<Scaled> {
        let scale = lcm_of_denominators(b.items().iter().map(|it| &it.weight));
        let weights = b.items().iter().map(|it| small(&it.weight, &scale)).collect::<Option<Vec<_>>>()?;
        let owa = match agg {
            Aggregator::Owa(p) => {
                let ps = lcm_of_denominators(p.iter());
                Some(p.iter().map(|w| small(w, &ps)).collect::<Option<Vec<_>>>()?)
            }
            _ => None,
        };
        Some(Scaled { weights, owa })
    }

    fn key(&self, holds: &[bool], agg: &Aggregator) -> Key {
        let mut values: Vec<i128> =
            self.weights.iter().zip(holds).map(|(&w, &h)| if h { w } else { 0 }).collect();
        match agg {
            Aggregator::Sum => Key::Int(values.iter().sum()),
            Aggregator::Leximax => {
                values.sort_unstable_by(|a, b| b.cmp(a));
                Key::Vector(values)
            }
            Aggregator::Owa(_) => {
                values.sort_unstable_by(|a, b| b.cmp(a));
                Key::Int(self.owa.as_ref().unwrap().iter().zip(&values).map(|(p, v)| p * v).sum())
            }
        }
    }
}

/// Minimum over all `2^num_vars` interpretations, visited in lexicographic
/// order with variable 1 most significant; the first optimum is kept.
pub fn oracle_enumerate(phi: &NnfCircuit, b: &WeightedBase, agg: &Aggregator) -> Result<OptResult> {
    agg.validate(b.len())?;
    let n = width(phi, b);
    if n > ORACLE_VAR_CAP {
        return Err(Error::TooManyVars { vars: n, cap: ORACLE_VAR_CAP });
    }
    let scaled = Scaled::new(b, agg);
    let mut buf = Vec::new();
    let mut item_bufs: Vec<Vec<bool>> = vec![Vec::new(); b.len()];
    let mut holds = vec![false; b.len()];
    let mut omega = Interpretation::new(n);
    let mut best: Option<(Interpretation, Key)> = None;
    for code in 0..1u64 << n {
        for i in 1..=n {
            omega.set(Var::new(i), code >> (n - i) & 1 == 1);
        }
        if !phi.evaluate_into(&omega, &mut buf) {
            continue;
        }
        for (k, it) in b.items().iter().enumerate() {
            holds[k] = match &it.formula {
                Formula::Circuit(c) => c.circuit.evaluate_into(&omega, &mut item_bufs[k]),
                f => f.holds(&omega),
            };
        }
        let key = match &scaled {
            Some(s) => s.key(&holds, agg),
            None => Key::Exact(evaluate_base(b, agg, &omega)?),
        };
        if best.as_ref().is_none_or(|(_, k)| key.cmp(k) == Ordering::Less) {
            best = Some((omega.clone(), key));
        }
    }
    match best {
        Some((omega, _)) => {
            let score = evaluate_base(b, agg, &omega)?;
            Ok(OptResult::optimal(omega, score))
        }
        None => Ok(OptResult::no_solution()),
    }
}
