//! Optimization over compiled propositional constraints.
//!
//! Hard constraints are NNF circuits (usually decomposable ones, DNNF);
//! objective functions are weighted bases aggregated by sum, leximax or
//! OWA. The [`optimize`] module holds the polynomial and fixed-parameter
//! algorithms together with a brute-force oracle, and [`gen`] builds the
//! reduction instances that separate the tractable cases from the hard
//! ones.

pub mod circuit;
pub mod cli;
pub mod compile;
pub mod error;
pub mod gen;
pub mod obdd;
pub mod objective;
pub mod optimize;

pub use circuit::{Interpretation, Literal, NnfCircuit, NnfNode, NodeId, PartialInterpretation, Var};
pub use error::{Error, Result};
pub use objective::{Aggregator, Formula, Score, Weight, WeightedBase, WeightedItem};
pub use optimize::{OptResult, OptStatus};
