//! Size-Ramsey tooling for cycles versus cycles and paths: arrowing
//! decisions, explicit constructions, witness colourings, Hamiltonicity of
//! blue graphs and expansion checks.
//!
//! Numeric code is generic over [`scalar::Scalar`]; the aliases below fix the
//! common choices.

pub mod arrowing;
pub mod constructions;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod hamiltonicity;
pub mod rng;
pub mod sat;
pub mod scalar;
pub mod witnesses;

pub use error::{Error, Result};
pub use graph::{Color, Coloring, Graph, TargetPattern, VertexSet};
pub use scalar::Scalar;

/// Exact arbitrary-precision rationals.
pub type Exact = num_rational::BigRational;
/// Exact rationals over `i64`; overflow panics in checked builds.
pub type SmallRational = num_rational::Ratio<i64>;

pub type ExactPairContext = expansion::PairContext<Exact>;
pub type F64PairContext = expansion::PairContext<f64>;
pub type ExactBoundKind = constructions::BoundKind<Exact>;
pub type ExactIntervalBounds = constructions::IntervalBounds<Exact>;
