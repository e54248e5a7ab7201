//! Inverses of multiplicative functions.
//!
//! Given `n` together with its prime factorization, this crate computes the
//! full pre-image `f⁻¹(n)` of a multiplicative function `f` (Euler's totient
//! or the sum of `k`-th powers of divisors), or an aggregate of it (size,
//! sum, sum of `q`-th powers, minimum, maximum) without materializing the
//! set.
//!
//! The pipeline is:
//!
//! 1. enumerate the divisor set `D` of `n` ([`lattice`]);
//! 2. build one sparse "atomic" Dirichlet series per prime `p` whose
//!    prime powers map into `D` ([`functions`]);
//! 3. multiply the atomic series together, keeping only denominators in
//!    `D`, with coefficients in a semiring chosen by the aggregate
//!    ([`semiring`], [`engine`]).
//!
//! The coefficient at `n` is the answer; the coefficients at every other
//! `d | n` come out of the same run.
//!
//! ```
//! use invmult::{invert, Function, FactoredInteger, InvertOptions, SetAggregator};
//!
//! let n = FactoredInteger::from_u64(24).unwrap();
//! let report = invert(&n, &Function::Phi, &SetAggregator, &InvertOptions::default()).unwrap();
//! let inverses: Vec<u64> = report
//!     .value
//!     .unwrap()
//!     .iter()
//!     .map(|m| u64::try_from(m).unwrap())
//!     .collect();
//! assert_eq!(inverses, [35, 39, 45, 52, 56, 70, 72, 78, 84, 90]);
//! ```

pub mod arith;
pub mod engine;
pub mod error;
pub mod functions;
pub mod input;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod semiring;
pub mod table;

pub use arith::{
    eval_phi, eval_sigma, factorize, integer_root, is_prime, valuation, FactoredInteger,
    FactorizeConfig,
};
pub use engine::{
    initial_series, invert, invert_kind, multiply_restricted, InverseReport, InvertOptions,
    OpCounter, SparseSeries,
};
pub use error::{Error, Result};
pub use functions::{
    build_phi_atomics, build_sigma_atomics, AtomicSeries, DivisorPowerSum, Function,
    MultiplicativeFunction, PrimePowerTerm, Totient,
};
pub use input::{parse_input, InputExpression};
pub use lattice::{build_lattice, DivisorLattice};
pub use semiring::{
    coeff_add, coeff_mul, make_aggregator, AggregateKind, AggregateValue, Aggregator,
    DynAggregator, MaxAggregator, MinAggregator, PowerSumAggregator, SetAggregator,
};
pub use num_bigint::BigUint;
