//! Exact arithmetic for truncated symmetric power series over coefficient
//! rings with Adams operations.
//!
//! The crate is organized bottom-up:
//!
//! * [`partition`]: integer partitions and their statistics.
//! * [`ring`]: exact coefficient rings with Adams operations.
//! * [`symseries`]: the ring `Λ^∧_R`, its bases, the Hall pairing, the
//!   involutions `ω` and `ω̃`, plethysm, `Exp_σ`, `Log_σ` and power structures.
//! * [`prob`]: finite pre-λ probability spaces and σ-moment generating
//!   functions, including the negation identity `E[Exp_σ(-X h₁)] = ω̃ E[Exp_σ(X h₁)]`.
//! * [`invariants`]: dimensions of `O(n)` and `Sp(n)` invariants in tensor
//!   products of exterior and symmetric powers.
//! * [`oracles`]: multigraph counting, exact Weyl constant terms for `Sp(n)`
//!   and Monte Carlo Haar integration.
//! * [`random`]: seeded random instances for property checks.
//! * [`expr`]: the expression language behind the `lsym` command line tool.

pub mod error;
pub mod expr;
pub mod invariants;
pub mod oracles;
pub mod partition;
pub mod prob;
pub mod random;
pub mod ring;
pub mod symseries;

pub use error::{Error, Result};
pub use partition::Partition;
pub use ring::{AdamsRing, Laurent, Rational};
pub use symseries::{Basis, SymSeries};
