//! Exact-arithmetic laboratory for the discrete change-of-variable estimate
//! `s Σ_{n>=1} |a_⌊ns⌋| <= Σ_{n>=0} |a_n|` and the discrete Hardy inequality
//! `‖A‖_p <= p/(p-1) ‖a‖_p`.
//!
//! Modules, bottom up:
//!
//! - [`exact`]: rationals, exact floors, root enclosures.
//! - [`seq`]: finitely supported sequences, Cesàro means, rearrangement,
//!   summation-by-parts identities.
//! - [`cov`]: level-set counts, dual-path subsampled sums, step integrals,
//!   and the counterexample fuzzer.
//! - [`hardy`]: Ingham representation, certified Hardy instances, the
//!   Minkowski integral bound, sharpness sweeps and the `p = 2` operator norm.

pub mod cov;
pub mod error;
pub mod exact;
pub mod hardy;
pub mod report;
pub mod seq;

pub use error::{Error, Result};
pub use exact::{Enclosure, Rate, Rational};
pub use report::{Record, Report, ToRecord};
pub use seq::{PNorm, Seq};
