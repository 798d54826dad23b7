//! The discrete Hardy inequality `‖A‖_p <= p' ‖a‖_p` for Cesàro means.
//!
//! [`verify_hardy`] certifies single instances with exact rationals. The
//! integral route through the Ingham representation lives in
//! [`minkowski`]; [`sharpness`] and [`norm2`] probe how close the constant
//! `p'` is to being attained.

pub mod minkowski;
pub mod norm2;
pub mod sharpness;

pub use minkowski::{
    enumerate_breakpoints, minkowski_rhs_lower, verify_minkowski_step, Breakpoints, Cut,
    MinkowskiOutcome, MinkowskiReport,
};
pub use norm2::{cesaro_adjoint_matvec, cesaro_matvec, cesaro_norm2, Norm2Estimate};
pub use sharpness::{sharpness_sweep, SharpnessRow};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{pow_rational, Rational};
use crate::report::{Record, ToRecord};
use crate::seq::{cesaro, cesaro_tail_bound, lp_power_sum, PNorm, Seq};

/// Exact `p' = p / (p - 1)`.
pub fn hardy_constant(p: &PNorm) -> Result<Rational> {
    p.conjugate().cloned().ok_or(Error::ConjugateUndefined)
}

/// `∫_0^1 a_⌊(n+1)s⌋ ds`, integrated piece by piece over `[k/(n+1), (k+1)/(n+1))`.
///
/// The result is compared with the Cesàro mean `A_n`; a mismatch is reported
/// as [`Error::IdentityBroken`].
pub fn ingham_integral(a: &Seq, n: u64) -> Result<Rational> {
    let pieces = n + 1;
    let mut integral = Rational::zero();
    for k in 0..pieces {
        // Integrand sampled at the piece midpoint (2k+1)/(2(n+1)).
        let idx = pieces * (2 * k + 1) / (2 * pieces);
        let Some(v) = a.get(idx) else { continue };
        let width =
            Rational::new((k + 1).into(), pieces.into()) - Rational::new(k.into(), pieces.into());
        integral += v * width;
    }
    let mean = cesaro(a, n).value(n);
    if integral != mean {
        return Err(Error::IdentityBroken {
            identity: "Ingham representation",
            lhs: Box::new(integral),
            rhs: Box::new(mean),
        });
    }
    Ok(integral)
}

/// Certified instance of the Hardy inequality, truncated at `m` with an exact tail bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardyReport {
    /// `Σ_{n<m} |A_n|^p + tail_bound`
    pub lhs_power_sum: Rational,
    /// `(p')^p · Σ |a_n|^p`
    pub rhs_power_sum: Rational,
    pub holds: bool,
    pub m: u64,
    pub tail_bound: Rational,
}

impl ToRecord for HardyReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new("hardy");
        r.push_rational("lhs", &self.lhs_power_sum)
            .push_rational("rhs", &self.rhs_power_sum)
            .push("holds", self.holds)
            .push("M", self.m)
            .push_rational("tail_bound", &self.tail_bound);
        r
    }
}

/// Compares `Σ_{n<m} |A_n|^p + tail` against `(p')^p Σ |a_n|^p` exactly.
///
/// Past the support every mean is `(Σ a_k)/(n+1)`, bounded in modulus by
/// `(Σ |a_k|)/(n+1)`, so the integral-test bound covers `n >= m`.
pub fn verify_hardy(a: &Seq, p: u32, m: u64) -> Result<HardyReport> {
    if p < 2 {
        return Err(Error::Domain(format!("verify_hardy needs p >= 2, got {p}")));
    }
    let needed = a.support_max().map_or(1, |k| k + 1);
    if m < needed {
        return Err(Error::Domain(format!(
            "truncation M = {m} is below support_max + 1 = {needed}"
        )));
    }
    let means = cesaro(a, m - 1);
    let head = lp_power_sum(&means, p);
    let tail_bound = cesaro_tail_bound(&a.abs_sum(), m, p);
    let lhs = head + &tail_bound;
    let constant = hardy_constant(&PNorm::integer(p)?)?;
    let rhs = pow_rational(&constant, p) * lp_power_sum(a, p);
    debug_assert!(!tail_bound.is_negative());
    Ok(HardyReport {
        holds: lhs <= rhs,
        lhs_power_sum: lhs,
        rhs_power_sum: rhs,
        m,
        tail_bound,
    })
}

/// Default truncation `4 · (support_max + 1)`.
pub fn default_truncation(a: &Seq) -> u64 {
    4 * a.support_max().map_or(1, |k| k + 1)
}
