//! The one-sided change-of-variable estimate `s Σ_{n>=1} |a_⌊ns⌋| <= Σ_{n>=0} |a_n|`.
//!
//! The subsampled sum is computed along two independent routes: by walking
//! `n = 1, 2, ...` and flooring `n·s` ([`subsampled_sum_direct`]), and by
//! grouping indices through the level-set counts `#I_m(s)`
//! ([`subsampled_sum_via_counts`]). The estimate is a theorem for
//! non-increasing nonnegative sequences; for general sequences it is only a
//! probe, see [`fuzz`].

mod counting;
pub mod fuzz;

pub use counting::{count_i, count_i_enumerate, count_j, count_j_enumerate, count_j_table};
pub use fuzz::{fuzz_unrestricted, probe, sample_case, FuzzConfig, SampleClass, Witness};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use crate::exact::Rate;
use crate::exact::{floor_prod, int, pow_rational, Rational};
use crate::report::{Record, Report, ToRecord};
use crate::seq::{lp_power_sum, Seq};

/// Verdict on one instance of the estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovReport {
    /// `s · Σ_{n>=1} |a_⌊ns⌋|`
    pub lhs: Rational,
    /// `Σ_n |a_n|`
    pub rhs: Rational,
    pub holds: bool,
    /// `rhs - lhs`
    pub slack: Rational,
    /// Number of `n >= 1` whose subsample hits a nonzero entry.
    pub n_terms: u64,
}

impl ToRecord for CovReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new("cov");
        r.push_rational("lhs", &self.lhs)
            .push_rational("rhs", &self.rhs)
            .push("holds", self.holds)
            .push_rational("slack", &self.slack)
            .push("n_terms", self.n_terms);
        r
    }
}

/// Walks `n >= 1` while `⌊ns⌋` stays within the support and sums `|a_⌊ns⌋|^p`.
///
/// Returns the sum and the number of `n` that hit a nonzero entry.
pub(crate) fn direct_pass(a: &Seq, s: &Rate, p: u32) -> (Rational, u64) {
    let Some(top) = a.support_max() else {
        return (Rational::zero(), 0);
    };
    let entries = a.entries();
    let mut pos = 0usize;
    let mut sum = Rational::zero();
    let mut hits = 0u64;
    // Consecutive n often share an index; accumulate a multiplicity per run.
    let mut run: Option<(usize, u64)> = None;
    let mut n = 1u64;
    loop {
        let idx = floor_prod(n, s);
        if idx > top {
            break;
        }
        while entries[pos].0 < idx {
            pos += 1;
        }
        if entries[pos].0 == idx {
            hits += 1;
            run = match run {
                Some((at, mult)) if at == pos => Some((at, mult + 1)),
                Some((at, mult)) => {
                    sum += pow_rational(&entries[at].1.abs(), p) * int(mult as i64);
                    Some((pos, 1))
                }
                None => Some((pos, 1)),
            };
        }
        n += 1;
    }
    if let Some((at, mult)) = run {
        sum += pow_rational(&entries[at].1.abs(), p) * int(mult as i64);
    }
    (sum, hits)
}

/// `Σ_{n>=1} |a_⌊ns⌋|` by iterating `n` directly.
pub fn subsampled_sum_direct(a: &Seq, s: &Rate) -> Rational {
    direct_pass(a, s, 1).0
}

/// `Σ_m |a_m| · #I_m(s)` over the support of `a`.
pub fn subsampled_sum_via_counts(a: &Seq, s: &Rate) -> Rational {
    a.entries().iter().fold(Rational::zero(), |acc, (m, v)| {
        acc + v.abs() * int(count_i(*m, s) as i64)
    })
}

/// Evaluates both sides of the estimate for `(a, s)`.
///
/// With `require_monotone` the input must be non-increasing and nonnegative,
/// in which case `holds` is guaranteed.
pub fn verify_change_of_variable(a: &Seq, s: &Rate, require_monotone: bool) -> Result<CovReport> {
    if require_monotone {
        a.require_monotone()?;
    }
    let (sub, n_terms) = direct_pass(a, s, 1);
    let lhs = s.value() * sub;
    let rhs = lp_power_sum(a, 1);
    let slack = &rhs - &lhs;
    Ok(CovReport {
        holds: lhs <= rhs,
        lhs,
        rhs,
        slack,
        n_terms,
    })
}

/// `∫_0^∞ |a_⌊x⌋| dx`, one unit-width step per index.
pub fn step_integral_full(a: &Seq) -> Result<Rational> {
    let total = a.entries().iter().fold(Rational::zero(), |acc, (n, v)| {
        let width = int(*n as i64 + 1) - int(*n as i64);
        acc + v.abs() * width
    });
    let direct = lp_power_sum(a, 1);
    if total != direct {
        return Err(Error::IdentityBroken {
            identity: "unit step integral",
            lhs: Box::new(total),
            rhs: Box::new(direct),
        });
    }
    Ok(total)
}

/// `∫_0^∞ |a_⌊sx⌋| dx`: the step `m` occupies `[m/s, (m+1)/s)`.
fn dilated_step_integral(a: &Seq, s: &Rate) -> Rational {
    a.entries().iter().fold(Rational::zero(), |acc, (m, v)| {
        let width = s.inverse_mul(m + 1) - s.inverse_mul(*m);
        acc + v.abs() * width
    })
}

/// `s · ∫_0^∞ |a_⌊sx⌋| dx`, checked against [`step_integral_full`].
pub fn step_integral_scaled(a: &Seq, s: &Rate) -> Result<Rational> {
    let scaled = s.value() * dilated_step_integral(a, s);
    let full = step_integral_full(a)?;
    if scaled != full {
        return Err(Error::IdentityBroken {
            identity: "continuum change of variable",
            lhs: Box::new(scaled),
            rhs: Box::new(full),
        });
    }
    Ok(scaled)
}

/// Right-endpoint sum of a non-increasing step function against its integral:
/// `Σ_{n>=1} |a_⌊ns⌋| <= ∫_0^∞ |a_⌊sx⌋| dx`.
pub fn riemann_vs_integral_check(a_monotone: &Seq, s: &Rate) -> Result<Report> {
    a_monotone.require_monotone()?;
    let (lhs, hits) = direct_pass(a_monotone, s, 1);
    let rhs = dilated_step_integral(a_monotone, s);
    Ok(Report {
        check: "riemann_vs_integral",
        holds: lhs <= rhs,
        lhs,
        rhs,
        witness: None,
        cases: hits,
    })
}

/// Whether every `n >= 1` lands in exactly one level set `I_m(s)` for `m <= m_max`:
/// `Σ_{m<=m_max} #I_m(s) = #{n >= 1 : ⌊ns⌋ <= m_max}`.
pub fn partition_check(m_max: u64, s: &Rate) -> Report {
    let by_levels: u64 = (0..=m_max).map(|m| count_i(m, s)).sum();
    let mut by_walk = 0u64;
    let mut n = 1u64;
    while floor_prod(n, s) <= m_max {
        by_walk += 1;
        n += 1;
    }
    Report {
        check: "level_set_partition",
        holds: by_levels == by_walk,
        lhs: int(by_levels as i64),
        rhs: int(by_walk as i64),
        witness: None,
        cases: m_max + 1,
    }
}

/// The Dirichlet equality case: with `a_0 = 0` and `s = 1` the slack vanishes.
pub fn dirichlet_equality(a: &Seq) -> Result<CovReport> {
    if a.get(0).is_some() {
        return Err(Error::Domain("Dirichlet case needs a_0 = 0".into()));
    }
    let report = verify_change_of_variable(a, &Rate::new(Rational::one())?, false)?;
    Ok(report)
}
