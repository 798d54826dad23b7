//! Certified lower bound for `∫_0^1 (Σ_{n>=1} |a_⌊ns⌋|^p)^(1/p) ds`.
//!
//! The integrand is piecewise constant in `s`: `⌊ns⌋` only jumps at
//! fractions `m/n`. Restricted to `[s_min, 1]` and to jumps that touch the
//! support, there are finitely many pieces. The inner power sum is computed
//! exactly once and then updated at each cut; only the final `p`-th root
//! needs an enclosure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cov::{direct_pass, Rate};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, nth_root_enclosure, pow_rational, Rational};
use crate::report::{Record, ToRecord};
use crate::seq::{cesaro, lp_norm, PNorm, Seq};

/// Reduced fraction `num/den` in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub num: u64,
    pub den: u64,
}

impl Cut {
    pub fn value(&self) -> Rational {
        Rational::new(self.num.into(), self.den.into())
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

/// Strictly increasing cuts in `(s_min, 1]` where the integrand may change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakpoints {
    pub s_min: Rational,
    pub cuts: Vec<Cut>,
}

impl Breakpoints {
    pub fn values(&self) -> Vec<Rational> {
        self.cuts.iter().map(Cut::value).collect()
    }
}

fn check_s_min(s_min: &Rational) -> Result<()> {
    if !s_min.is_positive() || s_min >= &Rational::one() {
        return Err(Error::Domain(format!(
            "s_min must lie in (0, 1), got {}",
            format_rational(s_min)
        )));
    }
    Ok(())
}

/// `⌈(support_max + 1) / s_min⌉`: past this `n`, `⌊ns⌋` leaves the support for all `s > s_min`.
pub fn minimal_n_cap(support_max: u64, s_min: &Rational) -> u64 {
    (int(support_max as i64 + 1) / s_min)
        .ceil()
        .to_integer()
        .to_u64()
        .expect("n_cap fits in u64")
}

/// All reduced `m/n` with `n <= n_cap`, `1 <= m <= support_max + 1` and `s_min < m/n <= 1`.
pub fn enumerate_breakpoints(
    support_max: u64,
    s_min: &Rational,
    n_cap: u64,
) -> Result<Breakpoints> {
    check_s_min(s_min)?;
    let need = minimal_n_cap(support_max, s_min);
    if n_cap < need {
        return Err(Error::Domain(format!(
            "n_cap = {n_cap} is below the required {need}"
        )));
    }
    let m_top = support_max + 1;
    let mut cuts = Vec::new();
    for den in 1..=n_cap {
        // Smallest numerator with num/den > s_min.
        let lo = (s_min * int(den as i64))
            .floor()
            .to_integer()
            .to_u64()
            .unwrap_or(0)
            + 1;
        for num in lo..=m_top.min(den) {
            if num.gcd(&den) == 1 {
                cuts.push(Cut { num, den });
            }
        }
    }
    cuts.sort_unstable();
    Ok(Breakpoints {
        s_min: s_min.clone(),
        cuts,
    })
}

/// Sum of `⌊root_lo · width · 2^bits⌋ / 2^bits` over the pieces.
struct LowerAccumulator {
    bits: u64,
    total: BigInt,
}

impl LowerAccumulator {
    fn add(&mut self, root_lo: &Rational, width: &Rational) {
        let scaled = root_lo * width * Rational::from_integer(BigInt::one() << self.bits);
        self.total += scaled.floor().to_integer();
    }

    fn value(&self) -> Rational {
        Rational::new(self.total.clone(), BigInt::one() << self.bits)
    }
}

/// Certified lower bound for `∫_{s_min}^1 (Σ_{n>=1} |a_⌊ns⌋|^p)^(1/p) ds`, hence for the
/// integral over `[0, 1]`.
///
/// The bound is within `eps` of the exact restricted integral.
pub fn minkowski_rhs_lower(a: &Seq, p: u32, s_min: &Rational, eps: &Rational) -> Result<Rational> {
    check_s_min(s_min)?;
    assert!(p >= 1 && eps.is_positive());
    let Some(top) = a.support_max() else {
        return Ok(Rational::zero());
    };
    let n_cap = minimal_n_cap(top, s_min);
    let bp = enumerate_breakpoints(top, s_min, n_cap)?;
    let cuts = &bp.cuts;

    // |a_j|^p for j <= top + 1, the last slot being the zero just past the support.
    let mut powers: Vec<Rational> = (0..=top)
        .map(|j| pow_rational(&a.abs_value(j), p))
        .collect();
    powers.push(Rational::zero());

    let pieces = cuts.len() as u64 + 1;
    let root_eps = eps / int(2);
    let bits = (int(2 * pieces as i64) / eps).ceil().to_integer().bits();
    let mut acc = LowerAccumulator {
        bits,
        total: BigInt::zero(),
    };

    // Inner sum on (s_min, first cut), evaluated at the midpoint.
    let first = cuts[0].value();
    let mid = Rate::new((s_min + &first) / int(2))?;
    let mut inner = direct_pass(a, &mid, p).0;
    let mut root = nth_root_enclosure(&inner, p, &root_eps).lower().clone();
    acc.add(&root, &(&first - s_min));

    for (i, cut) in cuts.iter().enumerate() {
        let Some(next) = cuts.get(i + 1) else { break };
        // At s = num/den every multiple (k·num)/(k·den) moves from index k·num - 1 to k·num.
        let mut changed = false;
        let mut k = 1;
        while k * cut.den <= n_cap && k * cut.num <= top + 1 {
            let j = (k * cut.num) as usize;
            if powers[j] != powers[j - 1] {
                inner += &powers[j];
                inner -= &powers[j - 1];
                changed = true;
            }
            k += 1;
        }
        if changed {
            root = nth_root_enclosure(&inner, p, &root_eps).lower().clone();
        }
        acc.add(&root, &(next.value() - cut.value()));
    }
    Ok(acc.value())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinkowskiOutcome {
    Verified,
    /// The one-sided bound was too weak; retry with `suggested_s_min`.
    Inconclusive {
        gap: Rational,
        suggested_s_min: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiReport {
    /// Upper end of the enclosure of `(Σ_{n<=M} |A_n|^p)^(1/p)`.
    pub lhs_upper: Rational,
    /// Certified lower bound on the integral side.
    pub rhs_lower: Rational,
    pub outcome: MinkowskiOutcome,
    pub m: u64,
    pub s_min: Rational,
}

impl MinkowskiReport {
    pub fn is_verified(&self) -> bool {
        self.outcome == MinkowskiOutcome::Verified
    }
}

impl ToRecord for MinkowskiReport {
    fn to_record(&self) -> Record {
        let mut r = Record::new("minkowski");
        r.push_rational("lhs_upper", &self.lhs_upper)
            .push_rational("rhs_lower", &self.rhs_lower)
            .push("M", self.m)
            .push_rational("s_min", &self.s_min);
        match &self.outcome {
            MinkowskiOutcome::Verified => {
                r.push("status", "verified");
            }
            MinkowskiOutcome::Inconclusive {
                gap,
                suggested_s_min,
            } => {
                r.push("status", "inconclusive")
                    .push_rational("gap", gap)
                    .push_rational("suggested_s_min", suggested_s_min);
            }
        }
        r
    }
}

/// Working precision for both sides of the Minkowski comparison.
fn minkowski_eps() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 40)
}

/// Checks `(Σ_{n<=M} |A_n|^p)^(1/p) <= ∫_0^1 (Σ_{n>=1} |a_⌊ns⌋|^p)^(1/p) ds` on a
/// non-increasing nonnegative sequence.
pub fn verify_minkowski_step(a: &Seq, p: u32, m: u64, s_min: &Rational) -> Result<MinkowskiReport> {
    a.require_monotone()?;
    check_s_min(s_min)?;
    let eps = minkowski_eps();
    let lhs_upper = lp_norm(&cesaro(a, m), &PNorm::integer(p)?, &eps)
        .upper()
        .clone();
    let rhs_lower = minkowski_rhs_lower(a, p, s_min, &eps)?;
    let outcome = if lhs_upper <= rhs_lower {
        MinkowskiOutcome::Verified
    } else {
        MinkowskiOutcome::Inconclusive {
            gap: &lhs_upper - &rhs_lower,
            suggested_s_min: s_min / int(2),
        }
    };
    Ok(MinkowskiReport {
        lhs_upper,
        rhs_lower,
        outcome,
        m,
        s_min: s_min.clone(),
    })
}
