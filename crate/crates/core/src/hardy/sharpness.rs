//! Near-extremal ratios `‖A‖_p / ‖a‖_p` for `a_n = (n+1)^(-1/p - ε)`, `n <= N`.
//!
//! The family is irrational, so entries are carried as intervals. Each
//! entry comes from `powf` and is widened outward by two ulps per side,
//! which covers the documented accuracy of the platform `pow`. All sums are
//! accumulated exactly in 96-bit fixed point; products use outward-rounded
//! `f64`. The final ratio is an exact rational enclosure.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{
    decimal_ceil, decimal_floor, decimal_places, format_rational, int, nth_root_enclosure,
    Enclosure, Rational,
};
use crate::report::{Record, ToRecord};
use crate::seq::PNorm;

use super::hardy_constant;

const FRAC_BITS: i32 = 96;

/// Closed interval of nonnegative reals `[lo, hi]` in `f64`.
#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    fn widen(lo: f64, hi: f64, ulps: u32) -> Interval {
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval {
            lo: lo.max(0.0),
            hi,
        }
    }

    fn mul(self, other: Interval) -> Interval {
        Interval::widen(self.lo * other.lo, self.hi * other.hi, 1)
    }

    fn powi(self, k: u32) -> Interval {
        (1..k).fold(self, |acc, _| acc.mul(self))
    }
}

/// `[lo, hi] · 2^-96`, both ends exact integers.
#[derive(Clone, Copy, Debug, Default)]
struct Fixed {
    lo: i128,
    hi: i128,
}

impl Fixed {
    fn from_interval(x: Interval) -> Result<Fixed> {
        let scale = 2f64.powi(FRAC_BITS);
        let (lo, hi) = ((x.lo * scale).floor(), (x.hi * scale).ceil());
        if hi >= 2f64.powi(126) {
            return Err(Error::Overflow);
        }
        Ok(Fixed {
            lo: lo as i128,
            hi: hi as i128,
        })
    }

    fn to_interval(self) -> Interval {
        let scale = 2f64.powi(-FRAC_BITS);
        // i128 -> f64 rounds to nearest; one ulp outward restores the enclosure.
        Interval::widen(self.lo as f64 * scale, self.hi as f64 * scale, 1)
    }

    fn add(self, other: Fixed) -> Result<Fixed> {
        Ok(Fixed {
            lo: self.lo.checked_add(other.lo).ok_or(Error::Overflow)?,
            hi: self.hi.checked_add(other.hi).ok_or(Error::Overflow)?,
        })
    }

    fn div_int(self, d: u64) -> Fixed {
        let d = d as i128;
        Fixed {
            lo: self.lo.div_euclid(d),
            hi: -(-self.hi).div_euclid(d),
        }
    }

    fn lower_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.lo), BigInt::one() << FRAC_BITS)
    }

    fn upper_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.hi), BigInt::one() << FRAC_BITS)
    }
}

/// `f64` interval containing the rational `q >= 0`.
fn enclose_rational(q: &Rational) -> Interval {
    let approx = q.to_f64().unwrap_or(f64::INFINITY);
    let (mut lo, mut hi) = (approx, approx);
    while Rational::from_float(lo).is_some_and(|l| &l > q) {
        lo = lo.next_down();
    }
    while Rational::from_float(hi).is_some_and(|h| &h < q) {
        hi = hi.next_up();
    }
    Interval {
        lo: lo.max(0.0),
        hi,
    }
}

/// One row of the sweep table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessRow {
    pub eps: Rational,
    pub n: u64,
    /// Enclosure of `‖A‖_p / ‖a‖_p`, both norms truncated at `n`.
    pub ratio: Enclosure,
    pub p_prime: Rational,
    pub precision: Rational,
}

impl SharpnessRow {
    pub const HEADER: &'static str = "eps,N,ratio_lower,ratio_upper,p_prime,precision";

    /// Delimiter-separated line matching [`SharpnessRow::HEADER`].
    pub fn csv_line(&self) -> String {
        let places = decimal_places(&self.precision);
        format!(
            "{},{},{},{},{},{}",
            format_rational(&self.eps),
            self.n,
            decimal_floor(self.ratio.lower(), places),
            decimal_ceil(self.ratio.upper(), places),
            format_rational(&self.p_prime),
            format_rational(&self.precision)
        )
    }
}

impl ToRecord for SharpnessRow {
    fn to_record(&self) -> Record {
        let places = decimal_places(&self.precision);
        let mut r = Record::new("sharpness");
        r.push_rational("eps", &self.eps)
            .push("N", self.n)
            .push("ratio_lower", decimal_floor(self.ratio.lower(), places))
            .push("ratio_upper", decimal_ceil(self.ratio.upper(), places))
            .push_rational("p_prime", &self.p_prime)
            .push_rational("precision", &self.precision);
        r
    }
}

fn ratio_for(p: u32, eps: &Rational, n_max: u64, prec: &Rational) -> Result<Enclosure> {
    let exponent = enclose_rational(&(Rational::new(BigInt::one(), BigInt::from(p)) + eps));
    let mut prefix = Fixed::default();
    let mut seq_power = Fixed::default();
    let mut mean_power = Fixed::default();
    for n in 0..=n_max {
        let base = (n + 1) as f64;
        // Larger exponent gives the smaller value since base >= 1.
        let a = Interval::widen(base.powf(-exponent.hi), base.powf(-exponent.lo), 2);
        let a_fixed = Fixed::from_interval(a)?;
        prefix = prefix.add(a_fixed)?;
        seq_power = seq_power.add(Fixed::from_interval(a.powi(p))?)?;
        let mean = prefix.div_int(n + 1).to_interval();
        mean_power = mean_power.add(Fixed::from_interval(mean.powi(p))?)?;
    }
    if seq_power.lo <= 0 {
        return Err(Error::PrecisionNotReached {
            achieved: "sequence norm not bounded away from zero".into(),
        });
    }
    let lo = mean_power.lower_rational() / seq_power.upper_rational();
    let hi = mean_power.upper_rational() / seq_power.lower_rational();
    let root_eps = prec / int(4);
    let ratio = Enclosure::new(
        nth_root_enclosure(&lo, p, &root_eps).lower().clone(),
        nth_root_enclosure(&hi, p, &root_eps).upper().clone(),
    );
    if &ratio.width() > prec {
        return Err(Error::PrecisionNotReached {
            achieved: format_rational(&ratio.width()),
        });
    }
    Ok(ratio)
}

/// Ratio enclosures for each `ε` at truncation `n_max`, in input order.
pub fn sharpness_sweep(
    p: u32,
    eps_list: &[Rational],
    n_max: u64,
    prec: &Rational,
) -> Result<Vec<SharpnessRow>> {
    if p < 2 {
        return Err(Error::Domain(format!(
            "sharpness sweep needs p >= 2, got {p}"
        )));
    }
    if !prec.is_positive() {
        return Err(Error::Domain("precision must be positive".into()));
    }
    for (i, e) in eps_list.iter().enumerate() {
        if !e.is_positive() {
            return Err(Error::Domain(format!(
                "eps must be positive, got {}",
                format_rational(e)
            )));
        }
        if eps_list[..i].contains(e) {
            return Err(Error::Domain(format!(
                "duplicate eps {}",
                format_rational(e)
            )));
        }
    }
    let p_prime = hardy_constant(&PNorm::integer(p)?)?;
    eps_list
        .par_iter()
        .map(|eps| {
            let ratio = ratio_for(p, eps, n_max, prec)?;
            Ok(SharpnessRow {
                eps: eps.clone(),
                n: n_max,
                ratio,
                p_prime: p_prime.clone(),
                precision: prec.clone(),
            })
        })
        .collect()
}
