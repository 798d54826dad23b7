//! Exact scalar substrate.
//!
//! Every certified comparison in the crate is decided on [`Rational`] values.
//! Real quantities that are not rational (p-th roots) are carried as an
//! [`Enclosure`]: a rational interval that provably contains them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for building small rationals in code and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `<sign?><digits>/<digits>` or `<sign?><digits>`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |reason| Error::ParseRational {
        input: input.to_owned(),
        reason,
    };
    let s = input.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = numer.strip_prefix(['+', '-']).unwrap_or(numer);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("numerator must be an optionally signed digit string"));
    }
    let numer = BigInt::from_str(numer).map_err(|_| err("malformed numerator"))?;
    let denom = match denom {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("denominator must be a digit string"));
            }
            BigInt::from_str(d).map_err(|_| err("malformed denominator"))?
        }
    };
    if denom.is_zero() {
        return Err(err("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}

/// Renders `num/den`, including `/1` for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Decimal rendering of `q` rounded toward negative infinity to `digits` places.
pub fn decimal_floor(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * Rational::from_integer(scale)).floor().to_integer();
    render_scaled(&scaled, digits)
}

/// Decimal rendering of `q` rounded toward positive infinity to `digits` places.
pub fn decimal_ceil(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * Rational::from_integer(scale)).ceil().to_integer();
    render_scaled(&scaled, digits)
}

fn render_scaled(scaled: &BigInt, digits: u32) -> String {
    let sign = if scaled.is_negative() { "-" } else { "" };
    let mut body = scaled.abs().to_string();
    let digits = digits as usize;
    if digits == 0 {
        return format!("{sign}{body}");
    }
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
    }
    let (whole, frac) = body.split_at(body.len() - digits);
    format!("{sign}{whole}.{frac}")
}

/// Number of decimal places needed so that `10^-places <= prec`.
pub fn decimal_places(prec: &Rational) -> u32 {
    let mut places = 0;
    let mut unit = Rational::one();
    while &unit > prec && places < 60 {
        unit /= int(10);
        places += 1;
    }
    places
}

/// Exact `q^k`.
pub fn pow_rational(q: &Rational, k: u32) -> Rational {
    let k = i32::try_from(k).expect("exponent fits in i32");
    q.pow(k)
}

/// Subsampling rate: an exact rational strictly greater than zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rate {
    value: Rational,
    /// `(numer, denom)` when both fit in a machine word; enables the u128 fast path.
    small: Option<(u64, u64)>,
}

impl Rate {
    pub fn new(value: Rational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::NonPositiveRate(Box::new(value)));
        }
        let small = value.numer().to_u64().zip(value.denom().to_u64());
        Ok(Rate { value, small })
    }

    pub fn from_ratio(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Domain("rate denominator is zero".into()));
        }
        Rate::new(Rational::new(numer.into(), denom.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub(crate) fn small(&self) -> Option<(u64, u64)> {
        self.small
    }

    /// Exact `k / s` as a rational.
    pub fn inverse_mul(&self, k: u64) -> Rational {
        Rational::from_integer(k.into()) / &self.value
    }

    /// Decides `n * s < m` exactly.
    pub(crate) fn scaled_lt(&self, n: u64, m: u64) -> bool {
        match self.small {
            Some((u, v)) => (n as u128) * (u as u128) < (m as u128) * (v as u128),
            None => BigInt::from(n) * self.numer() < BigInt::from(m) * self.denom(),
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.value))
    }
}

impl FromStr for Rate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rate::new(parse_rational(s)?)
    }
}

/// `⌊n·s⌋` in exact integer arithmetic.
pub fn floor_prod(n: u64, s: &Rate) -> u64 {
    match s.small() {
        Some((u, v)) => {
            let q = (n as u128) * (u as u128) / (v as u128);
            u64::try_from(q).expect("floor product exceeds u64")
        }
        None => (BigInt::from(n) * s.numer())
            .div_floor(s.denom())
            .to_u64()
            .expect("floor product exceeds u64"),
    }
}

/// A closed rational interval certified to contain some real quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lower: Rational,
    upper: Rational,
}

impl Enclosure {
    pub fn new(lower: Rational, upper: Rational) -> Self {
        assert!(lower <= upper, "enclosure bounds out of order");
        Enclosure { lower, upper }
    }

    pub fn point(value: Rational) -> Self {
        Enclosure {
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lower <= q && q <= &self.upper
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lower: &self.lower + &other.lower,
            upper: &self.upper + &other.upper,
        }
    }

    /// Midpoint as an `f64`, for display and loose numeric comparisons.
    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lower + &self.upper) / int(2))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lower),
            format_rational(&self.upper)
        )
    }
}

/// Exact p-th root of `q` when both numerator and denominator are perfect powers.
fn exact_root(q: &Rational, p: u32) -> Option<Rational> {
    let n = q.numer().nth_root(p);
    let d = q.denom().nth_root(p);
    (n.pow(p) == *q.numer() && d.pow(p) == *q.denom()).then(|| Rational::new(n, d))
}

/// Encloses `x^(1/p)` by dyadic rationals `[lo, hi]` with `hi - lo <= eps`.
///
/// `lo^p <= x <= hi^p` holds exactly. Perfect powers yield a point enclosure.
pub fn nth_root_enclosure(x: &Rational, p: u32, eps: &Rational) -> Enclosure {
    assert!(!x.is_negative(), "nth_root_enclosure of a negative number");
    assert!(p >= 1, "root index must be positive");
    assert!(eps.is_positive(), "eps must be positive");
    if x.is_zero() {
        return Enclosure::point(Rational::zero());
    }
    if let Some(r) = exact_root(x, p) {
        return Enclosure::point(r);
    }
    // Smallest power of two D with 1/D <= eps.
    let inv = (Rational::one() / eps).ceil().to_integer();
    let bits = inv.bits().max(1);
    let scale = BigInt::one() << bits;
    // floor(x * D^p) = floor(numer * D^p / denom); r = floor root of that.
    let scaled = (x.numer() * scale.pow(p)).div_floor(x.denom());
    let r = scaled.nth_root(p);
    let lower = Rational::new(r.clone(), scale.clone());
    // r^p <= floor(x D^p) and (r+1)^p > floor(x D^p), hence (r+1)^p > x D^p.
    let upper = if r.pow(p) * x.denom() == x.numer() * scale.pow(p) {
        lower.clone()
    } else {
        Rational::new(r + 1, scale)
    };
    Enclosure::new(lower, upper)
}
