//! Finitely supported rational sequences and the operators acting on them.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cov::count_j;
use crate::error::{Error, Result};
use crate::exact::{
    format_rational, int, nth_root_enclosure, parse_rational, pow_rational, Enclosure, Rate,
    Rational,
};
use crate::report::Report;

/// A finitely supported sequence `{a_n}_{n >= 0}`; absent indices are zero.
///
/// Entries are kept sorted by index with zero values dropped, so two sequences
/// compare equal exactly when they agree at every index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Seq {
    entries: Vec<(u64, Rational)>,
}

impl Seq {
    pub fn zero() -> Self {
        Seq::default()
    }

    /// Builds from `(index, value)` pairs with strictly increasing indices.
    pub fn new(entries: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        let mut out: Vec<(u64, Rational)> = Vec::new();
        let mut last: Option<u64> = None;
        for (idx, value) in entries {
            if last.is_some_and(|l| idx <= l) {
                return Err(Error::Domain(format!(
                    "indices must be strictly increasing (index {idx} after {})",
                    last.unwrap()
                )));
            }
            last = Some(idx);
            if !value.is_zero() {
                out.push((idx, value));
            }
        }
        Ok(Seq { entries: out })
    }

    /// Values placed at indices `0, 1, 2, ...`.
    pub fn from_dense(values: impl IntoIterator<Item = Rational>) -> Self {
        Seq {
            entries: values
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i as u64, v))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(u64, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest index carrying a nonzero value.
    pub fn support_max(&self) -> Option<u64> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: u64) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&idx, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn value(&self, idx: u64) -> Rational {
        self.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn abs_value(&self, idx: u64) -> Rational {
        self.get(idx)
            .map(|v| v.abs())
            .unwrap_or_else(Rational::zero)
    }

    /// Dense `|a_0|, ..., |a_K|` up to the support maximum.
    pub fn abs_dense(&self) -> Vec<Rational> {
        let len = self.support_max().map_or(0, |k| k as usize + 1);
        let mut out = vec![Rational::zero(); len];
        for (i, v) in &self.entries {
            out[*i as usize] = v.abs();
        }
        out
    }

    /// Sum of `|a_n|` over the support.
    pub fn abs_sum(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (_, v)| acc + v.abs())
    }

    pub fn scaled(&self, c: &Rational) -> Seq {
        Seq::from_sorted(self.entries.iter().map(|(i, v)| (*i, v * c)))
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: &Rational, other: &Seq, beta: &Rational) -> Seq {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            let next = match (x.peek(), y.peek()) {
                (None, None) => break,
                (Some((i, a)), None) => {
                    let r = (*i, a * alpha);
                    x.next();
                    r
                }
                (None, Some((j, b))) => {
                    let r = (*j, b * beta);
                    y.next();
                    r
                }
                (Some((i, a)), Some((j, b))) => {
                    if i < j {
                        let r = (*i, a * alpha);
                        x.next();
                        r
                    } else if j < i {
                        let r = (*j, b * beta);
                        y.next();
                        r
                    } else {
                        let r = (*i, a * alpha + b * beta);
                        x.next();
                        y.next();
                        r
                    }
                }
            };
            out.push(next);
        }
        Seq::from_sorted(out)
    }

    fn from_sorted(entries: impl IntoIterator<Item = (u64, Rational)>) -> Seq {
        Seq {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// True when `a_0 >= a_1 >= ... >= 0` over all indices (absent ones count as zero).
    pub fn is_nonincreasing_nonneg(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    /// First index at which the non-increasing nonnegative property fails.
    pub fn monotonicity_violation(&self) -> Option<u64> {
        let mut prev: Option<&Rational> = None;
        for (pos, (idx, v)) in self.entries.iter().enumerate() {
            // A gap means a zero followed by a positive value.
            if v.is_negative() || *idx != pos as u64 {
                return Some(*idx);
            }
            if prev.is_some_and(|p| v > p) {
                return Some(*idx);
            }
            prev = Some(v);
        }
        None
    }

    pub fn require_monotone(&self) -> Result<()> {
        match self.monotonicity_violation() {
            Some(index) => Err(Error::MonotonicityViolation { index }),
            None => Ok(()),
        }
    }

    /// Parses the line-oriented `<index> <rational>` format.
    pub fn parse(text: &str) -> Result<Seq> {
        let mut entries = Vec::new();
        let mut last: Option<u64> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::ParseSequence {
                    line,
                    reason: format!("expected `<index> <rational>`, got {trimmed:?}"),
                });
            };
            let idx: u64 = idx.parse().map_err(|_| Error::ParseSequence {
                line,
                reason: format!("bad index {idx:?}"),
            })?;
            if last.is_some_and(|l| idx <= l) {
                return Err(Error::ParseSequence {
                    line,
                    reason: format!("index {idx} is not strictly increasing"),
                });
            }
            last = Some(idx);
            let val = parse_rational(val).map_err(|e| Error::ParseSequence {
                line,
                reason: e.to_string(),
            })?;
            entries.push((idx, val));
        }
        Ok(Seq::from_sorted(entries))
    }

    /// Renders in the same format [`Seq::parse`] accepts.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in &self.entries {
            let _ = writeln!(out, "{i} {}", format_rational(v));
        }
        out
    }

    /// Compact inline form `{0:1/2,3:-1/1}`.
    pub fn compact(&self) -> String {
        let body = self
            .entries
            .iter()
            .map(|(i, v)| format!("{i}:{}", format_rational(v)))
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{body}}}")
    }
}

impl FromStr for Seq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Seq::parse(s)
    }
}

/// Exponent `p >= 1` with its conjugate `p' = p / (p - 1)` (absent when `p = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNorm {
    p: Rational,
    conjugate: Option<Rational>,
}

impl PNorm {
    pub fn new(p: Rational) -> Result<Self> {
        if p < Rational::one() {
            return Err(Error::Domain(format!(
                "exponent must be >= 1, got {}",
                format_rational(&p)
            )));
        }
        let conjugate = (!p.is_one()).then(|| &p / (&p - Rational::one()));
        Ok(PNorm { p, conjugate })
    }

    pub fn integer(p: u32) -> Result<Self> {
        PNorm::new(int(p.into()))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn conjugate(&self) -> Option<&Rational> {
        self.conjugate.as_ref()
    }

    pub fn as_integer(&self) -> Option<u32> {
        if self.p.is_integer() {
            self.p.to_integer().to_u32()
        } else {
            None
        }
    }
}

/// Exact `Σ |a_n|^p`.
pub fn lp_power_sum(a: &Seq, p: u32) -> Rational {
    a.entries.iter().fold(Rational::zero(), |acc, (_, v)| {
        acc + pow_rational(&v.abs(), p)
    })
}

/// Encloses `(Σ |a_n|^p)^(1/p)` with width at most `eps`.
///
/// Integer `p` takes a single root of the exact power sum. For `p = u/v` each
/// `|a_n|^u` is first enclosed under a `v`-th root and the summed interval is
/// pushed outward through the final `u`-th root; the term precision is halved
/// until the requested width is met.
pub fn lp_norm(a: &Seq, p: &PNorm, eps: &Rational) -> Enclosure {
    assert!(eps.is_positive(), "eps must be positive");
    if let Some(k) = p.as_integer() {
        return nth_root_enclosure(&lp_power_sum(a, k), k, eps);
    }
    let u = p
        .p()
        .numer()
        .to_u32()
        .expect("exponent numerator fits in u32");
    let v = p
        .p()
        .denom()
        .to_u32()
        .expect("exponent denominator fits in u32");
    let terms = a.nnz().max(1) as i64;
    let mut term_eps = eps / int(4 * terms);
    let mut root_eps = eps / int(4);
    for _ in 0..128 {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (_, x) in &a.entries {
            let e = nth_root_enclosure(&pow_rational(&x.abs(), u), v, &term_eps);
            lo += e.lower();
            hi += e.upper();
        }
        let lower = nth_root_enclosure(&pow_rational(&lo, v), u, &root_eps)
            .lower()
            .clone();
        let upper = nth_root_enclosure(&pow_rational(&hi, v), u, &root_eps)
            .upper()
            .clone();
        let enc = Enclosure::new(lower, upper);
        if &enc.width() <= eps {
            return enc;
        }
        term_eps /= int(2);
        root_eps /= int(2);
    }
    unreachable!("lp_norm refinement failed to converge")
}

/// Cesàro means `A_n = (a_0 + ... + a_n) / (n + 1)` for `n <= n_max`, one prefix pass.
pub fn cesaro(a: &Seq, n_max: u64) -> Seq {
    let mut out = Vec::new();
    let mut partial = Rational::zero();
    let mut src = a.entries.iter().peekable();
    for n in 0..=n_max {
        if let Some((_, v)) = src.next_if(|(i, _)| *i == n) {
            partial += v;
        }
        if !partial.is_zero() {
            out.push((n, &partial / int(n as i64 + 1)));
        }
    }
    Seq::from_sorted(out)
}

/// Integral-test bound `total^p · M^(1-p) / (p-1)` on `Σ_{n >= M} (total/(n+1))^p`.
pub fn cesaro_tail_bound(total: &Rational, m: u64, p: u32) -> Rational {
    assert!(!total.is_negative(), "total must be nonnegative");
    assert!(m >= 1, "tail start must be >= 1");
    assert!(p >= 2, "tail bound needs p >= 2");
    let m = int(m as i64);
    pow_rational(total, p) / (pow_rational(&m, p - 1) * int(i64::from(p) - 1))
}

/// `|a_n|` sorted in descending order, packed at indices `0..count`.
pub fn rearrange_nonincreasing(a: &Seq) -> Seq {
    let mut values: Vec<Rational> = a.entries.iter().map(|(_, v)| v.abs()).collect();
    values.sort_unstable_by(|x, y| y.cmp(x));
    Seq::from_dense(values)
}

/// Checks `Σ_{k<=n} |a_k| <= Σ_{k<=n} a*_k` for every `n <= n_max`.
pub fn partial_sum_domination_check(a: &Seq, n_max: u64) -> Report {
    let sorted = rearrange_nonincreasing(a);
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for n in 0..=n_max {
        lhs += a.abs_value(n);
        rhs += sorted.value(n);
        if lhs > rhs {
            return Report {
                check: "partial_sum_domination",
                holds: false,
                lhs,
                rhs,
                witness: Some(n),
                cases: n + 1,
            };
        }
    }
    Report {
        check: "partial_sum_domination",
        holds: true,
        lhs,
        rhs,
        witness: None,
        cases: n_max + 1,
    }
}

/// Summation by parts against the counts `#J_m(s)`:
/// `Σ |a_m|(#J_{m+1} - #J_m) = Σ #J_{m+1}(|a_m| - |a_{m+1}|)`.
pub fn abel_step1_check(a_monotone: &Seq, s: &Rate) -> Result<Report> {
    a_monotone.require_monotone()?;
    let vals = a_monotone.abs_dense();
    let len = vals.len() as u64;
    let counts: Vec<u64> = (0..=len).map(|m| count_j(m, s)).collect();
    let at = |m: u64| vals.get(m as usize).cloned().unwrap_or_else(Rational::zero);

    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for m in 0..len {
        let jump = counts[m as usize + 1] - counts[m as usize];
        lhs += at(m) * int(jump as i64);
        rhs += int(counts[m as usize + 1] as i64) * (at(m) - at(m + 1));
    }
    Ok(Report {
        check: "abel_step1",
        holds: lhs == rhs,
        lhs,
        rhs,
        witness: None,
        cases: len,
    })
}

/// Second summation by parts: `Σ (m+1)(|a_m| - |a_{m+1}|) = Σ |a_m|`.
pub fn abel_step2_check(a_monotone: &Seq) -> Result<Report> {
    a_monotone.require_monotone()?;
    let vals = a_monotone.abs_dense();
    let at = |m: usize| vals.get(m).cloned().unwrap_or_else(Rational::zero);
    let lhs = (0..vals.len()).fold(Rational::zero(), |acc, m| {
        acc + int(m as i64 + 1) * (at(m) - at(m + 1))
    });
    let rhs = vals.iter().fold(Rational::zero(), |acc, v| acc + v);
    Ok(Report {
        check: "abel_step2",
        holds: lhs == rhs,
        lhs,
        rhs,
        witness: None,
        cases: vals.len() as u64,
    })
}
