//! Level-set counts `#I_m(s) = #{n >= 1 : ⌊ns⌋ = m}` and `#J_m(s) = #([0, m/s) ∩ N)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exact::{floor_prod, Rate};

/// `⌈k / s⌉`
fn ceil_over(k: u64, s: &Rate) -> u64 {
    match s.small() {
        Some((u, v)) => {
            let num = (k as u128) * (v as u128);
            u64::try_from(num.div_ceil(u as u128)).expect("count exceeds u64")
        }
        None => (BigInt::from(k) * s.denom())
            .div_ceil(s.numer())
            .to_u64()
            .expect("count exceeds u64"),
    }
}

/// `(⌊k / s⌋, k/s is an integer)`
fn floor_over(k: u64, s: &Rate) -> (u64, bool) {
    match s.small() {
        Some((u, v)) => {
            let num = (k as u128) * (v as u128);
            let (q, r) = num.div_rem(&(u as u128));
            (u64::try_from(q).expect("count exceeds u64"), r == 0)
        }
        None => {
            let (q, r) = (BigInt::from(k) * s.denom()).div_rem(s.numer());
            (q.to_u64().expect("count exceeds u64"), r.is_zero())
        }
    }
}

/// `#([m/s, (m+1)/s) ∩ N)` from the interval end points.
pub fn count_i(m: u64, s: &Rate) -> u64 {
    let first = ceil_over(m, s).max(1);
    // Largest positive integer strictly below (m+1)/s.
    let last = ceil_over(m + 1, s).saturating_sub(1);
    if last >= first {
        last - first + 1
    } else {
        0
    }
}

/// Enumerates the `n` with `⌊ns⌋ = m` directly.
pub fn count_i_enumerate(m: u64, s: &Rate) -> u64 {
    let mut count = 0;
    let mut n = 1;
    loop {
        let idx = floor_prod(n, s);
        if idx > m {
            return count;
        }
        if idx == m {
            count += 1;
        }
        n += 1;
    }
}

/// Closed form of `#([0, m/s) ∩ N)`: `0` for `m = 0`, `m/s - 1` when `m/s` is
/// an integer, `⌊m/s⌋` otherwise.
pub fn count_j(m: u64, s: &Rate) -> u64 {
    if m == 0 {
        return 0;
    }
    match floor_over(m, s) {
        (q, true) => q - 1,
        (q, false) => q,
    }
}

/// Counts positive `n` with `n < m/s` one at a time.
pub fn count_j_enumerate(m: u64, s: &Rate) -> u64 {
    let mut n = 1;
    while s.scaled_lt(n, m) {
        n += 1;
    }
    n - 1
}

/// `#J_m(s)` for every `m <= m_max` by a single walk over `n`.
///
/// Each `n` is tested for membership `n·s < m` on its own, so this is the
/// enumerative route, amortized across consecutive `m`.
pub fn count_j_table(m_max: u64, s: &Rate) -> Vec<u64> {
    let mut out = Vec::with_capacity(m_max as usize + 1);
    let mut next = 1u64;
    for m in 0..=m_max {
        while s.scaled_lt(next, m) {
            next += 1;
        }
        out.push(next - 1);
    }
    out
}
