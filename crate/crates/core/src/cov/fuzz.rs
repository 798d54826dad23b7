//! Random search for violations of the estimate without the monotonicity hypothesis.
//!
//! Trial `k` draws from a ChaCha stream keyed by `(seed, k)`, so the set of
//! witnesses does not depend on how trials are scheduled across threads.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{verify_change_of_variable, CovReport, Rate};
use crate::exact::{int, rat, Rational};
use crate::report::{Record, ToRecord};
use crate::seq::Seq;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleClass {
    /// Signed entries with random gaps.
    General,
    /// Non-increasing nonnegative sequences packed from index 0.
    Monotone,
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    /// Largest index a sample may occupy.
    pub support_max: u64,
    /// Largest denominator of the sampled rate; rates lie in `(0, 4]`.
    pub s_denom_max: u64,
    pub class: SampleClass,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 1000,
            seed: 0,
            support_max: 16,
            s_denom_max: 40,
            class: SampleClass::General,
        }
    }
}

/// A case where the unrestricted inequality fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `None` for the built-in probe.
    pub trial: Option<u64>,
    pub a: Seq,
    pub s: Rate,
    pub report: CovReport,
}

impl ToRecord for Witness {
    fn to_record(&self) -> Record {
        let mut r = Record::new("witness");
        r.push(
            "trial",
            self.trial
                .map(|t| t.to_string())
                .unwrap_or_else(|| "probe".into()),
        );
        r.push("s", &self.s);
        r.push("a", self.a.compact());
        for (k, v) in self.report.to_record().fields().iter().skip(1) {
            r.push(k, v);
        }
        r
    }
}

/// The fixed counterexample `a = {2 ↦ 1}`, `s = 2/3`: `n = 3, 4` both land on index 2.
pub fn probe() -> (Seq, Rate) {
    let a = Seq::new([(2, int(1))]).expect("valid probe");
    let s = Rate::new(rat(2, 3)).expect("valid probe rate");
    (a, s)
}

/// Deterministic `(a, s)` for trial `k`.
pub fn sample_case(cfg: &FuzzConfig, k: u64) -> (Seq, Rate) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k);

    let len = rng.gen_range(1..=cfg.support_max + 1);
    let a = match cfg.class {
        SampleClass::General => Seq::from_dense((0..len).map(|_| {
            if rng.gen_ratio(1, 3) {
                Rational::from_integer(0.into())
            } else {
                rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))
            }
        })),
        SampleClass::Monotone => {
            let mut values: Vec<Rational> = (0..len)
                .map(|_| rat(rng.gen_range(1..=100), rng.gen_range(1..=100)))
                .collect();
            values.sort_unstable_by(|x, y| y.cmp(x));
            Seq::from_dense(values)
        }
    };
    let denom = rng.gen_range(1..=cfg.s_denom_max.max(1));
    let numer = rng.gen_range(1..=4 * denom);
    let s = Rate::from_ratio(numer, denom).expect("positive sampled rate");
    (a, s)
}

/// Runs every trial and returns the failing cases in trial order.
///
/// For [`SampleClass::General`] the built-in [`probe`] is always evaluated
/// first, so at least one witness is reported even for zero trials.
pub fn fuzz_unrestricted(cfg: &FuzzConfig) -> Vec<Witness> {
    let mut out = Vec::new();
    if cfg.class == SampleClass::General {
        let (a, s) = probe();
        let report = verify_change_of_variable(&a, &s, false).expect("unrestricted check");
        if !report.holds {
            out.push(Witness {
                trial: None,
                a,
                s,
                report,
            });
        }
    }
    let found: Vec<Witness> = (0..cfg.trials)
        .into_par_iter()
        .filter_map(|k| {
            let (a, s) = sample_case(cfg, k);
            let report = verify_change_of_variable(&a, &s, false).expect("unrestricted check");
            (!report.holds).then_some(Witness {
                trial: Some(k),
                a,
                s,
                report,
            })
        })
        .collect();
    out.extend(found);
    out
}
