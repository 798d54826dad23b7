use std::fs;
use std::path::Path;

use hardylab::cov::{
    fuzz_unrestricted, partition_check, riemann_vs_integral_check, sample_case, step_integral_full,
    step_integral_scaled, subsampled_sum_direct, subsampled_sum_via_counts,
    verify_change_of_variable, FuzzConfig, SampleClass,
};
use hardylab::exact::format_rational;
use hardylab::hardy::{
    cesaro_norm2, default_truncation, ingham_integral, sharpness_sweep, verify_hardy,
    verify_minkowski_step, SharpnessRow,
};
use hardylab::seq::{
    abel_step1_check, abel_step2_check, partial_sum_domination_check, rearrange_nonincreasing,
};
use hardylab::{Error, Rate, Rational, Record, Report, Seq, ToRecord};

use crate::Command;

/// Records to print, an optional preformatted table, and whether everything held.
pub struct Outcome {
    pub records: Vec<Record>,
    pub table: Option<String>,
    pub ok: bool,
}

type CmdResult = Result<Outcome, String>;

fn load_seq(path: &Path) -> Result<Seq, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Seq::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn integer_p(p: &Rational) -> Result<u32, String> {
    p.is_integer()
        .then(|| p.to_integer().try_into().ok())
        .flatten()
        .filter(|&k: &u32| k >= 2)
        .ok_or_else(|| format!("--p must be an integer >= 2, got {}", format_rational(p)))
}

fn lib(e: Error) -> String {
    e.to_string()
}

pub fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::VerifyCov { seq, s, monotone } => verify_cov(&seq.path, s, *monotone),
        Command::Fuzz {
            trials,
            seed,
            monotone,
        } => fuzz(*trials, *seed, *monotone),
        Command::VerifyHardy { seq, p, m } => hardy(&seq.path, p, *m),
        Command::InghamCheck { seq, n, seed } => ingham(seq.as_deref(), *n, *seed),
        Command::Minkowski { seq, p, m, s_min } => minkowski(&seq.path, p, *m, s_min),
        Command::Sharpness { p, eps, n, prec } => sharpness(p, eps, *n, prec),
        Command::Norm2 { n } => norm2(*n),
        Command::Identities { seq, s } => identities(&seq.path, s),
    }
}

fn verify_cov(path: &Path, s: &Rational, monotone: bool) -> CmdResult {
    let a = load_seq(path)?;
    let rate = Rate::new(s.clone()).map_err(lib)?;
    let report = verify_change_of_variable(&a, &rate, monotone).map_err(lib)?;
    let mut rec = report.to_record();
    rec.push("s", &rate).push("monotone", monotone);
    Ok(Outcome {
        ok: report.holds,
        records: vec![rec],
        table: None,
    })
}

fn fuzz(trials: u64, seed: u64, monotone: bool) -> CmdResult {
    let cfg = FuzzConfig {
        trials,
        seed,
        class: if monotone {
            SampleClass::Monotone
        } else {
            SampleClass::General
        },
        ..FuzzConfig::default()
    };
    let witnesses = fuzz_unrestricted(&cfg);
    let mut records: Vec<Record> = witnesses.iter().map(ToRecord::to_record).collect();
    let mut summary = Record::new("fuzz");
    summary
        .push("trials", trials)
        .push("seed", seed)
        .push("class", if monotone { "monotone" } else { "general" })
        .push("witnesses", witnesses.len());
    records.push(summary);
    Ok(Outcome {
        ok: witnesses.is_empty(),
        records,
        table: None,
    })
}

fn hardy(path: &Path, p: &Rational, m: Option<u64>) -> CmdResult {
    let a = load_seq(path)?;
    let p = integer_p(p)?;
    let m = m.unwrap_or_else(|| default_truncation(&a));
    let report = verify_hardy(&a, p, m).map_err(lib)?;
    let mut rec = report.to_record();
    rec.push("p", p);
    Ok(Outcome {
        ok: report.holds,
        records: vec![rec],
        table: None,
    })
}

fn ingham(path: Option<&Path>, n: u64, seed: u64) -> CmdResult {
    let (a, source) = match path {
        Some(p) => (load_seq(p)?, p.display().to_string()),
        None => {
            let cfg = FuzzConfig {
                seed,
                ..FuzzConfig::default()
            };
            (sample_case(&cfg, 0).0, format!("seed:{seed}"))
        }
    };
    let mut records = Vec::new();
    let mut equalities = 0u64;
    for k in 0..n {
        match ingham_integral(&a, k) {
            Ok(_) => equalities += 1,
            Err(Error::IdentityBroken { lhs, rhs, .. }) => {
                let mut r = Record::new("ingham_failure");
                r.push("n", k)
                    .push_rational("integral", &lhs)
                    .push_rational("mean", &rhs);
                records.push(r);
            }
            Err(e) => return Err(lib(e)),
        }
    }
    let mut summary = Record::new("ingham");
    summary
        .push("source", source)
        .push("a", a.compact())
        .push("checks", n)
        .push("equalities", equalities);
    records.push(summary);
    Ok(Outcome {
        ok: equalities == n,
        records,
        table: None,
    })
}

fn minkowski(path: &Path, p: &Rational, m: Option<u64>, s_min: &Rational) -> CmdResult {
    let a = load_seq(path)?;
    let p = integer_p(p)?;
    let m = m.unwrap_or_else(|| default_truncation(&a));
    let report = verify_minkowski_step(&a, p, m, s_min).map_err(lib)?;
    let mut rec = report.to_record();
    rec.push("p", p);
    Ok(Outcome {
        ok: report.is_verified(),
        records: vec![rec],
        table: None,
    })
}

fn sharpness(p: &Rational, eps: &[Rational], n: u64, prec: &Rational) -> CmdResult {
    let p = integer_p(p)?;
    let rows = sharpness_sweep(p, eps, n, prec).map_err(lib)?;
    let ok = rows.iter().all(|r| r.ratio.upper() < &r.p_prime);
    let mut table = String::from(SharpnessRow::HEADER);
    table.push('\n');
    for r in &rows {
        table.push_str(&r.csv_line());
        table.push('\n');
    }
    Ok(Outcome {
        records: rows.iter().map(ToRecord::to_record).collect(),
        table: Some(table),
        ok,
    })
}

fn norm2(n: usize) -> CmdResult {
    let est = cesaro_norm2(n, 100_000, 1e-10);
    let mut rec = Record::new("norm2");
    rec.push("N", n)
        .push("sigma", format!("{:.12}", est.sigma))
        .push("residual", format!("{:.3e}", est.residual))
        .push("iterations", est.iterations)
        .push("converged", est.converged);
    Ok(Outcome {
        ok: est.converged && est.sigma < 2.0,
        records: vec![rec],
        table: None,
    })
}

/// An identity computed two ways, as a report.
fn equality(check: &'static str, lhs: Rational, rhs: Rational) -> Report {
    Report {
        check,
        holds: lhs == rhs,
        lhs,
        rhs,
        witness: None,
        cases: 1,
    }
}

fn identities(path: &Path, s: &Rational) -> CmdResult {
    let a = load_seq(path)?;
    let rate = Rate::new(s.clone()).map_err(lib)?;
    let top = a.support_max().unwrap_or(0);
    // The summation-by-parts identities need monotone input; they run on |a|*.
    let sorted = rearrange_nonincreasing(&a);

    let step = match (step_integral_scaled(&a, &rate), step_integral_full(&a)) {
        (Ok(x), Ok(y)) => equality("step_integral", x, y),
        (Err(Error::IdentityBroken { lhs, rhs, .. }), _) => equality("step_integral", *lhs, *rhs),
        (Err(e), _) | (_, Err(e)) => return Err(lib(e)),
    };
    let ingham = match ingham_integral(&a, top) {
        Ok(v) => equality("ingham", v.clone(), v),
        Err(Error::IdentityBroken { lhs, rhs, .. }) => equality("ingham", *lhs, *rhs),
        Err(e) => return Err(lib(e)),
    };
    let reports = [
        partition_check(top + 1, &rate),
        partial_sum_domination_check(&a, top + 1),
        equality(
            "dual_path",
            subsampled_sum_direct(&a, &rate),
            subsampled_sum_via_counts(&a, &rate),
        ),
        abel_step1_check(&sorted, &rate).map_err(lib)?,
        abel_step2_check(&sorted).map_err(lib)?,
        riemann_vs_integral_check(&sorted, &rate).map_err(lib)?,
        step,
        ingham,
    ];
    Ok(Outcome {
        ok: reports.iter().all(|r| r.holds),
        records: reports.iter().map(ToRecord::to_record).collect(),
        table: None,
    })
}
