//! The checking suite: every identity and inequality the crate relies on,
//! evaluated exactly at every index where its premises hold.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cf::{self, ConvergentRecord, Outcome};
use crate::error::Result;
use crate::exact::Exact;
use crate::legendre;
use crate::mu::{self, ProductSampler};
use crate::spectra;

/// One line of the pass/fail table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub check: &'static str,
    pub subject: String,
    /// Number of indices (or grid points) where the premises held.
    pub applicable: usize,
    pub failures: usize,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Default)]
struct Tally(Vec<CheckRow>);

impl Tally {
    fn record(&mut self, check: &'static str, subject: &str, ok: bool) {
        let row = match self.0.iter_mut().find(|r| r.check == check) {
            Some(r) => r,
            None => {
                self.0.push(CheckRow { check, subject: subject.to_string(), applicable: 0, failures: 0 });
                self.0.last_mut().unwrap()
            }
        };
        row.applicable += 1;
        row.failures += usize::from(!ok);
    }

    fn declare(&mut self, check: &'static str, subject: &str) {
        if !self.0.iter().any(|r| r.check == check) {
            self.0.push(CheckRow { check, subject: subject.to_string(), applicable: 0, failures: 0 });
        }
    }
}

/// Samples per segment for the peak oracle.
pub const SAMPLES: usize = 1000;

/// Sampled maximum against the exact peak: never above it by more than
/// `1e-9`, never below it by more than `1e-6`.
pub fn sampled_peak_agrees(sampler: &ProductSampler, peak: &Exact) -> bool {
    let sampled = sampler.max_sampled(SAMPLES);
    let exact = peak.to_f64();
    sampled <= exact + 1e-9 && sampled >= exact - 1e-6
}

fn legendre_direct(alpha: &Exact, r: &ConvergentRecord) -> bool {
    let approx = Exact::Rational(BigRational::new(r.p.clone(), r.q.clone()));
    let dist = (alpha - &approx).abs();
    let bound = Exact::Rational(BigRational::new(BigInt::one(), BigInt::from(2) * &r.q * &r.q));
    dist.try_cmp(&bound).expect("one field").is_lt()
}

/// Runs the per-index checks on `α` over `ν < horizon`.
pub fn verify_alpha(alpha: &Exact, horizon: usize) -> Result<Vec<CheckRow>> {
    let subject = alpha.to_literal();
    let subject = subject.as_str();
    let cf = cf::expand(alpha, horizon.max(10))?;
    let records = cf::convergents(&cf, alpha, horizon + 1)?;
    let mut tally = Tally::default();

    for nu in 0..horizon {
        let report = cf::check_identities(&cf, &records, nu);
        for (id, outcome) in &report.checks {
            match outcome {
                Outcome::Skipped(_) => tally.declare(id.name(), subject),
                o => tally.record(id.name(), subject, *o == Outcome::Pass),
            }
        }
    }

    let flags = legendre::legendre_flags(&cf, &records)?;
    for (r, &flag) in records.iter().zip(&flags) {
        tally.record("legendre.criteria", subject, flag == legendre_direct(alpha, r));
    }
    for w in flags.windows(2) {
        tally.record("chain.no-double-fail", subject, w[0] || w[1]);
    }
    if !cf.is_finite() {
        let chain = legendre::build_chain(&cf, &records)?;
        for gap in &chain.gaps {
            if gap.kind == legendre::GapKind::Skip {
                tally.record("chain.skip-has-a1", subject, cf.quotient(gap.nu + 1).is_some_and(One::is_one));
            }
        }
        tally.declare("chain.skip-has-a1", subject);
    }

    for check in ["lemma3.m1=G", "lemma5.straddle", "lemma7.sampled", "lemma4.m2=F", "lemma6.straddle", "lemma8.sampled"] {
        tally.declare(check, subject);
    }
    for nu in 0..horizon {
        let Ok(next_tail) = cf.tail(nu + 2) else { continue };
        let inv = next_tail.recip();
        let point = |j: usize| (&records[j].q, &records[j].xi);
        // segment from ν-1 to ν+1 when a_{ν+1} = 1
        if nu >= 1 && cf.quotient(nu + 1).is_some_and(One::is_one) {
            let (l, r) = (point(nu - 1), point(nu + 1));
            let (d2, m) = mu::closed_form_peak(l, r)?;
            let star = Exact::Rational(records[nu].alpha_star.clone());
            tally.record("lemma3.m1=G", subject, m == mu::g(&star, &inv)?);
            tally.record("lemma5.straddle", subject, mu::straddle(&d2, l, r) == (true, true));
            tally.record("lemma7.sampled", subject, sampled_peak_agrees(&ProductSampler::new(l, r), &m));
        }
        // segment from ν to ν+1 when both convergents pass
        if flags[nu] && flags[nu + 1] {
            let (l, r) = (point(nu), point(nu + 1));
            let (d2, m) = mu::closed_form_peak(l, r)?;
            let star = Exact::Rational(records[nu + 1].alpha_star.clone());
            tally.record("lemma4.m2=F", subject, m == mu::f(&star, &inv)?);
            tally.record("lemma6.straddle", subject, mu::straddle(&d2, l, r) == (true, true));
            tally.record("lemma8.sampled", subject, sampled_peak_agrees(&ProductSampler::new(l, r), &m));
        }
    }

    if cf.is_periodic() {
        let peaks = spectra::m_from_chain(&cf, horizon.max(spectra::min_chain_horizon(&cf)))?;
        tally.record("theorem1.limit", subject, peaks.limit_max == spectra::m_of(&cf)?);
    }
    Ok(tally.0)
}

/// Extremes of `F` on `Ω` and of `G` over the grid `{i/n : 0 ≤ i < n}²`.
pub fn lemma1_grid(n: u32) -> Result<Vec<CheckRow>> {
    let subject = format!("grid {n}x{n}");
    let subject = subject.as_str();
    let quarter = Exact::rational(1, 4);
    let half = Exact::rational(1, 2);
    let two = Exact::integer(2);
    let mut tally = Tally::default();
    for i in 0..n {
        for j in 0..n {
            let x = Exact::rational(i, n);
            let y = Exact::rational(j, n);
            let g = mu::g(&x, &y)?;
            tally.record("clear.G-min", subject, !g.try_cmp(&quarter)?.is_lt());
            if i + j <= n {
                tally.record("clear.G-max", subject, !g.try_cmp(&half)?.is_gt());
            }
            if !mu::omega_contains(&x, &y)? {
                continue;
            }
            let f = mu::f(&x, &y)?;
            let origin = i == 0 && j == 0;
            let vs_quarter = f.try_cmp(&quarter)?;
            tally.record("lemma1.F-min", subject, if origin { vs_quarter.is_eq() } else { vs_quarter.is_gt() });
            let on_curve = |a: &Exact, b: &Exact| !b.is_zero() && &(a + &b.recip()) == &two;
            let boundary = on_curve(&x, &y) || on_curve(&y, &x);
            let vs_half = f.try_cmp(&half)?;
            tally.record("lemma1.F-max", subject, if boundary { vs_half.is_eq() } else { vs_half.is_lt() });
        }
    }
    Ok(tally.0)
}

/// The three worked examples `(1+√5)/2`, `√2`, `(1+√3)/2`.
pub fn builtin_examples() -> Vec<Exact> {
    vec![
        Exact::surd(1, 1, 5, 2).expect("valid"),
        Exact::sqrt_of(2).expect("valid"),
        Exact::surd(1, 1, 3, 2).expect("valid"),
    ]
}

/// The full suite over the built-in examples, `extra`, and the `Ω` grid.
pub fn verify_suite(extra: &[Exact], horizon: usize, grid: u32) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for alpha in builtin_examples().iter().chain(extra) {
        rows.extend(verify_alpha(alpha, horizon)?);
    }
    rows.extend(lemma1_grid(grid)?);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_pass_everything() {
        for alpha in builtin_examples() {
            let rows = verify_alpha(&alpha, 40).unwrap();
            for r in &rows {
                assert!(r.passed(), "{r:?}");
            }
            assert!(rows.iter().any(|r| r.check == "theorem1.limit" && r.applicable == 1));
        }
    }

    #[test]
    fn half_sqrt3_exercises_skip_lemmas() {
        let rows = verify_alpha(&Exact::surd(1, 1, 3, 2).unwrap(), 30).unwrap();
        let find = |c: &str| rows.iter().find(|r| r.check == c).unwrap().applicable;
        assert!(find("lemma3.m1=G") > 10);
        // every other convergent fails, so no two consecutive ones pass
        assert_eq!(find("lemma4.m2=F"), 0);
        assert!(find("chain.skip-has-a1") > 5);
    }

    #[test]
    fn small_grid() {
        for r in lemma1_grid(24).unwrap() {
            assert!(r.passed() && r.applicable > 0, "{r:?}");
        }
    }
}
