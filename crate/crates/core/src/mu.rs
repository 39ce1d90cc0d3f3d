//! The diagonal function `μ_α(t)`, the measure function `ψ_α(t)`, the two
//! peak functions `G`, `F`, and the closed-form maxima of `t·μ_α(t)` on each
//! segment of the Legendre chain.
//!
//! `μ_α` interpolates linearly between consecutive chain points
//! `(Q_n, ‖Q_n α‖)`. On one segment `t·μ` is a concave quadratic; after the
//! hyperbolic rotation `(t, μ) ↦ (t/d, μ·d)` with
//! `d² = (Q_{n+1} - Q_n)/(‖Q_n α‖ - ‖Q_{n+1} α‖)` the segment is orthogonal
//! to the diagonal, so the maximum sits where `μ·d = t/d` and equals
//!
//! ```text
//! M = ¼ (d·ξ_L + Q_L/d)² = ¼ (d² ξ_L² + 2 ξ_L Q_L + Q_L²/d²)
//! ```
//!
//! which only involves `d²` and so stays inside the quadratic field of `α`.
//! The same maximum also equals `G(α*_ν, 1/α_{ν+2})` on skip gaps and
//! `F(α*_{ν+1}, 1/α_{ν+2})` on adjacent gaps. Both routes are always
//! computed and must agree exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::cf::{CFExpansion, ConvergentRecord};
use crate::error::{Error, Result};
use crate::exact::{Exact, RationalInterval};
use crate::legendre::{GapClass, GapKind, LegendreChain};

/// `G(x, y) = (x + y + 1)/4`.
pub fn g(x: &Exact, y: &Exact) -> Result<Exact> {
    let s = x.try_add(y)?;
    Ok(&(&s + &Exact::one()) / &Exact::integer(4))
}

/// `F(x, y) = (1 - xy)² / (4 (1 + xy)(1 - x)(1 - y))`.
pub fn f(x: &Exact, y: &Exact) -> Result<Exact> {
    let xy = x.try_mul(y)?;
    let one = Exact::one();
    let den = &(&(&(&one + &xy) * &(&one - x)) * &(&one - y)) * &Exact::integer(4);
    if den.is_zero() {
        return Err(Error::Domain("F"));
    }
    let num = &one - &xy;
    Ok(&(&num * &num) / &den)
}

/// `G` over rational intervals.
pub fn g_interval(x: &RationalInterval, y: &RationalInterval) -> RationalInterval {
    let one = RationalInterval::point(BigRational::one());
    let quarter = RationalInterval::point(BigRational::new(1.into(), 4.into()));
    &(&(x + y) + &one) * &quarter
}

/// `F` over rational intervals; natural interval extension, sound but not tight.
pub fn f_interval(x: &RationalInterval, y: &RationalInterval) -> Result<RationalInterval> {
    let one = RationalInterval::point(BigRational::one());
    let four = RationalInterval::point(BigRational::from_integer(4.into()));
    let xy = x * y;
    let den = &(&(&(&one + &xy) * &(&one - x)) * &(&one - y)) * &four;
    if den.contains_zero() {
        return Err(Error::Domain("F"));
    }
    Ok(&(&one - &xy).square() / &den)
}

/// Membership in `Ω = {0 ≤ x, y < 1, x + 1/y ≥ 2, 1/x + y ≥ 2}`.
///
/// `1/0` counts as `+∞`, so the corresponding inequality holds at zero.
pub fn omega_contains(x: &Exact, y: &Exact) -> Result<bool> {
    let zero = Exact::zero();
    let one = Exact::one();
    let two = Exact::integer(2);
    let unit = |v: &Exact| -> Result<bool> {
        Ok(!v.try_cmp(&zero)?.is_lt() && v.try_cmp(&one)?.is_lt())
    };
    if !unit(x)? || !unit(y)? {
        return Ok(false);
    }
    let side = |a: &Exact, b: &Exact| -> Result<bool> {
        if b.is_zero() {
            return Ok(true);
        }
        Ok(!a.try_add(&b.recip())?.try_cmp(&two)?.is_lt())
    };
    Ok(side(x, y)? && side(y, x)?)
}

/// `ψ_α(t) = min_{1 ≤ x ≤ t} ‖xα‖` read off the convergent table.
///
/// The minimum is the error of the last convergent with `q_ν ≤ t`. The table
/// must extend past `t` (its last denominator must exceed `t`) unless the
/// input is rational and the table is complete.
pub fn psi_eval(records: &[ConvergentRecord], t: &BigRational) -> Result<Exact> {
    if *t < BigRational::one() {
        return Err(Error::Domain("psi (t < 1)"));
    }
    let count = records.partition_point(|r| BigRational::from_integer(r.q.clone()) <= *t);
    let last = records.last().ok_or(Error::Domain("psi (empty table)"))?;
    if count == records.len() && !last.xi.is_zero() {
        return Err(Error::OutsideChain {
            t: t.to_string(),
            lo: "1".into(),
            hi: last.q.to_string(),
        });
    }
    Ok(records[count - 1].xi.clone())
}

/// `ψ_α(t)` by scanning every integer `1 ≤ x ≤ t`.
pub fn psi_scan(alpha: &Exact, t: u64) -> Exact {
    (1..=t)
        .map(|x| (&Exact::integer(x) * alpha).dist_to_nearest_int())
        .reduce(|a, b| if b.try_cmp(&a).expect("same field").is_lt() { b } else { a })
        .expect("t >= 1")
}

/// `μ_α(t)` on the built chain, `Q_first ≤ t ≤ Q_last`.
pub fn mu_eval(chain: &LegendreChain, t: &BigRational) -> Result<Exact> {
    let lo = BigRational::from_integer(chain.first_q().clone());
    let hi = BigRational::from_integer(chain.last_q().clone());
    if *t < lo || *t > hi {
        return Err(Error::OutsideChain { t: t.to_string(), lo: lo.to_string(), hi: hi.to_string() });
    }
    let i = chain.nodes.partition_point(|n| BigRational::from_integer(n.q.clone()) <= *t) - 1;
    let left = &chain.nodes[i];
    let Some(right) = chain.nodes.get(i + 1) else {
        return Ok(left.err.clone());
    };
    let span = BigRational::from_integer(&right.q - &left.q);
    let s = Exact::Rational((t - BigRational::from_integer(left.q.clone())) / span);
    Ok(&left.err + &(&s * &(&right.err - &left.err)))
}

/// Exact values needed for the `G`/`F` route of a segment peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakTails {
    /// `α*_ν` on skip gaps, `α*_{ν+1}` on adjacent gaps.
    pub alpha_star: Exact,
    /// `α_{ν+2}`.
    pub next_tail: Exact,
}

/// Closed-form data for one segment peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakWitness {
    /// `d²`; `d` itself generally has degree four.
    pub d_squared: Exact,
    /// `M = ¼ (d ξ_L + Q_L/d)²`.
    pub m_closed: Exact,
    /// `(d² ξ_R/Q_R ≤ 1, 1 ≤ d² ξ_L/Q_L)`: the rotated endpoints lie on
    /// opposite sides of the diagonal.
    pub side_check: (bool, bool),
}

impl PeakWitness {
    pub fn d_approx(&self) -> f64 {
        self.d_squared.to_f64().sqrt()
    }

    /// Location `t* = d·√M` of the maximum, approximately.
    pub fn peak_t_approx(&self) -> f64 {
        self.d_approx() * self.m_closed.to_f64().sqrt()
    }
}

/// `(d², M)` for the segment from `(q_l, ξ_l)` to `(q_r, ξ_r)`.
pub fn closed_form_peak(
    left: (&BigInt, &Exact),
    right: (&BigInt, &Exact),
) -> Result<(Exact, Exact)> {
    let dq = right.0 - left.0;
    let dxi = left.1 - right.1;
    if !dq.is_positive() || dxi.signum() <= 0 {
        return Err(Error::Domain("segment (endpoints not strictly monotone)"));
    }
    let d2 = &Exact::integer(dq) / &dxi;
    let ql = Exact::integer(left.0.clone());
    let xi = left.1;
    let m = &(&(&(&d2 * &(xi * xi)) + &(&(&Exact::integer(2) * xi) * &ql)) + &(&(&ql * &ql) / &d2))
        / &Exact::integer(4);
    Ok((d2, m))
}

/// Side checks for the rotated segment.
pub fn straddle(d2: &Exact, left: (&BigInt, &Exact), right: (&BigInt, &Exact)) -> (bool, bool) {
    let one = Exact::one();
    let ratio = |q: &BigInt, xi: &Exact| &(d2 * xi) / &Exact::integer(q.clone());
    let r = ratio(right.0, right.1).try_cmp(&one).expect("same field");
    let l = ratio(left.0, left.1).try_cmp(&one).expect("same field");
    (r.is_le(), l.is_ge())
}

/// The maximum of `t·μ` on one segment, computed by the closed form and by
/// `G`/`F`, which must agree.
pub fn segment_peak(
    left: (&BigInt, &Exact),
    right: (&BigInt, &Exact),
    gap: GapClass,
    tails: &PeakTails,
) -> Result<(Exact, PeakWitness)> {
    let (d2, m) = closed_form_peak(left, right)?;
    let side_check = straddle(&d2, left, right);
    if !(side_check.0 && side_check.1) {
        return Err(Error::Straddle { nu: gap.nu });
    }
    let inv = tails.next_tail.try_recip()?;
    let via_tails = match gap.kind {
        GapKind::Skip => g(&tails.alpha_star, &inv)?,
        GapKind::Adjacent => f(&tails.alpha_star, &inv)?,
    };
    if via_tails != m {
        return Err(Error::PeakMismatch { nu: gap.nu });
    }
    Ok((via_tails, PeakWitness { d_squared: d2, m_closed: m, side_check }))
}

/// The tails a gap needs for its `G`/`F` value.
pub fn peak_tails(cf: &CFExpansion, records: &[ConvergentRecord], gap: GapClass) -> Result<PeakTails> {
    let star_index = match gap.kind {
        GapKind::Skip => gap.nu,
        GapKind::Adjacent => gap.nu + 1,
    };
    let star = records.get(star_index).ok_or(Error::FiniteExpansion {
        requested: star_index,
        available: records.len().saturating_sub(1),
    })?;
    Ok(PeakTails {
        alpha_star: Exact::Rational(star.alpha_star.clone()),
        next_tail: cf.tail(gap.nu + 2)?,
    })
}

/// One linear piece of `μ_α` with its exact peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSegment {
    pub left: (BigInt, Exact),
    pub right: (BigInt, Exact),
    pub gap: GapClass,
    /// `𝔪_n(α)`, the maximum of `t·μ` on the segment.
    pub peak: Exact,
    pub witness: PeakWitness,
}

impl MuSegment {
    pub fn sampler(&self) -> ProductSampler {
        ProductSampler::new((&self.left.0, &self.left.1), (&self.right.0, &self.right.1))
    }
}

/// Float evaluation of `t·μ` along a segment, written relative to the left
/// endpoint so that huge `Q` and tiny `ξ` never meet in one float:
/// `t·μ = Q_L ξ_L (1 + s ΔQ/Q_L)(1 - s Δξ/ξ_L)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductSampler {
    base: f64,
    growth: f64,
    shrink: f64,
}

impl ProductSampler {
    pub fn new(left: (&BigInt, &Exact), right: (&BigInt, &Exact)) -> Self {
        let ql = BigRational::from_integer(left.0.clone());
        let growth = BigRational::from_integer(right.0 - left.0) / &ql;
        ProductSampler {
            base: (&Exact::Rational(ql) * left.1).to_f64(),
            growth: Exact::Rational(growth).to_f64(),
            shrink: (&(left.1 - right.1) / left.1).to_f64(),
        }
    }

    /// `t·μ` at `s ∈ [0, 1]` along the segment.
    pub fn at(&self, s: f64) -> f64 {
        self.base * (1.0 + s * self.growth) * (1.0 - s * self.shrink)
    }

    /// Largest of `samples ≥ 2` equally spaced values, endpoints included.
    pub fn max_sampled(&self, samples: usize) -> f64 {
        let last = (samples - 1) as f64;
        (0..samples).map(|i| self.at(i as f64 / last)).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// All segments of the chain with their peaks. Segments are independent and
/// evaluated in parallel; the result keeps chain order.
pub fn segments(
    cf: &CFExpansion,
    records: &[ConvergentRecord],
    chain: &LegendreChain,
) -> Result<Vec<MuSegment>> {
    chain
        .gaps
        .par_iter()
        .enumerate()
        .map(|(n, &gap)| {
            let (l, r) = (&chain.nodes[n], &chain.nodes[n + 1]);
            let tails = peak_tails(cf, records, gap)?;
            let (peak, witness) = segment_peak((&l.q, &l.err), (&r.q, &r.err), gap, &tails)?;
            Ok(MuSegment {
                left: (l.q.clone(), l.err.clone()),
                right: (r.q.clone(), r.err.clone()),
                gap,
                peak,
                witness,
            })
        })
        .collect()
}

/// The hyperbolic rotation `(t, μ) ↦ (t/d, μ·d)`; preserves `t·μ`.
pub fn hyperbolic_rotation(t: f64, mu: f64, d: f64) -> (f64, f64) {
    (t / d, mu * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{convergents, expand};
    use crate::legendre::build_chain;

    fn surd(p: i64, q: i64, d: i64, r: i64) -> Exact {
        Exact::surd(p, q, d, r).unwrap()
    }

    fn rat(n: i64, d: i64) -> Exact {
        Exact::rational(n, d)
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(&Exact::zero(), &Exact::zero()).unwrap(), rat(1, 4));
        let x = surd(-1, 1, 3, 2);
        assert_eq!(g(&x, &x).unwrap(), surd(0, 1, 3, 4));
        assert_eq!(g(&rat(1, 3), &rat(2, 3)).unwrap(), rat(1, 2));
    }

    #[test]
    fn f_examples() {
        assert_eq!(f(&Exact::zero(), &Exact::zero()).unwrap(), rat(1, 4));
        let x = surd(-1, 1, 5, 2);
        // 1/4 + 1/(2√5) = 1/4 + √5/10
        assert_eq!(f(&x, &x).unwrap(), surd(5, 2, 5, 20));
        let y = surd(-1, 1, 2, 1);
        // 1/4 + 1/(4√2) = 1/4 + √2/8
        assert_eq!(f(&y, &y).unwrap(), surd(2, 1, 2, 8));
        assert_eq!(f(&Exact::one(), &rat(1, 2)), Err(Error::Domain("F")));
        assert_eq!(f(&rat(-1, 2), &Exact::integer(2)), Err(Error::Domain("F")));
    }

    #[test]
    fn f_interval_encloses_point_values() {
        let x = rat(1, 3);
        let y = rat(2, 5);
        let exact = f(&x, &y).unwrap();
        let iv = f_interval(
            &RationalInterval::point(x.as_rational().unwrap().clone()),
            &RationalInterval::new(BigRational::new(39.into(), 100.into()), BigRational::new(41.into(), 100.into())),
        )
        .unwrap();
        assert!(iv.contains(exact.as_rational().unwrap()));
    }

    #[test]
    fn omega_membership() {
        assert!(omega_contains(&Exact::zero(), &Exact::zero()).unwrap());
        // x + 1/y = 2 with y = 1/(2 - x)
        let x = rat(2, 5);
        let y = rat(5, 8);
        assert!(omega_contains(&x, &y).unwrap());
        assert_eq!(f(&x, &y).unwrap(), rat(1, 2));
        assert!(omega_contains(&rat(99, 100), &rat(99, 100)).unwrap());
        assert!(!omega_contains(&rat(1, 2), &rat(9, 10)).unwrap());
        assert!(!omega_contains(&Exact::one(), &Exact::zero()).unwrap());
        assert!(!omega_contains(&rat(-1, 10), &Exact::zero()).unwrap());
    }

    #[test]
    fn psi_examples() {
        let gold = surd(1, 1, 5, 2);
        let cf = expand(&gold, 10).unwrap();
        let recs = convergents(&cf, &gold, 10).unwrap();
        let one = BigRational::one();
        // ‖α‖ for α = 1.618… is 2 - α
        assert_eq!(psi_eval(&recs, &one).unwrap(), surd(3, -1, 5, 2));
        assert_eq!(psi_scan(&gold, 1), surd(3, -1, 5, 2));
        let s2 = Exact::sqrt_of(2).unwrap();
        let cf = expand(&s2, 10).unwrap();
        let recs = convergents(&cf, &s2, 10).unwrap();
        let five = BigRational::from_integer(5.into());
        assert_eq!(psi_eval(&recs, &five).unwrap(), surd(-7, 5, 2, 1));
        assert_eq!(psi_scan(&s2, 5), surd(-7, 5, 2, 1));
        assert_eq!(psi_scan(&s2, 4), surd(3, -2, 2, 1));
        let huge = BigRational::from_integer(BigInt::from(10).pow(40));
        assert!(matches!(psi_eval(&recs, &huge), Err(Error::OutsideChain { .. })));
    }

    #[test]
    fn mu_interpolates() {
        let gold = surd(1, 1, 5, 2);
        let cf = expand(&gold, 10).unwrap();
        let recs = convergents(&cf, &gold, 12).unwrap();
        let chain = build_chain(&cf, &recs).unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(mu_eval(&chain, &two).unwrap(), recs[2].xi);
        let t = BigRational::new(5.into(), 2.into());
        let expect = &(&recs[2].xi + &recs[3].xi) / &Exact::integer(2);
        assert_eq!(mu_eval(&chain, &t).unwrap(), expect);
        // oracle: line through (2, |2α-3|) and (3, |3α-5|) at t = 7/3
        let t = BigRational::new(7.into(), 3.into());
        let e2 = (&(&Exact::integer(2) * &gold) - &Exact::integer(3)).abs();
        let e3 = (&(&Exact::integer(3) * &gold) - &Exact::integer(5)).abs();
        let line = &(&e2 * &rat(2, 3)) + &(&e3 * &rat(1, 3));
        assert_eq!(mu_eval(&chain, &t).unwrap(), line);
        assert!(mu_eval(&chain, &BigRational::from_integer(0.into())).is_err());
    }

    #[test]
    fn asymptotic_peaks_of_examples() {
        let gold = surd(1, 1, 5, 2);
        let cf = expand(&gold, 10).unwrap();
        let recs = convergents(&cf, &gold, 40).unwrap();
        let chain = build_chain(&cf, &recs).unwrap();
        let segs = segments(&cf, &recs, &chain).unwrap();
        let limit = surd(5, 2, 5, 20).to_f64();
        assert!((segs.last().unwrap().peak.to_f64() - limit).abs() < 1e-12);

        let x = surd(1, 1, 3, 2);
        let cf = expand(&x, 10).unwrap();
        let recs = convergents(&cf, &x, 40).unwrap();
        let chain = build_chain(&cf, &recs).unwrap();
        let segs = segments(&cf, &recs, &chain).unwrap();
        let skip = segs.iter().rev().find(|s| s.gap.kind == GapKind::Skip).unwrap();
        assert!((skip.peak.to_f64() - 3f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_preserves_products() {
        for &(t, mu, d) in &[(3.0, 0.25, 1.7), (1e9, 3e-10, 1e4), (2.0, 0.1, 0.3)] {
            let (a, b) = hyperbolic_rotation(t, mu, d);
            assert!((a * b - t * mu).abs() <= 1e-15 * t * mu);
        }
    }
}
