//! The spectral quantities `λ(α)`, `d(α)` and `𝔪(α)`.
//!
//! ```text
//! λ(α) = liminf 1/(α*_ν + α_{ν+1})
//! d(α) = limsup α_{ν+2}/(α*_{ν+1} + α_{ν+2})
//! 𝔪(α) = limsup 𝔪_n(α)
//! ```
//!
//! For an eventually periodic word every `α_ν` repeats exactly and `α*_ν`
//! converges along each residue class to a purely periodic surd, so the
//! liminf and limsup are a min or max over one period of exact values.
//! For a finite prefix of a word only estimates exist: tails are enclosed in
//! rational intervals and the report keeps the raw running values.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cf::{self, CFExpansion};
use crate::error::{Error, Result};
use crate::exact::{Exact, RationalInterval};
use crate::legendre::{self, GapClass, GapKind};
use crate::mu;

/// A spectral value: exact when the word is periodic, an enclosure otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralValue {
    Exact(Exact),
    Enclosure(RationalInterval),
}

impl SpectralValue {
    pub fn as_exact(&self) -> Option<&Exact> {
        match self {
            SpectralValue::Exact(x) => Some(x),
            SpectralValue::Enclosure(_) => None,
        }
    }

    /// The value, or the midpoint of the enclosure.
    pub fn to_f64(&self) -> f64 {
        match self {
            SpectralValue::Exact(x) => x.to_f64(),
            SpectralValue::Enclosure(iv) => iv.mid_f64(),
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            SpectralValue::Exact(x) => x.to_decimal(digits),
            SpectralValue::Enclosure(iv) => Exact::Rational(iv.midpoint()).to_decimal(digits),
        }
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::Exact(x) => write!(f, "{x}"),
            SpectralValue::Enclosure(iv) => write!(f, "{iv}"),
        }
    }
}

/// Per-index values behind a finite-horizon estimate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunningValues {
    /// `(ν, 1/(α*_ν + α_{ν+1}))`
    pub lambda: Vec<(usize, RationalInterval)>,
    /// `(ν, α_{ν+2}/(α*_{ν+1} + α_{ν+2}))`
    pub dirichlet: Vec<(usize, RationalInterval)>,
    /// Segment peaks `𝔪_n` with their gap.
    pub m: Vec<(GapClass, RationalInterval)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectraReport {
    pub lambda: SpectralValue,
    pub dirichlet: SpectralValue,
    pub m: SpectralValue,
    /// Limsup along skip gaps only (`G` values); `None` without skip gaps.
    pub m_skip: Option<SpectralValue>,
    /// Limsup along adjacent gaps only (`F` values).
    pub m_adjacent: Option<SpectralValue>,
    pub exact: bool,
    /// Largest index of a partial quotient that was used.
    pub horizon_used: usize,
    /// Raw sequences; present exactly when `exact` is false, since finite
    /// data carries no convergence guarantee.
    pub running: Option<RunningValues>,
}

fn max_exact(values: impl IntoIterator<Item = Exact>) -> Option<Exact> {
    values
        .into_iter()
        .reduce(|a, b| if b.try_cmp(&a).expect("one field").is_gt() { b } else { a })
}

fn min_exact(values: impl IntoIterator<Item = Exact>) -> Option<Exact> {
    values
        .into_iter()
        .reduce(|a, b| if b.try_cmp(&a).expect("one field").is_lt() { b } else { a })
}

/// Residues `s + k ≤ ν < s + 2k`: the first full period on which the
/// reversed-tail limits are defined.
fn residues(cf: &CFExpansion) -> std::ops::Range<usize> {
    let k = cf.period().len();
    let base = cf.period_start() + k;
    base..base + k
}

fn require_periodic(cf: &CFExpansion) -> Result<()> {
    if cf.is_finite() {
        return Err(Error::NotDefined);
    }
    if !cf.is_periodic() {
        return Err(Error::NotExact);
    }
    Ok(())
}

/// `λ(α)` of a periodic word, exactly.
pub fn lambda_of(cf: &CFExpansion) -> Result<Exact> {
    require_periodic(cf)?;
    let values = residues(cf)
        .map(|nu| Ok((&cf.reversed_tail_limit(nu)? + &cf.tail(nu + 1)?).recip()))
        .collect::<Result<Vec<_>>>()?;
    Ok(min_exact(values).expect("non-empty period"))
}

/// `d(α)` of a periodic word, exactly.
pub fn dirichlet_of(cf: &CFExpansion) -> Result<Exact> {
    require_periodic(cf)?;
    let values = residues(cf)
        .map(|nu| {
            let y = cf.tail(nu + 2)?;
            Ok(&y / &(&cf.reversed_tail_limit(nu + 1)? + &y))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(max_exact(values).expect("non-empty period"))
}

/// Asymptotic gap classes of one period with their limit peak values.
///
/// `ν` is a skip gap when its convergent fails the Legendre condition in the
/// limit, and an adjacent gap when `ν` and `ν+1` both pass.
pub fn limit_peaks(cf: &CFExpansion) -> Result<Vec<(GapClass, Exact)>> {
    require_periodic(cf)?;
    let range = residues(cf);
    let passes = (range.start..=range.end)
        .map(|nu| {
            let sum = &cf.reversed_tail_limit(nu)? + &cf.tail(nu + 1)?;
            Ok(sum.try_cmp(&Exact::integer(2))?.is_gt())
        })
        .collect::<Result<Vec<bool>>>()?;
    let mut out = Vec::new();
    for (i, nu) in range.enumerate() {
        let gap = match (passes[i], passes[i + 1]) {
            (false, _) => GapClass { kind: GapKind::Skip, nu },
            (true, true) => GapClass { kind: GapKind::Adjacent, nu },
            (true, false) => continue,
        };
        out.push((gap, limit_peak(cf, gap)?));
    }
    Ok(out)
}

/// `G(lim α*_ν, 1/α_{ν+2})` for skip gaps, `F(lim α*_{ν+1}, 1/α_{ν+2})` for
/// adjacent gaps.
pub fn limit_peak(cf: &CFExpansion, gap: GapClass) -> Result<Exact> {
    let inv = cf.tail(gap.nu + 2)?.try_recip()?;
    match gap.kind {
        GapKind::Skip => mu::g(&cf.reversed_tail_limit(gap.nu)?, &inv),
        GapKind::Adjacent => mu::f(&cf.reversed_tail_limit(gap.nu + 1)?, &inv),
    }
}

/// `𝔪(α)` of a periodic word, exactly.
pub fn m_of(cf: &CFExpansion) -> Result<Exact> {
    let peaks = limit_peaks(cf)?;
    Ok(max_exact(peaks.into_iter().map(|(_, v)| v)).expect("some convergent passes"))
}

/// Exact report for a periodic word; estimates for a prefix.
pub fn spectra(cf: &CFExpansion) -> Result<SpectraReport> {
    if cf.is_prefix() {
        return prefix_spectra(cf);
    }
    require_periodic(cf)?;
    let peaks = limit_peaks(cf)?;
    let by_kind = |kind: GapKind| {
        max_exact(peaks.iter().filter(|(g, _)| g.kind == kind).map(|(_, v)| v.clone()))
            .map(SpectralValue::Exact)
    };
    let m = max_exact(peaks.iter().map(|(_, v)| v.clone())).expect("some convergent passes");
    Ok(SpectraReport {
        lambda: SpectralValue::Exact(lambda_of(cf)?),
        dirichlet: SpectralValue::Exact(dirichlet_of(cf)?),
        m: SpectralValue::Exact(m),
        m_skip: by_kind(GapKind::Skip),
        m_adjacent: by_kind(GapKind::Adjacent),
        exact: true,
        horizon_used: residues(cf).end + 2,
        running: None,
    })
}

/// Expands `α` (at most `horizon` quotients) and reports its spectra.
pub fn spectra_of(alpha: &Exact, horizon: usize) -> Result<SpectraReport> {
    if alpha.is_rational() {
        return Err(Error::NotDefined);
    }
    spectra(&cf::expand(alpha, horizon)?)
}

/// Peaks of the actual chain compared with the limit values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPeaks {
    /// Gaps of the last period of the chain.
    pub gaps: Vec<GapClass>,
    /// Exact peaks of those segments at finite indices.
    pub finite: Vec<Exact>,
    /// Max of `G`/`F` at the limit arguments over the same gaps.
    pub limit_max: Exact,
}

/// Builds the chain over `ν ≤ horizon`, takes the gaps of its last period
/// and evaluates their peaks both at the actual and at the limit arguments.
/// The horizon must reach past the preperiod and two periods; see
/// [`min_chain_horizon`].
pub fn m_from_chain(cf: &CFExpansion, horizon: usize) -> Result<ChainPeaks> {
    require_periodic(cf)?;
    let alpha = cf.value()?;
    let records = cf::convergents(cf, &alpha, horizon)?;
    let chain = legendre::build_chain(cf, &records)?;
    let k = cf.period().len();
    let last = chain.gaps.last().expect("chain has a gap").nu;
    let first = (last + 1).saturating_sub(k);
    if first + 1 < cf.period_start() + 2 * k {
        return Err(Error::Domain("chain peaks (horizon ends before the second period)"));
    }
    let picked: Vec<(usize, GapClass)> =
        chain.gaps.iter().copied().enumerate().filter(|(_, g)| g.nu >= first).collect();
    let mut finite = Vec::with_capacity(picked.len());
    let mut limits = Vec::with_capacity(picked.len());
    for &(n, gap) in &picked {
        let (l, r) = (&chain.nodes[n], &chain.nodes[n + 1]);
        let tails = mu::peak_tails(cf, &records, gap)?;
        finite.push(mu::segment_peak((&l.q, &l.err), (&r.q, &r.err), gap, &tails)?.0);
        limits.push(limit_peak(cf, gap)?);
    }
    Ok(ChainPeaks {
        gaps: picked.into_iter().map(|(_, g)| g).collect(),
        finite,
        limit_max: max_exact(limits).expect("one period has a gap"),
    })
}

/// Smallest horizon [`m_from_chain`] accepts for `cf`, with some margin.
pub fn min_chain_horizon(cf: &CFExpansion) -> usize {
    cf.period_start() + 3 * cf.period().len() + 4
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// `[a_j; ..., a_N]` for the stored quotients.
fn finite_tail(quotients: &[BigInt], j: usize, last_plus_one: bool) -> BigRational {
    let n = quotients.len() - 1;
    let mut x = rat(&quotients[n]);
    if last_plus_one {
        x += BigRational::one();
    }
    for a in quotients[j..n].iter().rev() {
        x = rat(a) + x.recip();
    }
    x
}

/// Window size for finite-horizon estimates.
fn window(count: usize) -> usize {
    (count / 8).max(3).min(count)
}

fn window_max(values: &[RationalInterval]) -> Option<RationalInterval> {
    let w = window(values.len());
    let tail = &values[values.len() - w..];
    let lo = tail.iter().map(|v| v.lo().clone()).max()?;
    let hi = tail.iter().map(|v| v.hi().clone()).max()?;
    Some(RationalInterval::new(lo, hi))
}

fn window_min(values: &[RationalInterval]) -> Option<RationalInterval> {
    let w = window(values.len());
    let tail = &values[values.len() - w..];
    let lo = tail.iter().map(|v| v.lo().clone()).min()?;
    let hi = tail.iter().map(|v| v.hi().clone()).min()?;
    Some(RationalInterval::new(lo, hi))
}

/// Finite-horizon estimates from a prefix `[a_0; a_1, ..., a_N]`.
///
/// The true tail `α_j` lies between `[a_j; ..., a_N]` and
/// `[a_j; ..., a_N + 1]`, whatever the unknown continuation. Legendre
/// verdicts are taken only while decided by these enclosures. Each estimate
/// is the sup (inf for `λ`) over the last `max(3, count/8)` values.
fn prefix_spectra(cf: &CFExpansion) -> Result<SpectraReport> {
    let n = cf.last_index().expect("prefix words are non-empty");
    let quotients: Vec<BigInt> = (0..=n).map(|j| cf.quotient(j).unwrap().clone()).collect();
    if n < 4 {
        return Err(Error::InsufficientHorizon { nodes: n });
    }
    let tails: Vec<RationalInterval> = (0..=n)
        .map(|j| RationalInterval::hull(finite_tail(&quotients, j, false), finite_tail(&quotients, j, true)))
        .collect();
    // q_{-1} = 0, q_0 = 1
    let mut q = vec![BigInt::one()];
    let mut prev = BigInt::zero();
    for a in &quotients[1..] {
        let next = a * q.last().unwrap() + &prev;
        prev = q.last().unwrap().clone();
        q.push(next);
    }
    let star = |nu: usize| -> RationalInterval {
        let before = if nu == 0 { BigInt::zero() } else { q[nu - 1].clone() };
        RationalInterval::point(BigRational::new(before, q[nu].clone()))
    };
    let two = BigRational::from_integer(2.into());

    let mut running = RunningValues::default();
    for nu in 1..n {
        let s = &star(nu) + &tails[nu + 1];
        running.lambda.push((nu, s.recip().expect("positive")));
        if nu + 1 < n {
            let y = &tails[nu + 2];
            running.dirichlet.push((nu, y / &(&star(nu + 1) + y)));
        }
    }

    // decided Legendre verdicts, ν = 1, 2, ... until the first undecided one
    let mut passes = Vec::new();
    for nu in 1..n {
        let s = &star(nu) + &tails[nu + 1];
        if *s.lo() > two {
            passes.push(true);
        } else if *s.hi() < two {
            passes.push(false);
        } else {
            break;
        }
    }
    if passes.windows(2).any(|w| !w[0] && !w[1]) {
        return Err(Error::Inconsistent("two consecutive convergents fail".into()));
    }
    let mut chain: Vec<usize> = Vec::new();
    for (i, &ok) in passes.iter().enumerate() {
        let nu = i + 1;
        if ok {
            if chain.last().is_some_and(|&p| q[p] == q[nu]) {
                chain.pop();
            }
            chain.push(nu);
        }
    }
    for w in chain.windows(2) {
        let gap = match w[1] - w[0] {
            1 => GapClass { kind: GapKind::Adjacent, nu: w[0] },
            _ => GapClass { kind: GapKind::Skip, nu: w[0] + 1 },
        };
        if gap.nu + 2 > n {
            break;
        }
        let inv = tails[gap.nu + 2].recip().expect("tails exceed 1");
        let value = match gap.kind {
            GapKind::Skip => mu::g_interval(&star(gap.nu), &inv),
            GapKind::Adjacent => mu::f_interval(&star(gap.nu + 1), &inv)?,
        };
        running.m.push((gap, value));
    }
    if running.m.is_empty() {
        return Err(Error::InsufficientHorizon { nodes: chain.len() });
    }

    let values = |kind: Option<GapKind>| -> Vec<RationalInterval> {
        running
            .m
            .iter()
            .filter(|(g, _)| kind.map_or(true, |k| g.kind == k))
            .map(|(_, v)| v.clone())
            .collect()
    };
    let lambdas: Vec<_> = running.lambda.iter().map(|(_, v)| v.clone()).collect();
    let dirichlets: Vec<_> = running.dirichlet.iter().map(|(_, v)| v.clone()).collect();
    let enclosure = |v: Option<RationalInterval>| v.map(SpectralValue::Enclosure);
    Ok(SpectraReport {
        lambda: enclosure(window_min(&lambdas)).ok_or(Error::InsufficientHorizon { nodes: 0 })?,
        dirichlet: enclosure(window_max(&dirichlets))
            .ok_or(Error::InsufficientHorizon { nodes: 0 })?,
        m: SpectralValue::Enclosure(window_max(&values(None)).expect("non-empty")),
        m_skip: enclosure(window_max(&values(Some(GapKind::Skip)))),
        m_adjacent: enclosure(window_max(&values(Some(GapKind::Adjacent)))),
        exact: false,
        horizon_used: n,
        running: Some(running),
    })
}

/// Growth law of the partial quotients of a generator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    /// `start, start + step, start + 2 step, ...`
    Arithmetic { start: BigInt, step: BigInt },
    /// `start, start·ratio, start·ratio², ...`
    Geometric { start: BigInt, ratio: BigInt },
    Explicit(Vec<BigInt>),
}

impl Growth {
    /// The first `count` values; they must be positive and strictly increasing.
    pub fn values(&self, count: usize) -> Result<Vec<BigInt>> {
        let out: Vec<BigInt> = match self {
            Growth::Arithmetic { start, step } => {
                (0..count).map(|i| start + step * BigInt::from(i)).collect()
            }
            Growth::Geometric { start, ratio } => {
                let mut x = start.clone();
                (0..count)
                    .map(|_| {
                        let y = x.clone();
                        x *= ratio;
                        y
                    })
                    .collect()
            }
            Growth::Explicit(v) => {
                if v.len() < count {
                    return Err(Error::InvalidSpec(format!(
                        "{} explicit values given, {count} needed",
                        v.len()
                    )));
                }
                v[..count].to_vec()
            }
        };
        if out.first().is_some_and(|a| !a.is_positive()) {
            return Err(Error::InvalidSpec("partial quotients must be positive".into()));
        }
        if out.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSpec("growth must be strictly increasing".into()));
        }
        Ok(out)
    }
}

/// `[0; a_1, ..., a_terms]` with `a_n` following `growth`.
pub fn make_alpha_minus(growth: &Growth, terms: usize) -> Result<CFExpansion> {
    CFExpansion::prefix(BigInt::zero(), growth.values(terms)?)
}

/// `[0; 1, 1, a_3, 1, 1, a_6, ...]` truncated to `terms` quotients, with
/// `a_{3k}` following `gaps`.
pub fn make_alpha_plus(gaps: &Growth, terms: usize) -> Result<CFExpansion> {
    let big = gaps.values(terms / 3)?;
    let word: Vec<BigInt> = (1..=terms)
        .map(|j| if j % 3 == 0 { big[j / 3 - 1].clone() } else { BigInt::one() })
        .collect();
    CFExpansion::prefix(BigInt::zero(), word)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub entries: Vec<(CFExpansion, Exact)>,
    pub min: Option<SampleBound>,
    pub max: Option<SampleBound>,
}

/// An entry of a sample aggregate: the index into `entries` and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleBound {
    pub index: usize,
    pub value: Exact,
}

/// Exact `𝔪` of every word. Words are evaluated in parallel; entries keep
/// input order. Values from different fields are ordered by refinement.
pub fn sample_m(words: &[CFExpansion]) -> Result<SampleReport> {
    let entries: Vec<(CFExpansion, Exact)> = words
        .par_iter()
        .map(|w| Ok((w.clone(), m_of(w)?)))
        .collect::<Result<_>>()?;
    let pick = |want: std::cmp::Ordering| -> Result<Option<SampleBound>> {
        let mut best: Option<usize> = None;
        for (i, (_, v)) in entries.iter().enumerate() {
            let better = match best {
                None => true,
                Some(b) => v.cmp_refined(&entries[b].1, 64, 4096)? == want,
            };
            if better {
                best = Some(i);
            }
        }
        Ok(best.map(|index| SampleBound { index, value: entries[index].1.clone() }))
    };
    let min = pick(std::cmp::Ordering::Less)?;
    let max = pick(std::cmp::Ordering::Greater)?;
    Ok(SampleReport { entries, min, max })
}

/// All purely periodic words `[0; (w)]` with `|w| ≤ max_period` and
/// quotients in `1..=max_quotient`, one per rotation class of primitive words.
pub fn periodic_words(max_period: usize, max_quotient: u32) -> Vec<CFExpansion> {
    let mut out = Vec::new();
    for len in 1..=max_period {
        let total = (max_quotient as usize).pow(len as u32);
        for code in 0..total {
            let mut c = code;
            let word: Vec<u32> = (0..len)
                .map(|_| {
                    let a = (c % max_quotient as usize) as u32 + 1;
                    c /= max_quotient as usize;
                    a
                })
                .collect();
            let primitive = (1..len).all(|r| {
                let mut w = word.clone();
                w.rotate_left(r);
                w != word
            });
            let smallest = (1..len).all(|r| {
                let mut w = word.clone();
                w.rotate_left(r);
                word <= w
            });
            if primitive && smallest {
                out.push(CFExpansion::periodic(0, Vec::<u32>::new(), word).expect("valid word"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> CFExpansion {
        match crate::exact::parse_literal(&format!("cf:{s}")).unwrap() {
            crate::exact::Literal::Word(w) => w,
            _ => unreachable!(),
        }
    }

    fn surd(p: i64, q: i64, d: i64, r: i64) -> Exact {
        Exact::surd(p, q, d, r).unwrap()
    }

    #[test]
    fn golden_constants() {
        let r = spectra(&word("[1;(1)]")).unwrap();
        assert_eq!(r.lambda, SpectralValue::Exact(surd(0, 1, 5, 5)));
        assert_eq!(r.dirichlet, SpectralValue::Exact(surd(5, 1, 5, 10)));
        assert_eq!(r.m, SpectralValue::Exact(surd(5, 2, 5, 20)));
        assert!(r.exact && r.running.is_none());
        assert_eq!(r.m_skip, None);
    }

    #[test]
    fn sqrt2_and_half_sqrt3() {
        let cf = word("[1;(2)]");
        assert_eq!(lambda_of(&cf).unwrap(), surd(0, 1, 2, 4));
        assert_eq!(m_of(&cf).unwrap(), surd(2, 1, 2, 8));
        let cf = word("[1;(2,1)]");
        // 1/√12 = √3/6
        assert_eq!(lambda_of(&cf).unwrap(), surd(0, 1, 3, 6));
        assert_eq!(m_of(&cf).unwrap(), surd(0, 1, 3, 4));
        let r = spectra(&cf).unwrap();
        assert_eq!(r.m_skip, Some(SpectralValue::Exact(surd(0, 1, 3, 4))));
    }

    #[test]
    fn rational_input_is_not_defined() {
        assert_eq!(spectra_of(&Exact::rational(3, 2), 10), Err(Error::NotDefined));
        assert_eq!(m_of(&word("[0;1,2]")), Err(Error::NotDefined));
    }

    #[test]
    fn chain_peaks_match_limits() {
        for w in ["[1;(1)]", "[1;(2)]", "[1;(2,1)]", "[0;3,(1,4,1,2)]"] {
            let cf = word(w);
            let peaks = m_from_chain(&cf, 60).unwrap();
            assert_eq!(peaks.limit_max, m_of(&cf).unwrap(), "{w}");
        }
    }

    #[test]
    fn growth_guards() {
        let flat = Growth::Arithmetic { start: 3.into(), step: 0.into() };
        assert!(matches!(make_alpha_minus(&flat, 10), Err(Error::InvalidSpec(_))));
        let ok = Growth::Arithmetic { start: 3.into(), step: 1.into() };
        let w = make_alpha_plus(&ok, 9).unwrap();
        let q: Vec<String> = (1..=9).map(|j| w.quotient(j).unwrap().to_string()).collect();
        assert_eq!(q, ["1", "1", "3", "1", "1", "4", "1", "1", "5"]);
    }

    #[test]
    fn generators_approach_endpoints() {
        let minus = make_alpha_minus(&Growth::Arithmetic { start: 1.into(), step: 1.into() }, 40).unwrap();
        let r = spectra(&minus).unwrap();
        assert!(!r.exact);
        assert!((r.m.to_f64() - 0.25).abs() < 0.02, "{}", r.m.to_f64());
        let plus = make_alpha_plus(&Growth::Arithmetic { start: 3.into(), step: 1.into() }, 45).unwrap();
        let r = spectra(&plus).unwrap();
        assert!((r.m.to_f64() - 0.5).abs() < 0.02, "{}", r.m.to_f64());
    }

    #[test]
    fn word_enumeration() {
        let words = periodic_words(2, 3);
        // 3 of length one, 3 rotation classes {12, 13, 23} of length two
        assert_eq!(words.len(), 6);
        let report = sample_m(&periodic_words(2, 2)).unwrap();
        assert_eq!(report.entries.len(), 3);
        assert_eq!(report.max.unwrap().value, surd(5, 2, 5, 20));
    }
}
