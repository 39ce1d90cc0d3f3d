//! Convergents satisfying the Legendre condition and the chain they form.
//!
//! A convergent `p_ν/q_ν` passes when `|α - p_ν/q_ν| < 1/(2 q_ν²)`, i.e.
//! `q_ν ξ_ν < 1/2`. Of any two consecutive convergents at least one passes, so
//! consecutive passing denominators `Q_n < Q_{n+1}` are either adjacent
//! convergents `(q_ν, q_{ν+1})` or skip one, `(q_{ν-1}, q_{ν+1})`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cf::{self, CFExpansion, ConvergentRecord};
use crate::error::{Error, Result};
use crate::exact::Exact;

/// How two consecutive chain denominators relate to the convergent sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapKind {
    /// `(Q_n, Q_{n+1}) = (q_ν, q_{ν+1})`
    Adjacent,
    /// `(Q_n, Q_{n+1}) = (q_{ν-1}, q_{ν+1})`
    Skip,
}

impl GapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GapKind::Adjacent => "adjacent",
            GapKind::Skip => "skip",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapClass {
    pub kind: GapKind,
    pub nu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreNode {
    pub n: usize,
    /// The denominator `Q_n`.
    pub q: BigInt,
    /// `‖Q_n α‖`.
    pub err: Exact,
    pub source_nu: usize,
}

/// Nodes `Q_0 < Q_1 < ...` and the classification of every consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreChain {
    pub nodes: Vec<LegendreNode>,
    /// `gaps[n]` classifies `(nodes[n], nodes[n+1])`.
    pub gaps: Vec<GapClass>,
}

impl LegendreChain {
    pub fn first_q(&self) -> &BigInt {
        &self.nodes[0].q
    }

    pub fn last_q(&self) -> &BigInt {
        &self.nodes.last().expect("chain has nodes").q
    }
}

/// Decides the Legendre condition for one convergent.
///
/// The direct test `q ξ < 1/2` is always made. When the next tail `α_{ν+1}` is
/// given, the equivalent test `α*_ν + α_{ν+1} > 2` is made too and the two
/// must agree. Equality with the bound cannot occur for irrational `α`.
pub fn is_legendre(record: &ConvergentRecord, next_tail: Option<&Exact>) -> Result<bool> {
    let half = Exact::rational(1, 2);
    let lhs = &Exact::integer(record.q.clone()) * &record.xi;
    let direct = lhs.try_cmp(&half)?.is_lt();
    if let Some(t) = next_tail {
        let sum = &Exact::Rational(record.alpha_star.clone()) + t;
        let via_tails = sum.try_cmp(&Exact::integer(2))?.is_gt();
        if via_tails != direct {
            return Err(Error::Inconsistent(format!(
                "Legendre criteria disagree at nu = {}",
                record.nu
            )));
        }
    }
    Ok(direct)
}

/// Pass/fail of the Legendre condition for every record of the table.
pub fn legendre_flags(cf: &CFExpansion, records: &[ConvergentRecord]) -> Result<Vec<bool>> {
    records
        .iter()
        .map(|r| {
            let tail = if r.xi.is_zero() { None } else { Some(cf.tail(r.nu + 1)?) };
            is_legendre(r, tail.as_ref())
        })
        .collect()
}

/// Builds the chain from a convergent table.
///
/// Duplicate denominators (`q_0 = q_1 = 1` when `a_1 = 1`) keep the later
/// convergent. Every consecutive pair of convergents is checked to contain a
/// passing one, and every skip gap to have `a_{ν+1} = 1`.
pub fn build_chain(cf: &CFExpansion, records: &[ConvergentRecord]) -> Result<LegendreChain> {
    if cf.is_finite() {
        return Err(Error::RationalChain);
    }
    let flags = legendre_flags(cf, records)?;
    if let Some(nu) = flags.windows(2).position(|w| !w[0] && !w[1]) {
        return Err(Error::LegendreGap { nu });
    }
    let mut passing: Vec<usize> = Vec::new();
    for (nu, _) in flags.iter().enumerate().filter(|(_, &ok)| ok) {
        if let Some(&prev) = passing.last() {
            if records[prev].q == records[nu].q {
                passing.pop();
            }
        }
        passing.push(nu);
    }
    if passing.len() < 2 {
        return Err(Error::InsufficientHorizon { nodes: passing.len() });
    }
    let nodes = passing
        .iter()
        .enumerate()
        .map(|(n, &nu)| LegendreNode {
            n,
            q: records[nu].q.clone(),
            err: records[nu].xi.clone(),
            source_nu: nu,
        })
        .collect();
    let gaps = passing
        .windows(2)
        .map(|w| match w[1] - w[0] {
            1 => Ok(GapClass { kind: GapKind::Adjacent, nu: w[0] }),
            2 => {
                let nu = w[0] + 1;
                if !cf.quotient(nu + 1).is_some_and(One::is_one) {
                    return Err(Error::Inconsistent(format!("skip at nu = {nu} with a_(nu+1) != 1")));
                }
                Ok(GapClass { kind: GapKind::Skip, nu })
            }
            _ => Err(Error::LegendreGap { nu: w[0] + 1 }),
        })
        .collect::<Result<_>>()?;
    Ok(LegendreChain { nodes, gaps })
}

/// Expands `α`, builds convergents until the chain reaches past `t_hi`, and
/// returns everything.
pub fn chain_covering(
    alpha: &Exact,
    t_hi: &BigRational,
    max_terms: usize,
) -> Result<(CFExpansion, Vec<ConvergentRecord>, LegendreChain)> {
    if alpha.is_rational() {
        return Err(Error::RationalChain);
    }
    let cf = cf::expand(alpha, max_terms)?;
    let mut n = 8;
    loop {
        let records = cf::convergents(&cf, alpha, n)?;
        // one of the last two convergents passes, so the chain ends at ≥ q_{n-1}
        if BigRational::from_integer(records[n - 1].q.clone()) >= *t_hi {
            let chain = build_chain(&cf, &records)?;
            return Ok((cf, records, chain));
        }
        n *= 2;
    }
}

/// Pass/fail pattern of the Legendre condition in the periodic regime.
///
/// Entry `i` is the asymptotic verdict for indices `ν ≡ base + i (mod k)` where
/// `base = period_start + k` and `k` the period length. It is decided from the
/// limit `α*_∞ + α_{ν+1} > 2`; the limit sum is `α_{ν+1}` minus its conjugate,
/// an irrational number, so the comparison is never an equality and the
/// finite-index verdicts agree with it from some point on.
pub fn asymptotic_pattern(cf: &CFExpansion) -> Result<Vec<bool>> {
    if !cf.is_periodic() {
        return Err(Error::NotExact);
    }
    let k = cf.period().len();
    let base = cf.period_start() + k;
    (base..base + k)
        .map(|nu| {
            let sum = &cf.reversed_tail_limit(nu)? + &cf.tail(nu + 1)?;
            Ok(sum.try_cmp(&Exact::integer(2))?.is_gt())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{convergents, expand};

    fn table(x: &Exact, n: usize) -> (CFExpansion, Vec<ConvergentRecord>) {
        let cf = expand(x, 100).unwrap();
        let recs = convergents(&cf, x, n).unwrap();
        (cf, recs)
    }

    #[test]
    fn legendre_examples() {
        let g = Exact::surd(1, 1, 5, 2).unwrap();
        let (cf, recs) = table(&g, 4);
        assert!(!is_legendre(&recs[0], Some(&cf.tail(1).unwrap())).unwrap());
        assert!(is_legendre(&recs[2], Some(&cf.tail(3).unwrap())).unwrap());
        let r = Exact::rational(355, 113);
        let (_, recs) = table(&r, 2);
        assert!(is_legendre(&recs[2], None).unwrap());
    }

    #[test]
    fn golden_chain_is_all_adjacent() {
        let g = Exact::surd(1, 1, 5, 2).unwrap();
        let (cf, recs) = table(&g, 30);
        let chain = build_chain(&cf, &recs).unwrap();
        assert_eq!(chain.nodes[0].source_nu, 1);
        assert!(chain.nodes.iter().all(|n| n.q == recs[n.source_nu].q));
        assert_eq!(chain.nodes.len(), 30);
        assert!(chain.gaps.iter().all(|g| g.kind == GapKind::Adjacent));
    }

    #[test]
    fn sqrt2_every_convergent_passes() {
        let s = Exact::sqrt_of(2).unwrap();
        let (cf, recs) = table(&s, 20);
        let chain = build_chain(&cf, &recs).unwrap();
        assert_eq!(chain.nodes.len(), 21);
        assert!(chain.gaps.iter().all(|g| g.kind == GapKind::Adjacent));
    }

    #[test]
    fn half_sqrt3_has_skips_at_odd_nu() {
        let x = Exact::surd(1, 1, 3, 2).unwrap();
        let (cf, recs) = table(&x, 20);
        let chain = build_chain(&cf, &recs).unwrap();
        let skips: Vec<usize> =
            chain.gaps.iter().filter(|g| g.kind == GapKind::Skip).map(|g| g.nu).collect();
        assert!(skips.len() >= 8);
        assert!(skips.iter().all(|nu| nu % 2 == 1));
        // pattern starts at ν = 3 (odd, fails)
        assert_eq!(asymptotic_pattern(&cf).unwrap(), [false, true]);
    }

    #[test]
    fn chain_errors() {
        let r = Exact::rational(355, 113);
        let (cf, recs) = table(&r, 2);
        assert_eq!(build_chain(&cf, &recs), Err(Error::RationalChain));
        let g = Exact::surd(1, 1, 5, 2).unwrap();
        let (cf, recs) = table(&g, 1);
        assert_eq!(build_chain(&cf, &recs), Err(Error::InsufficientHorizon { nodes: 1 }));
    }

    #[test]
    fn covering_chain_reaches_target() {
        let g = Exact::surd(1, 1, 5, 2).unwrap();
        let t = BigRational::from_integer(1_000_000.into());
        let (_, _, chain) = chain_covering(&g, &t, 100).unwrap();
        assert!(BigRational::from_integer(chain.last_q().clone()) >= t);
    }
}
