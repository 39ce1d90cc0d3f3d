//! Comparing `μ_α` with `μ_β`.
//!
//! Both functions are linear between the denominators of their own chains,
//! so their difference is linear between consecutive points of the merged
//! set of denominators. Its sign at those points decides every sign change:
//! opposite signs at the ends of a linearity interval mean exactly one
//! crossing inside it, equal signs mean none.
//!
//! If `𝔪(α) < λ(β)` then `μ_α(t) < μ_β(t)` for all large `t`. When instead
//! `λ(β) < λ(α) < 𝔪(β)` and `1, α, β` are independent, the difference changes
//! sign infinitely often. Only finite windows are examined here.

use std::cmp::Ordering;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::cf;
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::legendre::{self, LegendreChain};
use crate::mu;
use crate::spectra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareOptions {
    /// Starting precision of cross-field comparisons.
    pub precision_bits: u64,
    /// Precision at which a comparison gives up as undecided.
    pub cap_bits: u64,
    /// Maximum number of partial quotients searched for a period.
    pub max_terms: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { precision_bits: 256, cap_bits: 1024, max_terms: 200 }
    }
}

fn expand_irrational(x: &Exact, max_terms: usize) -> Result<cf::CFExpansion> {
    if x.is_rational() {
        return Err(Error::NotDefined);
    }
    cf::expand(x, max_terms)
}

/// Decides `𝔪(α) < λ(β)`.
pub fn proposition1_check(alpha: &Exact, beta: &Exact, opts: &CompareOptions) -> Result<bool> {
    let m = spectra::m_of(&expand_irrational(alpha, opts.max_terms)?)?;
    let lambda = spectra::lambda_of(&expand_irrational(beta, opts.max_terms)?)?;
    Ok(m.cmp_refined(&lambda, opts.precision_bits, opts.cap_bits)?.is_lt())
}

/// `1, α, β` are linearly dependent over `ℤ` exactly when one of them is
/// rational or both lie in the same quadratic field.
pub fn independent(alpha: &Exact, beta: &Exact) -> bool {
    match (alpha.field(), beta.field()) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

/// Decides `λ(β) < λ(α) < 𝔪(β)` for independent `1, α, β`.
pub fn theorem3_precondition(alpha: &Exact, beta: &Exact, opts: &CompareOptions) -> Result<bool> {
    if !independent(alpha, beta) {
        return Err(Error::NotApplicable(format!(
            "1, {}, {} are linearly dependent",
            alpha.to_literal(),
            beta.to_literal()
        )));
    }
    let a = expand_irrational(alpha, opts.max_terms)?;
    let b = expand_irrational(beta, opts.max_terms)?;
    let lambda_a = spectra::lambda_of(&a)?;
    let lambda_b = spectra::lambda_of(&b)?;
    let m_b = spectra::m_of(&b)?;
    let first = lambda_b.cmp_refined(&lambda_a, opts.precision_bits, opts.cap_bits)?.is_lt();
    let second = lambda_a.cmp_refined(&m_b, opts.precision_bits, opts.cap_bits)?.is_lt();
    Ok(first && second)
}

/// Values of both functions at one merged breakpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointRow {
    pub t: BigRational,
    pub mu_alpha: Exact,
    pub mu_beta: Exact,
    /// Sign of `μ_α(t) - μ_β(t)`; `None` if undecided at the precision cap.
    pub sign: Option<Ordering>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingStatus {
    /// Endpoint signs are certified and opposite: exactly one sign change.
    Certified,
    /// Some sign in the interval is undecided.
    Undecided,
}

/// An interval between breakpoints containing a sign change, or possibly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub lo: BigRational,
    pub hi: BigRational,
    pub status: CrossingStatus,
}

/// Which function is eventually smaller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    AlphaBelow,
    BetaBelow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dominance {
    pub t0: BigRational,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub t_range: (BigRational, BigRational),
    /// Sorted and disjoint.
    pub crossings: Vec<Crossing>,
    /// Set only when the matching hypothesis `𝔪 < λ` holds and every sign
    /// from `t0` on is certified and uniform.
    pub dominance: Option<Dominance>,
    /// `λ(β) < λ(α) < 𝔪(β)` with `1, α, β` independent.
    pub precondition_naturel: bool,
    pub rows: Vec<BreakpointRow>,
}

impl CrossingReport {
    pub fn certified_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.status == CrossingStatus::Certified).count()
    }

    pub fn undecided_count(&self) -> usize {
        self.crossings.len() - self.certified_count()
    }
}

fn differ_by_integer(a: &Exact, b: &Exact) -> bool {
    let integral = |x: Result<Exact>| {
        x.ok().and_then(|x| x.as_rational().map(|r| r.is_integer())).unwrap_or(false)
    };
    integral(a.try_sub(b)) || integral(a.try_add(b))
}

fn in_range(chain: &LegendreChain, lo: &BigRational, hi: &BigRational) -> Vec<BigRational> {
    chain
        .nodes
        .iter()
        .map(|n| BigRational::from_integer(n.q.clone()))
        .filter(|q| q > lo && q < hi)
        .collect()
}

/// Signs of `μ_α - μ_β` on the merged breakpoints of `[t_lo, t_hi]`, and
/// the sign changes they imply.
pub fn find_crossings(
    alpha: &Exact,
    beta: &Exact,
    t_lo: &BigRational,
    t_hi: &BigRational,
    opts: &CompareOptions,
) -> Result<CrossingReport> {
    // ‖qα‖ only depends on ±α mod 1
    if differ_by_integer(alpha, beta) {
        return Err(Error::EqualInputs);
    }
    if t_lo >= t_hi {
        return Err(Error::Domain("compare (t_lo >= t_hi)"));
    }
    let (_, _, chain_a) = legendre::chain_covering(alpha, t_hi, opts.max_terms)?;
    let (_, _, chain_b) = legendre::chain_covering(beta, t_hi, opts.max_terms)?;

    let mut ts = vec![t_lo.clone(), t_hi.clone()];
    ts.extend(in_range(&chain_a, t_lo, t_hi));
    ts.extend(in_range(&chain_b, t_lo, t_hi));
    ts.sort();
    ts.dedup();

    let rows = ts
        .into_par_iter()
        .map(|t| {
            let mu_alpha = mu::mu_eval(&chain_a, &t)?;
            let mu_beta = mu::mu_eval(&chain_b, &t)?;
            let sign = match mu_alpha.cmp_refined(&mu_beta, opts.precision_bits, opts.cap_bits) {
                Ok(ord) => Some(ord),
                Err(Error::Undecided { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(BreakpointRow { t, mu_alpha, mu_beta, sign })
        })
        .collect::<Result<Vec<_>>>()?;

    let crossings = sign_changes(&rows);

    let precondition_naturel = match theorem3_precondition(alpha, beta, opts) {
        Ok(v) => v,
        Err(Error::NotApplicable(_) | Error::Undecided { .. }) => false,
        Err(e) => return Err(e),
    };

    // an undecided hypothesis only means no dominance claim
    let holds = |a: &Exact, b: &Exact| match proposition1_check(a, b, opts) {
        Err(Error::Undecided { .. }) => Ok(false),
        other => other,
    };
    let side = if holds(alpha, beta)? {
        Some((Side::AlphaBelow, Ordering::Less))
    } else if holds(beta, alpha)? {
        Some((Side::BetaBelow, Ordering::Greater))
    } else {
        None
    };
    let dominance = side.and_then(|(side, want)| {
        let t0 = crossings.last().map_or_else(|| t_lo.clone(), |c| c.hi.clone());
        rows.iter()
            .filter(|r| r.t >= t0)
            .all(|r| r.sign == Some(want))
            .then_some(Dominance { t0, side })
    });

    Ok(CrossingReport {
        t_range: (t_lo.clone(), t_hi.clone()),
        crossings,
        dominance,
        precondition_naturel,
        rows,
    })
}

/// Intervals between consecutive breakpoints of non-zero certified sign that
/// contain a sign change (certified) or an undecided sign (undecided).
fn sign_changes(rows: &[BreakpointRow]) -> Vec<Crossing> {
    let mut out = Vec::new();
    let mut last: Option<(usize, Ordering)> = None;
    let mut pending_undecided = false;
    for (i, row) in rows.iter().enumerate() {
        match row.sign {
            None => pending_undecided = true,
            Some(Ordering::Equal) => {}
            Some(sign) => {
                if let Some((j, prev)) = last {
                    let status = if pending_undecided {
                        Some(CrossingStatus::Undecided)
                    } else if prev != sign {
                        Some(CrossingStatus::Certified)
                    } else {
                        None
                    };
                    if let Some(status) = status {
                        out.push(Crossing { lo: rows[j].t.clone(), hi: row.t.clone(), status });
                    }
                }
                last = Some((i, sign));
                pending_undecided = false;
            }
        }
    }
    if pending_undecided {
        let lo = last.map_or(0, |(j, _)| j);
        out.push(Crossing {
            lo: rows[lo].t.clone(),
            hi: rows.last().expect("two rows").t.clone(),
            status: CrossingStatus::Undecided,
        });
    }
    out
}
