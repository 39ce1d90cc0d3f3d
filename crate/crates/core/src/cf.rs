//! Continued-fraction expansions, convergents, tails and reversed tails.
//!
//! For `α = [a0; a1, a2, ...]` the convergents `p_ν/q_ν = [a0; a1, ..., aν]`
//! come from the usual recurrence. Alongside them we keep
//!
//! * the error `ξ_ν = |q_ν α - p_ν|`, as an exact field element,
//! * the tail `α_ν = [aν; aν+1, ...]`,
//! * the reversed tail `α*_ν = [0; aν, ..., a1] = q_{ν-1}/q_ν`.
//!
//! Indexing starts at `ν = 0` (convergent `a0/1`); the seeds
//! `p_{-1} = 1, q_{-1} = 0` stay internal.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big_square_part, Exact};

/// A partial-quotient word.
///
/// Three shapes exist:
/// * finite (`is_finite`): the expansion of a rational, last quotient ≥ 2;
/// * eventually periodic: `a0; preperiod, (period)` with a minimal period,
///   the expansion of a quadratic irrational;
/// * prefix: the first quotients of an irrational whose continuation is
///   unknown (for example a generated word such as `[0; 1, 2, 3, ...]`).
#[derive(Clone, Debug)]
pub struct CFExpansion {
    a0: BigInt,
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
    finite: bool,
    /// Square-free radicand of the field of a periodic word, when known.
    field: Option<u64>,
}

// equality is that of the word; `field` is derived from it
impl PartialEq for CFExpansion {
    fn eq(&self, other: &Self) -> bool {
        (&self.a0, &self.preperiod, &self.period, self.finite)
            == (&other.a0, &other.preperiod, &other.period, other.finite)
    }
}

impl Eq for CFExpansion {}

impl Hash for CFExpansion {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (&self.a0, &self.preperiod, &self.period, self.finite).hash(state);
    }
}

fn check_positive(word: &[BigInt]) -> Result<()> {
    match word.iter().find(|a| !a.is_positive()) {
        Some(a) => Err(Error::InvalidWord(format!("partial quotient {a} is not positive"))),
        None => Ok(()),
    }
}

fn to_big(xs: impl IntoIterator<Item = impl Into<BigInt>>) -> Vec<BigInt> {
    xs.into_iter().map(Into::into).collect()
}

impl CFExpansion {
    /// The finite word of a rational, canonicalized so that the last quotient
    /// is at least 2 (`[.., a, 1]` becomes `[.., a+1]`).
    pub fn finite(
        a0: impl Into<BigInt>,
        rest: impl IntoIterator<Item = impl Into<BigInt>>,
    ) -> Result<CFExpansion> {
        let mut a0 = a0.into();
        let mut rest = to_big(rest);
        check_positive(&rest)?;
        if rest.last().is_some_and(One::is_one) {
            rest.pop();
            match rest.last_mut() {
                Some(last) => *last += 1,
                None => a0 += 1,
            }
        }
        Ok(CFExpansion { a0, preperiod: rest, period: Vec::new(), finite: true, field: None })
    }

    /// `[a0; preperiod, (period)]`, normalized to the minimal period and the
    /// shortest preperiod.
    pub fn periodic(
        a0: impl Into<BigInt>,
        preperiod: impl IntoIterator<Item = impl Into<BigInt>>,
        period: impl IntoIterator<Item = impl Into<BigInt>>,
    ) -> Result<CFExpansion> {
        let mut pre = to_big(preperiod);
        let mut period = to_big(period);
        if period.is_empty() {
            return Err(Error::InvalidWord("empty period".into()));
        }
        check_positive(&pre)?;
        check_positive(&period)?;
        let k = period.len();
        if let Some(m) = (1..=k).find(|&m| k % m == 0 && (m..k).all(|i| period[i] == period[i - m]))
        {
            period.truncate(m);
        }
        while pre.last().is_some_and(|a| Some(a) == period.last()) {
            pre.pop();
            period.rotate_right(1);
        }
        let field = period_discriminant(&period).and_then(|d| big_square_part(&d, None)).map(|(_, f)| f);
        Ok(CFExpansion { a0: a0.into(), preperiod: pre, period, finite: false, field })
    }

    /// The first quotients of an irrational with unknown continuation.
    pub fn prefix(
        a0: impl Into<BigInt>,
        rest: impl IntoIterator<Item = impl Into<BigInt>>,
    ) -> Result<CFExpansion> {
        let rest = to_big(rest);
        check_positive(&rest)?;
        Ok(CFExpansion { a0: a0.into(), preperiod: rest, period: Vec::new(), finite: false, field: None })
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    /// Quotients after `a0` that precede the period (all of them for finite
    /// words and prefixes).
    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    pub fn is_prefix(&self) -> bool {
        !self.finite && self.period.is_empty()
    }

    /// Index of the first quotient inside the period.
    pub fn period_start(&self) -> usize {
        self.preperiod.len() + 1
    }

    /// Highest available quotient index for finite words and prefixes,
    /// `None` for periodic (infinite) words.
    pub fn last_index(&self) -> Option<usize> {
        if self.is_periodic() {
            None
        } else {
            Some(self.preperiod.len())
        }
    }

    /// Partial quotient `a_j`.
    pub fn quotient(&self, j: usize) -> Option<&BigInt> {
        if j == 0 {
            return Some(&self.a0);
        }
        if let Some(a) = self.preperiod.get(j - 1) {
            return Some(a);
        }
        if self.period.is_empty() {
            return None;
        }
        let off = j - 1 - self.preperiod.len();
        Some(&self.period[off % self.period.len()])
    }

    fn require(&self, j: usize) -> Result<&BigInt> {
        self.quotient(j).ok_or(Error::FiniteExpansion {
            requested: j,
            available: self.preperiod.len(),
        })
    }

    /// Exact value of the word. Prefixes have none.
    pub fn value(&self) -> Result<Exact> {
        self.tail(0)
    }

    /// The tail `α_ν = [aν; aν+1, ...]` as an exact value.
    pub fn tail(&self, nu: usize) -> Result<Exact> {
        if self.is_prefix() {
            return Err(Error::NotExact);
        }
        if self.finite {
            let last = self.preperiod.len();
            if nu > last {
                return Err(Error::FiniteExpansion { requested: nu, available: last });
            }
            let mut x = BigRational::from_integer(self.require(last)?.clone());
            for j in (nu..last).rev() {
                x = BigRational::from_integer(self.require(j)?.clone()) + x.recip();
            }
            return Ok(Exact::Rational(x));
        }
        let start = self.period_start();
        let k = self.period.len();
        if nu >= start {
            let shift = (nu - start) % k;
            let mut word = self.period.clone();
            word.rotate_left(shift);
            return periodic_value_in(&word, self.field);
        }
        let y = periodic_value_in(&self.period, self.field)?;
        let head: Vec<BigInt> = (nu..start).map(|j| self.quotient(j).unwrap().clone()).collect();
        Ok(apply_word(&head, &y))
    }

    /// Limit of the reversed tails `α*_μ` along `μ ≡ ν (mod period)`.
    ///
    /// Requires `ν ≥ period_start + period_len - 1` so that the backward word
    /// `aν, aν-1, ...` is periodic from its first quotient. The limit is
    /// `1/[aν; aν-1, ..., aν-k+1, aν, ...]`, an element of the same field.
    pub fn reversed_tail_limit(&self, nu: usize) -> Result<Exact> {
        let k = self.period.len();
        if k == 0 {
            return Err(Error::NotExact);
        }
        let start = self.period_start();
        if nu + 1 < start + k {
            return Err(Error::Inconsistent(format!(
                "reversed tail limit needs nu >= {}, got {nu}",
                start + k - 1
            )));
        }
        let word: Vec<BigInt> = (0..k).map(|i| self.quotient(nu - i).unwrap().clone()).collect();
        Ok(periodic_value_in(&word, self.field)?.recip())
    }
}

/// Matrix `[[P, P'], [Q, Q']]` with `[w1; ..., wk, y] = (P y + P')/(Q y + Q')`.
fn mobius(word: &[BigInt]) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for a in word {
        m = [a * &m[0] + &m[1], m[0].clone(), a * &m[2] + &m[3], m[2].clone()];
    }
    m
}

fn apply_word(word: &[BigInt], y: &Exact) -> Exact {
    let [p, pp, q, qq] = mobius(word);
    let num = &(&Exact::integer(p) * y) + &Exact::integer(pp);
    let den = &(&Exact::integer(q) * y) + &Exact::integer(qq);
    &num / &den
}

/// Value of the purely periodic word `[(w1, ..., wk)]`: the root `> 1` of
/// `Q y² + (Q' - P) y - P' = 0`.
pub fn purely_periodic_value(word: &[BigInt]) -> Result<Exact> {
    periodic_value_in(word, None)
}

/// `(P + Q')² - 4(PQ' - P'Q)`, the discriminant of the quadratic above. It
/// only depends on trace and determinant, so every rotation and the reversal
/// of a word share it.
fn period_discriminant(word: &[BigInt]) -> Option<BigInt> {
    if word.is_empty() {
        return None;
    }
    let [p, pp, q, qq] = mobius(word);
    let b = &qq - &p;
    Some(&b * &b + BigInt::from(4) * &pp * &q)
}

fn periodic_value_in(word: &[BigInt], field: Option<u64>) -> Result<Exact> {
    let disc = period_discriminant(word).ok_or_else(|| Error::InvalidWord("empty period".into()))?;
    let [p, _, q, qq] = mobius(word);
    let b = &qq - &p;
    match field {
        Some(f) => Exact::surd_in_field(-b, 1, disc, BigInt::from(2) * q, f),
        None => Exact::surd(-b, 1, disc, BigInt::from(2) * q),
    }
}

/// Continued-fraction expansion of an exact value.
///
/// Rationals give their canonical finite word. Quadratic irrationals are
/// expanded until a tail `α_j` (as a canonical surd) repeats, which yields the
/// minimal preperiod and period. More than `max_terms` quotients without
/// detecting the period is an error, never a silent truncation.
pub fn expand(x: &Exact, max_terms: usize) -> Result<CFExpansion> {
    match x {
        Exact::Rational(r) => {
            let mut quotients = Vec::new();
            let mut x = r.clone();
            loop {
                let a = x.floor();
                quotients.push(a.to_integer());
                if quotients.len() > max_terms {
                    return Err(Error::HorizonExceeded { max_terms });
                }
                let frac = x - a;
                if frac.is_zero() {
                    break;
                }
                x = frac.recip();
            }
            let a0 = quotients.remove(0);
            CFExpansion::finite(a0, quotients)
        }
        Exact::Surd(_) => {
            let a0 = x.floor();
            let mut tail = (x - &Exact::integer(a0.clone())).recip();
            let mut seen: HashMap<Exact, usize> = HashMap::new();
            let mut quotients: Vec<BigInt> = Vec::new();
            loop {
                if let Some(&i) = seen.get(&tail) {
                    let period = quotients.split_off(i);
                    let mut cf = CFExpansion::periodic(a0, quotients, period)?;
                    cf.field = x.field();
                    return Ok(cf);
                }
                if quotients.len() >= max_terms {
                    return Err(Error::HorizonExceeded { max_terms });
                }
                let a = tail.floor();
                let next = (&tail - &Exact::integer(a.clone())).recip();
                seen.insert(tail, quotients.len());
                quotients.push(a);
                tail = next;
            }
        }
    }
}

impl fmt::Display for CFExpansion {
    /// `[a0;a1,a2,(p1,p2)]`, or `[a0]` when no further quotients exist.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[BigInt]| w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[{}", self.a0)?;
        if self.preperiod.is_empty() && self.period.is_empty() {
            return write!(f, "]");
        }
        write!(f, ";{}", join(&self.preperiod))?;
        if !self.period.is_empty() {
            if !self.preperiod.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "({})", join(&self.period))?;
        }
        write!(f, "]")
    }
}

/// One row of the convergent table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRecord {
    pub nu: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// `ξ_ν = |q_ν α - p_ν|`.
    pub xi: Exact,
    /// `α*_ν = q_{ν-1}/q_ν`.
    pub alpha_star: BigRational,
}

/// Convergent records for `ν = 0..=n`.
///
/// `α*_ν` is computed twice, by the reversed word `[0; aν, ..., a1]` and as
/// `q_{ν-1}/q_ν`; a disagreement is reported as [`Error::Inconsistent`].
pub fn convergents(cf: &CFExpansion, alpha: &Exact, n: usize) -> Result<Vec<ConvergentRecord>> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    // [0; aν, ..., a1], built one quotient at a time from the bottom
    let mut reversed = BigRational::zero();
    for nu in 0..=n {
        let a = cf.require(nu)?;
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        if nu > 0 {
            reversed = (BigRational::from_integer(a.clone()) + reversed).recip();
        }
        let star = BigRational::new(q1.clone(), q.clone());
        if star != reversed {
            return Err(Error::Inconsistent(format!(
                "reversed word {reversed} differs from q ratio {star} at nu = {nu}"
            )));
        }
        let xi = (&(&Exact::integer(q.clone()) * alpha) - &Exact::integer(p.clone())).abs();
        out.push(ConvergentRecord { nu, p: p.clone(), q: q.clone(), xi, alpha_star: star });
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    Ok(out)
}

/// The identities checked by [`check_identities`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `q_ν ξ_ν = 1/(α*_ν + α_{ν+1})`
    Cont1Reciprocal,
    /// `q_ν ξ_ν = 1/(1/α*_{ν+1} + 1/α_{ν+2})`
    Cont1Reversed,
    /// `q_ν ξ_ν = α*_{ν+1} α_{ν+2}/(α*_{ν+1} + α_{ν+2})`
    Cont1Product,
    /// `ξ_ν/ξ_{ν+1} = α_{ν+2}`
    Cont2,
    /// `ξ_{ν-1}/ξ_{ν+1} = α_{ν+2} + 1` when `a_{ν+1} = 1`
    SkipRatio,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Cont1Reciprocal => "cont1.reciprocal",
            Identity::Cont1Reversed => "cont1.reversed",
            Identity::Cont1Product => "cont1.product",
            Identity::Cont2 => "cont2",
            Identity::SkipRatio => "l1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub nu: usize,
    pub checks: Vec<(Identity, Outcome)>,
}

impl IdentityReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|(_, o)| *o == Outcome::Fail).count()
    }

    pub fn outcome(&self, id: Identity) -> Option<&Outcome> {
        self.checks.iter().find(|(i, _)| *i == id).map(|(_, o)| o)
    }
}

/// Checks the convergent identities at index `ν` exactly.
///
/// Identities whose ingredients are missing (records beyond the table, a
/// rational input with vanishing error, `a_{ν+1} ≠ 1` for the skip ratio) are
/// reported as skipped.
pub fn check_identities(cf: &CFExpansion, records: &[ConvergentRecord], nu: usize) -> IdentityReport {
    use Identity::*;
    let mut checks = Vec::new();
    let ids = [Cont1Reciprocal, Cont1Reversed, Cont1Product, Cont2, SkipRatio];
    let (Some(cur), Some(next)) = (records.get(nu), records.get(nu + 1)) else {
        checks.extend(ids.map(|i| (i, Outcome::Skipped("records unavailable"))));
        return IdentityReport { nu, checks };
    };
    let (Ok(t1), Ok(t2)) = (cf.tail(nu + 1), cf.tail(nu + 2)) else {
        checks.extend(ids.map(|i| (i, Outcome::Skipped("tails unavailable"))));
        return IdentityReport { nu, checks };
    };
    if next.xi.is_zero() {
        checks.extend(ids.map(|i| (i, Outcome::Skipped("rational input"))));
        return IdentityReport { nu, checks };
    }
    let verdict = |ok: bool| if ok { Outcome::Pass } else { Outcome::Fail };
    let qxi = &Exact::integer(cur.q.clone()) * &cur.xi;
    let s0 = Exact::Rational(cur.alpha_star.clone());
    let s1 = Exact::Rational(next.alpha_star.clone());
    checks.push((Cont1Reciprocal, verdict(qxi == (&s0 + &t1).recip())));
    checks.push((Cont1Reversed, verdict(qxi == (&s1.recip() + &t2.recip()).recip())));
    checks.push((Cont1Product, verdict(qxi == &(&s1 * &t2) / &(&s1 + &t2))));
    checks.push((Cont2, verdict(&cur.xi / &next.xi == t2)));
    let skip = match (nu.checked_sub(1).and_then(|i| records.get(i)), cf.quotient(nu + 1)) {
        (_, Some(a)) if !a.is_one() => Outcome::Skipped("a_{nu+1} != 1"),
        (None, _) => Outcome::Skipped("nu = 0"),
        (Some(prev), _) => verdict(&prev.xi / &next.xi == &t2 + &Exact::one()),
    };
    checks.push((SkipRatio, skip));
    IdentityReport { nu, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Exact {
        Exact::surd(1, 1, 5, 2).unwrap()
    }

    fn sqrt2() -> Exact {
        Exact::sqrt_of(2).unwrap()
    }

    fn half_sqrt3() -> Exact {
        Exact::surd(1, 1, 3, 2).unwrap()
    }

    #[test]
    fn expansions_of_the_three_examples() {
        assert_eq!(expand(&golden(), 100).unwrap().to_string(), "[1;(1)]");
        assert_eq!(expand(&sqrt2(), 100).unwrap().to_string(), "[1;(2)]");
        assert_eq!(expand(&half_sqrt3(), 100).unwrap().to_string(), "[1;(2,1)]");
    }

    #[test]
    fn expansion_with_preperiod_and_negative_value() {
        // √7 = [2; (1,1,1,4)]
        assert_eq!(expand(&Exact::sqrt_of(7).unwrap(), 100).unwrap().to_string(), "[2;(1,1,1,4)]");
        let neg = Exact::surd(1, -1, 5, 2).unwrap();
        let cf = expand(&neg, 100).unwrap();
        assert_eq!(cf.a0(), &BigInt::from(-1));
        assert_eq!(cf.value().unwrap(), neg);
    }

    #[test]
    fn rational_expansion_is_canonical() {
        let cf = expand(&Exact::rational(355, 113), 100).unwrap();
        assert_eq!(cf.to_string(), "[3;7,16]");
        assert!(cf.is_finite());
        assert_eq!(CFExpansion::finite(3, [7, 15, 1]).unwrap().to_string(), "[3;7,16]");
        assert_eq!(CFExpansion::finite(1, [1]).unwrap().to_string(), "[2]");
    }

    #[test]
    fn horizon_exceeded_is_an_error() {
        let x = Exact::sqrt_of(7).unwrap();
        assert_eq!(expand(&x, 3), Err(Error::HorizonExceeded { max_terms: 3 }));
    }

    #[test]
    fn periodic_normalization() {
        let w = CFExpansion::periodic(1, [2, 1, 2], [1, 2, 1, 2]).unwrap();
        assert_eq!(w.to_string(), "[1;(2,1)]");
        assert!(CFExpansion::periodic(1, Vec::<i32>::new(), Vec::<i32>::new()).is_err());
        assert!(CFExpansion::prefix(0, [1, 0]).is_err());
    }

    #[test]
    fn convergent_examples() {
        let g = golden();
        let cf = expand(&g, 10).unwrap();
        let recs = convergents(&cf, &g, 5).unwrap();
        let qs: Vec<i64> = recs.iter().map(|r| r.q.clone().try_into().unwrap()).collect();
        assert_eq!(qs, [1, 1, 2, 3, 5, 8]);
        assert_eq!(recs[1].alpha_star, BigRational::one());

        let s = sqrt2();
        let cf = expand(&s, 10).unwrap();
        let recs = convergents(&cf, &s, 3).unwrap();
        assert_eq!((recs[1].p.clone(), recs[1].q.clone()), (3.into(), 2.into()));
        assert_eq!(recs[1].xi, Exact::surd(3, -2, 2, 1).unwrap());
    }

    #[test]
    fn rational_table_ends() {
        let x = Exact::rational(355, 113);
        let cf = expand(&x, 10).unwrap();
        assert!(convergents(&cf, &x, 2).unwrap()[2].xi.is_zero());
        assert!(matches!(convergents(&cf, &x, 3), Err(Error::FiniteExpansion { .. })));
    }

    #[test]
    fn tails() {
        let cf = expand(&golden(), 10).unwrap();
        assert_eq!(cf.tail(4).unwrap(), golden());
        let cf = expand(&sqrt2(), 10).unwrap();
        assert_eq!(cf.tail(3).unwrap(), Exact::surd(1, 1, 2, 1).unwrap());
        let cf = expand(&half_sqrt3(), 10).unwrap();
        let even = cf.tail(2).unwrap();
        assert_eq!(even.floor(), BigInt::one());
        assert_eq!(even, cf.tail(6).unwrap());
        assert!(matches!(CFExpansion::prefix(0, [1, 2]).unwrap().tail(1), Err(Error::NotExact)));
    }

    #[test]
    fn reversed_tail_limits() {
        let cf = expand(&half_sqrt3(), 10).unwrap();
        // odd ν: a_ν = 2, limit 1/(1+√3) = (√3-1)/2
        assert_eq!(cf.reversed_tail_limit(3).unwrap(), Exact::surd(-1, 1, 3, 2).unwrap());
        assert_eq!(cf.reversed_tail_limit(4).unwrap(), Exact::surd(-1, 1, 3, 1).unwrap());
        assert!(cf.reversed_tail_limit(1).is_err());
    }

    #[test]
    fn identity_examples() {
        for (x, nu) in [(golden(), 3), (sqrt2(), 2), (half_sqrt3(), 2)] {
            let cf = expand(&x, 10).unwrap();
            let recs = convergents(&cf, &x, nu + 3).unwrap();
            let rep = check_identities(&cf, &recs, nu);
            assert_eq!(rep.failures(), 0, "{x} {rep:?}");
        }
        let cf = expand(&sqrt2(), 10).unwrap();
        let recs = convergents(&cf, &sqrt2(), 6).unwrap();
        let rep = check_identities(&cf, &recs, 2);
        assert_eq!(rep.outcome(Identity::SkipRatio), Some(&Outcome::Skipped("a_{nu+1} != 1")));
        assert_eq!(rep.outcome(Identity::Cont2), Some(&Outcome::Pass));
        let cf = expand(&half_sqrt3(), 10).unwrap();
        let recs = convergents(&cf, &half_sqrt3(), 8).unwrap();
        // a_{ν+1} = 1 exactly when ν+1 is even
        assert_eq!(check_identities(&cf, &recs, 3).outcome(Identity::SkipRatio), Some(&Outcome::Pass));
    }
}
