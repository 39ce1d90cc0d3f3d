use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A closed interval `[lo, hi]` with rational endpoints.
///
/// Used for certified comparison of values from different quadratic fields and
/// for enclosures of quantities that depend on an unknown continuation of a
/// finite partial-quotient word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        RationalInterval { lo, hi }
    }

    /// The interval spanned by two points in either order.
    pub fn hull(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Smallest interval containing both.
    pub fn join(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<RationalInterval> {
        if self.contains_zero() {
            return None;
        }
        Some(RationalInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    /// Square, tight when the interval straddles zero.
    pub fn square(&self) -> RationalInterval {
        if self.contains_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            RationalInterval { lo: BigRational::zero(), hi: &m * &m }
        } else {
            self * self
        }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }
}

impl Div for &RationalInterval {
    type Output = RationalInterval;
    /// Panics if the divisor contains zero.
    fn div(self, rhs: &RationalInterval) -> RationalInterval {
        self * &rhs.recip().expect("interval division by an interval containing zero")
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_encloses_pointwise_results() {
        let a = RationalInterval::new(r(-1, 2), r(3, 4));
        let b = RationalInterval::new(r(1, 3), r(2, 1));
        let prod = &a * &b;
        assert_eq!(prod, RationalInterval::new(r(-1, 1), r(3, 2)));
        let q = &b / &b;
        assert!(q.contains(&r(1, 1)));
        assert_eq!(a.recip(), None);
        assert_eq!(a.square(), RationalInterval::new(r(0, 1), r(9, 16)));
        assert_eq!((&a - &b).lo(), &r(-5, 2));
    }
}
