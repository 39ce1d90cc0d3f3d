use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::RationalInterval;
use crate::error::{Error, Result};

/// An irrational real quadratic number `(p + q·√d)/r`.
///
/// Always canonical: `d > 1` square-free, `q ≠ 0`, `r > 0` and
/// `gcd(p, q, r) = 1`. Values with `q = 0` are never represented here; they
/// collapse to [`Exact::Rational`] on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: u64,
    r: BigInt,
}

impl QuadraticSurd {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// The square-free radicand.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// Galois conjugate `(p - q·√d)/r`.
    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd { p: self.p.clone(), q: -&self.q, d: self.d, r: self.r.clone() }
    }
}

/// An exact real number of degree at most two.
///
/// This is the value type every other module computes with: convergent errors,
/// tails, reversed tails and all spectral constants live in a single quadratic
/// field `ℚ(√d)` per input, so arithmetic stays exact.
///
/// Arithmetic operators (`+ - * /` on references) panic when the operands lie
/// in different quadratic fields; the `try_*` methods return
/// [`Error::CrossField`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exact {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

/// Splits `n = s²·f` with `f` square-free. Returns `(s, f)`.
///
/// Trial division by every `i` with `i³ ≤ n`; the remaining cofactor has at
/// most two prime factors and is a square exactly when they coincide.
pub(crate) fn square_part(mut n: u64) -> (u64, u64) {
    let (mut s, mut f) = (1u64, 1u64);
    let mut i = 2u64;
    while (i as u128) * (i as u128) * (i as u128) <= n as u128 {
        while n % (i * i) == 0 {
            n /= i * i;
            s *= i;
        }
        if n % i == 0 {
            n /= i;
            f *= i;
        }
        i += 1;
    }
    let root = n.sqrt();
    if root * root == n {
        s *= root;
    } else {
        f *= n;
    }
    (s, f)
}

/// Splits `n = s²·f` with square-free `f < 2⁶⁴` for `n` of any size.
///
/// With a known square-free part `hint`, only `n/hint` being a perfect square
/// is checked. Otherwise squares of factors below 2¹⁶ are stripped; a
/// cofactor below 2⁴⁸ then has at most two prime factors. Larger cofactors
/// that are not squares cannot be split without factoring: `None`.
pub(crate) fn big_square_part(n: &BigInt, hint: Option<u64>) -> Option<(BigInt, u64)> {
    if let Some(f) = hint.filter(|&f| f > 0) {
        let (quot, rem) = n.div_rem(&BigInt::from(f));
        let root = quot.sqrt();
        if rem.is_zero() && &root * &root == quot {
            return Some((root, f));
        }
    }
    if let Some(small) = n.to_u64() {
        let (s, f) = square_part(small);
        return Some((BigInt::from(s), f));
    }
    const BOUND: u64 = 1 << 16;
    let mut rest = n.clone();
    let (mut s, mut f) = (BigInt::one(), BigInt::one());
    for i in 2..BOUND {
        let i = BigInt::from(i);
        let square = &i * &i;
        while (&rest % &square).is_zero() {
            rest /= &square;
            s *= &i;
        }
        if (&rest % &i).is_zero() {
            rest /= &i;
            f *= &i;
        }
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        s *= root;
    } else if rest.bits() <= 48 {
        f *= rest;
    } else {
        return None;
    }
    Some((s, f.to_u64()?))
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Exact {
    /// Builds `(p + q·√d)/r` in canonical form.
    ///
    /// The square part of `d` moves into `q`, common factors are cancelled and
    /// the sign is carried by the numerator. Perfect-square radicands and
    /// `q = 0` yield a rational.
    ///
    /// ```
    /// use mcf_core::Exact;
    /// let x = Exact::surd(3, 1, 8, 1).unwrap();
    /// assert_eq!(x.to_string(), "(3+2*sqrt2)/1");
    /// ```
    pub fn surd(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Exact> {
        Exact::build(p.into(), q.into(), d.into(), r.into(), None)
    }

    /// Like [`Exact::surd`] for a radicand `d = s²·field` whose square-free
    /// part is known; `d` may then be arbitrarily large.
    pub fn surd_in_field(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
        field: u64,
    ) -> Result<Exact> {
        Exact::build(p.into(), q.into(), d.into(), r.into(), Some(field))
    }

    fn build(p: BigInt, mut q: BigInt, d: BigInt, r: BigInt, field: Option<u64>) -> Result<Exact> {
        if r.is_zero() {
            return Err(Error::InvalidSurd("denominator is zero".into()));
        }
        if !d.is_positive() {
            return Err(Error::InvalidSurd(format!("radicand {d} is not positive")));
        }
        let (s, f) = big_square_part(&d, field)
            .ok_or_else(|| Error::InvalidSurd(format!("cannot split the square part of {d}")))?;
        q *= s;
        if f == 1 || q.is_zero() {
            return Ok(Exact::Rational(BigRational::new(p + q * f, r)));
        }
        let (mut p, mut q, mut r) = (p, q, r);
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(Exact::Surd(QuadraticSurd { p, q, d: f, r }))
    }

    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Exact {
        Exact::Rational(ratio(n, d))
    }

    pub fn integer(n: impl Into<BigInt>) -> Exact {
        Exact::Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Exact {
        Exact::integer(0)
    }

    pub fn one() -> Exact {
        Exact::integer(1)
    }

    /// `√n` for a positive integer `n`.
    pub fn sqrt_of(n: impl Into<BigInt>) -> Result<Exact> {
        Exact::surd(0, 1, n, 1)
    }

    /// The radicand of the field the value lives in, `None` for rationals.
    pub fn field(&self) -> Option<u64> {
        match self {
            Exact::Rational(_) => None,
            Exact::Surd(s) => Some(s.d),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Exact::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exact::Rational(x) => Some(x),
            Exact::Surd(_) => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            Exact::Surd(s) => Some(s),
            Exact::Rational(_) => None,
        }
    }

    /// `a + b·√d` decomposition.
    fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Exact::Rational(x) => (x.clone(), BigRational::zero()),
            Exact::Surd(s) => (ratio(s.p.clone(), s.r.clone()), ratio(s.q.clone(), s.r.clone())),
        }
    }

    fn from_parts(a: BigRational, b: BigRational, d: Option<u64>) -> Exact {
        let d = match d {
            Some(d) if !b.is_zero() => d,
            _ => return Exact::Rational(a),
        };
        let r = a.denom().lcm(b.denom());
        let p = a.numer() * (&r / a.denom());
        let q = b.numer() * (&r / b.denom());
        Exact::Surd(QuadraticSurd { p, q, d, r })
    }

    fn common_field(&self, other: &Exact) -> Result<Option<u64>> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(Error::CrossField(a, b)),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn try_add(&self, other: &Exact) -> Result<Exact> {
        let d = self.common_field(other)?;
        let ((a1, b1), (a2, b2)) = (self.parts(), other.parts());
        Ok(Exact::from_parts(a1 + a2, b1 + b2, d))
    }

    pub fn try_sub(&self, other: &Exact) -> Result<Exact> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Exact) -> Result<Exact> {
        let d = self.common_field(other)?;
        let ((a1, b1), (a2, b2)) = (self.parts(), other.parts());
        let dd = BigRational::from_integer(BigInt::from(d.unwrap_or(0)));
        let a = &a1 * &a2 + dd * &b1 * &b2;
        let b = a1 * b2 + a2 * b1;
        Ok(Exact::from_parts(a, b, d))
    }

    pub fn try_recip(&self) -> Result<Exact> {
        match self {
            Exact::Rational(x) if x.is_zero() => Err(Error::DivisionByZero),
            Exact::Rational(x) => Ok(Exact::Rational(x.recip())),
            Exact::Surd(s) => {
                // 1/(p + q√d)·r = r(p - q√d)/(p² - d q²)
                let norm = &s.p * &s.p - BigInt::from(s.d) * &s.q * &s.q;
                Exact::surd(&s.r * &s.p, -(&s.r * &s.q), s.d, norm)
            }
        }
    }

    pub fn try_div(&self, other: &Exact) -> Result<Exact> {
        self.common_field(other)?;
        self.try_mul(&other.try_recip()?)
    }

    pub fn recip(&self) -> Exact {
        self.try_recip().expect("reciprocal of zero")
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exact::Rational(x) if x.is_zero())
    }

    /// Sign as `-1`, `0` or `1`, decided exactly.
    pub fn signum(&self) -> i32 {
        match self {
            Exact::Rational(x) => sign_of(x.numer()),
            Exact::Surd(s) => {
                let sp = sign_of(&s.p);
                let sq = sign_of(&s.q);
                if sp >= 0 && sq >= 0 {
                    1
                } else if sp <= 0 && sq <= 0 {
                    -1
                } else {
                    // opposite signs: compare p² with d q²
                    let lhs = &s.p * &s.p;
                    let rhs = BigInt::from(s.d) * &s.q * &s.q;
                    match lhs.cmp(&rhs) {
                        Ordering::Greater => sp,
                        Ordering::Less => sq,
                        Ordering::Equal => unreachable!("irrational surd with zero value"),
                    }
                }
            }
        }
    }

    pub fn abs(&self) -> Exact {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; operands must share a field or one must be rational.
    pub fn try_cmp(&self, other: &Exact) -> Result<Ordering> {
        let diff = self.try_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }

    /// Comparison across fields by interval refinement.
    ///
    /// Same-field operands are compared exactly. Otherwise both values are
    /// enclosed in intervals of width `2^-bits`, doubling `bits` from
    /// `start_bits` until the enclosures separate or `cap_bits` is exceeded.
    pub fn cmp_refined(&self, other: &Exact, start_bits: u64, cap_bits: u64) -> Result<Ordering> {
        if let Ok(ord) = self.try_cmp(other) {
            return Ok(ord);
        }
        let mut bits = start_bits.max(1);
        loop {
            let width = ratio(1, BigInt::one() << bits);
            let a = self.approximate(&width);
            let b = other.approximate(&width);
            if a.hi() < b.lo() {
                return Ok(Ordering::Less);
            }
            if a.lo() > b.hi() {
                return Ok(Ordering::Greater);
            }
            if bits >= cap_bits {
                return Err(Error::Undecided { bits });
            }
            bits = (bits * 2).min(cap_bits);
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.floor_scaled(&BigInt::one(), &BigInt::one())
    }

    /// `floor(self · num / den)` for positive `num`, `den`, computed exactly.
    pub fn floor_scaled(&self, num: &BigInt, den: &BigInt) -> BigInt {
        match self {
            Exact::Rational(x) => (x * ratio(num.clone(), den.clone())).floor().to_integer(),
            Exact::Surd(s) => {
                let q = &s.q * num;
                let root = (&q * &q * BigInt::from(s.d)).sqrt();
                // floor(q√d); never an integer because d is not a square
                let qs = if q.is_positive() { root } else { -root - 1 };
                (&s.p * num + qs).div_floor(&(&s.r * den))
            }
        }
    }

    /// Distance to the nearest integer, `‖x‖`.
    pub fn dist_to_nearest_int(&self) -> Exact {
        let frac = self - &Exact::integer(self.floor());
        let other = &Exact::one() - &frac;
        if frac.try_cmp(&other).expect("same field") == Ordering::Greater {
            other
        } else {
            frac
        }
    }

    /// A rational interval containing the value with width at most `width`.
    ///
    /// For a surd the enclosure comes from dyadic bisection of `√d`: with `k`
    /// bits, `√d ∈ [s, s+1]/2^k` where `s = ⌊√(d·4^k)⌋`. Halving `width`
    /// therefore always yields a nested interval.
    pub fn approximate(&self, width: &BigRational) -> RationalInterval {
        match self {
            Exact::Rational(x) => RationalInterval::point(x.clone()),
            Exact::Surd(s) => {
                assert!(width.is_positive(), "approximation width must be positive");
                // smallest k with |q| / (r 2^k) ≤ width
                let scale = ratio(s.q.abs(), s.r.clone()) / width;
                let mut k = 0u64;
                while BigRational::from_integer(BigInt::one() << k) < scale {
                    k += 1;
                }
                let pow = BigInt::one() << k;
                let lo_root = (BigInt::from(s.d) * &pow * &pow).sqrt();
                let hi_root = &lo_root + 1;
                let at = |root: &BigInt| {
                    ratio(&s.p * &pow + &s.q * root, &s.r * &pow)
                };
                let (a, b) = (at(&lo_root), at(&hi_root));
                if a <= b {
                    RationalInterval::new(a, b)
                } else {
                    RationalInterval::new(b, a)
                }
            }
        }
    }

    /// Nearest `f64`, obtained from an exact scaled floor; exact for
    /// cancellation-prone values such as tiny convergent errors.
    pub fn to_f64(&self) -> f64 {
        let sign = self.signum();
        if sign == 0 {
            return 0.0;
        }
        let x = self.abs();
        let mut k: i64 = 64;
        let n = loop {
            let n = x.floor_times_pow2(k);
            let bits = n.bits() as i64;
            if n.is_zero() {
                k = k * 2 + 64;
            } else if bits < 64 {
                k += 64 - bits + 2;
            } else if bits > 128 {
                k -= bits - 96;
            } else {
                break n;
            }
        };
        let mant = n.to_f64().unwrap_or(f64::INFINITY);
        sign as f64 * scale_pow2(mant, -k)
    }

    fn floor_times_pow2(&self, k: i64) -> BigInt {
        if k >= 0 {
            self.floor_scaled(&(BigInt::one() << k as u64), &BigInt::one())
        } else {
            self.floor_scaled(&BigInt::one(), &(BigInt::one() << (-k) as u64))
        }
    }

    /// Fixed-point decimal truncated (toward zero) to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.signum() < 0;
        let n = self.abs().floor_scaled(&BigInt::from(10).pow(digits as u32), &BigInt::one());
        let s = format!("{:0>width$}", n.to_string(), width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// Scientific notation with `sig` significant digits, truncated.
    pub fn to_scientific(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".into();
        }
        let neg = self.signum() < 0;
        let x = self.abs();
        // exponent estimate from the float value, then exact correction
        let est = x.to_f64();
        let mut e10 = if est.is_finite() && est > 0.0 { est.log10().floor() as i64 } else { 0 };
        let lo = BigInt::from(10).pow(sig as u32 - 1);
        let hi = BigInt::from(10).pow(sig as u32);
        let digits = loop {
            let shift = sig as i64 - 1 - e10;
            let n = if shift >= 0 {
                x.floor_scaled(&BigInt::from(10).pow(shift as u32), &BigInt::one())
            } else {
                x.floor_scaled(&BigInt::one(), &BigInt::from(10).pow((-shift) as u32))
            };
            if n < lo {
                e10 -= 1;
            } else if n >= hi {
                e10 += 1;
            } else {
                break n.to_string();
            }
        };
        let sign = if neg { "-" } else { "" };
        let (first, rest) = digits.split_at(1);
        if rest.is_empty() {
            format!("{sign}{first}e{e10}")
        } else {
            format!("{sign}{first}.{rest}e{e10}")
        }
    }
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn scale_pow2(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl From<BigRational> for Exact {
    fn from(x: BigRational) -> Self {
        Exact::Rational(x)
    }
}

impl From<BigInt> for Exact {
    fn from(x: BigInt) -> Self {
        Exact::integer(x)
    }
}

impl From<i64> for Exact {
    fn from(x: i64) -> Self {
        Exact::integer(x)
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        match self {
            Exact::Rational(x) => Exact::Rational(-x),
            Exact::Surd(s) => Exact::Surd(QuadraticSurd {
                p: -&s.p,
                q: -&s.q,
                d: s.d,
                r: s.r.clone(),
            }),
        }
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Exact> for &Exact {
            type Output = Exact;
            fn $method(self, rhs: &Exact) -> Exact {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $trait<Exact> for Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Exact> for Exact {
            type Output = Exact;
            fn $method(self, rhs: &Exact) -> Exact {
                (&self).$method(rhs)
            }
        }
        impl $trait<Exact> for &Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt{})/{}", self.p, op, self.q.abs(), self.d, self.r)
    }
}

impl fmt::Display for Exact {
    /// `(p+q*sqrtd)/r` for surds, `n/d` or `n` for rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rational(x) => write!(f, "{x}"),
            Exact::Surd(s) => write!(f, "{s}"),
        }
    }
}

impl Exact {
    /// Literal form accepted by the command line: `rat:n/d` or `surd:(p+q*sqrtd)/r`.
    pub fn to_literal(&self) -> String {
        match self {
            Exact::Rational(x) => format!("rat:{}/{}", x.numer(), x.denom()),
            Exact::Surd(s) => format!("surd:{s}"),
        }
    }
}
