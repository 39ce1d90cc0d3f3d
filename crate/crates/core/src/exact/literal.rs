//! The number-literal grammar used on the command line.
//!
//! ```text
//! rat:NUM/DEN            rat:355/113, rat:-7
//! surd:(P+Q*sqrtD)/R     surd:(1+1*sqrt5)/2, surd:(0-3*sqrt7)/1
//! cf:[a0;a1,a2,(p1,p2)]  cf:[1;(2,1)], cf:[0;1,2,3]
//! ```
//!
//! No decimal input is accepted for numbers: parsing is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Exact;
use crate::cf::CFExpansion;
use crate::error::{Error, Result};

/// A parsed command-line literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Number(Exact),
    Word(CFExpansion),
}

fn err(literal: &str, reason: impl Into<String>) -> Error {
    Error::Literal { literal: literal.to_string(), reason: reason.into() }
}

fn int(s: &str, literal: &str) -> Result<BigInt> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    s.parse::<BigInt>().map_err(|_| err(literal, format!("`{s}` is not an integer")))
}

/// Parses `rat:`, `surd:` and `cf:` literals.
pub fn parse_literal(input: &str) -> Result<Literal> {
    let s = input.trim();
    if let Some(body) = s.strip_prefix("rat:") {
        return Ok(Literal::Number(Exact::Rational(parse_fraction(body, input)?)));
    }
    if let Some(body) = s.strip_prefix("surd:") {
        return parse_surd(body, input).map(Literal::Number);
    }
    if let Some(body) = s.strip_prefix("cf:") {
        return parse_word(body, input).map(Literal::Word);
    }
    Err(err(input, "expected a `rat:`, `surd:` or `cf:` prefix"))
}

fn parse_fraction(body: &str, literal: &str) -> Result<BigRational> {
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (int(n, literal)?, int(d, literal)?),
        None => (int(body, literal)?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(err(literal, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses a plain rational such as `10`, `7/2` or `1e6` (integer mantissa,
/// non-negative exponent). Used for `t` bounds.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m = int(m, input)?;
        let e: u32 = e.trim().parse().map_err(|_| err(input, "bad exponent"))?;
        return Ok(BigRational::from_integer(m * BigInt::from(10).pow(e)));
    }
    parse_fraction(s, input)
}

fn parse_surd(body: &str, literal: &str) -> Result<Exact> {
    let body = body.trim();
    let (inner, rest) = body
        .strip_prefix('(')
        .and_then(|b| b.split_once(')'))
        .ok_or_else(|| err(literal, "expected `(P+Q*sqrtD)/R`"))?;
    let r = match rest.trim() {
        "" => BigInt::one(),
        rest => int(
            rest.strip_prefix('/').ok_or_else(|| err(literal, "expected `/R` after `)`"))?,
            literal,
        )?,
    };
    let (head, d) = inner
        .split_once("*sqrt")
        .ok_or_else(|| err(literal, "missing `*sqrtD` term"))?;
    let d = int(d, literal)?;
    // split P and Q at the last sign that follows a digit
    let bytes = head.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && bytes[i - 1].is_ascii_digit())
        .ok_or_else(|| err(literal, "expected `P+Q` before `*sqrt`"))?;
    let p = int(&head[..split], literal)?;
    let q = int(&head[split..], literal)?;
    Exact::surd(p, q, d, r).map_err(|e| err(literal, e.to_string()))
}

fn parse_word(body: &str, literal: &str) -> Result<CFExpansion> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| err(literal, "expected `[a0;a1,...]`"))?;
    let (a0, rest) = match inner.split_once(';') {
        Some((a0, rest)) => (int(a0, literal)?, rest.trim()),
        None => (int(inner, literal)?, ""),
    };
    let list = |s: &str| -> Result<Vec<BigInt>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| int(t, literal))
            .collect()
    };
    let word = match rest.split_once('(') {
        Some((pre, period)) => {
            let period = period
                .trim()
                .strip_suffix(')')
                .ok_or_else(|| err(literal, "period must close with `)` at the end"))?;
            CFExpansion::periodic(a0, list(pre)?, list(period)?)
        }
        None => CFExpansion::finite(a0, list(rest)?),
    };
    word.map_err(|e| err(literal, e.to_string()))
}
