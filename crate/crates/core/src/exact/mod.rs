//! Exact numbers: quadratic surds, rationals and validated rational intervals.
//!
//! Every quantity in this crate is either a rational or an element of a real
//! quadratic field `ℚ(√d)`. [`Exact`] covers both and keeps values canonical.
//! Operands from two different fields cannot be combined exactly; those are
//! compared through [`Exact::cmp_refined`], which encloses each value in a
//! [`RationalInterval`] and refines until they separate.

mod interval;
mod literal;
mod surd;

pub use interval::RationalInterval;
pub use literal::{parse_literal, parse_rational, Literal};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use surd::{Exact, QuadraticSurd};

pub(crate) use surd::big_square_part;
