//! Exact continued-fraction analysis of quadratic irrationals.
//!
//! For a real `α` this crate computes, without floating point:
//!
//! * the continued-fraction word, convergents `p_ν/q_ν`, errors
//!   `ξ_ν = ‖q_ν α‖`, tails `α_ν` and reversed tails `α*_ν` ([`cf`]);
//! * the convergents satisfying `|α - p/q| < 1/(2q²)` and the chain of their
//!   denominators ([`legendre`]);
//! * the piecewise-linear function `μ_α` through the chain points, the step
//!   function `ψ_α`, and the exact maximum of `t·μ_α(t)` on every segment
//!   ([`mu`]);
//! * `λ(α) = liminf t·ψ_α(t)`, `d(α) = limsup t·ψ_α(t)` and
//!   `𝔪(α) = limsup t·μ_α(t)` ([`spectra`]);
//! * sign changes of `μ_α - μ_β` on a window ([`oscillation`]).
//!
//! Every number is a rational or an element of one real quadratic field
//! ([`Exact`]), so all of the above are exact for quadratic surds.
//!
//! ```
//! use mcf_core::{cf, spectra, Exact};
//!
//! let golden = Exact::surd(1, 1, 5, 2)?;
//! let word = cf::expand(&golden, 100)?;
//! assert_eq!(word.to_string(), "[1;(1)]");
//! // 𝔪 = 1/4 + 1/(2√5)
//! assert_eq!(spectra::m_of(&word)?, Exact::surd(5, 2, 5, 20)?);
//! # Ok::<(), mcf_core::Error>(())
//! ```

pub mod cf;
pub mod error;
pub mod exact;
pub mod legendre;
pub mod mu;
pub mod oscillation;
pub mod spectra;
pub mod verify;

pub use cf::{CFExpansion, ConvergentRecord};
pub use error::{Error, Result};
pub use exact::{BigInt, BigRational, Exact, RationalInterval};
pub use legendre::{GapClass, GapKind, LegendreChain};
pub use spectra::{SpectraReport, SpectralValue};
