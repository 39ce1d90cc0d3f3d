use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant belongs to exactly one module; [`Error::module`] names it and
/// [`Error::exit_code`] gives the process exit status the CLI uses for it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact-numbers
    #[error("invalid surd: {0}")]
    InvalidSurd(String),
    #[error("operands live in different quadratic fields (sqrt{0} vs sqrt{1}); use interval comparison")]
    CrossField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("could not separate values within {bits} bits of precision (possibly equal)")]
    Undecided { bits: u64 },
    #[error("cannot parse literal `{literal}`: {reason}")]
    Literal { literal: String, reason: String },

    // cf-engine
    #[error("no period detected within {max_terms} partial quotients")]
    HorizonExceeded { max_terms: usize },
    #[error("finite expansion has {available} quotients, index {requested} requested")]
    FiniteExpansion { requested: usize, available: usize },
    #[error("expansion is only a finite prefix of an irrational; no exact value")]
    NotExact,
    #[error("invalid continued fraction word: {0}")]
    InvalidWord(String),

    // legendre-chain
    #[error("Legendre chain is only defined for irrational numbers")]
    RationalChain,
    #[error("horizon too short: chain has {nodes} node(s), need at least 2")]
    InsufficientHorizon { nodes: usize },
    #[error("neither convergent {nu} nor {next} satisfies the Legendre condition", next = nu + 1)]
    LegendreGap { nu: usize },

    // minkowski-mu
    #[error("argument outside the domain of {0}")]
    Domain(&'static str),
    #[error("t = {t} is outside the built chain [{lo}, {hi}]; extend the horizon")]
    OutsideChain { t: String, lo: String, hi: String },
    #[error("segment at nu = {nu} does not straddle the diagonal (misclassified gap)")]
    Straddle { nu: usize },
    #[error("closed-form peak and G/F value disagree at nu = {nu}")]
    PeakMismatch { nu: usize },

    // spectra
    #[error("spectral quantities are not defined for rational numbers")]
    NotDefined,
    #[error("invalid generator specification: {0}")]
    InvalidSpec(String),

    // oscillation
    #[error("precondition does not apply: {0}")]
    NotApplicable(String),
    #[error("the two inputs are equal; the difference vanishes identically")]
    EqualInputs,

    // shared
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Name of the module the error originates from.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidSurd(_) | CrossField(..) | DivisionByZero | Undecided { .. } | Literal { .. } => {
                "exact-numbers"
            }
            HorizonExceeded { .. } | FiniteExpansion { .. } | NotExact | InvalidWord(_) => {
                "cf-engine"
            }
            RationalChain | InsufficientHorizon { .. } | LegendreGap { .. } => "legendre-chain",
            Domain(_) | OutsideChain { .. } | Straddle { .. } | PeakMismatch { .. } => {
                "minkowski-mu"
            }
            NotDefined | InvalidSpec(_) => "spectra",
            NotApplicable(_) | EqualInputs => "oscillation",
            Inconsistent(_) => "internal",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self.module() {
            "exact-numbers" => 10,
            "cf-engine" => 11,
            "legendre-chain" => 12,
            "minkowski-mu" => 13,
            "spectra" => 14,
            "oscillation" => 15,
            _ => 70,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
