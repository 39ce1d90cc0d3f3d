mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcf_core::spectra::Growth;
use num_bigint::BigInt;

use crate::output::Format;

const EXIT_CODES: &str = "\
Exit codes:
   0  success
   2  usage error
  10  exact-numbers error (bad literal, undecided comparison, field mismatch)
  11  cf-engine error (no period within the horizon, finite word)
  12  legendre-chain error (rational input, chain too short)
  13  minkowski-mu error (t outside the chain, peak witness failed)
  14  spectra error (undefined quantity, invalid generator)
  15  oscillation error (hypothesis not applicable, equal inputs)
  20  verify found failing checks
  70  internal inconsistency
  74  output error

Literals: rat:N/D, surd:(P+Q*sqrtD)/R, cf:[a0;a1,(p1,p2)].
CSV output starts with a `#` line carrying the schema version and precision.";

/// Exact continued fractions, Legendre chains and the μ function.
#[derive(Parser, Debug)]
#[command(name = "mcf", version, after_help = EXIT_CODES)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Starting precision for comparisons across quadratic fields.
    #[arg(long, global = true, default_value_t = 256, env = "MCF_PRECISION_BITS",
          value_parser = clap::value_parser!(u64).range(64..))]
    pub precision_bits: u64,
    /// Number of partial quotients / convergents to work with.
    #[arg(long, global = true, default_value_t = 200,
          value_parser = clap::value_parser!(u64).range(10..))]
    pub horizon: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Precision at which an undecided comparison gives up.
    #[arg(long, global = true, default_value_t = 1024)]
    pub refinement_cap_bits: u64,
    /// Worker threads for `sample` and `compare` (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Continued-fraction word of a number.
    Expand {
        #[arg(long)]
        alpha: String,
    },
    /// Convergents p/q, errors ‖qα‖ and reversed tails.
    Convergents {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// The chain of convergent denominators passing the Legendre test.
    /// Columns: n,Q,err_num_approx,source_nu,gap_kind.
    Legendre {
        #[arg(long)]
        alpha: String,
        /// Convergents to scan.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Samples of μ_α on [t-min, t-max] and the exact peak of t·μ_α on
    /// every chain segment meeting the window.
    /// Columns: kind,t,mu,t_mu,t_mu_exact.
    Mu {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        t_min: String,
        #[arg(long)]
        t_max: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// λ, d and 𝔪 with exact forms and decimals.
    /// Columns: quantity,value,decimal,exact.
    Spectra {
        #[command(flatten)]
        source: SpectraSource,
        /// Quotients generated for --alpha-minus / --alpha-plus.
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// 𝔪 over many periodic words. Columns: word,m_exact,m_decimal.
    Sample {
        /// Explicit words, e.g. cf:[0;(1,2)]; repeatable.
        #[arg(long = "word")]
        words: Vec<String>,
        /// Enumerate all primitive periods up to this length.
        #[arg(long)]
        max_period: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_quotient: u32,
    },
    /// Sign changes of μ_α − μ_β between t-min and t-max.
    Compare {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        t_min: String,
        #[arg(long)]
        t_max: String,
        /// Also write the per-breakpoint table (t,mu_alpha,mu_beta,sign)
        /// as CSV to this file, or `-` for standard output.
        #[arg(long)]
        breakpoints: Option<String>,
    },
    /// Runs every identity and inequality check; exits 20 on a failure.
    /// Columns: check,subject,applicable,failures,status.
    Verify {
        /// Extra numbers beyond the built-in examples; repeatable.
        #[arg(long = "alpha")]
        alphas: Vec<String>,
        /// Side of the grid used for the F and G bounds.
        #[arg(long, default_value_t = 200)]
        grid: u32,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SpectraSource {
    /// A number or a periodic word.
    #[arg(long)]
    pub alpha: Option<String>,
    /// [0; a1, a2, ...] with a_n following the growth law,
    /// e.g. arith:2,1 or geom:2,2 or list:3,5,9.
    #[arg(long, value_parser = parse_growth)]
    pub alpha_minus: Option<Growth>,
    /// [0; 1, 1, a3, 1, 1, a6, ...] with a_{3k} following the growth law.
    #[arg(long, value_parser = parse_growth)]
    pub alpha_plus: Option<Growth>,
}

fn parse_growth(s: &str) -> Result<Growth, String> {
    let (kind, body) = s.split_once(':').ok_or("expected arith:, geom: or list:")?;
    let nums = body
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| format!("`{x}` is not an integer")))
        .collect::<Result<Vec<_>, _>>()?;
    let pair = |nums: Vec<BigInt>| -> Result<(BigInt, BigInt), String> {
        match <[BigInt; 2]>::try_from(nums) {
            Ok([a, b]) => Ok((a, b)),
            Err(_) => Err(format!("{kind}: takes exactly two integers")),
        }
    };
    match kind {
        "arith" => pair(nums).map(|(start, step)| Growth::Arithmetic { start, step }),
        "geom" => pair(nums).map(|(start, ratio)| Growth::Geometric { start, ratio }),
        "list" => Ok(Growth::Explicit(nums)),
        _ => Err(format!("unknown growth law `{kind}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.refinement_cap_bits < cli.config.precision_bits {
        eprintln!("error: --refinement-cap-bits must be at least --precision-bits");
        return ExitCode::from(2);
    }
    if let Some(n) = cli.config.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(70);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(commands::Failure::Module(e)) => {
            eprintln!("error [{}]: {e}", e.module());
            ExitCode::from(e.exit_code() as u8)
        }
        Err(commands::Failure::Io(e)) => {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(74)
        }
    }
}
