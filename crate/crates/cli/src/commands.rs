use std::cmp::Ordering;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use mcf_core::exact::{parse_literal, parse_rational, Literal};
use mcf_core::oscillation::{self, CompareOptions, CrossingStatus, Side};
use mcf_core::spectra::{self, SpectralValue};
use mcf_core::{cf, legendre, mu, verify};
use mcf_core::{BigRational, CFExpansion, Error, Exact, SpectraReport};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::output::{self, decimal, rational_decimal, scientific, write_csv, write_json, Format, Tag};
use crate::{Cli, Command, RunConfig, SpectraSource};

pub enum Failure {
    Module(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<u8, Failure>;

/// Exit status reported when `verify` finds a failing check.
pub const VERIFY_FAILED: u8 = 20;

struct Ctx<'a> {
    config: &'a RunConfig,
    command: &'static str,
}

impl Ctx<'_> {
    fn tag(&self) -> Tag {
        Tag { command: self.command, precision_bits: self.config.precision_bits }
    }

    fn horizon(&self) -> usize {
        self.config.horizon as usize
    }

    /// Emits either the CSV table or the JSON body, never both.
    fn emit(
        &self,
        header: &[&str],
        rows: Vec<Vec<String>>,
        body: impl FnOnce() -> Value,
    ) -> Result<(), Failure> {
        let out = io::stdout().lock();
        match self.config.format {
            Format::Csv => write_csv(out, self.tag(), header, rows)?,
            Format::Json => write_json(out, self.tag(), body())?,
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let config = &cli.config;
    let ctx = |command| Ctx { config, command };
    match &cli.command {
        Command::Expand { alpha } => expand(&ctx("expand"), alpha),
        Command::Convergents { alpha, count } => convergents(&ctx("convergents"), alpha, *count),
        Command::Legendre { alpha, count } => legendre_chain(&ctx("legendre"), alpha, *count),
        Command::Mu { alpha, t_min, t_max, samples } => {
            mu_table(&ctx("mu"), alpha, t_min, t_max, *samples)
        }
        Command::Spectra { source, terms } => spectra_cmd(&ctx("spectra"), source, *terms),
        Command::Sample { words, max_period, max_quotient } => {
            sample(&ctx("sample"), words, *max_period, *max_quotient)
        }
        Command::Compare { alpha, beta, t_min, t_max, breakpoints } => {
            compare(&ctx("compare"), alpha, beta, t_min, t_max, breakpoints.as_deref())
        }
        Command::Verify { alphas, grid } => verify_cmd(&ctx("verify"), alphas, *grid),
    }
}

/// A number literal, or the value of a periodic or finite word literal.
fn number(literal: &str) -> Result<Exact, Error> {
    match parse_literal(literal)? {
        Literal::Number(x) => Ok(x),
        Literal::Word(w) => w.value(),
    }
}

fn word_of(literal: &str, horizon: usize) -> Result<(Option<Exact>, CFExpansion), Error> {
    match parse_literal(literal)? {
        Literal::Number(x) => {
            let w = cf::expand(&x, horizon)?;
            Ok((Some(x), w))
        }
        Literal::Word(w) => Ok((None, w)),
    }
}

fn join(word: &[mcf_core::BigInt]) -> String {
    word.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn expand(ctx: &Ctx, alpha: &str) -> Outcome {
    let (value, w) = word_of(alpha, ctx.horizon())?;
    let kind = if w.is_finite() { "finite" } else { "periodic" };
    let value = match value {
        Some(v) => v,
        None => w.value()?,
    };
    let row = vec![
        value.to_literal(),
        format!("cf:{w}"),
        w.a0().to_string(),
        join(w.preperiod()),
        join(w.period()),
        kind.to_string(),
    ];
    ctx.emit(&["alpha", "word", "a0", "preperiod", "period", "kind"], vec![row], || {
        json!({
            "alpha": value.to_literal(),
            "word": format!("cf:{w}"),
            "a0": w.a0().to_string(),
            "preperiod": w.preperiod().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "period": w.period().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "kind": kind,
        })
    })?;
    Ok(0)
}

/// Convergent count capped at the length of a finite word.
fn records_for(alpha: &Exact, w: &CFExpansion, count: usize) -> Result<Vec<cf::ConvergentRecord>, Error> {
    let n = match w.last_index() {
        Some(last) if w.is_finite() => count.min(last + 1),
        _ => count,
    };
    cf::convergents(w, alpha, n.max(1))
}

fn convergents(ctx: &Ctx, alpha: &str, count: usize) -> Outcome {
    let x = number(alpha)?;
    let w = cf::expand(&x, ctx.horizon())?;
    let records = records_for(&x, &w, count)?;
    let flags = legendre::legendre_flags(&w, &records)?;
    let rows: Vec<Vec<String>> = records
        .iter()
        .zip(&flags)
        .map(|(r, ok)| {
            vec![
                r.nu.to_string(),
                r.p.to_string(),
                r.q.to_string(),
                r.xi.to_string(),
                scientific(&r.xi),
                r.alpha_star.to_string(),
                ok.to_string(),
            ]
        })
        .collect();
    let header = ["nu", "p", "q", "xi_exact", "xi_decimal", "alpha_star", "legendre"];
    ctx.emit(&header, rows.clone(), || {
        let list: Vec<Value> = rows
            .iter()
            .map(|r| header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect())
            .collect();
        json!({ "alpha": x.to_literal(), "word": format!("cf:{w}"), "convergents": list })
    })?;
    Ok(0)
}

fn legendre_chain(ctx: &Ctx, alpha: &str, count: usize) -> Outcome {
    let x = number(alpha)?;
    let w = cf::expand(&x, ctx.horizon())?;
    let records = records_for(&x, &w, count)?;
    let chain = legendre::build_chain(&w, &records)?;
    let rows: Vec<Vec<String>> = chain
        .nodes
        .iter()
        .enumerate()
        .map(|(n, node)| {
            let gap = chain.gaps.get(n).map_or("", |g| g.kind.as_str());
            vec![
                n.to_string(),
                node.q.to_string(),
                scientific(&node.err),
                node.source_nu.to_string(),
                gap.to_string(),
            ]
        })
        .collect();
    let header = ["n", "Q", "err_num_approx", "source_nu", "gap_kind"];
    ctx.emit(&header, rows, || {
        let nodes: Vec<Value> = chain
            .nodes
            .iter()
            .enumerate()
            .map(|(n, node)| {
                json!({
                    "n": n,
                    "Q": node.q.to_string(),
                    "err_exact": node.err.to_string(),
                    "err_num_approx": scientific(&node.err),
                    "source_nu": node.source_nu,
                    "gap_kind": chain.gaps.get(n).map(|g| g.kind.as_str()),
                })
            })
            .collect();
        json!({ "alpha": x.to_literal(), "chain": nodes })
    })?;
    Ok(0)
}

fn mu_table(ctx: &Ctx, alpha: &str, t_min: &str, t_max: &str, samples: usize) -> Outcome {
    let x = number(alpha)?;
    let lo = parse_rational(t_min)?;
    let hi = parse_rational(t_max)?;
    if lo > hi || lo <= BigRational::zero() {
        return Err(Error::Domain("mu (need 0 < t-min <= t-max)").into());
    }
    let (w, records, chain) = legendre::chain_covering(&x, &hi, ctx.horizon())?;
    let mut rows = Vec::new();
    let steps = samples.max(1);
    for i in 0..steps {
        let t = if steps == 1 {
            lo.clone()
        } else {
            &lo + (&hi - &lo) * BigRational::new(i.into(), (steps - 1).into())
        };
        let m = mu::mu_eval(&chain, &t)?;
        let tm = &Exact::Rational(t.clone()) * &m;
        rows.push(vec!["sample".into(), rational_decimal(&t), scientific(&m), decimal(&tm), tm.to_string()]);
    }
    for seg in mu::segments(&w, &records, &chain)? {
        let (ql, qr) = (BigRational::from_integer(seg.left.0.clone()), BigRational::from_integer(seg.right.0.clone()));
        if qr < lo || ql > hi {
            continue;
        }
        let t = seg.witness.peak_t_approx();
        let m = seg.peak.to_f64() / t;
        rows.push(vec![
            "peak".into(),
            format!("{t:.6e}"),
            format!("{m:.6e}"),
            decimal(&seg.peak),
            seg.peak.to_string(),
        ]);
    }
    let header = ["kind", "t", "mu", "t_mu", "t_mu_exact"];
    ctx.emit(&header, rows.clone(), || {
        let list: Vec<Value> = rows
            .iter()
            .map(|r| header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect())
            .collect();
        json!({ "alpha": x.to_literal(), "t_min": lo.to_string(), "t_max": hi.to_string(), "rows": list })
    })?;
    Ok(0)
}

fn spectral_json(v: &SpectralValue) -> Value {
    match v {
        SpectralValue::Exact(x) => json!({ "exact": x.to_string(), "decimal": decimal(x) }),
        SpectralValue::Enclosure(iv) => json!({
            "enclosure": [iv.lo().to_string(), iv.hi().to_string()],
            "decimal_midpoint": v.to_decimal(output::DECIMAL_DIGITS),
        }),
    }
}

fn interval_json(iv: &mcf_core::RationalInterval) -> Value {
    json!([Exact::Rational(iv.lo().clone()).to_scientific(12), Exact::Rational(iv.hi().clone()).to_scientific(12)])
}

fn spectra_cmd(ctx: &Ctx, source: &SpectraSource, terms: usize) -> Outcome {
    let (input, report): (String, SpectraReport) = if let Some(lit) = &source.alpha {
        match parse_literal(lit)? {
            Literal::Number(x) => (x.to_literal(), spectra::spectra_of(&x, ctx.horizon())?),
            Literal::Word(w) => (format!("cf:{w}"), spectra::spectra(&w)?),
        }
    } else if let Some(g) = &source.alpha_minus {
        let w = spectra::make_alpha_minus(g, terms)?;
        (format!("alpha-minus {terms} terms"), spectra::spectra(&w)?)
    } else if let Some(g) = &source.alpha_plus {
        let w = spectra::make_alpha_plus(g, terms)?;
        (format!("alpha-plus {terms} terms"), spectra::spectra(&w)?)
    } else {
        unreachable!("clap requires one source")
    };
    let named: Vec<(&str, &SpectralValue)> = [
        ("lambda", Some(&report.lambda)),
        ("dirichlet", Some(&report.dirichlet)),
        ("m", Some(&report.m)),
        ("m_skip", report.m_skip.as_ref()),
        ("m_adjacent", report.m_adjacent.as_ref()),
    ]
    .into_iter()
    .filter_map(|(k, v)| v.map(|v| (k, v)))
    .collect();
    let rows = named
        .iter()
        .map(|(k, v)| {
            vec![k.to_string(), v.to_string(), v.to_decimal(output::DECIMAL_DIGITS), report.exact.to_string()]
        })
        .collect();
    ctx.emit(&["quantity", "value", "decimal", "exact"], rows, || {
        let mut body = json!({
            "input": input,
            "exact": report.exact,
            "horizon_used": report.horizon_used,
        });
        for (k, v) in &named {
            body[*k] = spectral_json(v);
        }
        if let Some(run) = &report.running {
            body["convergence_guaranteed"] = json!(false);
            body["running"] = json!({
                "lambda": run.lambda.iter().map(|(nu, iv)| json!({"nu": nu, "value": interval_json(iv)})).collect::<Vec<_>>(),
                "dirichlet": run.dirichlet.iter().map(|(nu, iv)| json!({"nu": nu, "value": interval_json(iv)})).collect::<Vec<_>>(),
                "m": run.m.iter().map(|(g, iv)| json!({"nu": g.nu, "gap_kind": g.kind.as_str(), "value": interval_json(iv)})).collect::<Vec<_>>(),
            });
        }
        body
    })?;
    Ok(0)
}

fn sample(ctx: &Ctx, words: &[String], max_period: Option<usize>, max_quotient: u32) -> Outcome {
    let mut list = Vec::new();
    for lit in words {
        match parse_literal(lit)? {
            Literal::Word(w) => list.push(w),
            Literal::Number(x) => list.push(cf::expand(&x, ctx.horizon())?),
        }
    }
    if let Some(k) = max_period {
        list.extend(spectra::periodic_words(k, max_quotient));
    }
    if list.is_empty() {
        return Err(Error::InvalidSpec("sample needs --word or --max-period".into()).into());
    }
    let report = spectra::sample_m(&list)?;
    let rows: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|(w, m)| vec![format!("cf:{w}"), m.to_string(), decimal(m)])
        .collect();
    ctx.emit(&["word", "m_exact", "m_decimal"], rows.clone(), || {
        let bound = |b: &Option<spectra::SampleBound>| {
            b.as_ref().map(|b| {
                json!({ "word": rows[b.index][0], "exact": b.value.to_string(), "decimal": decimal(&b.value) })
            })
        };
        let entries: Vec<Value> =
            rows.iter().map(|r| json!({ "word": r[0], "m_exact": r[1], "m_decimal": r[2] })).collect();
        json!({ "count": rows.len(), "min": bound(&report.min), "max": bound(&report.max), "entries": entries })
    })?;
    Ok(0)
}

fn sign_str(s: Option<Ordering>) -> &'static str {
    match s {
        Some(Ordering::Less) => "-1",
        Some(Ordering::Equal) => "0",
        Some(Ordering::Greater) => "1",
        None => "undecided",
    }
}

fn compare(ctx: &Ctx, alpha: &str, beta: &str, t_min: &str, t_max: &str, breakpoints: Option<&str>) -> Outcome {
    let a = number(alpha)?;
    let b = number(beta)?;
    let lo = parse_rational(t_min)?;
    let hi = parse_rational(t_max)?;
    let opts = CompareOptions {
        precision_bits: ctx.config.precision_bits,
        cap_bits: ctx.config.refinement_cap_bits,
        max_terms: ctx.horizon(),
    };
    let report = oscillation::find_crossings(&a, &b, &lo, &hi, &opts)?;
    let status = |s: CrossingStatus| match s {
        CrossingStatus::Certified => "certified",
        CrossingStatus::Undecided => "undecided",
    };
    let rows = report
        .crossings
        .iter()
        .map(|c| vec![rational_decimal(&c.lo), rational_decimal(&c.hi), status(c.status).to_string()])
        .collect();
    ctx.emit(&["lo", "hi", "status"], rows, || {
        let dominance = report.dominance.as_ref().map(|d| {
            let side = match d.side {
                Side::AlphaBelow => "alpha_below",
                Side::BetaBelow => "beta_below",
            };
            json!({ "t0": d.t0.to_string(), "side": side })
        });
        json!({
            "alpha": a.to_literal(),
            "beta": b.to_literal(),
            "t_range": [report.t_range.0.to_string(), report.t_range.1.to_string()],
            "precondition_naturel": report.precondition_naturel,
            "crossings": report.crossings.iter().map(|c| json!({
                "lo": c.lo.to_string(), "hi": c.hi.to_string(), "status": status(c.status),
            })).collect::<Vec<_>>(),
            "certified": report.certified_count(),
            "undecided": report.undecided_count(),
            "dominance": dominance,
            "breakpoints": report.rows.len(),
        })
    })?;
    if let Some(path) = breakpoints {
        let rows = report.rows.iter().map(|r| {
            vec![rational_decimal(&r.t), scientific(&r.mu_alpha), scientific(&r.mu_beta), sign_str(r.sign).to_string()]
        });
        let header = ["t", "mu_alpha", "mu_beta", "sign"];
        let tag = Tag { command: "compare-breakpoints", ..ctx.tag() };
        if path == "-" {
            write_csv(io::stdout().lock(), tag, &header, rows)?;
        } else {
            let mut file = BufWriter::new(File::create(path)?);
            write_csv(&mut file, tag, &header, rows)?;
            file.flush()?;
        }
    }
    Ok(0)
}

fn verify_cmd(ctx: &Ctx, alphas: &[String], grid: u32) -> Outcome {
    let extra = alphas.iter().map(|s| number(s)).collect::<Result<Vec<_>, _>>()?;
    let rows = verify::verify_suite(&extra, ctx.horizon(), grid)?;
    let failed = rows.iter().any(|r| !r.passed());
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.check.to_string(),
                r.subject.clone(),
                r.applicable.to_string(),
                r.failures.to_string(),
                if r.passed() { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    ctx.emit(&["check", "subject", "applicable", "failures", "status"], table, || {
        let checks: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "check": r.check, "subject": r.subject, "applicable": r.applicable,
                    "failures": r.failures, "passed": r.passed(),
                })
            })
            .collect();
        json!({ "horizon": ctx.horizon(), "grid": grid, "passed": !failed, "checks": checks })
    })?;
    if failed {
        eprintln!("verify: {} failing check(s)", rows.iter().filter(|r| !r.passed()).count());
        return Ok(VERIFY_FAILED);
    }
    Ok(0)
}
