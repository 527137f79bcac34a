//! File formats, named functions, parallel search and the command
//! implementations behind the `oblivious-dicut` binary.

pub mod commands;
pub mod formats;

use std::time::{Duration, Instant};

use oblivious_dicut_core::graph::DEFAULT_BRUTE_FORCE_LIMIT;
use oblivious_dicut_core::lp::{approximation_ratio_with, RatioCertificate, RatioOptions};
use oblivious_dicut_core::rational::{parse_rational, Rational};
use oblivious_dicut_core::search::{best_of, evaluate_candidate, Candidate, SearchOutcome};
use oblivious_dicut_core::selection::{enumerate_family, family_size};
use oblivious_dicut_core::{Error, StepFunction};
use rayon::prelude::*;

pub use formats::ParseError;

/// Environment variable that overrides the brute-force vertex limit.
pub const MAX_BRUTE_ENV: &str = "OBLIVIOUS_DICUT_MAX_BRUTE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("{0}")]
    Certificate(String),
    #[error("{0}")]
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InstanceTooLarge { .. } => CliError::Limit(e.to_string()),
            Error::Solver(_) | Error::SingularBasis => CliError::Solver(e.to_string()),
            Error::CertificateInvalid(_) => CliError::Certificate(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// 2 for malformed input, 3 for size and time limits, 4 for solver
    /// failures, 5 for certificates that do not verify, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Solver(_) => 4,
            CliError::Certificate(_) => 5,
            CliError::Io(_) | CliError::Core(_) => 1,
        }
    }
}

/// Brute-force vertex limit, from the environment when set.
pub fn brute_force_limit() -> Result<usize, CliError> {
    match std::env::var(MAX_BRUTE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_BRUTE_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BRUTE_FORCE_LIMIT),
    }
}

/// Resolves a built-in name (`uniform`, `greedy-threshold`, `f-delta:<d>`,
/// `paper-0483`, `clamped-linear:<k>`) or reads a `stepfn v1` file.
pub fn resolve_function(spec: &str) -> Result<StepFunction, CliError> {
    if let Some(f) = named_function(spec)? {
        return Ok(f);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Usage(format!("`{spec}` is neither a built-in function nor a readable file: {e}")))?;
    formats::parse_stepfn(&text).map_err(|source| CliError::Parse {
        path: spec.to_string(),
        source,
    })
}

pub fn named_function(spec: &str) -> Result<Option<StepFunction>, CliError> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let need = |what: &str| CliError::Usage(format!("`{name}` needs an argument, e.g. `{name}:{what}`"));
    let f = match name {
        "uniform" => StepFunction::uniform(),
        "greedy-threshold" => StepFunction::greedy_threshold(),
        "paper-0483" => StepFunction::paper_0483(),
        "f-delta" => {
            let d = arg.ok_or_else(|| need("1/3"))?;
            let d = parse_rational(d).ok_or_else(|| CliError::Usage(format!("`{d}` is not a number")))?;
            StepFunction::f_delta(&d)?
        }
        "clamped-linear" => {
            let k = arg.ok_or_else(|| need("10"))?;
            let k: u32 = k
                .parse()
                .map_err(|_| CliError::Usage(format!("`{k}` is not a positive integer")))?;
            StepFunction::clamped_linear_discretized(k)?
        }
        _ => return Ok(None),
    };
    Ok(Some(f))
}

/// Decimal rendering rounded to `digits` fractional digits, trailing zeros removed.
pub fn decimal(q: &Rational, digits: usize) -> String {
    use oblivious_dicut_core::rational::format_rational;
    let scale = Rational::from_integer(num_bigint_pow10(digits));
    let scaled = (q * &scale).round();
    let text = format_rational(&scaled);
    let (neg, mag) = match text.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, text),
    };
    let padded = format!("{mag:0>width$}", width = digits + 1);
    let (int_part, frac) = padded.split_at(padded.len() - digits);
    let frac = frac.trim_end_matches('0');
    let sign = if neg && (int_part != "0" || !frac.is_empty()) { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

fn num_bigint_pow10(digits: usize) -> oblivious_dicut_core::rational::BigInt {
    let mut v = oblivious_dicut_core::rational::BigInt::from(1u8);
    for _ in 0..digits {
        v *= 10u8;
    }
    v
}

/// `p/q (decimal)`.
pub fn exact_and_decimal(q: &Rational) -> String {
    use oblivious_dicut_core::rational::format_rational;
    format!("{} ({})", format_rational(q), decimal(q, 12))
}

/// Polls a wall-clock deadline; records whether it fired.
pub struct Deadline {
    start: Instant,
    limit: Option<Duration>,
    fired: bool,
}

impl Deadline {
    pub fn new(limit: Option<Duration>) -> Self {
        Self {
            start: Instant::now(),
            limit,
            fired: false,
        }
    }

    pub fn poll(&mut self) -> bool {
        if let Some(l) = self.limit {
            if self.start.elapsed() > l {
                self.fired = true;
            }
        }
        !self.fired
    }

    pub fn fired(&self) -> bool {
        self.fired
    }
}

/// Certifies `f`, turning an expired deadline into a limit error.
pub fn certify_with_deadline(
    f: &StepFunction,
    options: &RatioOptions,
    limit: Option<Duration>,
) -> Result<RatioCertificate, CliError> {
    let mut deadline = Deadline::new(limit);
    let result = approximation_ratio_with(f, options, &mut |_| deadline.poll());
    match result {
        Err(_) if deadline.fired() => Err(CliError::Limit("time limit reached".into())),
        other => Ok(other?),
    }
}

/// Exhaustive search with candidates certified on `jobs` threads.
/// The result and the ledger order do not depend on `jobs`.
pub fn parallel_exhaustive_best(
    n: u32,
    limit: u32,
    options: &RatioOptions,
    jobs: usize,
) -> Result<SearchOutcome, CliError> {
    enumerate_family(n, limit)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let candidates: Vec<Candidate> = pool.install(|| {
        (0..family_size(n))
            .into_par_iter()
            .map(|i| evaluate_candidate(n, i, options))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    let ledger = candidates.iter().map(Candidate::ledger_line).collect();
    let best = best_of(candidates).ok_or(Error::EmptyList)?;
    Ok(SearchOutcome { best, ledger })
}
