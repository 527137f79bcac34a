//! One function per subcommand. Each returns the text printed on stdout.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use oblivious_dicut_core::algorithms::{
    greedy_cut, portfolio_expmax, portfolio_maxexp, portfolio_mix, AlgorithmSpec, PortfolioSpec,
};
use oblivious_dicut_core::bounds::{
    build_combined, build_g1, build_g2, combined_formula_argmax, combined_opt, even_cycle_ratio, gadget_ratio_formula,
    nonsymmetric_bound,
};
use oblivious_dicut_core::graph::{
    brute_force_opt_with_limit, expand_to_unweighted, monte_carlo_cut_weight, WeightedDigraph, DEFAULT_EXPANSION_LIMIT,
};
use oblivious_dicut_core::lp::RatioOptions;
use oblivious_dicut_core::rational::{format_rational, parse_rational, to_f64, Rational};
use oblivious_dicut_core::search::local_refine;
use oblivious_dicut_core::selection::DEFAULT_FAMILY_LIMIT;
use oblivious_dicut_core::twoand::TwoAndInstance;
use oblivious_dicut_core::StepFunction;

use crate::formats::{self, CertificateFile};
use crate::{
    brute_force_limit, certify_with_deadline, decimal, exact_and_decimal, parallel_exhaustive_best, resolve_function,
    CliError,
};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(CliError::from)
}

fn parse_with<T>(path: &Path, parse: fn(&str) -> Result<T, formats::ParseError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<WeightedDigraph, CliError> {
    parse_with(path, formats::parse_graph)
}

pub fn load_twoand(path: &Path) -> Result<TwoAndInstance, CliError> {
    parse_with(path, formats::parse_twoand)
}

pub fn parse_number(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| CliError::Usage(format!("`{text}` is not a number")))
}

pub struct RatioArgs<'a> {
    pub function: &'a str,
    pub witness: Option<&'a Path>,
    pub cert: Option<&'a Path>,
    pub symmetric_reduction: bool,
    pub time_limit: Option<Duration>,
}

pub fn ratio(args: &RatioArgs<'_>) -> Result<String, CliError> {
    let f = resolve_function(args.function)?;
    let options = RatioOptions {
        symmetric_reduction: args.symmetric_reduction,
        ..RatioOptions::default()
    };
    let c = certify_with_deadline(&f, &options, args.time_limit)?;
    let mut out = format!("{} {}\n", decimal(&c.lower, 12), decimal(&c.upper, 12));
    let _ = writeln!(out, "lower {}", exact_and_decimal(&c.lower));
    let _ = writeln!(out, "upper {}", exact_and_decimal(&c.upper));
    let _ = writeln!(out, "fingerprint {}", c.fingerprint);
    let _ = writeln!(out, "program {} rows, {} columns, {} pivots", c.rows, c.columns, c.iterations);
    let _ = writeln!(
        out,
        "witness {} vertices, {} edges, ratio at most {}",
        c.witness.graph.vertex_count(),
        c.witness.graph.edges().len(),
        exact_and_decimal(&c.witness.ratio(&f)?)
    );
    if let Some(p) = args.witness {
        write(p, &formats::write_graph(&c.witness.graph))?;
    }
    if let Some(p) = args.cert {
        write(p, &formats::write_certificate(&CertificateFile::from_certificate(&c)))?;
    }
    Ok(out)
}

pub fn eval(graph: &Path, function: &str, mc: Option<(u64, u64)>) -> Result<String, CliError> {
    let g = load_graph(graph)?;
    let f = resolve_function(function)?;
    let e = g.expected_cut_weight(&f)?;
    let mut out = format!("expected {}\n", exact_and_decimal(&e));
    if let Some((trials, seed)) = mc {
        let est = monte_carlo_cut_weight(&g, &f, trials, seed)?;
        let diff = est.mean - to_f64(&e);
        let z = if est.std_error > 0.0 { diff / est.std_error } else { 0.0 };
        let _ = writeln!(
            out,
            "monte-carlo mean {:.9} std-error {:.3e} trials {} z {:.3}",
            est.mean, est.std_error, est.trials, z
        );
    }
    Ok(out)
}

pub fn opt(graph: &Path) -> Result<String, CliError> {
    let g = load_graph(graph)?;
    let (cut, w) = brute_force_opt_with_limit(&g, brute_force_limit()?)?;
    let vs: Vec<String> = cut.vertices().iter().map(|v| v.to_string()).collect();
    Ok(format!("opt {}\ncut {}\n", exact_and_decimal(&w), vs.join(" ")))
}

pub struct SearchArgs<'a> {
    pub n: u32,
    pub refine: Option<(u32, u32)>,
    pub jobs: usize,
    pub ledger: Option<&'a Path>,
    pub output: Option<&'a Path>,
}

pub fn search(args: &SearchArgs<'_>) -> Result<String, CliError> {
    let options = RatioOptions::default();
    let outcome = parallel_exhaustive_best(args.n, DEFAULT_FAMILY_LIMIT, &options, args.jobs)?;
    let mut out = String::new();
    let _ = writeln!(out, "candidates {}", outcome.ledger.len());
    let _ = writeln!(out, "best index {}", outcome.best.index);
    let _ = writeln!(out, "best lower {}", exact_and_decimal(&outcome.best.certificate.lower));
    let mut best = outcome.best.function.clone();
    if let Some((grid, rounds)) = args.refine {
        let r = local_refine(&best, grid, rounds, &options)?;
        let history: Vec<String> = r.history.iter().map(|q| decimal(q, 9)).collect();
        let _ = writeln!(out, "refined lower {}", exact_and_decimal(&r.certificate.lower));
        let _ = writeln!(out, "refine history {}", history.join(" "));
        best = r.function;
    }
    out.push_str(&formats::write_stepfn(&best));
    if let Some(p) = args.ledger {
        write(p, &formats::write_ledger(&outcome.ledger))?;
    }
    if let Some(p) = args.output {
        write(p, &formats::write_stepfn(&best))?;
    }
    Ok(out)
}

pub struct BoundArgs<'a> {
    pub c: &'a str,
    pub g1: usize,
    pub g2: usize,
    pub alpha_grid: Option<&'a str>,
    pub function: Option<&'a str>,
    pub export: Option<&'a Path>,
}

pub fn bound(args: &BoundArgs<'_>) -> Result<String, CliError> {
    let c = parse_number(args.c)?;
    let g = build_combined(&c, args.g1, args.g2)?;
    let opt = combined_opt(&c, args.g1, args.g2);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "gadgets {} x G1 ({} vertices) + {} x G2 ({} vertices), opt {}",
        args.g1,
        build_g1(&c)?.vertex_count(),
        args.g2,
        build_g2(&c)?.vertex_count(),
        exact_and_decimal(&opt)
    );
    if (args.g1, args.g2) == (1, 3) {
        let (alpha, value) = combined_formula_argmax(&c)?;
        let _ = writeln!(
            out,
            "max {} at alpha = {}",
            exact_and_decimal(&value),
            format_rational(&alpha)
        );
    }
    if let Some(step) = args.alpha_grid {
        let step = parse_number(step)?;
        if step <= Rational::from_integer(0.into()) {
            return Err(CliError::Usage("alpha grid step must be positive".into()));
        }
        let _ = writeln!(out, "alpha,ratio");
        let one = Rational::from_integer(1.into());
        let mut a = Rational::from_integer(0.into());
        while a <= one {
            let r = gadget_ratio_formula(&c, &a, args.g1, args.g2)?;
            let _ = writeln!(out, "{},{}", decimal(&a, 9), decimal(&r, 12));
            a += &step;
        }
    }
    if let Some(spec) = args.function {
        let f = resolve_function(spec)?;
        let on_graph = g.expected_cut_weight(&f)? / &opt;
        let _ = writeln!(out, "function ratio on gadgets {}", exact_and_decimal(&on_graph));
        let _ = writeln!(out, "function ratio on even cycle {}", exact_and_decimal(&even_cycle_ratio(&f)));
        let _ = writeln!(
            out,
            "bound {}",
            exact_and_decimal(&nonsymmetric_bound(&f, &c, args.g1, args.g2)?)
        );
    }
    if let Some(p) = args.export {
        write(p, &formats::write_graph(&g))?;
    }
    Ok(out)
}

pub fn reduce2and(input: &Path, output: &Path) -> Result<String, CliError> {
    let inst = load_twoand(input)?;
    let mut out = String::new();
    for v in 0..inst.variable_count() {
        if !inst.has_occurrences(v) {
            let _ = writeln!(out, "warning: variable {} has no occurrences", v + 1);
        }
    }
    let red = inst.reduce_to_dicut();
    write(output, &formats::write_graph(&red.graph))?;
    let _ = writeln!(
        out,
        "graph {} vertices, {} edges; vertex 2(k-1) is +k, vertex 2(k-1)+1 is -k",
        red.graph.vertex_count(),
        red.graph.edges().len()
    );
    Ok(out)
}

pub fn expand(graph: &Path, output: &Path, limit: Option<usize>) -> Result<String, CliError> {
    let g = load_graph(graph)?;
    let x = expand_to_unweighted(&g, limit.unwrap_or(DEFAULT_EXPANSION_LIMIT))?;
    write(output, &formats::write_graph(&x.graph))?;
    Ok(format!(
        "copies per vertex {}\nexpanded {} vertices, {} edges\n",
        x.copies,
        x.graph.vertex_count(),
        x.graph.edges().len()
    ))
}

pub struct MixmaxArgs<'a> {
    pub graph: &'a Path,
    pub members: &'a [String],
    pub mix: Option<&'a [String]>,
    pub trials: Option<u64>,
    pub seed: u64,
}

fn member(spec: &str) -> Result<AlgorithmSpec, CliError> {
    if spec == "greedy" {
        return Ok(AlgorithmSpec::Greedy);
    }
    Ok(AlgorithmSpec::Oblivious(resolve_function(spec)?))
}

pub fn mixmax(args: &MixmaxArgs<'_>) -> Result<String, CliError> {
    let g = load_graph(args.graph)?;
    let members = args.members.iter().map(|m| member(m)).collect::<Result<Vec<_>, _>>()?;
    let mut portfolio = PortfolioSpec::new(members)?;
    if let Some(ws) = args.mix {
        let ws = ws.iter().map(|w| parse_number(w)).collect::<Result<Vec<_>, _>>()?;
        portfolio = portfolio.with_mix(ws)?;
    }
    let opt = match brute_force_opt_with_limit(&g, brute_force_limit()?) {
        Ok((_, w)) => Some(w),
        Err(oblivious_dicut_core::Error::InstanceTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    let ratio_text = |v: &Rational| match &opt {
        Some(o) => format!(", ratio {}", exact_and_decimal(&(v / o))),
        None => String::new(),
    };
    if let Some(o) = &opt {
        let _ = writeln!(out, "opt {}", exact_and_decimal(o));
    }
    let _ = writeln!(out, "greedy cut {}", exact_and_decimal(&g.cut_weight(&greedy_cut(&g))?));
    let maxexp = portfolio_maxexp(&g, &portfolio)?;
    let _ = writeln!(out, "maxexp {}{}", exact_and_decimal(&maxexp), ratio_text(&maxexp));
    if portfolio.mix_weights.is_some() {
        let mix = portfolio_mix(&g, &portfolio)?;
        let _ = writeln!(out, "mix {}{}", exact_and_decimal(&mix), ratio_text(&mix));
    }
    if let Some(trials) = args.trials {
        let v = portfolio_expmax(&g, &portfolio, args.seed, trials)?;
        let _ = writeln!(out, "expmax (monte-carlo, {trials} trials, seed {}) {v:.9}", args.seed);
    }
    Ok(out)
}

/// Checks a certificate file against a function: fingerprint, exact dual
/// feasibility, and the witness ratio.
pub fn check_certificate(cert: &Path, function: &str) -> Result<String, CliError> {
    use oblivious_dicut_core::lp::{build_lp, verify_dual};
    let f: StepFunction = resolve_function(function)?;
    let c = parse_with(cert, formats::parse_certificate)?;
    if c.fingerprint != f.fingerprint() {
        return Err(CliError::Certificate("fingerprint does not match the function".into()));
    }
    let model = build_lp(&f);
    let lower = verify_dual(&model.program, &c.duals).map_err(CliError::from)?;
    if lower != c.lower {
        return Err(CliError::Certificate("dual objective differs from the recorded lower bound".into()));
    }
    let cut = c.witness.cut_weight(&c.cut)?;
    let witness_ratio = c.witness.expected_cut_weight(&f)? / cut;
    if witness_ratio > &c.upper + &c.epsilon {
        return Err(CliError::Certificate("witness ratio exceeds upper + epsilon".into()));
    }
    Ok(format!(
        "certificate ok\nlower {}\nwitness ratio {}\n",
        exact_and_decimal(&lower),
        exact_and_decimal(&witness_ratio)
    ))
}
