//! Upper-bound constructions: the two gadget graphs and their combination,
//! the small tight examples, even cycles, and the bound for selection
//! functions that are not antisymmetric.

use alloc::format;
use alloc::vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{brute_force_opt, WeightedDigraph};
use crate::rational::{format_rational, half, int, ratio, Rational};
use crate::selection::StepFunction;

fn check_c(c: &Rational) -> Result<()> {
    if *c <= Rational::one() {
        return Err(Error::InvalidParameter(format!("c must exceed 1, got {}", format_rational(c))));
    }
    Ok(())
}

/// Fails unless every bias is one of `c/(c+1)`, `1/2`, `1/(c+1)` and the
/// optimum equals `opt`.
fn validate_gadget(g: &WeightedDigraph, c: &Rational, opt: &Rational) -> Result<()> {
    let one = Rational::one();
    let allowed = [c / (c + &one), half(), &one / (c + &one)];
    for (v, b) in g.biases().0.iter().enumerate() {
        if !allowed.contains(b) {
            return Err(Error::InvalidInstance(format!(
                "gadget vertex {v} has unexpected bias {}",
                format_rational(b)
            )));
        }
    }
    let (_, best) = brute_force_opt(g)?;
    if best != *opt {
        return Err(Error::InvalidInstance(format!(
            "gadget optimum {} differs from {}",
            format_rational(&best),
            format_rational(opt)
        )));
    }
    Ok(())
}

/// Vertices `A, A', B, B', C, C'` = `0..6`. Biases `c/(c+1)` on `A, A'`,
/// `1/2` on `B, B'`, `1/(c+1)` on `C, C'`; the optimum `2c^2` selects `A, B, C`.
pub fn build_g1(c: &Rational) -> Result<WeightedDigraph> {
    check_c(c)?;
    let c2 = c * c - Rational::one();
    let g = WeightedDigraph::from_edges(
        6,
        [
            (0, 1, Rational::one()),
            (0, 3, c2.clone()),
            (2, 5, c2.clone()),
            (4, 5, Rational::one()),
            (1, 0, c.clone()),
            (3, 2, c2),
            (5, 4, c.clone()),
        ],
    )?;
    validate_gadget(&g, c, &(int(2) * c * c))?;
    Ok(g)
}

/// Vertices `D, E, E', F'` = `0..4`. Biases `c/(c+1)` on `D`, `1/2` on
/// `E, E'`, `1/(c+1)` on `F'`; the optimum `2c` selects `D, E`.
pub fn build_g2(c: &Rational) -> Result<WeightedDigraph> {
    check_c(c)?;
    let g = WeightedDigraph::from_edges(
        4,
        [
            (0, 2, c.clone()),
            (1, 3, c.clone()),
            (2, 1, c - Rational::one()),
            (2, 0, Rational::one()),
            (3, 1, Rational::one()),
        ],
    )?;
    validate_gadget(&g, c, &(int(2) * c))?;
    Ok(g)
}

/// `k1` copies of the first gadget followed by `k2` copies of the second.
pub fn build_combined(c: &Rational, k1: usize, k2: usize) -> Result<WeightedDigraph> {
    if k1 + k2 == 0 {
        return Err(Error::EmptyList);
    }
    let g1 = build_g1(c)?;
    let g2 = build_g2(c)?;
    let mut parts = vec![&g1; k1];
    parts.extend(vec![&g2; k2]);
    WeightedDigraph::disjoint_union(&parts, &vec![Rational::one(); k1 + k2])
}

/// Optimum of [`build_combined`] by additivity over components.
pub fn combined_opt(c: &Rational, k1: usize, k2: usize) -> Rational {
    int(2) * c * c * int(k1 as i64) + int(2) * c * int(k2 as i64)
}

/// Ratio of `k1` first gadgets and `k2` second gadgets under an
/// antisymmetric selection that picks bias `c/(c+1)` with probability `alpha`.
pub fn gadget_ratio_formula(c: &Rational, alpha: &Rational, k1: usize, k2: usize) -> Result<Rational> {
    check_c(c)?;
    if *alpha < Rational::zero() || *alpha > Rational::one() {
        return Err(Error::OutOfUnitInterval(alpha.clone()));
    }
    if k1 + k2 == 0 {
        return Err(Error::EmptyList);
    }
    let one = Rational::one();
    let quarter = ratio(1, 4);
    let g1 = int(2) * alpha * (&one - alpha) * (&one + c) + (alpha + &quarter) * (c * c - &one);
    let g2 = &one + (alpha + &quarter) * (c - &one);
    let expected = g1 * int(k1 as i64) + g2 * int(k2 as i64);
    Ok(expected / combined_opt(c, k1, k2))
}

/// One copy of the first gadget and three of the second.
pub fn combined_ratio_formula(c: &Rational, alpha: &Rational) -> Result<Rational> {
    gadget_ratio_formula(c, alpha, 1, 3)
}

/// Maximizer of the concave [`combined_ratio_formula`] over `alpha` in `[0, 1]`.
pub fn combined_formula_argmax(c: &Rational) -> Result<(Rational, Rational)> {
    check_c(c)?;
    // Numerator: -2(1+c) a^2 + (2(1+c) + c^2 - 1 + 3(c-1)) a + const.
    let one = Rational::one();
    let quad = int(2) * (&one + c);
    let lin = &quad + c * c - &one + int(3) * (c - &one);
    let mut alpha = lin / (int(2) * quad);
    if alpha > one {
        alpha = one;
    }
    let value = combined_ratio_formula(c, &alpha)?;
    Ok((alpha, value))
}

/// Antisymmetric step function worth `alpha` at bias `c/(c+1)`, `1/2` at
/// bias `1/2` and `1 - alpha` at bias `1/(c+1)`.
pub fn gadget_selection(c: &Rational, alpha: &Rational) -> Result<StepFunction> {
    check_c(c)?;
    if *alpha < Rational::zero() || *alpha > Rational::one() {
        return Err(Error::OutOfUnitInterval(alpha.clone()));
    }
    let one = Rational::one();
    let low = (&one / (c + &one) + half()) / int(2);
    let high = &one - &low;
    StepFunction::with_symmetric_knots(vec![low, high], vec![&one - alpha, half(), alpha.clone()])
}

/// `X -> Y` with weight `2/3` and `Y -> X` with weight `1/3`.
pub fn tight_example_38() -> WeightedDigraph {
    WeightedDigraph::from_edges(2, [(0, 1, ratio(2, 3)), (1, 0, ratio(1, 3))]).expect("valid")
}

/// Three vertices: `0 -> 2` of weight 2, `0 -> 1` of weight 3 and
/// `1 -> 0` of weight `3 + eps`. Greedy gets 2 and the optimum is 5.
pub fn tight_example_25(eps: &Rational) -> Result<WeightedDigraph> {
    if *eps <= Rational::zero() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    WeightedDigraph::from_edges(3, [(0, 2, int(2)), (0, 1, int(3)), (1, 0, int(3) + eps)])
}

/// Directed cycle on `2k` vertices with unit weights.
pub fn even_cycle(k: usize) -> Result<WeightedDigraph> {
    if k < 2 {
        return Err(Error::InvalidParameter("cycle needs k >= 2".into()));
    }
    let n = 2 * k;
    WeightedDigraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, Rational::one())))
}

/// Ratio of any function on an even cycle: `2 h (1 - h)` with `h = f(1/2)`.
pub fn even_cycle_ratio(f: &StepFunction) -> Rational {
    let h = f.value_at(&half()).clone();
    int(2) * &h * (Rational::one() - &h)
}

/// Upper bound on the ratio of a possibly non-antisymmetric `f`: the
/// smaller of its ratio on the combined gadget graph and on an even cycle.
pub fn nonsymmetric_bound(f: &StepFunction, c: &Rational, k1: usize, k2: usize) -> Result<Rational> {
    let g = build_combined(c, k1, k2)?;
    let on_gadgets = g.expected_cut_weight(f)? / combined_opt(c, k1, k2);
    let on_cycle = even_cycle_ratio(f);
    Ok(if on_cycle < on_gadgets { on_cycle } else { on_gadgets })
}

/// Gain of the antisymmetrized function over `f` on an edge `u -> v` plus
/// its reversed copy, computed directly from the two expectations.
pub fn reversal_advantage(f: &StepFunction, bias_u: &Rational, bias_v: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let g = f.antisymmetrize();
    let fu = f.evaluate(bias_u)?;
    let fv = f.evaluate(bias_v)?;
    let fu_r = f.evaluate(&(&one - bias_u))?;
    let fv_r = f.evaluate(&(&one - bias_v))?;
    let with_g = int(2) * g.evaluate(bias_u)? * (&one - g.evaluate(bias_v)?);
    let with_f = &fu * (&one - &fv) + &fv_r * (&one - &fu_r);
    Ok(with_g - with_f)
}

/// Closed form of [`reversal_advantage`]:
/// `(1 - f(u) - f(1-u)) (1 - f(v) - f(1-v)) / 2`.
pub fn reversal_advantage_closed_form(f: &StepFunction, bias_u: &Rational, bias_v: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let du = &one - f.evaluate(bias_u)? - f.evaluate(&(&one - bias_u))?;
    let dv = &one - f.evaluate(bias_v)? - f.evaluate(&(&one - bias_v))?;
    Ok(du * dv / int(2))
}
