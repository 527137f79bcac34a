//! Step selection functions.
//!
//! A [`StepFunction`] maps a bias in `[0, 1]` to a selection probability.
//! It is described by interior breakpoints `0 < z_1 < ... < z_m < 1`, one
//! value per open interval `(z_i, z_{i+1})` and one value per knot
//! (`0`, every `z_i`, and `1`). All numbers are exact rationals.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::{format_rational, half, int, ratio, to_f64, Rational};

/// Largest `n` accepted by [`enumerate_family`] unless the caller raises it.
pub const DEFAULT_FAMILY_LIMIT: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    intervals: Vec<Rational>,
    /// `points[0] = f(0)`, `points[k + 1] = f(z_k)`, last = `f(1)`.
    points: Vec<Rational>,
}

/// A maximal piece of constancy: an open interval `(lower, upper)` or, when
/// `lower == upper`, an isolated point whose value differs from both limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lower: Rational,
    pub upper: Rational,
    pub value: Rational,
}

impl Piece {
    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }
}

fn check_unit(v: &Rational) -> Result<()> {
    if v < &Rational::zero() || v > &Rational::one() {
        return Err(Error::OutOfUnitInterval(v.clone()));
    }
    Ok(())
}

impl StepFunction {
    /// Builds a step function whose knot values default to the right limit
    /// (the left limit at `x = 1`).
    pub fn new(breakpoints: Vec<Rational>, intervals: Vec<Rational>) -> Result<Self> {
        if intervals.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: breakpoints.len() + 1,
                actual: intervals.len(),
            });
        }
        let mut points = Vec::with_capacity(breakpoints.len() + 2);
        points.push(intervals[0].clone());
        points.extend(intervals[1..].iter().cloned());
        points.push(intervals[intervals.len() - 1].clone());
        Self::from_parts(breakpoints, intervals, points)
    }

    /// Builds a step function with every knot value given explicitly.
    pub fn from_parts(
        breakpoints: Vec<Rational>,
        intervals: Vec<Rational>,
        points: Vec<Rational>,
    ) -> Result<Self> {
        if intervals.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: breakpoints.len() + 1,
                actual: intervals.len(),
            });
        }
        if points.len() != breakpoints.len() + 2 {
            return Err(Error::LengthMismatch {
                expected: breakpoints.len() + 2,
                actual: points.len(),
            });
        }
        let zero = Rational::zero();
        let one = Rational::one();
        let mut prev = &zero;
        for z in &breakpoints {
            if z <= prev || z >= &one {
                return Err(Error::InvalidStepFunction(
                    "breakpoints must be strictly increasing inside (0, 1)".into(),
                ));
            }
            prev = z;
        }
        for v in intervals.iter().chain(points.iter()) {
            check_unit(v)?;
        }
        Ok(Self {
            breakpoints,
            intervals,
            points,
        })
    }

    /// Same breakpoints and intervals as `intervals`-only construction, with
    /// the knot convention that keeps antisymmetric interval data
    /// antisymmetric: right limits below `1/2`, left limits above, `1/2` at
    /// `1/2`.
    pub fn with_symmetric_knots(breakpoints: Vec<Rational>, intervals: Vec<Rational>) -> Result<Self> {
        if intervals.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: breakpoints.len() + 1,
                actual: intervals.len(),
            });
        }
        let h = half();
        let mut points = Vec::with_capacity(breakpoints.len() + 2);
        points.push(intervals[0].clone());
        for (k, z) in breakpoints.iter().enumerate() {
            let p = if *z < h {
                intervals[k + 1].clone()
            } else if *z > h {
                intervals[k].clone()
            } else {
                h.clone()
            };
            points.push(p);
        }
        points.push(intervals[intervals.len() - 1].clone());
        Self::from_parts(breakpoints, intervals, points)
    }

    /// Replaces the value at knot `z` (which must be `0`, `1` or a breakpoint).
    pub fn with_point_value(mut self, z: &Rational, value: Rational) -> Result<Self> {
        check_unit(&value)?;
        let idx = self
            .knot_index(z)
            .ok_or_else(|| Error::InvalidStepFunction(format!("{} is not a knot", format_rational(z))))?;
        self.points[idx] = value;
        Ok(self)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn interval_values(&self) -> &[Rational] {
        &self.intervals
    }

    pub fn point_values(&self) -> &[Rational] {
        &self.points
    }

    /// All knots: `0`, the breakpoints, `1`.
    pub fn knots(&self) -> Vec<Rational> {
        let mut k = Vec::with_capacity(self.breakpoints.len() + 2);
        k.push(Rational::zero());
        k.extend(self.breakpoints.iter().cloned());
        k.push(Rational::one());
        k
    }

    /// Open interval `i` as `(lower, upper)`.
    pub fn interval_bounds(&self, i: usize) -> (Rational, Rational) {
        let lo = if i == 0 { Rational::zero() } else { self.breakpoints[i - 1].clone() };
        let hi = if i == self.breakpoints.len() { Rational::one() } else { self.breakpoints[i].clone() };
        (lo, hi)
    }

    fn knot_index(&self, z: &Rational) -> Option<usize> {
        if z.is_zero() {
            return Some(0);
        }
        if z.is_one() {
            return Some(self.points.len() - 1);
        }
        self.breakpoints.binary_search(z).ok().map(|k| k + 1)
    }

    /// Exact value at `x`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        check_unit(x)?;
        Ok(self.value_at(x).clone())
    }

    pub(crate) fn value_at(&self, x: &Rational) -> &Rational {
        if let Some(k) = self.knot_index(x) {
            return &self.points[k];
        }
        let idx = self.breakpoints.partition_point(|z| z < x);
        &self.intervals[idx]
    }

    /// Convenience for floating inputs; the argument is converted exactly.
    pub fn evaluate_f64(&self, x: f64) -> Result<f64> {
        let q = Rational::from_float(x)
            .ok_or_else(|| Error::InvalidParameter(format!("non-finite argument {x}")))?;
        self.evaluate(&q).map(|v| to_f64(&v))
    }

    /// `f(x) + f(1 - x) = 1` everywhere, up to `tol`; breakpoints must be
    /// exactly mirror-symmetric.
    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        let m = self.breakpoints.len();
        let one = Rational::one();
        for k in 0..m {
            if self.breakpoints[k].clone() + &self.breakpoints[m - 1 - k] != one {
                return false;
            }
        }
        let close = |a: &Rational, b: &Rational| to_f64(&(a + b - &one)).abs() <= tol;
        let n = self.intervals.len();
        (0..n).all(|i| close(&self.intervals[i], &self.intervals[n - 1 - i]))
            && (0..self.points.len())
                .all(|k| close(&self.points[k], &self.points[self.points.len() - 1 - k]))
    }

    /// `g(x) = (f(x) + 1 - f(1 - x)) / 2`, which is always antisymmetric.
    pub fn antisymmetrize(&self) -> StepFunction {
        let one = Rational::one();
        let mut knots: Vec<Rational> = self
            .breakpoints
            .iter()
            .cloned()
            .chain(self.breakpoints.iter().map(|z| &one - z))
            .collect();
        knots.sort();
        knots.dedup();
        let sym = |x: &Rational| -> Rational {
            let mirrored = &one - x;
            (self.value_at(x).clone() + &one - self.value_at(&mirrored)) / int(2)
        };
        let mut all = Vec::with_capacity(knots.len() + 2);
        all.push(Rational::zero());
        all.extend(knots.iter().cloned());
        all.push(one.clone());
        let intervals = all
            .windows(2)
            .map(|w| sym(&((&w[0] + &w[1]) / int(2))))
            .collect();
        let points = all.iter().map(sym).collect();
        StepFunction {
            breakpoints: knots,
            intervals,
            points,
        }
    }

    /// Drops breakpoints where both one-sided limits and the knot value agree.
    pub fn simplify(&self) -> StepFunction {
        let mut breakpoints = Vec::new();
        let mut intervals = vec![self.intervals[0].clone()];
        let mut points = vec![self.points[0].clone()];
        for (k, z) in self.breakpoints.iter().enumerate() {
            let left = &self.intervals[k];
            let right = &self.intervals[k + 1];
            let at = &self.points[k + 1];
            if left == right && left == at {
                continue;
            }
            breakpoints.push(z.clone());
            intervals.push(right.clone());
            points.push(at.clone());
        }
        points.push(self.points[self.points.len() - 1].clone());
        StepFunction {
            breakpoints,
            intervals,
            points,
        }
    }

    /// Maximal open intervals of constancy plus isolated knots, ordered by
    /// position.
    pub fn pieces(&self) -> Vec<Piece> {
        let knots = self.knots();
        let n = self.intervals.len();
        let mut out: Vec<Piece> = Vec::new();
        let mut start = 0;
        for i in 0..n {
            if i + 1 == n || self.intervals[i + 1] != self.intervals[i] {
                out.push(Piece {
                    lower: knots[start].clone(),
                    upper: knots[i + 1].clone(),
                    value: self.intervals[i].clone(),
                });
                start = i + 1;
            }
        }
        for (k, z) in knots.iter().enumerate() {
            let value = &self.points[k];
            let left = if k == 0 { None } else { Some(&self.intervals[k - 1]) };
            let right = if k == n { None } else { Some(&self.intervals[k]) };
            if left != Some(value) && right != Some(value) {
                out.push(Piece {
                    lower: z.clone(),
                    upper: z.clone(),
                    value: value.clone(),
                });
            }
        }
        out.sort_by(|a, b| (&a.lower, &a.upper).cmp(&(&b.lower, &b.upper)));
        out
    }

    /// Hex SHA-256 of the canonical text of the simplified function.
    pub fn fingerprint(&self) -> String {
        let text = format!("{}", self.simplify());
        let digest = Sha256::digest(text.as_bytes());
        let mut hex = String::with_capacity(64);
        for b in digest.iter() {
            hex.push_str(&format!("{b:02x}"));
        }
        hex
    }

    // ---- named functions ----

    /// `f == 1/2`.
    pub fn uniform() -> Self {
        Self::new(Vec::new(), vec![half()]).expect("valid")
    }

    /// `0` below `delta`, `1/2` on `[delta, 1 - delta]`, `1` above.
    pub fn f_delta(delta: &Rational) -> Result<Self> {
        if delta <= &Rational::zero() || delta >= &half() {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1/2), got {}",
                format_rational(delta)
            )));
        }
        let one = Rational::one();
        Self::from_parts(
            vec![delta.clone(), &one - delta],
            vec![Rational::zero(), half(), one.clone()],
            vec![Rational::zero(), half(), half(), one],
        )
    }

    /// The 100-step function: `0` below `1/4`, `1` above `3/4`, and
    /// `0.005 + 0.01 i` on `(1/4 + i/200, 1/4 + (i+1)/200)`; `f(1/2) = 1/2`.
    pub fn paper_0483() -> Self {
        let breakpoints: Vec<Rational> = (0..=100).map(|i| ratio(50 + i, 200)).collect();
        let mut intervals = Vec::with_capacity(102);
        intervals.push(Rational::zero());
        intervals.extend((0..100).map(|i| ratio(1 + 2 * i, 200)));
        intervals.push(Rational::one());
        Self::with_symmetric_knots(breakpoints, intervals).expect("valid")
    }

    /// Midpoint discretization of `max(0, min(1, 2(x - 1/2) + 1/2))` with
    /// `steps` equal-width steps on `[1/4, 3/4]`.
    pub fn clamped_linear_discretized(steps: u32) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidParameter("steps must be positive".into()));
        }
        let s = i64::from(steps);
        let breakpoints: Vec<Rational> = (0..=s).map(|i| ratio(1, 4) + ratio(i, 2 * s)).collect();
        let mut intervals = Vec::with_capacity(breakpoints.len() + 1);
        intervals.push(Rational::zero());
        for i in 0..s {
            let mid = ratio(1, 4) + ratio(2 * i + 1, 4 * s);
            intervals.push(int(2) * mid - half());
        }
        intervals.push(Rational::one());
        Self::with_symmetric_knots(breakpoints, intervals)
    }

    /// The 0/1 threshold at `1/2`; a vertex with bias exactly `1/2` is selected.
    pub fn greedy_threshold() -> Self {
        Self::new(vec![half()], vec![Rational::zero(), Rational::one()]).expect("valid")
    }
}

/// Canonical `stepfn v1` text: one line per open interval, then `@` lines for
/// knots whose value differs from the default (right limit, left limit at 1).
impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stepfn v1")?;
        for i in 0..self.intervals.len() {
            let (lo, hi) = self.interval_bounds(i);
            writeln!(
                f,
                "{} {} {}",
                format_rational(&lo),
                format_rational(&hi),
                format_rational(&self.intervals[i])
            )?;
        }
        let knots = self.knots();
        let last = self.points.len() - 1;
        for (k, z) in knots.iter().enumerate() {
            let default = if k == last { &self.intervals[k - 1] } else { &self.intervals[k] };
            if &self.points[k] != default {
                writeln!(f, "@ {} {}", format_rational(z), format_rational(&self.points[k]))?;
            }
        }
        Ok(())
    }
}

/// Iterator over the antisymmetric family with `2n` equal-width intervals and
/// values in `{0, 1/n, ..., 1}`; `(n + 1)^n` members in lexicographic order of
/// the lower-half values.
#[derive(Clone, Debug)]
pub struct FamilyIter {
    n: u32,
    next: u64,
    total: u64,
}

impl FamilyIter {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Number of members of the family for `n`.
pub fn family_size(n: u32) -> u64 {
    u64::from(n + 1).pow(n)
}

pub fn enumerate_family(n: u32, limit: u32) -> Result<FamilyIter> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if n > limit {
        return Err(Error::InstanceTooLarge {
            size: n as usize,
            limit: limit as usize,
        });
    }
    Ok(FamilyIter {
        n,
        next: 0,
        total: family_size(n),
    })
}

/// Member `index` of the family (digits of `index` in base `n + 1`, most
/// significant first, are the numerators of the lower-half values).
pub fn family_member(n: u32, index: u64) -> StepFunction {
    let nn = n as usize;
    let base = u64::from(n) + 1;
    let mut digits = vec![0i64; nn];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % base) as i64;
        rest /= base;
    }
    let denom = i64::from(n);
    let breakpoints: Vec<Rational> = (1..2 * denom).map(|k| ratio(k, 2 * denom)).collect();
    let mut intervals: Vec<Rational> = digits.iter().map(|&k| ratio(k, denom)).collect();
    for j in 0..nn {
        let v = Rational::one() - &intervals[nn - 1 - j];
        intervals.push(v);
    }
    StepFunction::with_symmetric_knots(breakpoints, intervals).expect("valid family member")
}

impl Iterator for FamilyIter {
    type Item = StepFunction;

    fn next(&mut self) -> Option<StepFunction> {
        if self.next >= self.total {
            return None;
        }
        let f = family_member(self.n, self.next);
        self.next += 1;
        Some(f)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FamilyIter {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn paper_0483_values() {
        let f = StepFunction::paper_0483();
        assert_eq!(f.evaluate(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(f.evaluate(&q(1, 5)).unwrap(), Rational::zero());
        assert_eq!(f.evaluate(&q(556, 1000)).unwrap(), q(615, 1000));
        assert_eq!(f.evaluate(&q(9, 10)).unwrap(), Rational::one());
        assert!(f.is_antisymmetric(0.0));
    }

    #[test]
    fn f_delta_values() {
        let f = StepFunction::f_delta(&q(1, 3)).unwrap();
        assert_eq!(f.evaluate(&q(2, 5)).unwrap(), q(1, 2));
        assert_eq!(f.evaluate(&q(9, 10)).unwrap(), Rational::one());
        assert_eq!(f.evaluate(&q(1, 3)).unwrap(), q(1, 2));
        assert_eq!(f.evaluate(&q(2, 3)).unwrap(), q(1, 2));
        assert_eq!(f.evaluate(&q(1, 10)).unwrap(), Rational::zero());
        assert!(StepFunction::f_delta(&q(1, 2)).is_err());
        assert!(StepFunction::f_delta(&Rational::zero()).is_err());
        for d in [q(1, 10), q(1, 3), q(49, 100)] {
            assert!(StepFunction::f_delta(&d).unwrap().is_antisymmetric(0.0));
        }
    }

    #[test]
    fn clamped_linear_matches_paper_function_at_100_steps() {
        let g = StepFunction::clamped_linear_discretized(100).unwrap();
        assert_eq!(g, StepFunction::paper_0483());
        let g10 = StepFunction::clamped_linear_discretized(10).unwrap();
        assert_eq!(g10.evaluate(&Rational::zero()).unwrap(), Rational::zero());
        assert!(g10.is_antisymmetric(0.0));
        assert!(StepFunction::clamped_linear_discretized(7).unwrap().is_antisymmetric(0.0));
    }

    #[test]
    fn greedy_threshold_selects_ties() {
        let g = StepFunction::greedy_threshold();
        assert_eq!(g.evaluate(&q(1, 2)).unwrap(), Rational::one());
        assert_eq!(g.evaluate(&q(49, 100)).unwrap(), Rational::zero());
        assert!(!g.is_antisymmetric(1e-9));
    }

    #[test]
    fn evaluate_rejects_out_of_range() {
        let f = StepFunction::uniform();
        assert!(f.evaluate(&q(11, 10)).is_err());
        assert!(f.evaluate(&q(-1, 10)).is_err());
    }

    #[test]
    fn antisymmetry_detects_violation() {
        let f = StepFunction::new(vec![q(1, 2)], vec![q(1, 5), q(9, 10)]).unwrap();
        assert!(!f.is_antisymmetric(1e-9));
        assert!(StepFunction::uniform().is_antisymmetric(0.0));
    }

    #[test]
    fn antisymmetrize_fixed_point_and_constant() {
        let f = StepFunction::f_delta(&q(1, 3)).unwrap();
        assert_eq!(f.antisymmetrize().simplify(), f.simplify());
        let ones = StepFunction::new(vec![], vec![Rational::one()]).unwrap();
        assert_eq!(ones.antisymmetrize(), StepFunction::uniform());
        let eight = StepFunction::from_parts(vec![], vec![q(4, 5)], vec![q(1, 2), q(1, 2)]).unwrap();
        let g = eight.antisymmetrize();
        assert_eq!(g.evaluate(&q(3, 10)).unwrap(), q(1, 2));
        assert!(g.is_antisymmetric(0.0));
    }

    #[test]
    fn pieces_merge_and_isolate() {
        let f = StepFunction::paper_0483();
        let pieces = f.pieces();
        assert_eq!(pieces.len(), 103);
        assert_eq!(pieces.iter().filter(|p| p.is_point()).count(), 1);
        let mid = pieces.iter().find(|p| p.is_point()).unwrap();
        assert_eq!(mid.lower, q(1, 2));
        let redundant = StepFunction::from_parts(
            vec![q(1, 4), q(1, 2)],
            vec![q(1, 2), q(1, 2), q(1, 2)],
            vec![q(1, 2); 4],
        )
        .unwrap();
        assert_eq!(redundant.pieces(), StepFunction::uniform().pieces());
        assert_eq!(redundant.simplify(), StepFunction::uniform());
        let spike = StepFunction::uniform().with_point_value(&Rational::zero(), Rational::one());
        assert!(spike.is_ok());
        assert_eq!(spike.unwrap().pieces().len(), 2);
    }

    #[test]
    fn family_counts() {
        assert_eq!(enumerate_family(1, 5).unwrap().count(), 2);
        assert_eq!(enumerate_family(2, 5).unwrap().count(), 9);
        assert_eq!(enumerate_family(3, 5).unwrap().count(), 64);
        assert!(enumerate_family(6, 5).is_err());
        let all: Vec<_> = enumerate_family(3, 5).unwrap().collect();
        for (i, f) in all.iter().enumerate() {
            assert!(f.is_antisymmetric(0.0));
            assert_eq!(f.evaluate(&q(1, 2)).unwrap(), q(1, 2));
            for g in &all[..i] {
                assert_ne!(f, g);
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        let f = StepFunction::f_delta(&q(1, 3)).unwrap();
        let text = format!("{f}");
        assert_eq!(text, "stepfn v1\n0 1/3 0\n1/3 2/3 1/2\n2/3 1 1\n@ 2/3 1/2\n");
        assert_eq!(f.fingerprint().len(), 64);
        let redundant = StepFunction::new(vec![q(1, 4)], vec![q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(redundant.fingerprint(), StepFunction::uniform().fingerprint());
    }
}
