//! Search for good selection functions: exhaustive over the discretized
//! family and coordinate ascent from a starting function.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lp::{approximation_ratio_with, RatioCertificate, RatioOptions};
use crate::rational::{format_rational, ratio, Rational};
use crate::selection::{enumerate_family, family_member, family_size, StepFunction};

/// One evaluated function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Position in the enumeration.
    pub index: u64,
    pub function: StepFunction,
    pub certificate: RatioCertificate,
}

impl Candidate {
    /// `<fingerprint> <certified-lower> <certified-upper>`.
    pub fn ledger_line(&self) -> String {
        format!(
            "{} {} {}",
            self.certificate.fingerprint,
            format_rational(&self.certificate.lower),
            format_rational(&self.certificate.upper)
        )
    }
}

pub fn evaluate_candidate(n: u32, index: u64, options: &RatioOptions) -> Result<Candidate> {
    let function = family_member(n, index);
    let certificate = approximation_ratio_with(&function, options, &mut |_| true)?;
    Ok(Candidate {
        index,
        function,
        certificate,
    })
}

/// Whether `a` beats `b`: larger certified lower bound, then
/// lexicographically smaller interval values.
pub fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.certificate.lower.cmp(&b.certificate.lower) {
        core::cmp::Ordering::Greater => true,
        core::cmp::Ordering::Less => false,
        core::cmp::Ordering::Equal => a.function.interval_values() < b.function.interval_values(),
    }
}

/// Order-independent reduction: the result does not depend on the order
/// in which candidates arrive.
pub fn best_of(candidates: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
    candidates
        .into_iter()
        .fold(None, |best: Option<Candidate>, c| match best {
            Some(b) if !better(&c, &b) => Some(b),
            _ => Some(c),
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub best: Candidate,
    /// One ledger line per candidate, in enumeration order.
    pub ledger: Vec<String>,
}

/// Certifies every member of the family with `2n` intervals and returns
/// the one with the largest certified lower bound.
pub fn exhaustive_best(n: u32, limit: u32, options: &RatioOptions) -> Result<SearchOutcome> {
    let family = enumerate_family(n, limit)?;
    let mut ledger = Vec::with_capacity(family.len());
    let mut best: Option<Candidate> = None;
    for index in 0..family_size(n) {
        let c = evaluate_candidate(n, index, options)?;
        ledger.push(c.ledger_line());
        best = best_of(best.into_iter().chain(core::iter::once(c)));
    }
    Ok(SearchOutcome {
        best: best.ok_or(Error::EmptyList)?,
        ledger,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefineOutcome {
    pub function: StepFunction,
    pub certificate: RatioCertificate,
    /// Certified lower bound at the start and after every round.
    pub history: Vec<Rational>,
}

/// Coordinate ascent on the interval values of an antisymmetric function.
///
/// Each move sets one interval below the center to `k / grid` and its
/// mirror image to `1 - k / grid`; the best value on the lattice is kept if
/// it strictly improves the certified lower bound. Intervals are scanned
/// from the left, and lattice values in increasing order.
pub fn local_refine(f0: &StepFunction, grid: u32, rounds: u32, options: &RatioOptions) -> Result<RefineOutcome> {
    if grid == 0 {
        return Err(Error::InvalidParameter("grid must be positive".into()));
    }
    if !f0.is_antisymmetric(0.0) {
        return Err(Error::NotAntisymmetric);
    }
    let certify = |f: &StepFunction| approximation_ratio_with(f, options, &mut |_| true);
    let breakpoints = f0.breakpoints().to_vec();
    let points = f0.point_values().to_vec();
    let m = breakpoints.len();
    let mut values = f0.interval_values().to_vec();
    let mut function = f0.clone();
    let mut certificate = certify(&function)?;
    let mut history = alloc::vec![certificate.lower.clone()];
    for _ in 0..rounds {
        for i in 0..values.len() {
            let mirror = m - i;
            if mirror <= i {
                break;
            }
            let mut best: Option<(StepFunction, RatioCertificate)> = None;
            for k in 0..=grid {
                let v = ratio(i64::from(k), i64::from(grid));
                if v == values[i] {
                    continue;
                }
                let mut trial = values.clone();
                trial[mirror] = Rational::one() - &v;
                trial[i] = v;
                let f = StepFunction::from_parts(breakpoints.clone(), trial, points.clone())?;
                let c = certify(&f)?;
                let current = best.as_ref().map_or(&certificate.lower, |(_, b)| &b.lower);
                if c.lower > *current {
                    best = Some((f, c));
                }
            }
            if let Some((f, c)) = best {
                values = f.interval_values().to_vec();
                function = f;
                certificate = c;
            }
        }
        history.push(certificate.lower.clone());
    }
    debug_assert!(history.windows(2).all(|w| w[0] <= w[1]));
    Ok(RefineOutcome {
        function,
        certificate,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::DEFAULT_FAMILY_LIMIT;
    use num_traits::Zero;

    #[test]
    fn smallest_families() {
        let opts = RatioOptions::default();
        let one = exhaustive_best(1, DEFAULT_FAMILY_LIMIT, &opts).unwrap();
        assert_eq!(one.ledger.len(), 2);
        assert!(one.best.certificate.lower >= Rational::zero());
        let two = exhaustive_best(2, DEFAULT_FAMILY_LIMIT, &opts).unwrap();
        assert_eq!(two.ledger.len(), 9);
        assert!(two.best.certificate.lower >= ratio(1, 4));
        assert!(exhaustive_best(6, DEFAULT_FAMILY_LIMIT, &opts).is_err());
    }

    #[test]
    fn reduction_ignores_arrival_order() {
        let opts = RatioOptions::default();
        let all: Vec<Candidate> = (0..9).map(|i| evaluate_candidate(2, i, &opts).unwrap()).collect();
        let forward = best_of(all.clone()).unwrap();
        let backward = best_of(all.into_iter().rev()).unwrap();
        assert_eq!(forward.index, backward.index);
    }

    #[test]
    fn refine_never_worsens() {
        let opts = RatioOptions::default();
        let r = local_refine(&StepFunction::uniform(), 4, 1, &opts).unwrap();
        assert!(r.certificate.lower >= ratio(1, 4));
        let f = StepFunction::f_delta(&ratio(1, 3)).unwrap();
        let r = local_refine(&f, 6, 1, &opts).unwrap();
        assert!(r.certificate.lower >= ratio(3, 8));
        assert!(r.history.windows(2).all(|w| w[0] <= w[1]));
        let skewed = StepFunction::new(alloc::vec![], alloc::vec![ratio(1, 3)]).unwrap();
        assert_eq!(local_refine(&skewed, 4, 1, &opts).unwrap_err(), Error::NotAntisymmetric);
    }
}
