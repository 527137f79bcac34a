//! Exact sparse linear solves over the rationals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Square sparse system stored by rows.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl SparseSystem {
    pub fn new(size: usize) -> Self {
        Self {
            rows: vec![BTreeMap::new(); size],
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Adds `value` to entry `(row, col)`.
    pub fn add(&mut self, row: usize, col: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let entry = self.rows[row].entry(col).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.rows[row].remove(&col);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.size());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                t.rows[*c].insert(r, v.clone());
            }
        }
        t
    }

    /// Solves `M x = rhs` by Gaussian elimination, choosing the sparsest
    /// remaining row and, within it, the sparsest column.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.size();
        if rhs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: rhs.len(),
            });
        }
        let mut rows = self.rows.clone();
        let mut b = rhs.to_vec();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for c in row.keys() {
                if *c >= n {
                    return Err(Error::SingularBasis);
                }
                col_rows[*c].insert(r);
            }
        }
        let mut active: BTreeSet<usize> = (0..n).collect();
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(n);
        while !active.is_empty() {
            let pr = *active
                .iter()
                .min_by_key(|&&r| (rows[r].len(), r))
                .expect("nonempty");
            if rows[pr].is_empty() {
                return Err(Error::SingularBasis);
            }
            let pc = *rows[pr]
                .keys()
                .min_by_key(|&&c| (col_rows[c].len(), c))
                .expect("nonempty");
            active.remove(&pr);
            let pivot_row = core::mem::take(&mut rows[pr]);
            for c in pivot_row.keys() {
                col_rows[*c].remove(&pr);
            }
            let pivot = pivot_row[&pc].clone();
            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            for r in targets {
                let factor = rows[r][&pc].clone() / &pivot;
                for (c, v) in &pivot_row {
                    let entry = rows[r].entry(*c).or_insert_with(Rational::zero);
                    let was_zero = entry.is_zero();
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[r].remove(c);
                        col_rows[*c].remove(&r);
                    } else if was_zero {
                        col_rows[*c].insert(r);
                    }
                }
                let delta = &factor * &b[pr];
                b[r] -= delta;
            }
            rows[pr] = pivot_row;
            order.push((pr, pc));
        }
        let mut x = vec![Rational::zero(); n];
        for &(r, c) in order.iter().rev() {
            let mut acc = b[r].clone();
            for (k, v) in &rows[r] {
                if *k != c {
                    acc -= v * &x[*k];
                }
            }
            x[c] = acc / &rows[r][&c];
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn solves_small_system() {
        // 2x + y = 3, x + 3y = 5
        let mut m = SparseSystem::new(2);
        m.add(0, 0, &int(2));
        m.add(0, 1, &int(1));
        m.add(1, 0, &int(1));
        m.add(1, 1, &int(3));
        let x = m.solve(&[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
        let y = m.transpose().solve(&[int(1), int(0)]).unwrap();
        assert_eq!(y, vec![ratio(3, 5), ratio(-1, 5)]);
    }

    #[test]
    fn detects_singular_system() {
        let mut m = SparseSystem::new(2);
        m.add(0, 0, &int(1));
        m.add(0, 1, &int(2));
        m.add(1, 0, &int(2));
        m.add(1, 1, &int(4));
        assert_eq!(m.solve(&[int(1), int(2)]), Err(Error::SingularBasis));
    }

    #[test]
    fn cancelling_entries_are_removed() {
        let mut m = SparseSystem::new(1);
        m.add(0, 0, &int(1));
        m.add(0, 0, &int(-1));
        assert!(m.solve(&[int(1)]).is_err());
    }
}
