//! Exact integer matrices and Smith normal form.
//!
//! Entries are arbitrary precision: even small relation lattices can blow up
//! intermediate entries during elimination. Pivot selection is the smallest
//! nonzero absolute value with ties broken in row-major position, which makes
//! the reduction deterministic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AbelianError;
use crate::FiniteAbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Exact determinant of a square matrix (Bareiss fraction-free
    /// elimination). Used to verify that transforms are unimodular.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&a, k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !at(&a, i, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (at(&a, i, j) * at(&a, k, k) - at(&a, i, k) * at(&a, k, j)) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        sign * at(&a, n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] -= q * row[k]
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(i, j) - q * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// col[j] -= q * col[k]
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, j) - q * self.get(i, k);
            self.set(i, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// Result of a Smith normal form computation: `left * m * right` equals the
/// diagonal matrix with `diagonal` on the main diagonal, and both transforms
/// are unimodular.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let (diagonal, transforms) = snf_impl(m, true);
    let (left, right) = transforms.expect("transforms requested");
    SmithNormalForm {
        diagonal,
        left,
        right,
    }
}

/// Diagonal-only Smith form; skips transform bookkeeping. Used on the large
/// relation systems where the transforms are never needed.
pub(crate) fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    snf_impl(m, false).0
}

fn snf_impl(
    m: &IntegerMatrix,
    with_transforms: bool,
) -> (Vec<BigInt>, Option<(IntegerMatrix, IntegerMatrix)>) {
    let mut b = m.clone();
    let (rows, cols) = (b.rows, b.cols);
    let mut left = with_transforms.then(|| IntegerMatrix::identity(rows));
    let mut right = with_transforms.then(|| IntegerMatrix::identity(cols));
    let bound = rows.min(cols);

    for k in 0..bound {
        'pivot: loop {
            // Smallest nonzero |entry| in the trailing block, ties row-major.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let v = b.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if b.get(bi, bj).abs() <= v.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing block is zero
            };
            b.swap_rows(k, pi);
            b.swap_cols(k, pj);
            if let Some(l) = left.as_mut() {
                l.swap_rows(k, pi);
            }
            if let Some(r) = right.as_mut() {
                r.swap_cols(k, pj);
            }

            // Clear column k below the pivot.
            for i in k + 1..rows {
                if b.get(i, k).is_zero() {
                    continue;
                }
                let q = b.get(i, k) / b.get(k, k);
                b.row_sub(i, k, &q);
                if let Some(l) = left.as_mut() {
                    l.row_sub(i, k, &q);
                }
                if !b.get(i, k).is_zero() {
                    continue 'pivot; // remainder is a smaller pivot candidate
                }
            }
            // Clear row k right of the pivot.
            for j in k + 1..cols {
                if b.get(k, j).is_zero() {
                    continue;
                }
                let q = b.get(k, j) / b.get(k, k);
                b.col_sub(j, k, &q);
                if let Some(r) = right.as_mut() {
                    r.col_sub(j, k, &q);
                }
                if !b.get(k, j).is_zero() {
                    continue 'pivot;
                }
            }
            // Divisibility fix-up: the pivot must divide the trailing block.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(b.get(i, j) % b.get(k, k)).is_zero());
            if let Some((i, _)) = offender {
                let one = BigInt::from(-1);
                b.row_sub(k, i, &one); // row k += row i
                if let Some(l) = left.as_mut() {
                    l.row_sub(k, i, &one);
                }
                continue 'pivot;
            }
            break 'pivot;
        }
        if b.get(k, k).is_negative() {
            b.negate_row(k);
            if let Some(l) = left.as_mut() {
                l.negate_row(k);
            }
        }
    }

    let diagonal = (0..bound).map(|i| b.get(i, i).clone()).collect();
    (diagonal, left.zip(right))
}

/// Invariant factors of the quotient of a free abelian group on `generators`
/// generators by the row space of `relations`. Errors when the quotient is
/// infinite; factors of 1 are dropped.
pub fn abelian_from_relations(
    generators: usize,
    relations: &IntegerMatrix,
) -> Result<FiniteAbelianGroup, AbelianError> {
    assert_eq!(
        relations.cols(),
        generators,
        "relation matrix must have one column per generator"
    );
    let diag = smith_diagonal(relations);
    let mut moduli = Vec::new();
    for i in 0..generators {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            return Err(AbelianError::InfiniteQuotient);
        }
        let d: u64 = d.try_into().expect("invariant factor fits u64");
        if d > 1 {
            moduli.push(d);
        }
    }
    Ok(FiniteAbelianGroup::from_moduli(&moduli))
}
