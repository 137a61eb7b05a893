//! Dense exact linear algebra over the coefficient field.
//!
//! Sizes here are tiny (algebra dimensions, truncated monomial bases), so a
//! straightforward fraction-exact Gauss–Jordan is the right tool; everything
//! downstream depends on ranks and kernels being exact, not fast.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Row-major matrix over a fixed field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    a: Vec<FieldElement>,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            a: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Mat {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = Mat::zero(field, nrows, ncols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_cols(field: Field, cols: Vec<Vec<FieldElement>>) -> Mat {
        let ncols = cols.len();
        let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut m = Mat::zero(field, nrows, ncols);
        for (j, c) in cols.into_iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged columns");
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, j, v);
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Mat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&lik.mul(other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = self.field.zero();
                for (j, vj) in v.iter().enumerate() {
                    s = s.add(&self.at(i, j).mul(vj));
                }
                s
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// In-place reduced row echelon form; returns pivot column indices in
    /// ascending order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.a.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = self.at(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in 0..self.cols {
                    let v = self.at(i, j).sub(&f.mul(self.at(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Canonical kernel basis: one vector per free column (ascending), with a
    /// `1` in the free position and pivot entries read off the reduced form.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: std::collections::BTreeMap<usize, usize> = pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, r))
            .collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_of_col.contains_key(&f) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (&c, &r) in &pivot_of_col {
                v[c] = m.at(r, f).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b` with free variables set to zero, or
    /// `None` when inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let mut aug = Mat::zero(self.field, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Errors instead of panicking; used where a missing solution is a caller
    /// mistake rather than an internal bug.
    pub fn solve_or(&self, b: &[FieldElement], what: &str) -> Result<Vec<FieldElement>> {
        self.solve(b)
            .ok_or_else(|| Error::InvalidArgument(format!("no solution: {what}")))
    }
}

impl Mat {
    /// Rows of exact scalar strings, for serialization.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_string()).collect())
            .collect()
    }
}

/// Standard basis vector `e_i` of `field^n`.
pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Dimension of the span of `vectors` inside `field^width`.
pub fn span_dim(field: Field, vectors: &[Vec<FieldElement>], width: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<FieldElement>> = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.len(), width, "vector width mismatch");
            v.clone()
        })
        .collect();
    Mat::from_rows(field, rows).rank()
}

/// Canonical (RREF-row) basis of the span of `vectors` in `field^width`.
pub fn span_basis(
    field: Field,
    vectors: &[Vec<FieldElement>],
    width: usize,
) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(
        field,
        vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), width, "vector width mismatch");
                v.clone()
            })
            .collect(),
    );
    let pivots = m.rref();
    (0..pivots.len()).map(|r| m.row(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        Field::Q.from_i64(n)
    }

    #[test]
    fn rref_rank_kernel() {
        // rows are x+y+z and 2x+2y+2z: rank 1, kernel dim 2
        let m = Mat::from_rows(Field::Q, vec![vec![q(1), q(1), q(1)], vec![q(2), q(2), q(2)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            let prod = m.mul_vec(v);
            assert!(prod.iter().all(|e| e.is_zero()));
        }
        // canonical: free columns 1 and 2 carry the 1s in order
        assert!(k[0][1].is_one());
        assert!(k[1][2].is_one());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Mat::from_rows(Field::Q, vec![vec![q(1), q(2)], vec![q(3), q(4)]]);
        let x = m.solve(&[q(5), q(11)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(5), q(11)]);
        let sing = Mat::from_rows(Field::Q, vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert!(sing.solve(&[q(0), q(1)]).is_none());
        assert!(sing.solve(&[q(3), q(3)]).is_some());
    }

    #[test]
    fn matmul_identity() {
        let m = Mat::from_rows(Field::Q, vec![vec![q(1), q(2)], vec![q(3), q(4)]]);
        let id = Mat::identity(Field::Q, 2);
        assert_eq!(m.matmul(&id), m);
        assert_eq!(id.matmul(&m), m);
        assert!(id.is_identity());
        assert!(!m.is_identity());
    }

    #[test]
    fn span_helpers() {
        let vs = vec![vec![q(1), q(0)], vec![q(2), q(0)], vec![q(0), q(3)]];
        assert_eq!(span_dim(Field::Q, &vs, 2), 2);
        let b = span_basis(Field::Q, &vs, 2);
        assert_eq!(b, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert_eq!(span_dim(Field::Q, &[], 5), 0);
    }

    #[test]
    fn prime_field_elimination() {
        let f5 = Field::prime(5).unwrap();
        let two = f5.from_i64(2);
        let three = f5.from_i64(3);
        // [2 3; 3 2] over F_5 has determinant 4-9 = -5 = 0
        let m = Mat::from_rows(
            f5,
            vec![vec![two.clone(), three.clone()], vec![three, two]],
        );
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 1);
    }
}
