//! Dense exact linear algebra over a generic field.
//!
//! `RMat<F>` is a rectangular coordinate matrix; everything downstream uses
//! the rational instantiation `RatMat`. Ranks and kernels are computed by
//! fraction-free (Bareiss) elimination on an integerized copy to keep
//! intermediate coefficients under control.

use crate::scalar::{content, Field, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Rectangular dense matrix over an exact field, row major.
#[derive(Clone, PartialEq)]
pub struct RMat<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

/// Coordinate matrix over the rationals.
pub type RatMat = RMat<Scalar>;

impl<F: Field> std::fmt::Debug for RMat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> RMat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        assert!(!rows.is_empty(), "from_rows needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        Self { rows: nrows, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<F> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn set_row(&mut self, r: usize, v: &[F]) {
        assert_eq!(v.len(), self.cols);
        self.data[r * self.cols..(r + 1) * self.cols].clone_from_slice(v);
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    *out.at_mut(r, c) = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![F::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = F::zero();
            for c in 0..self.cols {
                let a = self.at(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    acc = acc + a.clone() * v[c].clone();
                }
            }
            out[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self.at(r, c).clone() } else { other.at(r, c - self.cols).clone() }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = F::one() / self.at(r, c).clone();
            for j in c..self.cols {
                let x = self.at(r, j).clone();
                *self.at_mut(r, j) = x * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let factor = self.at(i, c).clone();
                    for j in c..self.cols {
                        let x = self.at(i, j).clone() - factor.clone() * self.at(r, j).clone();
                        *self.at_mut(i, j) = x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Solves `self * x = b`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let bm = Self::from_fn(self.rows, 1, |r, _| b[r].clone());
        let mut aug = self.hstack(&bm);
        let pivots = aug.rref_in_place();
        // inconsistent iff a pivot lands in the b column
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
    }
}

impl RatMat {
    /// Kernel basis over the rationals via fraction-free (Bareiss) forward
    /// elimination on an integerized copy, then exact back-substitution.
    /// Vectors are content-normalized so output is reproducible.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (echelon, pivots) = self.bareiss_echelon();
        let rank = pivots.len();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // reduced rational echelon with unit pivots
        let mut rr = RatMat::zeros(rank, n);
        for (i, row) in echelon.iter().enumerate() {
            let p = pivots[i];
            for c in 0..n {
                *rr.at_mut(i, c) = Scalar::new(row[c].clone(), row[p].clone());
            }
        }
        for i in (0..rank).rev() {
            for j in 0..i {
                let f = rr.at(j, pivots[i]).clone();
                if !f.is_zero() {
                    for c in 0..n {
                        let x = rr.at(j, c).clone() - &f * rr.at(i, c);
                        *rr.at_mut(j, c) = x;
                    }
                }
            }
        }
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(); n];
            v[fc] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rr.at(i, fc).clone();
            }
            if let Some(g) = content(&v) {
                for x in v.iter_mut() {
                    *x = &*x / &g;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Fraction-free forward elimination. Returns the nonzero echelon rows as
    /// integer vectors together with their pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    lcm = lcm.lcm(self.at(r, c).denom());
                }
                (0..self.cols)
                    .map(|c| {
                        let x = self.at(r, c);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            // pick the shortest nonzero pivot candidate to limit growth
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].magnitude().bits())
            else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..m.len() {
                if m[i][c].is_zero() && m[r][c].is_one() && prev.is_one() {
                    continue;
                }
                for j in 0..self.cols {
                    if j == c {
                        continue;
                    }
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = num / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        // strip content per row to keep the back-substitution small
        for row in m.iter_mut() {
            let mut g = BigInt::zero();
            for x in row.iter() {
                g = g.gcd(x);
            }
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        (m, pivots)
    }
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Used for span-growth bookkeeping in the holonomy iteration, where vectors
/// arrive one at a time and most insertions are rejections.
pub struct RowSpace<F: Field> {
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows in place; returns the pivot column
    /// of the residue if it is nonzero.
    fn reduce(&self, v: &mut [F]) -> Option<usize> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for c in p..self.cols {
                    if !row[c].is_zero() {
                        v[c] = v[c].clone() - f.clone() * row[c].clone();
                    }
                }
            }
        }
        v.iter().position(|x| !x.is_zero())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Inserts `v` if it enlarges the span; returns true when it did.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        let Some(p) = self.reduce(&mut w) else { return false };
        let inv = F::one() / w[p].clone();
        for c in p..self.cols {
            if !w[c].is_zero() {
                w[c] = w[c].clone() * inv.clone();
            }
        }
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(rp != p);
            if !row[p].is_zero() {
                let f = row[p].clone();
                for c in p..self.cols {
                    if !w[c].is_zero() {
                        row[c] = row[c].clone() - f.clone() * w[c].clone();
                    }
                }
            }
        }
        let idx = self.pivots.binary_search(&p).unwrap_err();
        self.pivots.insert(idx, p);
        self.rows.insert(idx, w);
        true
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn m(rows: Vec<Vec<i64>>) -> RatMat {
        RatMat::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(RatMat::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_zero_map_is_full() {
        let z = RatMat::zeros(3, 5);
        let ns = z.nullspace();
        assert_eq!(ns.len(), 5);
    }

    #[test]
    fn nullspace_two_by_three() {
        // kernel of [[1,0,1],[0,1,1]] is spanned by (1,1,-1) up to scale
        let a = m(vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let s = &v[0];
        assert!(!s.is_zero());
        assert_eq!(v[1], s.clone());
        assert_eq!(v[2], -s.clone());
    }

    #[test]
    fn rank_plus_nullity() {
        let a = m(vec![vec![1, 2, 3, 1], vec![2, 4, 6, 2], vec![0, 1, 1, 0]]);
        assert_eq!(a.rank() + a.nullspace().len(), a.cols);
        for v in a.nullspace() {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let x = a.solve(&[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMat::identity(2));
        let sing = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[int(1), int(3)]).is_none());
    }

    #[test]
    fn row_space_insert_and_reject() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&[int(1), int(2), int(0)]));
        assert!(rs.insert(&[int(0), int(1), int(1)]));
        assert!(!rs.insert(&[int(2), int(5), int(1)]));
        assert_eq!(rs.dim(), 2);
        assert!(rs.contains(&[rat(1, 2), int(1), int(0)]));
        assert!(!rs.contains(&[int(0), int(0), int(1)]));
    }
}
