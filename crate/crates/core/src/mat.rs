//! Square matrices over the complex rationals: the concrete carrier of every
//! algebra element in the catalog.

use crate::error::CoreError;
use crate::scalar::{cim, conj, cre, CScalar, Scalar};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Dense square matrix of [`CScalar`] entries.
#[derive(Clone, PartialEq)]
pub struct Mat {
    pub size: usize,
    data: Vec<CScalar>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.size, self.size)?;
        for r in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(size: usize) -> Self {
        Self { size, data: vec![CScalar::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            *m.at_mut(i, i) = CScalar::one();
        }
        m
    }

    /// Unit matrix `E_{r,c}`.
    pub fn unit(size: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(size);
        *m.at_mut(r, c) = CScalar::one();
        m
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> CScalar) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                data.push(f(r, c));
            }
        }
        Self { size, data }
    }

    /// Real matrix from integer rows; panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        Self::from_fn(n, |r, c| cre(Scalar::from_integer(rows[r][c].into())))
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &CScalar {
        &self.data[r * self.size + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut CScalar {
        &mut self.data[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CScalar) {
        *self.at_mut(r, c) = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.is_zero())
    }

    /// All imaginary parts zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im.is_zero())
    }

    pub fn trace(&self) -> CScalar {
        (0..self.size).fold(CScalar::zero(), |acc, i| acc + self.at(i, i).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |r, c| self.at(c, r).clone())
    }

    /// Conjugate transpose `M*`.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.size, |r, c| conj(self.at(c, r)))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.size, |r, c| conj(self.at(r, c)))
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        Self { size: self.size, data: self.data.iter().map(|z| z.clone() * s.clone()).collect() }
    }

    pub fn scale_re(&self, s: &Scalar) -> Self {
        self.scale(&cre(s.clone()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "size mismatch");
        let n = self.size;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
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

    /// Commutator `AB - BA`.
    pub fn bracket(&self, other: &Self) -> Result<Self, CoreError> {
        if self.size != other.size {
            return Err(CoreError::SizeMismatch { left: self.size, right: other.size });
        }
        Ok(self.matmul(other) - other.matmul(self))
    }

    /// Conjugation `g M g⁻¹` with a supplied inverse.
    pub fn ad_by(&self, g: &Mat, g_inv: &Mat) -> Self {
        g.matmul(self).matmul(g_inv)
    }

    /// Exact inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        use crate::linalg::RMat;
        // run the generic elimination over the complex field
        let n = self.size;
        let a = RMat::from_fn(n, n, |r, c| self.at(r, c).clone());
        let inv = a.inverse()?;
        Some(Self::from_fn(n, |r, c| inv.at(r, c).clone()))
    }

    /// Flattens to real coordinates: all real parts row-major, then all
    /// imaginary parts. Length `2 n²`.
    pub fn flatten_real(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(2 * self.data.len());
        v.extend(self.data.iter().map(|z| z.re.clone()));
        v.extend(self.data.iter().map(|z| z.im.clone()));
        v
    }

    pub fn from_flat_real(size: usize, flat: &[Scalar]) -> Self {
        assert_eq!(flat.len(), 2 * size * size);
        let n2 = size * size;
        let data = (0..n2).map(|i| CScalar::new(flat[i].clone(), flat[n2 + i].clone())).collect();
        Self { size, data }
    }

    /// Flattened length for a given ambient size.
    pub fn flat_len(size: usize) -> usize {
        2 * size * size
    }

    /// Linear combination of matrices with rational coefficients.
    pub fn lincomb(coeffs: &[Scalar], mats: &[Mat]) -> Mat {
        assert_eq!(coeffs.len(), mats.len());
        assert!(!mats.is_empty());
        let mut out = Mat::zeros(mats[0].size);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for i in 0..out.data.len() {
                out.data[i] = out.data[i].clone() + m.data[i].clone() * cre(c.clone());
            }
        }
        out
    }

    /// Block-diagonal matrix with purely imaginary unit `i` times identity in
    /// selected positions is common enough in the su catalog to warrant this
    /// helper: diagonal matrix from complex entries.
    pub fn diag(entries: &[CScalar]) -> Mat {
        let mut m = Mat::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    /// Real diagonal matrix from integers.
    pub fn diag_int(entries: &[i64]) -> Mat {
        Mat::diag(&entries.iter().map(|&e| cre(Scalar::from_integer(e.into()))).collect::<Vec<_>>())
    }

    /// `i` times this matrix.
    pub fn times_i(&self) -> Mat {
        self.scale(&cim(Scalar::one()))
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(self, rhs: Mat) -> Mat {
        assert_eq!(self.size, rhs.size);
        Mat {
            size: self.size,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Add<&'a Mat> for Mat {
    type Output = Mat;
    fn add(self, rhs: &'a Mat) -> Mat {
        assert_eq!(self.size, rhs.size);
        Mat {
            size: self.size,
            data: self.data.into_iter().zip(rhs.data.iter()).map(|(a, b)| a + b.clone()).collect(),
        }
    }
}

impl Sub for Mat {
    type Output = Mat;
    fn sub(self, rhs: Mat) -> Mat {
        assert_eq!(self.size, rhs.size);
        Mat {
            size: self.size,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { size: self.size, data: self.data.into_iter().map(|a| -a).collect() }
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn bracket_is_antisymmetric_and_kills_identity() {
        let x = Mat::from_int_rows(&[&[0, 1], &[2, 0]]);
        assert!(x.bracket(&x).unwrap().is_zero());
        let i = Mat::identity(2);
        assert!(i.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn bracket_e12_e21() {
        // [E12, E21] = diag(1, -1), by direct 2x2 multiplication
        let e12 = Mat::unit(2, 0, 1);
        let e21 = Mat::unit(2, 1, 0);
        let b = e12.bracket(&e21).unwrap();
        assert_eq!(b, Mat::diag_int(&[1, -1]));
    }

    #[test]
    fn bracket_size_mismatch_errors() {
        let a = Mat::identity(2);
        let b = Mat::identity(3);
        assert!(a.bracket(&b).is_err());
    }

    #[test]
    fn flatten_round_trip() {
        let m = Mat::from_fn(3, |r, c| {
            CScalar::new(rat(r as i64 + 1, c as i64 + 2), int(r as i64 - c as i64))
        });
        let flat = m.flatten_real();
        assert_eq!(Mat::from_flat_real(3, &flat), m);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_fn(2, |r, c| CScalar::new(rat(1, 1 + (r + c) as i64), rat(r as i64, 3)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(2));
    }
}
