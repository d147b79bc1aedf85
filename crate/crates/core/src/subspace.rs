//! Real-linear spans of ambient matrices with exact membership and
//! coordinate extraction.

use crate::error::CoreError;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::scalar::Scalar;
use num_traits::Zero;

/// An ordered, linearly independent list of matrices spanning a real subspace
/// of the ambient matrix space.
///
/// Coordinates are over the rationals: complex matrices are flattened to
/// (re, im) coordinate vectors, so a complex algebra is treated as the real
/// Lie algebra it is.
#[derive(Clone)]
pub struct Subspace {
    ambient_size: usize,
    basis: Vec<Mat>,
    /// reduced echelon of the flattened basis rows
    rref: RatMat,
    pivots: Vec<usize>,
    /// transform with `rref = transform · basis_matrix`
    transform: RatMat,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}x{})", self.dim(), self.ambient_size, self.ambient_size)
    }
}

impl Subspace {
    /// Builds from a spanning list, which must be linearly independent.
    pub fn new(basis: Vec<Mat>) -> Result<Self, CoreError> {
        assert!(!basis.is_empty(), "empty basis; use Subspace::empty");
        let ambient_size = basis[0].size;
        assert!(basis.iter().all(|m| m.size == ambient_size), "mixed ambient sizes");
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|m| m.flatten_real()).collect();
        let a = RatMat::from_rows(rows);
        let mut aug = a.hstack(&RatMat::identity(basis.len()));
        let cols = a.cols;
        let pivots_aug = aug.rref_in_place();
        if pivots_aug.iter().any(|&p| p >= cols) || pivots_aug.len() != basis.len() {
            return Err(CoreError::Singular("basis is linearly dependent".into()));
        }
        let rref = RatMat::from_fn(basis.len(), cols, |r, c| aug.at(r, c).clone());
        let transform = RatMat::from_fn(basis.len(), basis.len(), |r, c| aug.at(r, cols + c).clone());
        Ok(Self { ambient_size, basis, rref, pivots: pivots_aug, transform })
    }

    pub fn empty(ambient_size: usize) -> Self {
        Self {
            ambient_size,
            basis: Vec::new(),
            rref: RatMat::zeros(0, Mat::flat_len(ambient_size)),
            pivots: Vec::new(),
            transform: RatMat::zeros(0, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn basis_mat(&self, i: usize) -> &Mat {
        &self.basis[i]
    }

    /// Coordinates of `m` in this basis, or `NotInSpan`.
    pub fn coords_of(&self, m: &Mat) -> Result<Vec<Scalar>, CoreError> {
        if m.size != self.ambient_size {
            return Err(CoreError::SizeMismatch { left: m.size, right: self.ambient_size });
        }
        let mut v = m.flatten_real();
        let mut rcoef = vec![Scalar::zero(); self.dim()];
        for (i, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for c in p..v.len() {
                    let x = self.rref.at(i, c);
                    if !x.is_zero() {
                        v[c] = &v[c] - &(f.clone() * x);
                    }
                }
                rcoef[i] = f;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return Err(CoreError::NotInSpan);
        }
        // rref = T·B, so m = rcoefᵀ·rref = (rcoefᵀ T)·B
        let mut coords = vec![Scalar::zero(); self.dim()];
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let t = self.transform.at(i, j);
                if !rcoef[i].is_zero() && !t.is_zero() {
                    coords[j] = &coords[j] + &(rcoef[i].clone() * t);
                }
            }
        }
        Ok(coords)
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.coords_of(m).is_ok()
    }

    /// Reassembles a matrix from coordinates.
    pub fn from_coords(&self, coords: &[Scalar]) -> Mat {
        Mat::lincomb(coords, &self.basis)
    }

    /// Concatenation (bases are concatenated in order and must stay independent).
    pub fn concat(parts: &[&Subspace]) -> Result<Self, CoreError> {
        let mut basis = Vec::new();
        for p in parts {
            basis.extend(p.basis.iter().cloned());
        }
        Self::new(basis)
    }

    /// True if every basis vector of `other` lies in this span.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|m| self.contains(m))
    }

    /// Same span check, both ways.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn coords_round_trip() {
        let b1 = Mat::unit(2, 0, 1);
        let b2 = Mat::diag_int(&[1, -1]);
        let s = Subspace::new(vec![b1.clone(), b2.clone()]).unwrap();
        let m = Mat::lincomb(&[rat(2, 3), int(-5)], &[b1, b2]);
        assert_eq!(s.coords_of(&m).unwrap(), vec![rat(2, 3), int(-5)]);
        assert!(!s.contains(&Mat::unit(2, 1, 0)));
        assert!(s.contains(&Mat::zeros(2)));
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let b = Mat::unit(2, 0, 1);
        assert!(Subspace::new(vec![b.clone(), b.scale_re(&int(2))]).is_err());
    }
}
