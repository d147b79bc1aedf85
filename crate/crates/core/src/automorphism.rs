//! The induced connection on l, its curvature R, the holonomy algebra by
//! fixed-point iteration, and the infinitesimal automorphism space.

use crate::algebra::StructureConstants;
use crate::contact::GradedContactAlgebra;
use crate::error::CoreError;
use crate::extension::{CurvatureTensor, ExtensionMap};
use crate::linalg::{RatMat, RowSpace};
use crate::mat::Mat;
use crate::scalar::Scalar;
use num_traits::Zero;

/// Which g-basis vectors seed the holonomy iteration and drive the
/// commutator enlargement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedConvention {
    /// pairs and commutators over the full g-basis (k included)
    FullG,
    /// pairs and commutators over h/k ⊕ m only
    ModKOnly,
}

/// A linearly independent list of endomorphisms of l in coordinates.
pub struct EndoSubspace {
    pub ambient_dim: usize,
    pub basis: Vec<RatMat>,
}

impl EndoSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// ad of a coordinate vector, assembled from structure constants.
fn ad_coords(target: &GradedContactAlgebra, v: &[Scalar]) -> RatMat {
    let dim = target.dim();
    let mut ad = RatMat::zeros(dim, dim);
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for k in 0..dim {
            for (l, c) in &target.structure.table[i][k] {
                let cur = ad.at(*l, k).clone();
                *ad.at_mut(*l, k) = cur + vi * c;
            }
        }
    }
    ad
}

/// Matrix of u ↦ κ(u, w) on representative coordinates, (dim l) × rep_dim.
fn kappa_first_matrix(kappa: &CurvatureTensor, w: &[Scalar]) -> RatMat {
    let mut m = RatMat::zeros(kappa.dim_l, kappa.rep_dim);
    for i in 0..kappa.rep_dim {
        let mut e = vec![Scalar::zero(); kappa.rep_dim];
        e[i] = Scalar::from_integer(1.into());
        let col = kappa.bilinear(&e, w);
        for (r, x) in col.into_iter().enumerate() {
            if !x.is_zero() {
                *m.at_mut(r, i) = x;
            }
        }
    }
    m
}

/// Everything the holonomy iteration needs, precomputed once per extension.
pub struct ConnectionOps {
    pub dim_l: usize,
    pub rep_dim: usize,
    pub dim_g: usize,
    /// structure constants of the source algebra
    source_sc: StructureConstants,
    /// ρ(g_j)
    rho: Vec<RatMat>,
}

impl ConnectionOps {
    pub fn new(alpha: &ExtensionMap) -> Result<Self, CoreError> {
        let kappa = alpha.curvature()?;
        let target = &alpha.target;
        let dim_l = target.dim();
        let rep_dim = target.rep_dim();
        let dim_g = alpha.source.dim();
        let mut rho = Vec::with_capacity(dim_g);
        for j in 0..dim_g {
            let col = alpha.image_coords(j);
            let ad = ad_coords(target, &col);
            let kf = kappa_first_matrix(&kappa, &target.class_coords(&col));
            // ρ(Y) = ad(α(Y)) + κ(class ·, class α(Y))
            let mut r = ad;
            for c in 0..rep_dim {
                for row in 0..dim_l {
                    let x = kf.at(row, c);
                    if !x.is_zero() {
                        let cur = r.at(row, c).clone();
                        *r.at_mut(row, c) = cur + x.clone();
                    }
                }
            }
            rho.push(r);
        }
        let source_sc = StructureConstants::compute(&alpha.source.g)?;
        Ok(Self { dim_l, rep_dim, dim_g, source_sc, rho })
    }

    /// ρ(Y) for the j-th g-basis vector.
    pub fn rho(&self, j: usize) -> &RatMat {
        &self.rho[j]
    }

    /// R(g_a, g_b) = [ρ(g_a), ρ(g_b)] - ρ([g_a, g_b]), the curvature of the
    /// induced connection. On the image of α this vanishes identically by the
    /// Jacobi identity, which is what puts α(g) inside the automorphisms.
    pub fn curvature_endo(&self, _target: &GradedContactAlgebra, a: usize, b: usize) -> RatMat {
        let mut r = self.rho[a].mul(&self.rho[b]).sub(&self.rho[b].mul(&self.rho[a]));
        for (k, c) in &self.source_sc.table[a][b] {
            r = r.sub(&self.rho[*k].scale(c));
        }
        r
    }
}

/// ρ(Y): X ↦ [α(Y), X] + κ(class X, class α(Y)) as a coordinate matrix on l.
pub fn connection_action(alpha: &ExtensionMap, y: &Mat) -> Result<RatMat, CoreError> {
    let target = &alpha.target;
    let kappa = alpha.curvature()?;
    let ay = alpha.apply(y)?;
    let col = target.coords(&ay)?;
    let ad = ad_coords(target, &col);
    let kf = kappa_first_matrix(&kappa, &target.class_coords(&col));
    let mut r = ad;
    for c in 0..target.rep_dim() {
        for row in 0..target.dim() {
            let x = kf.at(row, c);
            if !x.is_zero() {
                let cur = r.at(row, c).clone();
                *r.at_mut(row, c) = cur + x.clone();
            }
        }
    }
    Ok(r)
}

/// R(X1, X2) = [ρ(X1), ρ(X2)] - ρ([X1, X2]) as a coordinate endomorphism of l.
pub fn connection_curvature(alpha: &ExtensionMap, x1: &Mat, x2: &Mat) -> Result<RatMat, CoreError> {
    let src = &alpha.source;
    let c1 = src.g.coords_of(x1)?;
    let c2 = src.g.coords_of(x2)?;
    let ops = ConnectionOps::new(alpha)?;
    let dim = alpha.target.dim();
    let mut acc = RatMat::zeros(dim, dim);
    for a in 0..src.dim() {
        if c1[a].is_zero() {
            continue;
        }
        for b in 0..src.dim() {
            if c2[b].is_zero() || a == b {
                continue;
            }
            let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
            let r = ops.curvature_endo(&alpha.target, lo, hi);
            let f = if sign == 1 { &c1[a] * &c2[b] } else { -(&c1[a] * &c2[b]) };
            acc = acc.add(&r.scale(&f));
        }
    }
    Ok(acc)
}

/// Holonomy algebra hol = R + [ρ, R] + [ρ, [ρ, R]] + …, iterated to a fixed
/// point. Seeds are R on basis pairs of the chosen convention.
pub fn holonomy_algebra(
    alpha: &ExtensionMap,
    convention: SeedConvention,
) -> Result<EndoSubspace, CoreError> {
    let ops = ConnectionOps::new(alpha)?;
    holonomy_from_ops(alpha, &ops, convention)
}

pub fn holonomy_from_ops(
    alpha: &ExtensionMap,
    ops: &ConnectionOps,
    convention: SeedConvention,
) -> Result<EndoSubspace, CoreError> {
    let dim_l = ops.dim_l;
    let indices: Vec<usize> = match convention {
        SeedConvention::FullG => (0..ops.dim_g).collect(),
        SeedConvention::ModKOnly => (0..1 + alpha.source.m_dim).collect(),
    };
    let mut span = RowSpace::new(dim_l * dim_l);
    let mut basis: Vec<RatMat> = Vec::new();
    let mut fresh: Vec<usize> = Vec::new();
    let flatten = |m: &RatMat| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(dim_l * dim_l);
        for r in 0..dim_l {
            v.extend_from_slice(m.row(r));
        }
        v
    };
    for (ai, &a) in indices.iter().enumerate() {
        for &b in indices.iter().skip(ai + 1) {
            let r = ops.curvature_endo(&alpha.target, a, b);
            if span.insert(&flatten(&r)) {
                fresh.push(basis.len());
                basis.push(r);
            }
        }
    }
    let cap = dim_l * dim_l;
    let mut rounds = 0usize;
    while !fresh.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(CoreError::HolonomyDiverged);
        }
        let mut next = Vec::new();
        for &idx in &fresh {
            for &y in &indices {
                let rho = &ops.rho[y];
                let h = &basis[idx];
                let comm = rho.mul(h).sub(&h.mul(rho));
                if span.insert(&flatten(&comm)) {
                    next.push(basis.len());
                    basis.push(comm);
                }
            }
        }
        fresh = next;
    }
    Ok(EndoSubspace { ambient_dim: dim_l, basis })
}

/// {X ∈ l : h(X) = 0 for every h in the holonomy basis}, as coordinate
/// vectors in the full graded basis of l.
pub fn infinitesimal_automorphisms(alpha: &ExtensionMap, hol: &EndoSubspace) -> Vec<Vec<Scalar>> {
    let dim_l = alpha.target.dim();
    if hol.basis.is_empty() {
        return (0..dim_l)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim_l];
                v[i] = Scalar::from_integer(1.into());
                v
            })
            .collect();
    }
    let mut stacked = hol.basis[0].clone();
    for h in &hol.basis[1..] {
        stacked = stacked.vstack(h);
    }
    stacked.nullspace()
}

/// Automorphism space dimension under the given convention.
pub fn automorphism_dim(alpha: &ExtensionMap, convention: SeedConvention) -> Result<usize, CoreError> {
    let hol = holonomy_algebra(alpha, convention)?;
    Ok(infinitesimal_automorphisms(alpha, &hol).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::build_sl_contact;
    use crate::mat::Mat;
    use crate::symmetric::build_so_symmetric;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn flat_so3_extension() -> ExtensionMap {
        let source = Arc::new(build_so_symmetric(1, 0, 1));
        let target = Arc::new(build_sl_contact(1));
        let e = |r, c| Mat::unit(3, r, c);
        let images = vec![e(2, 0) - e(0, 2), e(1, 0) - e(0, 1), e(2, 1) - e(1, 2)];
        let i_of_h = Mat::diag_int(&[-1, 1, -1]);
        ExtensionMap::from_images(source, target, &images, i_of_h, BTreeMap::new()).unwrap()
    }

    #[test]
    fn flat_extension_has_trivial_holonomy_and_full_automorphisms() {
        let alpha = flat_so3_extension();
        let hol = holonomy_algebra(&alpha, SeedConvention::FullG).unwrap();
        assert_eq!(hol.dim(), 0);
        let auts = infinitesimal_automorphisms(&alpha, &hol);
        assert_eq!(auts.len(), alpha.target.dim());
    }

    #[test]
    fn flat_connection_action_is_ad() {
        let alpha = flat_so3_extension();
        let y = alpha.source.g.basis_mat(0).clone();
        let rho = connection_action(&alpha, &y).unwrap();
        let ay = alpha.apply(&y).unwrap();
        for (k, b) in alpha.target.full.basis().iter().enumerate() {
            let br = ay.bracket(b).unwrap();
            let coords = alpha.target.coords(&br).unwrap();
            assert_eq!(rho.col_vec(k), coords);
        }
    }

    #[test]
    fn curvature_endo_zero_when_flat_or_repeated() {
        let alpha = flat_so3_extension();
        let x1 = alpha.source.g.basis_mat(1).clone();
        let x2 = alpha.source.g.basis_mat(2).clone();
        assert!(connection_curvature(&alpha, &x1, &x2).unwrap().is_zero());
        assert!(connection_curvature(&alpha, &x1, &x1).unwrap().is_zero());
    }
}
