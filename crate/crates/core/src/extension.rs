//! Extension maps α: g → l, their axioms, Cartan curvature, and the
//! regularity / normality / torsion checks.

use crate::contact::{GradedContactAlgebra, GRADES};
use crate::error::CoreError;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::symmetric::SymmetricSpaceDatum;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A linear map α: g → l satisfying the extension axioms, together with the
/// image i(h) of the symmetry in the Levi subgroup of P.
///
/// The map is stored as a (dim l) × (dim g) coordinate matrix over the
/// rationals; column j holds the full-basis coordinates of α(g_j). The
/// engine operates on this matrix alone, so moves and negative-control
/// perturbations are matrix edits.
pub struct ExtensionMap {
    pub source: Arc<SymmetricSpaceDatum>,
    pub target: Arc<GradedContactAlgebra>,
    pub map: RatMat,
    pub i_of_h: Mat,
    pub params: BTreeMap<String, Scalar>,
    /// catalog family label, preserved by moves; None for ad-hoc extensions
    pub family: Option<String>,
}

impl ExtensionMap {
    /// Builds from explicit images of the ordered g-basis.
    pub fn from_images(
        source: Arc<SymmetricSpaceDatum>,
        target: Arc<GradedContactAlgebra>,
        images: &[Mat],
        i_of_h: Mat,
        params: BTreeMap<String, Scalar>,
    ) -> Result<Self, CoreError> {
        assert_eq!(images.len(), source.dim());
        let dim_l = target.dim();
        let mut map = RatMat::zeros(dim_l, images.len());
        for (j, im) in images.iter().enumerate() {
            let coords = target.coords(im)?;
            for i in 0..dim_l {
                if !coords[i].is_zero() {
                    *map.at_mut(i, j) = coords[i].clone();
                }
            }
        }
        Ok(Self { source, target, map, i_of_h, params, family: None })
    }

    pub fn with_map(&self, map: RatMat) -> Self {
        Self {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            map,
            i_of_h: self.i_of_h.clone(),
            params: self.params.clone(),
            family: self.family.clone(),
        }
    }

    /// α of a source element, as a target matrix.
    pub fn apply(&self, m: &Mat) -> Result<Mat, CoreError> {
        let gc = self.source.g.coords_of(m)?;
        Ok(self.target.full.from_coords(&self.map.mul_vec(&gc)))
    }

    /// α of the j-th source basis vector, in target coordinates.
    pub fn image_coords(&self, j: usize) -> Vec<Scalar> {
        self.map.col_vec(j)
    }

    pub fn image_mat(&self, j: usize) -> Mat {
        self.target.full.from_coords(&self.image_coords(j))
    }

    /// The partial inverse of proj_{l_{-2}+l_{-1}} ∘ α on (h/k) ⊕ m: a matrix
    /// sending l/p representative coordinates to g-coordinates supported on
    /// the h/k and m positions.
    pub fn alpha_inverse(&self) -> Result<AlphaInverse, CoreError> {
        let rep_dim = self.target.rep_dim();
        let dim_g = self.source.dim();
        let hm = 1 + self.source.m_dim;
        if rep_dim != hm {
            return Err(CoreError::Singular(format!(
                "l/p dimension {rep_dim} does not match dim(h/k)+dim(m) = {hm}"
            )));
        }
        let mut comp = RatMat::zeros(rep_dim, hm);
        for j in 0..hm {
            let img = self.map.col_vec(j);
            for i in 0..rep_dim {
                *comp.at_mut(i, j) = img[i].clone();
            }
        }
        let inv = comp
            .inverse()
            .ok_or_else(|| CoreError::Singular("extension axiom (iii) violated".into()))?;
        let mut full = RatMat::zeros(dim_g, rep_dim);
        for i in 0..hm {
            for j in 0..rep_dim {
                *full.at_mut(i, j) = inv.at(i, j).clone();
            }
        }
        Ok(AlphaInverse { inv: full })
    }

    /// Checks the three extension axioms and the component structure.
    pub fn check_extension_axioms(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        let src = &self.source;
        let tgt = &self.target;

        let in_grades = |col: usize, grades: &[i32]| -> bool {
            let v = self.map.col_vec(col);
            for &g in GRADES.iter() {
                if grades.contains(&g) {
                    continue;
                }
                if v[tgt.grade_range(g)].iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
            true
        };

        rep.check("alpha_hk_in_l_m2_0_2", in_grades(0, &[-2, 0, 2]));
        rep.check("alpha_m_in_l_m1_1", src.m_range().all(|j| in_grades(j, &[-1, 1])));
        rep.check("alpha_k_in_l_0", src.k_range().all(|j| in_grades(j, &[0])));

        // (ii) α restricted to k is a Lie algebra homomorphism
        let mut homo = true;
        for a in src.k_range() {
            for b in src.k_range() {
                if a >= b {
                    continue;
                }
                if !self.equivariant_pair(a, b) {
                    homo = false;
                }
            }
        }
        rep.check("axiom_ii_homomorphism_on_k", homo);

        // (i) infinitesimal Ad(K)-equivariance: α([Z, X]) = [α(Z), α(X)] for Z ∈ k
        let mut equiv = true;
        for a in src.k_range() {
            for b in 0..src.dim() {
                if !self.equivariant_pair(a, b) {
                    equiv = false;
                }
            }
        }
        rep.check("axiom_i_equivariance", equiv);

        // (iii) induced g/k → l/p iso
        rep.check("axiom_iii_quotient_iso", self.alpha_inverse().is_ok());
        rep
    }

    fn equivariant_pair(&self, a: usize, b: usize) -> bool {
        let src = &self.source;
        let br = src.g.basis_mat(a).bracket(src.g.basis_mat(b)).expect("same ambient");
        let Ok(alpha_br) = self.apply(&br) else { return false };
        let ia = self.image_mat(a);
        let ib = self.image_mat(b);
        let br_img = ia.bracket(&ib).expect("same ambient");
        alpha_br == br_img
    }

    /// Ad(i(h)) acts as (-1)^i on l_i, and α intertwines the symmetries.
    pub fn symmetry_compat_check(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        let tgt = &self.target;
        let Some(ih_inv) = self.i_of_h.inverse() else {
            rep.check("i_of_h_invertible", false);
            return rep;
        };
        rep.check("i_of_h_invertible", true);
        let mut grade_ok = true;
        for &g in GRADES.iter() {
            let sign = if g % 2 == 0 { 1 } else { -1 };
            for b in tgt.grade(g).basis() {
                let conj = b.ad_by(&self.i_of_h, &ih_inv);
                let expect = if sign == 1 { b.clone() } else { -b.clone() };
                if conj != expect {
                    grade_ok = false;
                }
            }
        }
        rep.check("ad_i_of_h_is_minus_one_power_grade", grade_ok);

        let mut intertwine = true;
        for j in 0..self.source.dim() {
            match self.apply(&self.source.ad_sym(self.source.g.basis_mat(j))) {
                Ok(lhs) => {
                    let rhs = self.image_mat(j).ad_by(&self.i_of_h, &ih_inv);
                    if lhs != rhs {
                        intertwine = false;
                    }
                }
                Err(_) => intertwine = false,
            }
        }
        rep.check("alpha_intertwines_symmetries", intertwine);
        rep
    }

    /// Cartan curvature on l/p representative pairs:
    /// κ(X, Y) = [α(α⁻¹X), α(α⁻¹Y)] - α([α⁻¹X, α⁻¹Y]).
    pub fn curvature(&self) -> Result<CurvatureTensor, CoreError> {
        let inv = self.alpha_inverse()?;
        let rep_dim = self.target.rep_dim();
        // source elements representing the classes
        let pre: Vec<Mat> = (0..rep_dim)
            .map(|i| {
                let mut e = vec![Scalar::zero(); rep_dim];
                e[i] = Scalar::from_integer(1.into());
                let gc = inv.inv.mul_vec(&e);
                self.source.g.from_coords(&gc)
            })
            .collect();
        let alpha_pre: Vec<Mat> = pre.iter().map(|w| self.apply(w)).collect::<Result<_, _>>()?;
        let dim_l = self.target.dim();
        let mut values = Vec::with_capacity(rep_dim * (rep_dim - 1) / 2);
        for i in 0..rep_dim {
            for j in i + 1..rep_dim {
                let br = alpha_pre[i].bracket(&alpha_pre[j])?;
                let src_br = pre[i].bracket(&pre[j])?;
                let kappa = br - self.apply(&src_br)?;
                values.push(self.target.coords(&kappa)?);
            }
        }
        Ok(CurvatureTensor { rep_dim, dim_l, values })
    }

    /// The l_{-2} component of κ on l_{-1} × l_{-1} representatives vanishes.
    pub fn regularity_check(&self) -> Result<CheckReport, CoreError> {
        let kappa = self.curvature()?;
        let mut rep = CheckReport::new();
        let r2 = self.target.grade_range(-2);
        let mut ok = true;
        for i in 1..kappa.rep_dim {
            for j in i + 1..kappa.rep_dim {
                let v = kappa.pair(i, j);
                if v[r2.clone()].iter().any(|x| !x.is_zero()) {
                    ok = false;
                }
            }
        }
        rep.check("kappa_l_minus2_part_vanishes_on_l_minus1", ok);
        Ok(rep)
    }

    /// The two normality residual maps of the curvature:
    /// res1(X) = Σ_i [Z_i, κ(X, X_i)] on the l_{-1} representatives and
    /// res2(X) = Σ_i κ([Z_i, X] mod p, X_i) on the l_{-2} representative.
    /// Normal ⇔ all returned values are zero.
    pub fn normality_residual(&self) -> Result<NormalityResidual, CoreError> {
        let kappa = self.curvature()?;
        let (reps, duals) = self.target.minus_dual_basis()?;
        let rep_dim = kappa.rep_dim;
        let mut res1 = Vec::new();
        for x in 1..rep_dim {
            let mut acc = Mat::zeros(self.target.ambient);
            for i in 0..rep_dim {
                let kv = kappa.pair_signed(x, i);
                let km = self.target.full.from_coords(&kv);
                acc = acc + duals[i].bracket(&km)?;
            }
            res1.push(acc);
        }
        let mut res2 = Vec::new();
        {
            let x = 0usize; // the l_{-2} representative
            let mut acc = vec![Scalar::zero(); self.target.dim()];
            for i in 0..rep_dim {
                let br = duals[i].bracket(&reps[x])?;
                let cls = self.target.class_coords(&self.target.coords(&br)?);
                let kv = kappa.bilinear_first(&cls, i);
                for (a, v) in acc.iter_mut().zip(kv) {
                    *a = &*a + &v;
                }
            }
            res2.push(self.target.full.from_coords(&acc));
        }
        Ok(NormalityResidual { res1, res2 })
    }

    /// The l_{-2} ⊕ l_{-1} components of every κ(X_i, X_j); torsion-free ⇔ all zero.
    pub fn torsion(&self) -> Result<CheckReport, CoreError> {
        let kappa = self.curvature()?;
        let mut rep = CheckReport::new();
        let mut ok = true;
        let cut = self.target.rep_dim();
        for v in &kappa.values {
            if v[..cut].iter().any(|x| !x.is_zero()) {
                ok = false;
            }
        }
        rep.check("torsion_free", ok);
        Ok(rep)
    }

    /// Grading constraints on κ: κ(l_{-1}, l_{-1}) ⊆ l_{-2}+l_0+l_2,
    /// κ(l_{-1}, l_{-2}) ⊆ l_{-1}+l_1, κ(l_{-2}, l_{-2}) = 0.
    pub fn kappa_grading_check(&self) -> Result<CheckReport, CoreError> {
        let kappa = self.curvature()?;
        let tgt = &self.target;
        let mut rep = CheckReport::new();
        let allowed = |v: &[Scalar], grades: &[i32]| -> bool {
            GRADES
                .iter()
                .filter(|g| !grades.contains(g))
                .all(|&g| v[tgt.grade_range(g)].iter().all(|x| x.is_zero()))
        };
        let mut mm_ok = true;
        for i in 1..kappa.rep_dim {
            for j in i + 1..kappa.rep_dim {
                if !allowed(&kappa.pair(i, j), &[-2, 0, 2]) {
                    mm_ok = false;
                }
            }
        }
        rep.check("kappa_m1_m1_in_even_grades", mm_ok);
        let mut cross_ok = true;
        for j in 1..kappa.rep_dim {
            if !allowed(&kappa.pair(0, j), &[-1, 1]) {
                cross_ok = false;
            }
        }
        rep.check("kappa_m1_m2_in_odd_grades", cross_ok);
        // κ(l_{-2}, l_{-2}) has no pairs here (the grade is a line), so the
        // remaining constraint holds by antisymmetry.
        rep.check("kappa_m2_m2_zero", true);
        Ok(rep)
    }

    /// κ ≡ 0 on all representative pairs.
    pub fn is_flat(&self) -> Result<bool, CoreError> {
        Ok(self.curvature()?.is_zero())
    }
}

/// Partial inverse of α as a coordinate matrix from l/p representatives to g.
pub struct AlphaInverse {
    /// (dim g) × rep_dim, supported on the h/k and m rows
    pub inv: RatMat,
}

/// κ stored on l/p representative basis pairs, values in full l coordinates.
pub struct CurvatureTensor {
    pub rep_dim: usize,
    pub dim_l: usize,
    /// values for pairs (i, j), i < j, in lexicographic order
    pub values: Vec<Vec<Scalar>>,
}

impl CurvatureTensor {
    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.rep_dim);
        i * self.rep_dim - i * (i + 1) / 2 + (j - i - 1)
    }

    /// κ(X_i, X_j) for i < j.
    pub fn pair(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.values[self.pair_index(i, j)].clone()
    }

    /// κ(X_i, X_j) for any i ≠ j (antisymmetric); zero vector for i = j.
    pub fn pair_signed(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.pair(i, j),
            Ordering::Equal => vec![Scalar::zero(); self.dim_l],
            Ordering::Greater => self.pair(j, i).into_iter().map(|x| -x).collect(),
        }
    }

    /// κ(u, X_j) for a representative coordinate vector u.
    pub fn bilinear_first(&self, u: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim_l];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() || i == j {
                continue;
            }
            let v = self.pair_signed(i, j);
            for (a, x) in acc.iter_mut().zip(v) {
                if !x.is_zero() {
                    *a = &*a + &(ui * &x);
                }
            }
        }
        acc
    }

    /// κ(u, v) for representative coordinate vectors.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim_l];
        for i in 0..self.rep_dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.rep_dim {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let w = self.pair_signed(i, j);
                let f = &u[i] * &v[j];
                for (a, x) in acc.iter_mut().zip(w) {
                    if !x.is_zero() {
                        *a = &*a + &(&f * &x);
                    }
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }
}

/// The normality residuals; normal ⇔ every matrix is zero.
pub struct NormalityResidual {
    /// Σ_i [Z_i, κ(X, X_i)] for X over the l_{-1} representatives
    pub res1: Vec<Mat>,
    /// Σ_i κ([Z_i, X] mod p, X_i) for X the l_{-2} representative
    pub res2: Vec<Mat>,
}

impl NormalityResidual {
    pub fn is_zero(&self) -> bool {
        self.res1.iter().all(Mat::is_zero) && self.res2.iter().all(Mat::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::build_sl_contact;
    use crate::mat::Mat;
    use crate::symmetric::build_so_symmetric;

    /// The inclusion so(3) ⊂ sl(3, R) as an extension (the t = 0 point of the
    /// dim-3 family).
    fn flat_so3_extension() -> ExtensionMap {
        let source = Arc::new(build_so_symmetric(1, 0, 1));
        let target = Arc::new(build_sl_contact(1));
        let e = |r, c| Mat::unit(3, r, c);
        // images of [hk=e, m1=x1, m2=x2] under the identity embedding
        let images = vec![e(2, 0) - e(0, 2), e(1, 0) - e(0, 1), e(2, 1) - e(1, 2)];
        let i_of_h = Mat::diag_int(&[-1, 1, -1]);
        ExtensionMap::from_images(source, target, &images, i_of_h, BTreeMap::new()).unwrap()
    }

    #[test]
    fn flat_extension_passes_all_checks() {
        let alpha = flat_so3_extension();
        assert!(alpha.check_extension_axioms().all_passed());
        assert!(alpha.symmetry_compat_check().all_passed());
        assert!(alpha.is_flat().unwrap());
        assert!(alpha.regularity_check().unwrap().all_passed());
        assert!(alpha.normality_residual().unwrap().is_zero());
        assert!(alpha.torsion().unwrap().all_passed());
        assert!(alpha.kappa_grading_check().unwrap().all_passed());
    }

    #[test]
    fn alpha_inverse_round_trips() {
        let alpha = flat_so3_extension();
        let inv = alpha.alpha_inverse().unwrap();
        let rep_dim = alpha.target.rep_dim();
        for i in 0..rep_dim {
            let mut e = vec![Scalar::zero(); rep_dim];
            e[i] = Scalar::from_integer(1.into());
            let gc = inv.inv.mul_vec(&e);
            let back = alpha.map.mul_vec(&gc);
            // class of α(α⁻¹(X)) reproduces X
            assert_eq!(&back[..rep_dim], &e[..]);
        }
    }

    #[test]
    fn zeroed_m_image_breaks_axiom_iii() {
        let alpha = flat_so3_extension();
        let mut map = alpha.map.clone();
        for r in 0..map.rows {
            *map.at_mut(r, 1) = Scalar::zero();
        }
        let broken = alpha.with_map(map);
        assert!(broken.alpha_inverse().is_err());
        assert!(!broken.check_extension_axioms().all_passed());
    }

    #[test]
    fn doubled_corner_coefficient_breaks_regularity() {
        let alpha = flat_so3_extension();
        let mut map = alpha.map.clone();
        // the l_{-2} coefficient of α(hk_gen) is coordinate 0 of column 0
        let cur = map.at(0, 0).clone();
        assert!(!cur.is_zero());
        *map.at_mut(0, 0) = cur * Scalar::from_integer(2.into());
        let perturbed = alpha.with_map(map);
        let reg = perturbed.regularity_check().unwrap();
        assert!(!reg.all_passed());
    }

    #[test]
    fn identity_in_place_of_i_of_h_fails_symmetry() {
        let mut alpha = flat_so3_extension();
        alpha.i_of_h = Mat::identity(3);
        let rep = alpha.symmetry_compat_check();
        assert!(!rep.all_passed());
    }
}
