//! The three morphism moves between extended geometries: conjugation in P,
//! right translation by the center of H, and source automorphisms fixing K.

use crate::contact::GRADES;
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::mat::Mat;
use crate::scalar::Scalar;
use num_traits::Zero;

/// An explicit automorphism of the source algebra g.
#[derive(Clone, Debug)]
pub enum GAutomorphism {
    /// X ↦ g X g⁻¹
    Conj { g: Mat },
    /// X ↦ -(g X g⁻¹)ᵀ
    NegTransposeConj { g: Mat },
}

impl GAutomorphism {
    pub fn apply(&self, x: &Mat) -> Mat {
        match self {
            GAutomorphism::Conj { g } => {
                let gi = g.inverse().expect("automorphism element invertible");
                x.ad_by(g, &gi)
            }
            GAutomorphism::NegTransposeConj { g } => {
                let gi = g.inverse().expect("automorphism element invertible");
                -x.ad_by(g, &gi).transpose()
            }
        }
    }
}

/// One morphism move.
#[derive(Clone, Debug)]
pub enum MoveSpec {
    /// (g, p) ↦ (g, Ap): pullback is Ad(A⁻¹) ∘ α; A ∈ P must commute with i(K).
    M1 { a: Mat },
    /// (g, p) ↦ (gB, p): pullback is α ∘ Ad(B⁻¹); B in the center of H.
    M2 { b: Mat },
    /// (g, p) ↦ (φ(g), p): pullback is α ∘ Tφ; φ fixes K pointwise.
    M3 { phi: GAutomorphism },
}

/// Applies a move, after validating its admissibility invariants exactly.
pub fn apply_move(alpha: &ExtensionMap, mv: &MoveSpec) -> Result<ExtensionMap, CoreError> {
    match mv {
        MoveSpec::M1 { a } => {
            let a_inv = a
                .inverse()
                .ok_or_else(|| CoreError::BadMove("M1 element not invertible".into()))?;
            // Ad(A) must fix the image of i: i(h) and the i' image of k
            if a.matmul(&alpha.i_of_h) != alpha.i_of_h.matmul(a) {
                return Err(CoreError::BadMove("M1 element does not commute with i(h)".into()));
            }
            for j in alpha.source.k_range() {
                let im = alpha.image_mat(j);
                if a.matmul(&im) != im.matmul(a) {
                    return Err(CoreError::BadMove(
                        "M1 element does not commute with i'(k)".into(),
                    ));
                }
            }
            // A ∈ P: preserves the filtration of l
            for &g in GRADES.iter().filter(|&&g| g >= -1) {
                for b in alpha.target.grade(g).basis() {
                    let conj = b.ad_by(a, &a_inv);
                    let coords = alpha.target.coords(&conj)?;
                    let low = &coords[..alpha.target.grade_range(g).start];
                    if low.iter().any(|x| !x.is_zero()) {
                        return Err(CoreError::BadMove("M1 element is not in P".into()));
                    }
                }
            }
            let images: Vec<Mat> =
                (0..alpha.source.dim()).map(|j| alpha.image_mat(j).ad_by(&a_inv, a)).collect();
            ExtensionMap::from_images(
                alpha.source.clone(),
                alpha.target.clone(),
                &images,
                alpha.i_of_h.clone(),
                alpha.params.clone(),
            )
            .map(|mut e| {
                e.family = alpha.family.clone();
                e
            })
        }
        MoveSpec::M2 { b } => {
            let b_inv = b
                .inverse()
                .ok_or_else(|| CoreError::BadMove("M2 element not invertible".into()))?;
            // Ad(B) fixes h = k ⊕ h/k pointwise and preserves m
            for k in alpha.source.k_basis() {
                if k.ad_by(b, &b_inv) != *k {
                    return Err(CoreError::BadMove("M2 element does not fix k".into()));
                }
            }
            if alpha.source.hk_gen.ad_by(b, &b_inv) != alpha.source.hk_gen {
                return Err(CoreError::BadMove("M2 element is not central in H".into()));
            }
            for m in alpha.source.m_basis() {
                let moved = m.ad_by(b, &b_inv);
                let coords = alpha.source.g.coords_of(&moved)?;
                if !coords[0].is_zero()
                    || coords[alpha.source.k_range()].iter().any(|x| !x.is_zero())
                {
                    return Err(CoreError::BadMove("M2 element does not preserve m".into()));
                }
            }
            let images: Vec<Mat> = (0..alpha.source.dim())
                .map(|j| alpha.apply(&alpha.source.g.basis_mat(j).ad_by(&b_inv, b)))
                .collect::<Result<_, _>>()?;
            ExtensionMap::from_images(
                alpha.source.clone(),
                alpha.target.clone(),
                &images,
                alpha.i_of_h.clone(),
                alpha.params.clone(),
            )
            .map(|mut e| {
                e.family = alpha.family.clone();
                e
            })
        }
        MoveSpec::M3 { phi } => {
            // φ is an automorphism of g fixing k pointwise
            let src = &alpha.source;
            for k in src.k_basis() {
                if phi.apply(k) != *k {
                    return Err(CoreError::BadMove("M3 automorphism does not fix k".into()));
                }
            }
            let dim = src.dim();
            let phis: Vec<Mat> = (0..dim).map(|j| phi.apply(src.g.basis_mat(j))).collect();
            for p in &phis {
                src.g.coords_of(p).map_err(|_| {
                    CoreError::BadMove("M3 automorphism does not preserve g".into())
                })?;
            }
            for i in 0..dim {
                for j in i + 1..dim {
                    let lhs = phis[i].bracket(&phis[j])?;
                    let rhs = phi.apply(&src.g.basis_mat(i).bracket(src.g.basis_mat(j))?);
                    if lhs != rhs {
                        return Err(CoreError::BadMove(
                            "M3 element is not a Lie algebra automorphism".into(),
                        ));
                    }
                }
            }
            let images: Vec<Mat> =
                phis.iter().map(|p| alpha.apply(p)).collect::<Result<_, _>>()?;
            ExtensionMap::from_images(
                alpha.source.clone(),
                alpha.target.clone(),
                &images,
                alpha.i_of_h.clone(),
                alpha.params.clone(),
            )
            .map(|mut e| {
                e.family = alpha.family.clone();
                e
            })
        }
    }
}

/// Rational rotation matrix acting in the (0, 1) plane of the source of an
/// SO-family datum: cos = c/r, sin = s/r for a Pythagorean triple s² + c² = r².
pub fn so_rotation(size: usize, cos: Scalar, sin: Scalar) -> Mat {
    use crate::scalar::cre;
    let mut m = Mat::identity(size);
    m.set(0, 0, cre(cos.clone()));
    m.set(0, 1, cre(sin.clone()));
    m.set(1, 0, cre(-sin));
    m.set(1, 1, cre(cos));
    m
}

/// Rational boost in the (0, 1) plane: cosh² - sinh² = 1.
pub fn so_boost(size: usize, cosh: Scalar, sinh: Scalar) -> Mat {
    use crate::scalar::cre;
    let mut m = Mat::identity(size);
    m.set(0, 0, cre(cosh.clone()));
    m.set(0, 1, cre(sinh.clone()));
    m.set(1, 0, cre(sinh));
    m.set(1, 1, cre(cosh));
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn rotation_and_boost_are_form_preserving() {
        let r = so_rotation(3, rat(3, 5), rat(4, 5));
        let f = Mat::identity(3);
        assert_eq!(r.transpose().matmul(&f).matmul(&r), f);
        let b = so_boost(3, rat(5, 4), rat(3, 4));
        let mut f11 = Mat::identity(3);
        f11.set(1, 1, crate::scalar::cre(int(-1)));
        assert_eq!(b.transpose().matmul(&f11).matmul(&b), f11);
    }
}
