//! Source symmetric-space data: the five families the catalog extends, with
//! their eigenspace decompositions g = k ⊕ h/k ⊕ m under Ad(h).

use crate::algebra::MatrixAlgebra;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::report::CheckReport;
use crate::scalar::{cim, cre, int, CScalar, Scalar};
use crate::subspace::Subspace;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricFamily {
    /// so(p+2, q) for c = +1, so(p+1, q+1) for c = -1, over so(p, q) + so(2|1,1)
    SoC { p: usize, q: usize, c: i64 },
    /// su(p+1, q) / u(p, q)
    SuHerm { p: usize, q: usize },
    /// sl(n+1, R) / gl(n, R)
    SlPara { n: usize },
    /// so*(2n+2) / so*(2n) + so*(2)
    SoStar { n: usize },
}

/// One symmetric-space source: ordered basis [h/k generator] ++ m ++ k,
/// the symmetry group element, and the ambient algebra constraints.
pub struct SymmetricSpaceDatum {
    pub family: SymmetricFamily,
    pub algebra: MatrixAlgebra,
    pub g: Subspace,
    pub hk_gen: Mat,
    pub m_dim: usize,
    pub k_dim: usize,
    pub sym_element: Mat,
    pub c: Scalar,
}

impl SymmetricSpaceDatum {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn m_range(&self) -> std::ops::Range<usize> {
        1..1 + self.m_dim
    }

    pub fn k_range(&self) -> std::ops::Range<usize> {
        1 + self.m_dim..self.dim()
    }

    pub fn m_basis(&self) -> &[Mat] {
        &self.g.basis()[self.m_range()]
    }

    pub fn k_basis(&self) -> &[Mat] {
        &self.g.basis()[self.k_range()]
    }

    /// Ad(sym_element) applied to an algebra element.
    pub fn ad_sym(&self, m: &Mat) -> Mat {
        // the symmetry elements in the catalog are diagonal ±1 blocks, hence involutive
        self.sym_element.matmul(m).matmul(&self.sym_element)
    }

    /// Recomputes the ±1 eigenspaces of Ad(sym_element) and confirms the
    /// claimed decomposition and all structural invariants.
    pub fn eigendecompose_involution(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        let dim = self.dim();
        rep.check(
            "basis_in_algebra",
            (0..dim).all(|i| self.algebra.is_member(self.g.basis_mat(i))),
        );

        // involution matrix in basis coordinates
        let mut s = RatMat::zeros(dim, dim);
        let mut ok = true;
        for j in 0..dim {
            let im = self.ad_sym(self.g.basis_mat(j));
            match self.g.coords_of(&im) {
                Ok(coords) => {
                    for i in 0..dim {
                        *s.at_mut(i, j) = coords[i].clone();
                    }
                }
                Err(_) => ok = false,
            }
        }
        rep.check("ad_sym_preserves_g", ok);
        if !ok {
            return rep;
        }
        rep.check("ad_sym_is_involution", s.mul(&s) == RatMat::identity(dim));

        let id = RatMat::identity(dim);
        let plus = s.sub(&id).nullspace();
        let minus = s.add(&id).nullspace();
        rep.push(
            "plus_eigenspace_dim",
            plus.len() == 1 + self.k_dim,
            format!("{} vs {}", plus.len(), 1 + self.k_dim),
        );
        rep.push(
            "minus_eigenspace_dim",
            minus.len() == self.m_dim,
            format!("{} vs {}", minus.len(), self.m_dim),
        );
        rep.check("eigenspace_dims_fill_g", plus.len() + minus.len() == dim);

        // the computed eigenspaces must coincide with span(hk ⊕ k) and span(m)
        let fixed_ok = plus.iter().all(|v| self.m_range().all(|i| v[i].is_zero()));
        let anti_ok = minus
            .iter()
            .all(|v| v[0].is_zero() && self.k_range().all(|i| v[i].is_zero()));
        rep.check("plus_space_is_k_plus_hk", fixed_ok);
        rep.check("minus_space_is_m", anti_ok);

        // bracket relations
        rep.check(
            "k_bracket_k_in_k",
            self.brackets_land(self.k_basis(), self.k_basis(), BracketTarget::K),
        );
        rep.check(
            "k_bracket_m_in_m",
            self.brackets_land(self.k_basis(), self.m_basis(), BracketTarget::M),
        );
        rep.check(
            "m_bracket_m_in_k_plus_hk",
            self.brackets_land(self.m_basis(), self.m_basis(), BracketTarget::KPlusHk),
        );
        rep.check(
            "hk_central_in_h",
            self.k_basis().iter().all(|k| self.hk_gen.bracket(k).unwrap().is_zero()),
        );
        rep.check(
            "hk_bracket_m_in_m",
            self.brackets_land(&[self.hk_gen.clone()], self.m_basis(), BracketTarget::M),
        );
        rep
    }

    fn brackets_land(&self, left: &[Mat], right: &[Mat], target: BracketTarget) -> bool {
        for a in left {
            for b in right {
                let br = a.bracket(b).expect("same ambient");
                let Ok(coords) = self.g.coords_of(&br) else { return false };
                let bad = match target {
                    BracketTarget::K => coords[..1 + self.m_dim].iter().any(|x| !x.is_zero()),
                    BracketTarget::M => {
                        !coords[0].is_zero()
                            || coords[1 + self.m_dim..].iter().any(|x| !x.is_zero())
                    }
                    BracketTarget::KPlusHk => {
                        coords[self.m_range()].iter().any(|x| !x.is_zero())
                    }
                };
                if bad {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy)]
enum BracketTarget {
    K,
    M,
    KPlusHk,
}

/// Middle-block signature entry: +1 for the first p slots, -1 after.
fn sig(p: usize, k: usize) -> Scalar {
    if k <= p {
        int(1)
    } else {
        int(-1)
    }
}

/// g = so(p+2, q) (c = +1) or so(p+1, q+1) (c = -1) in the (2, n) block form
/// with generators (a; X, Y); k = so(p, q), h/k the a-line, m the X, Y columns.
pub fn build_so_symmetric(p: usize, q: usize, c: i64) -> SymmetricSpaceDatum {
    assert!(p + q >= 1, "need p + q >= 1");
    assert!(c == 1 || c == -1);
    let n = p + q;
    let big = n + 2;
    let e = |r, c_| Mat::unit(big, r, c_);

    let mut f = Mat::identity(big);
    f.set(1, 1, cre(int(c)));
    for k in 1..=n {
        f.set(k + 1, k + 1, cre(sig(p, k)));
    }
    let algebra = MatrixAlgebra::SoReal { f };

    let hk_gen = e(0, 1) - e(1, 0).scale_re(&int(c));
    let mut basis = vec![hk_gen.clone()];
    for k in 1..=n {
        basis.push(e(k + 1, 0) - e(0, k + 1).scale_re(&sig(p, k)));
    }
    for k in 1..=n {
        basis.push(e(k + 1, 1) - e(1, k + 1).scale_re(&(int(c) * sig(p, k))));
    }
    let mut k_dim = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            basis.push(e(a + 1, b + 1) - e(b + 1, a + 1).scale_re(&(sig(p, a) * sig(p, b))));
            k_dim += 1;
        }
    }
    let mut sym = vec![1i64; big];
    for k in 1..=n {
        sym[k + 1] = -1;
    }
    let sym_element = Mat::diag_int(&sym);

    SymmetricSpaceDatum {
        family: SymmetricFamily::SoC { p, q, c },
        algebra,
        g: Subspace::new(basis).expect("so symmetric basis"),
        hk_gen,
        m_dim: 2 * n,
        k_dim,
        sym_element,
        c: int(c),
    }
}

/// g = su(p+1, q) in the (1, n) block form; k = su(p, q), h/k the u(1)
/// center direction, m the complex column X (real generators before
/// imaginary ones).
pub fn build_su_symmetric(p: usize, q: usize) -> SymmetricSpaceDatum {
    assert!(p >= 1, "need p >= 1");
    let n = p + q;
    let big = n + 1;
    let e = |r, c_| Mat::unit(big, r, c_);

    let mut j = Mat::identity(big);
    for k in 1..=n {
        j.set(k, k, cre(sig(p, k)));
    }
    let algebra = MatrixAlgebra::Su { j };

    // center of u(p,q): A = iE, a = -tr(A) = -n i
    let mut hk_gen = Mat::zeros(big);
    hk_gen.set(0, 0, cim(int(-(n as i64))));
    for k in 1..=n {
        hk_gen.set(k, k, cim(Scalar::one()));
    }

    let mut basis = vec![hk_gen.clone()];
    for k in 1..=n {
        basis.push(e(k, 0) - e(0, k).scale_re(&sig(p, k)));
    }
    for k in 1..=n {
        basis.push((e(k, 0) + e(0, k).scale_re(&sig(p, k))).times_i());
    }
    let mut k_dim = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            let s = sig(p, a) * sig(p, b);
            basis.push(e(a, b) - e(b, a).scale_re(&s));
            basis.push((e(a, b) + e(b, a).scale_re(&s)).times_i());
            k_dim += 2;
        }
    }
    for a in 1..n {
        basis.push((e(a, a) - e(a + 1, a + 1)).times_i());
        k_dim += 1;
    }
    let mut sym = vec![-1i64; big];
    sym[0] = 1;
    let sym_element = Mat::diag_int(&sym);

    SymmetricSpaceDatum {
        family: SymmetricFamily::SuHerm { p, q },
        algebra,
        g: Subspace::new(basis).expect("su symmetric basis"),
        hk_gen,
        m_dim: 2 * n,
        k_dim,
        sym_element,
        c: int(1),
    }
}

/// g = sl(n+1, R) in the (1, n) block form; k = sl(n, R), h/k the traceless
/// diagonal diag(n, -1, …, -1), m = X column ⊕ Y row.
pub fn build_sl_para_symmetric(n: usize) -> SymmetricSpaceDatum {
    assert!(n >= 2, "need n >= 2");
    let big = n + 1;
    let e = |r, c_| Mat::unit(big, r, c_);

    let mut d = vec![-1i64; big];
    d[0] = n as i64;
    let hk_gen = Mat::diag_int(&d);

    let mut basis = vec![hk_gen.clone()];
    for k in 1..=n {
        basis.push(e(k, 0));
    }
    for k in 1..=n {
        basis.push(e(0, k));
    }
    let mut k_dim = 0;
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                basis.push(e(a, b));
                k_dim += 1;
            }
        }
    }
    for a in 1..n {
        basis.push(e(a, a) - e(a + 1, a + 1));
        k_dim += 1;
    }
    let mut sym = vec![-1i64; big];
    sym[0] = 1;
    let sym_element = Mat::diag_int(&sym);

    SymmetricSpaceDatum {
        family: SymmetricFamily::SlPara { n },
        algebra: MatrixAlgebra::SlReal,
        g: Subspace::new(basis).expect("sl para symmetric basis"),
        hk_gen,
        m_dim: 2 * n,
        k_dim,
        sym_element,
        c: int(1),
    }
}

/// g = so*(2n+2) in the complex two-block realization [[Z1, Z2], [-Z̄2, Z̄1]]
/// with Z1 complex skew, Z2 skew-hermitian, halves split (1, n); k = so*(2n),
/// h/k the so*(2) direction, m the quaternionic column X1 + iX2 + jX3 + kX4.
pub fn build_sostar_symmetric(n: usize) -> SymmetricSpaceDatum {
    assert!(n >= 2, "need n >= 2");
    let big = 2 * n + 2;
    let h = n + 1; // half size
    let algebra = MatrixAlgebra::SoStar { half: h };
    let one = CScalar::one;
    let i_ = || cim(Scalar::one());

    // assembles a member from its Z1 and Z2 pieces
    let mk = |z1: Vec<(usize, usize, CScalar)>, z2: Vec<(usize, usize, CScalar)>| -> Mat {
        let mut m = Mat::zeros(big);
        for (r, c_, v) in z1 {
            m.set(h + r, h + c_, crate::scalar::conj(&v));
            m.set(r, c_, v);
        }
        for (r, c_, v) in z2 {
            m.set(h + r, c_, -crate::scalar::conj(&v));
            m.set(r, h + c_, v);
        }
        m
    };

    let hk_gen = mk(vec![], vec![(0, 0, i_())]);
    let mut basis = vec![hk_gen.clone()];
    // m: X1, X2 through Z1; X3, X4 through Z2
    for k in 1..=n {
        basis.push(mk(vec![(k, 0, one()), (0, k, -one())], vec![]));
    }
    for k in 1..=n {
        basis.push(mk(vec![(k, 0, i_()), (0, k, -i_())], vec![]));
    }
    for k in 1..=n {
        basis.push(mk(vec![], vec![(k, 0, one()), (0, k, -one())]));
    }
    for k in 1..=n {
        basis.push(mk(vec![], vec![(k, 0, i_()), (0, k, i_())]));
    }
    // k = so*(2n): A, B skew in Z1; C skew, D symmetric in Z2
    let mut k_dim = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            basis.push(mk(vec![(a, b, one()), (b, a, -one())], vec![]));
            basis.push(mk(vec![(a, b, i_()), (b, a, -i_())], vec![]));
            basis.push(mk(vec![], vec![(a, b, one()), (b, a, -one())]));
            basis.push(mk(vec![], vec![(a, b, i_()), (b, a, i_())]));
            k_dim += 4;
        }
    }
    for a in 1..=n {
        basis.push(mk(vec![], vec![(a, a, i_())]));
        k_dim += 1;
    }
    let mut sym = vec![1i64; big];
    sym[0] = -1;
    sym[h] = -1;
    let sym_element = Mat::diag_int(&sym);

    SymmetricSpaceDatum {
        family: SymmetricFamily::SoStar { n },
        algebra,
        g: Subspace::new(basis).expect("so* symmetric basis"),
        hk_gen,
        m_dim: 4 * n,
        k_dim,
        sym_element,
        c: int(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so_symmetric_dims() {
        let d = build_so_symmetric(2, 0, 1); // so(4)
        assert_eq!(d.dim(), 6);
        assert_eq!(d.m_dim, 4);
        assert_eq!(d.k_dim, 1);
        let rep = d.eigendecompose_involution();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn so21_and_so3_pass() {
        for c in [1, -1] {
            let d = build_so_symmetric(1, 0, c);
            assert_eq!(d.dim(), 3);
            let rep = d.eigendecompose_involution();
            assert!(rep.all_passed(), "c={c}:\n{rep}");
        }
    }

    #[test]
    fn su_symmetric_dims() {
        let d = build_su_symmetric(1, 0); // su(2)
        assert_eq!(d.dim(), 3);
        assert_eq!(d.m_dim, 2);
        assert_eq!(d.k_dim, 0);
        assert!(d.eigendecompose_involution().all_passed());
        let d2 = build_su_symmetric(1, 1); // su(2,1)
        assert_eq!(d2.dim(), 8);
        assert!(d2.eigendecompose_involution().all_passed());
    }

    #[test]
    fn sl_para_symmetric_dims() {
        let d = build_sl_para_symmetric(2);
        assert_eq!(d.dim(), 8);
        assert_eq!(d.m_dim, 4);
        assert_eq!(d.k_dim, 3);
        let rep = d.eigendecompose_involution();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn sostar_symmetric_dims() {
        let d = build_sostar_symmetric(2);
        assert_eq!(d.dim(), 15); // (2n+2)(2n+1)/2 at n=2
        assert_eq!(d.m_dim, 8);
        let rep = d.eigendecompose_involution();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn identity_symmetry_fails_decomposition() {
        let mut d = build_so_symmetric(2, 0, 1);
        d.sym_element = Mat::identity(d.sym_element.size);
        let rep = d.eigendecompose_involution();
        assert!(!rep.all_passed());
        // specifically: the -1 eigenspace is empty
        assert!(rep.items.iter().any(|i| i.name == "minus_eigenspace_dim" && !i.passed));
    }

    #[test]
    fn ad_sym_acts_as_minus_one_on_m() {
        for d in [
            build_so_symmetric(1, 1, -1),
            build_su_symmetric(2, 1),
            build_sl_para_symmetric(3),
            build_sostar_symmetric(2),
        ] {
            for m in d.m_basis() {
                assert_eq!(d.ad_sym(m), -m.clone());
            }
            for k in d.k_basis() {
                assert_eq!(&d.ad_sym(k), k);
            }
            assert_eq!(d.ad_sym(&d.hk_gen), d.hk_gen);
        }
    }
}
