//! The three contact-graded target algebras with (1, n, 1) block structure:
//! sl(n+2, R), su(p+1, q+1), and sp(2n+2, R), together with grading
//! projections, Killing-dual bases for l/p, and the grading validity checks.

use crate::algebra::{MatrixAlgebra, StructureConstants};
use crate::error::CoreError;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::report::CheckReport;
use crate::scalar::{cre, int, CScalar, Scalar};
use crate::subspace::Subspace;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactFamily {
    Sl,
    Su,
    Sp,
}

/// A contact 2-graded simple matrix algebra l = l_{-2} ⊕ … ⊕ l_2.
///
/// The full basis is the concatenation of the graded bases in the fixed
/// order -2, -1, 0, 1, 2; representatives of l/p are always the first
/// `2n + 1` basis vectors.
pub struct GradedContactAlgebra {
    pub family: ContactFamily,
    /// signature (p, q) for Su; (n, 0) for Sl and Sp
    pub signature: (usize, usize),
    pub ambient: usize,
    /// width of the middle block
    pub middle: usize,
    /// dim l_{-1} = 2n
    pub half_dim: usize,
    pub j: Option<Mat>,
    pub algebra: MatrixAlgebra,
    pub grades: [Subspace; 5],
    pub full: Subspace,
    /// cumulative offsets of the grades inside the full basis
    offsets: [usize; 6],
    pub structure: StructureConstants,
    /// Killing form Gram matrix on the full basis
    pub killing: RatMat,
}

pub const GRADES: [i32; 5] = [-2, -1, 0, 1, 2];

fn grade_slot(i: i32) -> usize {
    assert!((-2..=2).contains(&i), "grade out of range");
    (i + 2) as usize
}

impl GradedContactAlgebra {
    fn assemble(
        family: ContactFamily,
        signature: (usize, usize),
        ambient: usize,
        middle: usize,
        j: Option<Mat>,
        algebra: MatrixAlgebra,
        graded: [Vec<Mat>; 5],
    ) -> Result<Self, CoreError> {
        let grades = [
            Subspace::new(graded[0].clone())?,
            Subspace::new(graded[1].clone())?,
            Subspace::new(graded[2].clone())?,
            Subspace::new(graded[3].clone())?,
            Subspace::new(graded[4].clone())?,
        ];
        let full = Subspace::concat(&[&grades[0], &grades[1], &grades[2], &grades[3], &grades[4]])?;
        let mut offsets = [0usize; 6];
        for g in 0..5 {
            offsets[g + 1] = offsets[g] + grades[g].dim();
        }
        let structure = StructureConstants::compute(&full)?;
        let dim = full.dim();
        // B_ij = tr(ad_i ad_j) = Σ_k Σ_m c_{ik}^m c_{jm}^k
        let mut killing = RatMat::zeros(dim, dim);
        for i in 0..dim {
            for jdx in i..dim {
                let mut acc = Scalar::zero();
                for k in 0..dim {
                    for (m, cik) in &structure.table[i][k] {
                        for (k2, cjm) in &structure.table[jdx][*m] {
                            if *k2 == k {
                                acc = &acc + &(cik * cjm);
                            }
                        }
                    }
                }
                *killing.at_mut(i, jdx) = acc.clone();
                *killing.at_mut(jdx, i) = acc;
            }
        }
        let half_dim = grades[1].dim();
        Ok(Self {
            family,
            signature,
            ambient,
            middle,
            half_dim,
            j,
            algebra,
            grades,
            full,
            offsets,
            structure,
            killing,
        })
    }

    pub fn dim(&self) -> usize {
        self.full.dim()
    }

    pub fn grade(&self, i: i32) -> &Subspace {
        &self.grades[grade_slot(i)]
    }

    /// Index range of grade `i` inside the full basis.
    pub fn grade_range(&self, i: i32) -> std::ops::Range<usize> {
        let s = grade_slot(i);
        self.offsets[s]..self.offsets[s + 1]
    }

    /// dim(l/p) = 1 + 2n; representatives are the first `rep_dim` basis vectors.
    pub fn rep_dim(&self) -> usize {
        self.offsets[2]
    }

    /// Coordinates in the full graded basis.
    pub fn coords(&self, m: &Mat) -> Result<Vec<Scalar>, CoreError> {
        self.full.coords_of(m)
    }

    /// The l_i component of `m`; the five components sum to `m`.
    pub fn grade_project(&self, m: &Mat, i: i32) -> Result<Mat, CoreError> {
        let coords = self.coords(m)?;
        let range = self.grade_range(i);
        let mut masked = vec![Scalar::zero(); coords.len()];
        masked[range.clone()].clone_from_slice(&coords[range]);
        Ok(self.full.from_coords(&masked))
    }

    /// Projection of full coordinates onto the l/p representative coordinates.
    pub fn class_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        coords[..self.rep_dim()].to_vec()
    }

    /// Killing pairing of two coordinate vectors.
    pub fn killing_pair(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.dim() {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                let k = self.killing.at(i, j);
                if !k.is_zero() && !b[j].is_zero() {
                    acc = &acc + &(&a[i] * &(k * &b[j]));
                }
            }
        }
        acc
    }

    /// Representatives X_i of l/p (basis of l_{-2} ⊕ l_{-1}) together with the
    /// Killing-dual basis Z_i in l_1 ⊕ l_2, B(Z_i, X_j) = δ_ij.
    pub fn minus_dual_basis(&self) -> Result<(Vec<Mat>, Vec<Mat>), CoreError> {
        let reps: Vec<Mat> = self
            .grade(-2)
            .basis()
            .iter()
            .chain(self.grade(-1).basis())
            .cloned()
            .collect();
        let plus: Vec<Mat> = self
            .grade(1)
            .basis()
            .iter()
            .chain(self.grade(2).basis())
            .cloned()
            .collect();
        let k = reps.len();
        assert_eq!(plus.len(), k);
        let mut gram = RatMat::zeros(k, k);
        for (a, z) in plus.iter().enumerate() {
            let zc = self.coords(z)?;
            for (jdx, x) in reps.iter().enumerate() {
                let xc = self.coords(x)?;
                *gram.at_mut(a, jdx) = self.killing_pair(&zc, &xc);
            }
        }
        let w = gram
            .inverse()
            .ok_or_else(|| CoreError::Singular("degenerate l_+/l_- Killing pairing".into()))?;
        let duals: Vec<Mat> =
            (0..k).map(|i| Mat::lincomb(&w.row_vec(i), &plus)).collect();
        Ok((reps, duals))
    }

    /// All four grading invariants, plus Jacobi and Killing orthogonality.
    pub fn check_contact_grading(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        rep.check("dim_l_minus2_is_1", self.grade(-2).dim() == 1);
        rep.check("dim_l_plus2_is_1", self.grade(2).dim() == 1);
        let members = (0..self.dim()).all(|i| self.algebra.is_member(self.full.basis_mat(i)));
        rep.check("basis_in_algebra", members);

        let mut containments = true;
        for gi in GRADES {
            for gj in GRADES {
                let target = gi + gj;
                for a in self.grade(gi).basis() {
                    for b in self.grade(gj).basis() {
                        let br = a.bracket(b).expect("same ambient");
                        let ok = if target.abs() > 2 {
                            br.is_zero()
                        } else {
                            match self.grade_project(&br, target) {
                                Ok(proj) => {
                                    let diff = br.clone() - proj;
                                    diff.is_zero()
                                }
                                Err(_) => false,
                            }
                        };
                        if !ok {
                            containments = false;
                        }
                    }
                }
            }
        }
        rep.check("bracket_respects_grading", containments);

        rep.push(
            "l_minus1_pairing_nondegenerate",
            self.minus_one_pairing_rank() == self.half_dim,
            format!("rank {} of {}", self.minus_one_pairing_rank(), self.half_dim),
        );

        let spans = {
            // [l_{-1}, l_{-1}] spans l_{-2}
            let mut found = false;
            'outer: for a in self.grade(-1).basis() {
                for b in self.grade(-1).basis() {
                    if !a.bracket(b).unwrap().is_zero() {
                        found = true;
                        break 'outer;
                    }
                }
            }
            found
        };
        rep.check("l_minus1_bracket_spans_l_minus2", spans);

        rep.push(
            "jacobi_all_basis_triples",
            self.structure.jacobi_violation().is_none(),
            String::new(),
        );

        let mut ortho = true;
        for gi in GRADES {
            for gj in GRADES {
                if gi + gj == 0 {
                    continue;
                }
                for a in self.grade_range(gi) {
                    for b in self.grade_range(gj) {
                        if !self.killing.at(a, b).is_zero() {
                            ortho = false;
                        }
                    }
                }
            }
        }
        rep.check("killing_gradation_orthogonality", ortho);
        rep
    }

    /// Rank of the Gram matrix of the bracket pairing l_{-1} × l_{-1} → l_{-2}.
    fn minus_one_pairing_rank(&self) -> usize {
        let m1 = self.grade(-1);
        let corner = self.grade(-2).basis_mat(0);
        let ccoords = corner.flatten_real();
        // bracket value is a multiple of the corner generator; extract the
        // coefficient through any nonzero coordinate of the corner
        let pos = ccoords.iter().position(|x| !x.is_zero()).expect("corner nonzero");
        let scale = ccoords[pos].clone();
        let n = m1.dim();
        let mut gram = RatMat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let br = m1.basis_mat(a).bracket(m1.basis_mat(b)).unwrap();
                let v = br.flatten_real();
                *gram.at_mut(a, b) = &v[pos] / &scale;
            }
        }
        gram.rank()
    }
}

/// sl(n+2, R) with the (1, n, 1) contact grading.
pub fn build_sl_contact(n: usize) -> GradedContactAlgebra {
    assert!(n >= 1);
    let big = n + 2;
    let last = big - 1;
    let e = |r, c| Mat::unit(big, r, c);

    let lm2 = vec![e(last, 0)];
    let mut lm1 = Vec::new();
    for jx in 1..=n {
        lm1.push(e(jx, 0));
    }
    for jx in 1..=n {
        lm1.push(e(last, jx));
    }
    let mut l0 = vec![Mat::diag_int(&diag_entries(big, 1, 0, -1))];
    {
        // diag(n, -2 E_n, n)
        let mut d = vec![0i64; big];
        d[0] = n as i64;
        d[last] = n as i64;
        for jx in 1..=n {
            d[jx] = -2;
        }
        l0.push(Mat::diag_int(&d));
    }
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                l0.push(e(a, b));
            }
        }
    }
    for a in 1..n {
        l0.push(e(a, a) - e(a + 1, a + 1));
    }
    let mut l1 = Vec::new();
    for jx in 1..=n {
        l1.push(e(0, jx));
    }
    for jx in 1..=n {
        l1.push(e(jx, last));
    }
    let l2 = vec![e(0, last)];

    GradedContactAlgebra::assemble(
        ContactFamily::Sl,
        (n, 0),
        big,
        n,
        None,
        MatrixAlgebra::SlReal,
        [lm2, lm1, l0, l1, l2],
    )
    .expect("sl contact grading construction")
}

fn diag_entries(size: usize, first: i64, mid: i64, last: i64) -> Vec<i64> {
    let mut d = vec![mid; size];
    d[0] = first;
    d[size - 1] = last;
    d
}

/// The hermitian form of su(p+1, q+1): antidiagonal 1's in the corners and
/// diag(E_p, -E_q) in the middle.
pub fn su_form(p: usize, q: usize) -> Mat {
    let n = p + q;
    let big = n + 2;
    let mut j = Mat::zeros(big);
    j.set(0, big - 1, cre(int(1)));
    j.set(big - 1, 0, cre(int(1)));
    for k in 1..=n {
        j.set(k, k, cre(if k <= p { int(1) } else { int(-1) }));
    }
    j
}

/// su(p+1, q+1) realized as complex matrices with A J + J A* = 0, graded by
/// the same (1, n, 1) block pattern; the real basis lists the real-part
/// generator before the imaginary-part generator of each complex entry.
pub fn build_su_contact(p: usize, q: usize) -> GradedContactAlgebra {
    let n = p + q;
    assert!(n >= 1);
    let big = n + 2;
    let last = big - 1;
    let j = su_form(p, q);
    let sig = |k: usize| if k <= p { int(1) } else { int(-1) };
    let e = |r, c| Mat::unit(big, r, c);

    let lm2 = vec![e(last, 0).times_i()];
    let mut lm1 = Vec::new();
    for k in 1..=n {
        lm1.push(e(k, 0) - e(last, k).scale_re(&sig(k)));
        lm1.push((e(k, 0) + e(last, k).scale_re(&sig(k))).times_i());
    }
    let mut l0 = vec![Mat::diag_int(&diag_entries(big, 1, 0, -1))];
    {
        let mut z1 = Mat::zeros(big);
        z1.set(0, 0, CScalar::new(Scalar::zero(), int(n as i64)));
        z1.set(last, last, CScalar::new(Scalar::zero(), int(n as i64)));
        for k in 1..=n {
            z1.set(k, k, CScalar::new(Scalar::zero(), int(-2)));
        }
        l0.push(z1);
    }
    for a in 1..=n {
        for b in a + 1..=n {
            let s = &sig(a) * &sig(b);
            l0.push(e(a, b) - e(b, a).scale_re(&s));
            l0.push((e(a, b) + e(b, a).scale_re(&s)).times_i());
        }
    }
    for a in 1..n {
        l0.push((e(a, a) - e(a + 1, a + 1)).times_i());
    }
    let mut l1 = Vec::new();
    for k in 1..=n {
        l1.push(e(0, k) - e(k, last).scale_re(&sig(k)));
        l1.push((e(0, k) + e(k, last).scale_re(&sig(k))).times_i());
    }
    let l2 = vec![e(0, last).times_i()];

    GradedContactAlgebra::assemble(
        ContactFamily::Su,
        (p, q),
        big,
        n,
        Some(j.clone()),
        MatrixAlgebra::Su { j },
        [lm2, lm1, l0, l1, l2],
    )
    .expect("su contact grading construction")
}

/// The symplectic form of sp(2n+2, R): J[0][N-1] = 1, J[N-1][0] = -1, middle
/// [[0, E], [-E, 0]].
pub fn sp_form(n: usize) -> Mat {
    let big = 2 * n + 2;
    let mut j = Mat::zeros(big);
    j.set(0, big - 1, cre(int(1)));
    j.set(big - 1, 0, cre(int(-1)));
    for k in 1..=n {
        j.set(k, k + n, cre(int(1)));
        j.set(k + n, k, cre(int(-1)));
    }
    j
}

/// sp(2n+2, R) with blocks (1, 2n, 1) and A J + J Aᵀ = 0.
pub fn build_sp_contact(n: usize) -> GradedContactAlgebra {
    assert!(n >= 1);
    let big = 2 * n + 2;
    let last = big - 1;
    let w = 2 * n;
    let j = sp_form(n);
    let e = |r, c| Mat::unit(big, r, c);
    // partner index and sign inside the middle block
    let partner = |k: usize| if k <= n { k + n } else { k - n };
    let sgn = |k: usize| if k <= n { int(-1) } else { int(1) };

    let lm2 = vec![e(last, 0)];
    let mut lm1 = Vec::new();
    for k in 1..=w {
        lm1.push(e(k, 0) + e(last, partner(k)).scale_re(&sgn(k)));
    }
    let mut l0 = vec![Mat::diag_int(&diag_entries(big, 1, 0, -1))];
    // middle sp(2n): gl(n) part diag(A, -Aᵀ), then symmetric upper/lower blocks
    for a in 1..=n {
        for b in 1..=n {
            l0.push(e(a, b) - e(b + n, a + n));
        }
    }
    for a in 1..=n {
        for b in a..=n {
            l0.push(e(a, b + n) + e(b, a + n));
        }
    }
    for a in 1..=n {
        for b in a..=n {
            l0.push(e(a + n, b) + e(b + n, a));
        }
    }
    let mut l1 = Vec::new();
    for k in 1..=w {
        l1.push(e(0, k) + e(partner(k), last).scale_re(&sgn(k)));
    }
    let l2 = vec![e(0, last)];

    GradedContactAlgebra::assemble(
        ContactFamily::Sp,
        (n, 0),
        big,
        w,
        Some(j.clone()),
        MatrixAlgebra::SpReal { j },
        [lm2, lm1, l0, l1, l2],
    )
    .expect("sp contact grading construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn sl_contact_dims() {
        let g = build_sl_contact(1);
        assert_eq!(g.dim(), 8);
        let dims: Vec<usize> = GRADES.iter().map(|&i| g.grade(i).dim()).collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 1]);
        let g2 = build_sl_contact(2);
        assert_eq!(g2.grade(-1).dim(), 4);
        assert_eq!(g2.grade(-2).dim(), 1);
        assert_eq!(g2.grade(2).dim(), 1);
        assert_eq!(build_sl_contact(3).dim(), 24);
    }

    #[test]
    fn su_contact_dims() {
        let g = build_su_contact(1, 0);
        assert_eq!(g.dim(), 8);
        let dims: Vec<usize> = GRADES.iter().map(|&i| g.grade(i).dim()).collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 1]);
        let g2 = build_su_contact(0, 1);
        assert_eq!(g2.dim(), 8);
        let g3 = build_su_contact(1, 1);
        assert_eq!(g3.grade(-1).dim(), 4);
    }

    #[test]
    fn sp_contact_dims() {
        let g = build_sp_contact(1);
        assert_eq!(g.dim(), 10);
        let dims: Vec<usize> = GRADES.iter().map(|&i| g.grade(i).dim()).collect();
        assert_eq!(dims, vec![1, 2, 4, 2, 1]);
        assert_eq!(build_sp_contact(2).dim(), 21);
        assert_eq!(build_sp_contact(2).grade(-2).dim(), 1);
    }

    #[test]
    fn grading_checks_pass_for_builders() {
        for g in [build_sl_contact(2), build_su_contact(1, 1), build_sp_contact(2)] {
            let rep = g.check_contact_grading();
            assert!(rep.all_passed(), "grading check failed:\n{rep}");
        }
    }

    #[test]
    fn grade_projections_sum_to_identity() {
        let g = build_su_contact(2, 1);
        // a generic member: sum of one basis vector per grade with coefficients
        let mut m = Mat::zeros(g.ambient);
        for (k, &i) in GRADES.iter().enumerate() {
            m = m + g.grade(i).basis_mat(0).scale_re(&rat(k as i64 + 1, 3));
        }
        let mut total = Mat::zeros(g.ambient);
        for &i in GRADES.iter() {
            total = total + g.grade_project(&m, i).unwrap();
        }
        assert_eq!(total, m);
        // an l_{-2} basis vector projects to itself at -2, zero elsewhere
        let corner = g.grade(-2).basis_mat(0).clone();
        assert_eq!(g.grade_project(&corner, -2).unwrap(), corner);
        for &i in &[-1, 0, 1, 2] {
            assert!(g.grade_project(&corner, i).unwrap().is_zero());
        }
    }

    #[test]
    fn corner_projects_to_minus2_in_sl3() {
        let g = build_sl_contact(1);
        let corner = Mat::unit(3, 2, 0);
        assert_eq!(g.grade_project(&corner, -2).unwrap(), corner);
        for &i in &[-1, 0, 1, 2] {
            assert!(g.grade_project(&corner, i).unwrap().is_zero());
        }
    }

    #[test]
    fn dual_basis_pairing_is_identity() {
        for g in [build_sl_contact(2), build_su_contact(1, 1), build_sp_contact(1)] {
            let (reps, duals) = g.minus_dual_basis().unwrap();
            for (i, z) in duals.iter().enumerate() {
                let zc = g.coords(z).unwrap();
                // duals of l_{-2} representatives live in l_2
                for (jdx, x) in reps.iter().enumerate() {
                    let xc = g.coords(x).unwrap();
                    let b = g.killing_pair(&zc, &xc);
                    let expect = if i == jdx { int(1) } else { int(0) };
                    assert_eq!(b, expect, "pairing ({i},{jdx})");
                }
            }
            // Z for the l_{-2} rep has no l_1 component
            let z0 = &duals[0];
            let l1_part = g.grade_project(z0, 1).unwrap();
            assert!(l1_part.is_zero());
        }
    }

    #[test]
    fn sl3_corner_dual_is_multiple_of_opposite_corner() {
        let g = build_sl_contact(1);
        let (_, duals) = g.minus_dual_basis().unwrap();
        let z0 = &duals[0];
        // must be a rational multiple of E_{0,2}
        let e02 = Mat::unit(3, 0, 2);
        let coeff = z0.at(0, 2).clone();
        assert!(!coeff.is_zero());
        assert_eq!(z0, &e02.scale(&coeff));
    }

    #[test]
    fn corrupted_grading_fails_nondegeneracy() {
        // replace one l_{-1} basis vector by another's copy scaled: dependent
        // basis is rejected at construction, so instead corrupt by moving a
        // vector into l_0 span: build a fake algebra with l_{-1} vector zeroed
        // against the pairing via doubling l_{-2}: simplest negative control is
        // checking that the pairing rank drops when we drop a basis vector.
        let g = build_sl_contact(2);
        let m1 = g.grade(-1);
        let corner = g.grade(-2).basis_mat(0);
        let ccoords = corner.flatten_real();
        let pos = ccoords.iter().position(|x| !x.is_zero()).unwrap();
        let scale = ccoords[pos].clone();
        let n = m1.dim();
        // Gram with the last row replaced by a repeat of the first: rank < 2n
        let mut gram = RatMat::zeros(n, n);
        for a in 0..n {
            let src = if a == n - 1 { 0 } else { a };
            for b in 0..n {
                let br = m1.basis_mat(src).bracket(m1.basis_mat(b)).unwrap();
                let v = br.flatten_real();
                *gram.at_mut(a, b) = &v[pos] / &scale;
            }
        }
        assert!(gram.rank() < n);
    }
}
