//! Matrix Lie algebra membership, completion of partially specified
//! matrices, Killing forms, and structure constants.

use crate::error::CoreError;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::scalar::{CScalar, Scalar};
use crate::subspace::Subspace;
use num_traits::Zero;

/// The defining linear constraints of the matrix algebras in play.
///
/// Membership is a real-linear condition in every case, which is what makes
/// exact completion of `*` entries a linear solve.
#[derive(Clone, Debug)]
pub enum MatrixAlgebra {
    /// Real traceless matrices.
    SlReal,
    /// `M J + J M* = 0` and `tr M = 0` for a hermitian form `J`.
    Su { j: Mat },
    /// Real with `M J + J Mᵀ = 0` for a symplectic form `J`.
    SpReal { j: Mat },
    /// Real with `Mᵀ F + F M = 0` for a symmetric form `F`.
    SoReal { f: Mat },
    /// so*(2m): quaternionic block pattern `[[P, Q], [-Q̄, P̄]]` together with
    /// `Mᵀ F + F M = 0`, `F = diag(E_m, -E_m)`.
    SoStar { half: usize },
}

impl MatrixAlgebra {
    /// Residual vector of the defining constraints; zero iff member.
    pub fn residual(&self, m: &Mat) -> Vec<Scalar> {
        let mut out = Vec::new();
        match self {
            MatrixAlgebra::SlReal => {
                push_imag(&mut out, m);
                let t = m.trace();
                out.push(t.re);
                out.push(t.im);
            }
            MatrixAlgebra::Su { j } => {
                let r = m.matmul(j) + &j.matmul(&m.conj_transpose());
                push_full(&mut out, &r);
                let t = m.trace();
                out.push(t.re);
                out.push(t.im);
            }
            MatrixAlgebra::SpReal { j } => {
                push_imag(&mut out, m);
                let r = m.matmul(j) + &j.matmul(&m.transpose());
                push_full(&mut out, &r);
            }
            MatrixAlgebra::SoReal { f } => {
                push_imag(&mut out, m);
                let r = m.transpose().matmul(f) + &f.matmul(m);
                push_full(&mut out, &r);
            }
            MatrixAlgebra::SoStar { half } => {
                let h = *half;
                assert_eq!(m.size, 2 * h);
                // block pattern: M21 = -conj(M12), M22 = conj(M11)
                for r in 0..h {
                    for c in 0..h {
                        let p = m.at(r, c);
                        let s = m.at(h + r, h + c);
                        out.push(&s.re - &p.re);
                        out.push(&s.im + &p.im);
                        let q = m.at(r, h + c);
                        let nq = m.at(h + r, c);
                        out.push(&nq.re + &q.re);
                        out.push(&nq.im - &q.im);
                    }
                }
                let f = so_star_form(h);
                let r = m.transpose().matmul(&f) + &f.matmul(m);
                push_full(&mut out, &r);
            }
        }
        out
    }

    pub fn is_member(&self, m: &Mat) -> bool {
        self.residual(m).iter().all(|x| x.is_zero())
    }

    /// Matrix of the residual map on flattened real coordinates.
    pub fn constraint_matrix(&self, size: usize) -> RatMat {
        let probe = self.residual(&Mat::zeros(size));
        let rows = probe.len();
        let cols = Mat::flat_len(size);
        let mut cm = RatMat::zeros(rows, cols);
        let mut flat = vec![Scalar::zero(); cols];
        for c in 0..cols {
            flat[c] = Scalar::from_integer(1.into());
            let res = self.residual(&Mat::from_flat_real(size, &flat));
            flat[c] = Scalar::zero();
            for (r, x) in res.into_iter().enumerate() {
                if !x.is_zero() {
                    *cm.at_mut(r, c) = x;
                }
            }
        }
        cm
    }
}

/// `F = diag(E_m, -E_m)` for so*(2m).
pub fn so_star_form(half: usize) -> Mat {
    let mut f = Mat::identity(2 * half);
    for i in half..2 * half {
        *f.at_mut(i, i) = -CScalar::from(Scalar::from_integer(1.into()));
    }
    f
}

fn push_full(out: &mut Vec<Scalar>, m: &Mat) {
    for r in 0..m.size {
        for c in 0..m.size {
            let z = m.at(r, c);
            out.push(z.re.clone());
            out.push(z.im.clone());
        }
    }
}

fn push_imag(out: &mut Vec<Scalar>, m: &Mat) {
    for r in 0..m.size {
        for c in 0..m.size {
            out.push(m.at(r, c).im.clone());
        }
    }
}

/// Fills the marked unknown entries of `partial` so the result lies in
/// `alg`. Fails if the linear system is inconsistent or the fill-in is not
/// unique (a malformed partial matrix).
pub fn complete_to_algebra(
    partial: &Mat,
    unknowns: &[(usize, usize)],
    alg: &MatrixAlgebra,
) -> Result<Mat, CoreError> {
    if unknowns.is_empty() {
        return if alg.is_member(partial) {
            Ok(partial.clone())
        } else {
            Err(CoreError::CompletionInconsistent)
        };
    }
    let mut base = partial.clone();
    for &(r, c) in unknowns {
        base.set(r, c, CScalar::zero());
    }
    let res0 = alg.residual(&base);
    let rows = res0.len();
    // two real unknowns (re, im) per marked entry
    let mut cm = RatMat::zeros(rows, 2 * unknowns.len());
    for (k, &(r, c)) in unknowns.iter().enumerate() {
        for part in 0..2 {
            let mut probe = Mat::zeros(partial.size);
            probe.set(
                r,
                c,
                if part == 0 {
                    CScalar::from(Scalar::from_integer(1.into()))
                } else {
                    CScalar::new(Scalar::zero(), Scalar::from_integer(1.into()))
                },
            );
            for (row, x) in alg.residual(&probe).into_iter().enumerate() {
                if !x.is_zero() {
                    *cm.at_mut(row, 2 * k + part) = x;
                }
            }
        }
    }
    if cm.rank() < 2 * unknowns.len() {
        return Err(CoreError::CompletionUnderdetermined(2 * unknowns.len() - cm.rank()));
    }
    let target: Vec<Scalar> = res0.iter().map(|x| -x.clone()).collect();
    let sol = cm.solve(&target).ok_or(CoreError::CompletionInconsistent)?;
    let mut filled = base;
    for (k, &(r, c)) in unknowns.iter().enumerate() {
        filled.set(r, c, CScalar::new(sol[2 * k].clone(), sol[2 * k + 1].clone()));
    }
    if !alg.is_member(&filled) {
        return Err(CoreError::CompletionInconsistent);
    }
    Ok(filled)
}

/// The adjoint matrix of `x` in the coordinates of `basis`.
pub fn ad_matrix(basis: &Subspace, x: &Mat) -> Result<RatMat, CoreError> {
    let k = basis.dim();
    let mut ad = RatMat::zeros(k, k);
    for j in 0..k {
        let br = x.bracket(basis.basis_mat(j))?;
        let coords = basis.coords_of(&br)?;
        for i in 0..k {
            if !coords[i].is_zero() {
                *ad.at_mut(i, j) = coords[i].clone();
            }
        }
    }
    Ok(ad)
}

/// Killing form `B(x, y) = tr(ad x ∘ ad y)` with `ad` taken in the given
/// algebra basis. Errors if `x` or `y` is outside the span.
pub fn killing_form(basis: &Subspace, x: &Mat, y: &Mat) -> Result<Scalar, CoreError> {
    basis.coords_of(x)?;
    basis.coords_of(y)?;
    let ax = ad_matrix(basis, x)?;
    let ay = ad_matrix(basis, y)?;
    let k = basis.dim();
    let mut tr = Scalar::zero();
    for i in 0..k {
        for j in 0..k {
            let a = ax.at(i, j);
            if a.is_zero() {
                continue;
            }
            let b = ay.at(j, i);
            if !b.is_zero() {
                tr = tr + a * b;
            }
        }
    }
    Ok(tr)
}

/// Structure constants of a subalgebra basis, sparse by basis pair.
pub struct StructureConstants {
    pub dim: usize,
    /// `table[i][j]` lists `(k, coeff)` with `[b_i, b_j] = Σ coeff · b_k`.
    pub table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl StructureConstants {
    pub fn compute(basis: &Subspace) -> Result<Self, CoreError> {
        let n = basis.dim();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let br = basis.basis_mat(i).bracket(basis.basis_mat(j))?;
                let coords = basis.coords_of(&br)?;
                let sparse: Vec<(usize, Scalar)> =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                table[j][i] = sparse.iter().map(|(k, c)| (*k, -c.clone())).collect();
                table[i][j] = sparse;
            }
        }
        Ok(Self { dim: n, table })
    }

    /// Checks the Jacobi identity on every basis triple. Returns the first
    /// violating triple, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let mut acc = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut touched = Vec::new();
                    self.accumulate(&mut acc, &mut touched, i, j, k);
                    self.accumulate(&mut acc, &mut touched, j, k, i);
                    self.accumulate(&mut acc, &mut touched, k, i, j);
                    let mut ok = true;
                    for &l in &touched {
                        if !acc[l].is_zero() {
                            ok = false;
                        }
                        acc[l] = Scalar::zero();
                    }
                    if !ok {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// acc += [[b_i, b_j], b_k]
    fn accumulate(&self, acc: &mut [Scalar], touched: &mut Vec<usize>, i: usize, j: usize, k: usize) {
        for (m, cij) in &self.table[i][j] {
            for (l, cmk) in &self.table[*m][k] {
                if acc[*l].is_zero() {
                    touched.push(*l);
                }
                acc[*l] = &acc[*l] + &(cij * cmk);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cre, int, rat};

    fn sl2_basis() -> Subspace {
        // e, h, f
        Subspace::new(vec![
            Mat::unit(2, 0, 1),
            Mat::diag_int(&[1, -1]),
            Mat::unit(2, 1, 0),
        ])
        .unwrap()
    }

    #[test]
    fn killing_form_sl2_h_h_is_eight() {
        let b = sl2_basis();
        let h = Mat::diag_int(&[1, -1]);
        assert_eq!(killing_form(&b, &h, &h).unwrap(), int(8));
    }

    #[test]
    fn killing_form_zero_and_not_in_span() {
        let b = sl2_basis();
        let h = Mat::diag_int(&[1, -1]);
        assert_eq!(killing_form(&b, &h, &Mat::zeros(2)).unwrap(), int(0));
        assert!(killing_form(&b, &Mat::identity(2), &h).is_err());
    }

    #[test]
    fn killing_form_sl3_nilpotent_direction() {
        // ad(E13)² is nilpotent, so B(E13, E13) = 0
        let mut basis = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    basis.push(Mat::unit(3, r, c));
                }
            }
        }
        basis.push(Mat::diag_int(&[1, -1, 0]));
        basis.push(Mat::diag_int(&[0, 1, -1]));
        let b = Subspace::new(basis).unwrap();
        let e13 = Mat::unit(3, 0, 2);
        assert_eq!(killing_form(&b, &e13, &e13).unwrap(), int(0));
    }

    #[test]
    fn killing_form_is_ad_invariant_on_sl2() {
        let b = sl2_basis();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let (z, x, y) = (b.basis_mat(i), b.basis_mat(j), b.basis_mat(k));
                    let lhs = killing_form(&b, &z.bracket(x).unwrap(), y).unwrap();
                    let rhs = killing_form(&b, x, &z.bracket(y).unwrap()).unwrap();
                    assert!(
                        (&lhs + &rhs).is_zero(),
                        "B([Z,X],Y) + B(X,[Z,Y]) != 0 at ({i},{j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_holds_for_sl2() {
        let sc = StructureConstants::compute(&sl2_basis()).unwrap();
        assert_eq!(sc.jacobi_violation(), None);
    }

    fn su3_algebra() -> MatrixAlgebra {
        MatrixAlgebra::Su { j: Mat::identity(3) }
    }

    #[test]
    fn completion_restores_blanked_entry() {
        // a concrete su(3) element with nonzero entries everywhere relevant
        let m = Mat::from_fn(3, |r, c| {
            use crate::scalar::crat;
            match (r, c) {
                (0, 0) => crat(int(0), int(2)),
                (1, 1) => crat(int(0), int(-1)),
                (2, 2) => crat(int(0), int(-1)),
                (0, 1) => crat(int(1), rat(1, 2)),
                (1, 0) => crat(int(-1), rat(1, 2)),
                (0, 2) => crat(rat(2, 3), int(1)),
                (2, 0) => crat(rat(-2, 3), int(1)),
                (1, 2) => crat(int(3), int(0)),
                (2, 1) => crat(int(-3), int(0)),
                _ => unreachable!(),
            }
        });
        let alg = su3_algebra();
        assert!(alg.is_member(&m));
        let restored = complete_to_algebra(&m, &[(2, 0)], &alg).unwrap();
        assert_eq!(restored, m);
        // already-complete member with no unknowns passes through unchanged
        assert_eq!(complete_to_algebra(&m, &[], &alg).unwrap(), m);
    }

    #[test]
    fn completion_detects_inconsistency() {
        let mut bad = Mat::zeros(3);
        bad.set(0, 0, cre(int(1))); // real diagonal cannot be in su(3)
        assert!(complete_to_algebra(&bad, &[(1, 2)], &su3_algebra()).is_err());
    }
}
