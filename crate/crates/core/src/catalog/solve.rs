//! Small exact solvers used by catalog builders: normality coefficients by
//! Newton iteration on the (staged-affine) residuals, and k-images pinned by
//! the equivariance axiom.

use crate::contact::GradedContactAlgebra;
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::symmetric::SymmetricSpaceDatum;
use num_traits::{One, Zero};

/// Flattened torsion + normality residual of an extension. Zero iff the
/// extension is regular, torsion free, and normal.
fn residual_vector_of(alpha: &ExtensionMap) -> Result<Vec<Scalar>, CoreError> {
    let mut v = Vec::new();
    let kappa = alpha.curvature()?;
    let cut = alpha.target.rep_dim();
    for val in &kappa.values {
        v.extend_from_slice(&val[..cut]);
    }
    let res = alpha.normality_residual()?;
    for m in res.res1.iter().chain(res.res2.iter()) {
        v.extend(m.flatten_real());
    }
    Ok(v)
}

/// Solves residual(θ) = 0 for the free coefficients of a family whose
/// residual is affine in θ except for a quadratic tail that Newton removes
/// in a bounded number of exact steps (the structure of the normality
/// conditions: the d-coefficients enter affinely, e1 affinely once d is
/// fixed).
pub fn solve_normality<F>(make: F, start: Vec<Scalar>) -> Result<Vec<Scalar>, CoreError>
where
    F: Fn(&[Scalar]) -> Result<ExtensionMap, CoreError>,
{
    let nvars = start.len();
    let mut theta = start;
    for _round in 0..6 {
        let alpha = make(&theta)?;
        let f0 = residual_vector_of(&alpha)?;
        if f0.iter().all(|x| x.is_zero()) {
            return Ok(theta);
        }
        let rows = f0.len();
        // central differences give the exact Jacobian of a quadratic map;
        // fall back to smaller steps when a probe degenerates the extension
        let mut jac = RatMat::zeros(rows, nvars);
        for i in 0..nvars {
            let mut done = false;
            for denom in [1i64, 3, 7, 13] {
                let h = Scalar::new(1.into(), denom.into());
                let mut up = theta.clone();
                up[i] = &up[i] + &h;
                let mut dn = theta.clone();
                dn[i] = &dn[i] - &h;
                let fu = match make(&up).and_then(|a| residual_vector_of(&a)) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let fd = match make(&dn).and_then(|a| residual_vector_of(&a)) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let scale = Scalar::new(denom.into(), 2.into());
                for r in 0..rows {
                    let d = &(&fu[r] - &fd[r]) * &scale;
                    if !d.is_zero() {
                        *jac.at_mut(r, i) = d;
                    }
                }
                done = true;
                break;
            }
            if !done {
                return Err(CoreError::Singular("could not probe normality Jacobian".into()));
            }
        }
        let rhs: Vec<Scalar> = f0.iter().map(|x| -x.clone()).collect();
        let delta = jac.solve(&rhs).ok_or_else(|| {
            let jr = jac.rank();
            let mut aug = jac.clone();
            let extra = RatMat::from_fn(rows, 1, |r, _| rhs[r].clone());
            aug = aug.hstack(&extra);
            CoreError::Singular(format!(
                "normality system inconsistent (rank J = {jr}, rank [J|F] = {}, vars = {nvars})",
                aug.rank()
            ))
        })?;
        for i in 0..nvars {
            theta[i] = &theta[i] + &delta[i];
        }
    }
    // final exactness check
    let alpha = make(&theta)?;
    if residual_vector_of(&alpha)?.iter().all(|x| x.is_zero()) {
        Ok(theta)
    } else {
        Err(CoreError::Singular("normality iteration did not terminate".into()))
    }
}

/// The unique l_0 element L with [L, α(m_j)] = α([Z, m_j]) for every m-basis
/// vector: the image of a k-generator forced by the equivariance axiom.
pub fn k_image_by_equivariance(
    target: &GradedContactAlgebra,
    source: &SymmetricSpaceDatum,
    m_images: &[Mat],
    z: &Mat,
) -> Result<Mat, CoreError> {
    let l0 = target.grade(0);
    let n0 = l0.dim();
    let flat_len = Mat::flat_len(target.ambient);
    let m_dim = source.m_dim;
    assert_eq!(m_images.len(), m_dim);
    let mut sys = RatMat::zeros(flat_len * m_dim, n0);
    let mut rhs = Vec::with_capacity(flat_len * m_dim);
    for (j, mj) in source.m_basis().iter().enumerate() {
        // α([Z, m_j]) via the m-coordinates of the source bracket
        let br = z.bracket(mj)?;
        let coords = source.g.coords_of(&br)?;
        if coords[0] != Scalar::zero() || coords[source.k_range()].iter().any(|x| !x.is_zero()) {
            return Err(CoreError::Singular("[k, m] escapes m".into()));
        }
        let mut w = Mat::zeros(target.ambient);
        for (i, c) in coords[source.m_range()].iter().enumerate() {
            if !c.is_zero() {
                w = w + m_images[i].scale_re(c);
            }
        }
        let wf = w.flatten_real();
        rhs.extend(wf);
        for a in 0..n0 {
            let comm = l0.basis_mat(a).bracket(&m_images[j])?;
            let cf = comm.flatten_real();
            for (r, x) in cf.into_iter().enumerate() {
                if !x.is_zero() {
                    *sys.at_mut(j * flat_len + r, a) = x;
                }
            }
        }
    }
    let sol = sys
        .solve(&rhs)
        .ok_or_else(|| CoreError::Singular("no equivariant k-image exists".into()))?;
    Ok(l0.from_coords(&sol))
}

/// Basis of the space of intertwiners L with T_z · L = L · S_z for all z:
/// the candidates for the l_1 component of α on m.
pub fn commutant_maps(pairs: &[(RatMat, RatMat)]) -> Vec<RatMat> {
    assert!(!pairs.is_empty());
    let rows_t = pairs[0].0.rows;
    let cols_s = pairs[0].1.cols;
    let nvar = rows_t * cols_s;
    let mut sys_rows: Vec<Vec<Scalar>> = Vec::new();
    for (t, s) in pairs {
        // (T L - L S)[r][c] = Σ_k T[r][k] L[k][c] - Σ_k L[r][k] S[k][c]
        for r in 0..rows_t {
            for c in 0..cols_s {
                let mut row = vec![Scalar::zero(); nvar];
                for k in 0..rows_t {
                    let x = t.at(r, k);
                    if !x.is_zero() {
                        row[k * cols_s + c] = &row[k * cols_s + c] + x;
                    }
                }
                for k in 0..cols_s {
                    let x = s.at(k, c);
                    if !x.is_zero() {
                        row[r * cols_s + k] = &row[r * cols_s + k] - x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    sys_rows.push(row);
                }
            }
        }
    }
    let sys = RatMat::from_rows(sys_rows);
    sys.nullspace()
        .into_iter()
        .map(|v| RatMat::from_fn(rows_t, cols_s, |r, c| v[r * cols_s + c].clone()))
        .collect()
}

/// Basis of the centralizer of the k-image inside l_0, the space available
/// to the l_0 component of α(h/k).
pub fn centralizer_in_l0(
    target: &GradedContactAlgebra,
    k_images: &[Mat],
) -> Result<Vec<Mat>, CoreError> {
    let l0 = target.grade(0);
    let n0 = l0.dim();
    if k_images.is_empty() {
        return Ok(l0.basis().to_vec());
    }
    let flat_len = Mat::flat_len(target.ambient);
    let mut sys = RatMat::zeros(flat_len * k_images.len(), n0);
    for (j, kim) in k_images.iter().enumerate() {
        for a in 0..n0 {
            let comm = l0.basis_mat(a).bracket(kim)?;
            for (r, x) in comm.flatten_real().into_iter().enumerate() {
                if !x.is_zero() {
                    *sys.at_mut(j * flat_len + r, a) = x;
                }
            }
        }
    }
    Ok(sys.nullspace().into_iter().map(|v| l0.from_coords(&v)).collect())
}
