//! CR targets su(p+1, q+1): the flat PSU extension, the O-family
//! one-parameter classes, and the quaternionic so* family.

use super::lagrangean::{c_param, ps, so_source_dim, usize_param};
use super::{param, Construction, Params};
use crate::algebra::complete_to_algebra;
use crate::contact::build_su_contact;
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::mat::Mat;
use crate::scalar::{cim, cre, int, norm_sqr, rat, CScalar, Scalar};
use crate::symmetric::{build_so_symmetric, build_sostar_symmetric, build_su_symmetric};
use num_traits::{One, Zero};
use std::sync::Arc;

fn cr_i_of_h(n: usize) -> Mat {
    let mut d = vec![-1i64; n + 2];
    d[0] = 1;
    d[n + 1] = 1;
    Mat::diag_int(&d)
}

fn cparam(params: &Params, re: &str, im: &str) -> Result<CScalar, CoreError> {
    Ok(CScalar::new(param(params, re)?, param(params, im)?))
}

/// The flat extension from (PSU(p+1,q), U(p,q)); b is a nonzero complex
/// parameter and the normality conditions force c = 1/2, d = 1/(2 b̄),
/// e = 1/(4 b b̄).
fn build_cr_psu(params: &Params) -> Result<ExtensionMap, CoreError> {
    let p = usize_param(params, "p")?;
    let q = usize_param(params, "q")?;
    let b = cparam(params, "b_re", "b_im")?;
    if b.is_zero() {
        return Err(CoreError::BadParameter("b must be nonzero".into()));
    }
    let n = p + q;
    let source = Arc::new(build_su_symmetric(p, q));
    let target = Arc::new(build_su_contact(p, q));
    let big = n + 2;
    let sig = |k: usize| if k <= p { int(1) } else { int(-1) };
    let bb = norm_sqr(&b);
    let bconj = crate::scalar::conj(&b);
    let half = cre(rat(1, 2));
    let dcoef = half.clone() / bconj.clone();
    let e1 = cre(Scalar::one() / (&bb * &int(4)));
    let brec = half.clone() / b.clone(); // 1/(2b)

    // image of the element with scalar slot a (purely imaginary) and complex
    // column x; mid is the u(p,q) middle block
    let image = |a: CScalar, x: Vec<CScalar>, mid: Option<&Mat>| -> Mat {
        let mut m = Mat::zeros(big);
        m.set(0, 0, half.clone() * a.clone());
        m.set(0, big - 1, e1.clone() * a.clone());
        m.set(big - 1, 0, cre(bb.clone()) * a.clone());
        m.set(big - 1, big - 1, half.clone() * a.clone());
        for k in 1..=n {
            let xk = &x[k - 1];
            if !xk.is_zero() {
                let cx = crate::scalar::conj(xk);
                let s = cre(sig(k));
                m.set(k, 0, b.clone() * xk.clone());
                m.set(k, big - 1, dcoef.clone() * xk.clone());
                // rows: -(1/(2b)) X̄ᵀ I and -b̄ X̄ᵀ I
                m.set(0, k, -(brec.clone() * cx.clone() * s.clone()));
                m.set(big - 1, k, -(bconj.clone() * cx * s));
            }
        }
        if let Some(a0) = mid {
            for r in 1..=n {
                for c in 1..=n {
                    m.set(r, c, a0.at(r, c).clone());
                }
            }
        }
        m
    };

    let mut images = Vec::with_capacity(source.dim());
    // hk: a = -n i, middle A = iE
    {
        let mut hk_mid = Mat::zeros(big);
        for k in 1..=n {
            hk_mid.set(k, k, cim(Scalar::one()));
        }
        images.push(image(cim(int(-(n as i64))), vec![CScalar::zero(); n], Some(&hk_mid)));
    }
    for k in 1..=n {
        let mut x = vec![CScalar::zero(); n];
        x[k - 1] = CScalar::one();
        images.push(image(CScalar::zero(), x, None));
    }
    for k in 1..=n {
        let mut x = vec![CScalar::zero(); n];
        x[k - 1] = cim(Scalar::one());
        images.push(image(CScalar::zero(), x, None));
    }
    for kb in source.k_basis() {
        let mut m = Mat::zeros(big);
        for r in 1..=n {
            for c in 1..=n {
                m.set(r, c, kb.at(r, c).clone());
            }
        }
        images.push(m);
    }
    ExtensionMap::from_images(source, target, &images, cr_i_of_h(n), params.clone()).map(|mut a| {
        a.family = Some("cr-psu".into());
        a
    })
}

/// The invariant t of the CR O-families from (b1, b2).
pub fn cr_so_t(c: i64, b1: &CScalar, b2: &CScalar) -> Result<Scalar, CoreError> {
    let dd = norm_sqr(b1) - norm_sqr(b2);
    if dd.is_zero() {
        return Err(CoreError::BadParameter("need |b1|^2 != |b2|^2".into()));
    }
    Ok(if c == -1 {
        let num = &(&b1.re * &b2.im) - &(&b2.re * &b1.im);
        &(&num * &int(2)) / &dd
    } else {
        (norm_sqr(b1) + norm_sqr(b2)) / dd
    })
}

/// O-family CR extension for given coefficients θ = (v1, v2, c1_im, e1):
/// the l_1 column is v1 X + v2 i X̄, the h/k image carries c1_im on the
/// imaginary diagonal and e1 on l_2.
fn cr_so_alpha_with(
    p: usize,
    q: usize,
    c: i64,
    b1: &CScalar,
    b2: &CScalar,
    theta: &[Scalar],
    params: &Params,
) -> Result<ExtensionMap, CoreError> {
    let n = p + q;
    let dd = norm_sqr(b1) - norm_sqr(b2);
    let nn = int(n as i64);
    let v1 = CScalar::new(theta[0].clone(), theta[1].clone());
    let v2 = CScalar::new(theta[2].clone(), theta[3].clone());
    let corner0 = theta[4].clone();
    let corner2 = theta[5].clone();
    let mid_coef = -&(&corner0 * &int(2)) / &nn;
    let i_c = cim(Scalar::one());

    let source = Arc::new(build_so_symmetric(p, q, c));
    let target = Arc::new(build_su_contact(p, q));
    let alg = target.algebra.clone();
    let big = n + 2;
    let star: Vec<(usize, usize)> = (1..=n).flat_map(|k| [(0usize, k), (big - 1, k)]).collect();

    let image = |a: Scalar, x: Vec<CScalar>, mid: Option<&Mat>| -> Result<Mat, CoreError> {
        let mut m = Mat::zeros(big);
        if !a.is_zero() {
            m.set(0, 0, cim(&corner0 * &a));
            m.set(0, big - 1, cim(&corner2 * &a));
            m.set(big - 1, 0, cim(&(&dd * &int(2)) * &a));
            m.set(big - 1, big - 1, cim(&corner0 * &a));
            for k in 1..=n {
                m.set(k, k, cim(&mid_coef * &a));
            }
        }
        for k in 1..=n {
            let xk = &x[k - 1];
            if xk.is_zero() {
                continue;
            }
            let cx = crate::scalar::conj(xk);
            m.set(k, 0, b1.clone() * xk.clone() - i_c.clone() * b2.clone() * cx.clone());
            m.set(k, big - 1, v1.clone() * xk.clone() + i_c.clone() * v2.clone() * cx);
        }
        if let Some(a0) = mid {
            for r in 1..=n {
                for cc in 1..=n {
                    m.set(r, cc, a0.at(r + 1, cc + 1).clone());
                }
            }
        }
        complete_to_algebra(&m, &star, &alg)
    };

    let mut images = Vec::with_capacity(source.dim());
    images.push(image(Scalar::one(), vec![CScalar::zero(); n], None)?);
    for k in 1..=n {
        let mut x = vec![CScalar::zero(); n];
        x[k - 1] = CScalar::one();
        images.push(image(Scalar::zero(), x, None)?);
    }
    for k in 1..=n {
        let mut x = vec![CScalar::zero(); n];
        x[k - 1] = cim(Scalar::one());
        images.push(image(Scalar::zero(), x, None)?);
    }
    for kb in source.k_basis() {
        images.push(image(Scalar::zero(), vec![CScalar::zero(); n], Some(kb))?);
    }
    ExtensionMap::from_images(source, target, &images, cr_i_of_h(n), params.clone()).map(|mut a| {
        a.family = Some("cr-so-c".into());
        a
    })
}

/// O-family CR extension for complex (b1, b2). The published solved display
/// seeds a Newton solve of the torsion + normality residuals; at c = +1 the
/// seed is already the exact solution, at c = -1 the printed coefficients
/// carry c = +1 artifacts and the solve lands on the correct ones.
fn build_cr_so(params: &Params) -> Result<ExtensionMap, CoreError> {
    let p = usize_param(params, "p")?;
    let q = usize_param(params, "q")?;
    let c = c_param(params)?;
    let b1 = cparam(params, "b1_re", "b1_im")?;
    let b2 = cparam(params, "b2_re", "b2_im")?;
    let n = p + q;
    if n < 1 {
        return Err(CoreError::BadParameter("need p + q >= 1".into()));
    }
    let t = cr_so_t(c, &b1, &b2)?;
    let dd = norm_sqr(&b1) - norm_sqr(&b2);
    let np1 = int(n as i64 + 1);
    let np2 = int(n as i64 + 2);
    let nn = int(n as i64);

    // seed values from the printed display
    let corner0 = &(&nn * &t) / &(&np1 * &int(2));
    let t2term = &(&(&np2 * &(&(&nn * &int(3)) + &int(2))) * &(&t * &t))
        / &(&(&(&np1 * &np1) * &int(8)) * &dd);
    let corner2 = if c == -1 {
        -&(Scalar::one() / &(&dd * &int(2))) - &t2term
    } else {
        &(Scalar::one() / &(&dd * &int(2))) - &t2term
    };
    let i_c = cim(Scalar::one());
    let tb = &(&(&np2 / &(&np1 * &int(4))) * &t) / &dd;
    let half_dd = cre(Scalar::one() / (&dd * &int(2)));
    let (v1, v2): (CScalar, CScalar) = if c == -1 {
        (
            i_c.clone() * b2.clone() * half_dd.clone() - b1.clone() * cre(tb.clone()),
            i_c.clone() * b1.clone() * half_dd.clone() + b2.clone() * cre(tb.clone()),
        )
    } else {
        (
            b1.clone() * half_dd.clone() - b1.clone() * cre(tb.clone()),
            b2.clone() * half_dd.clone() + b2.clone() * cre(tb.clone()),
        )
    };
    let seed = vec![
        v1.re.clone(),
        v1.im.clone(),
        v2.re.clone(),
        v2.im.clone(),
        corner0,
        corner2,
    ];
    let theta = super::solve::solve_normality(
        |th| cr_so_alpha_with(p, q, c, &b1, &b2, th, params),
        seed,
    )?;
    cr_so_alpha_with(p, q, c, &b1, &b2, &theta, params)
}

/// Quaternions as rational 4-vectors over (1, i, j, k).
pub type Quat = [Scalar; 4];

pub fn qmul(a: &Quat, b: &Quat) -> Quat {
    [
        &(&(&a[0] * &b[0]) - &(&a[1] * &b[1])) - &(&(&a[2] * &b[2]) + &(&a[3] * &b[3])),
        &(&(&a[0] * &b[1]) + &(&a[1] * &b[0])) + &(&(&a[2] * &b[3]) - &(&a[3] * &b[2])),
        &(&(&a[0] * &b[2]) - &(&a[1] * &b[3])) + &(&(&a[2] * &b[0]) + &(&a[3] * &b[1])),
        &(&(&a[0] * &b[3]) + &(&a[1] * &b[2])) + &(&(&a[3] * &b[0]) - &(&a[2] * &b[1])),
    ]
}

pub fn qconj(a: &Quat) -> Quat {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

pub fn qnorm2(a: &Quat) -> Scalar {
    a.iter().fold(Scalar::zero(), |acc, x| acc + x * x)
}

/// f(q) = (q1 + i q2, q3 + i q4).
pub fn f_split(q: &Quat) -> (CScalar, CScalar) {
    (CScalar::new(q[0].clone(), q[1].clone()), CScalar::new(q[2].clone(), q[3].clone()))
}

/// |σ|² - |τ|² in the commutant coordinates b = (σ_re, σ_im, τ_re, τ_im);
/// the flat locus of the family is t = 0.
pub fn sostar_t_raw(b: &Quat) -> Scalar {
    &(&(&b[0] * &b[0]) + &(&b[1] * &b[1])) - &(&(&b[2] * &b[2]) + &(&b[3] * &b[3]))
}

/// Precomputed b-independent-shape data for the so* CR family: source,
/// target, the l_{-1} image parts, the equivariance-pinned k-images, and the
/// centralizer basis available to α(h/k).
struct CrSostarCtx {
    source: Arc<crate::symmetric::SymmetricSpaceDatum>,
    target: Arc<crate::contact::GradedContactAlgebra>,
    m_minus: Vec<Mat>,
    k_images: Vec<Mat>,
    central: Vec<Mat>,
    star: Vec<(usize, usize)>,
}

/// Column blocks of the image of the quaternion column entry (z, w): the
/// equivariant complex coordinates are (z, w̄) and the four-parameter
/// commutant acts by (v1, v2) ↦ (σ v1 - τ v̄2, σ v2 + τ v̄1) with σ = s1 + i s2,
/// τ = s3 + i s4.
/// (v1, v2) = (σ z - τ w, σ w̄ + τ z̄): the commutant orbit of the equivariant
/// coordinates; the invariant hermitian form there is hyperbolic, so the
/// rational base change (v1 + v2, v1 - v2) lands in the diagonal-form target.
pub(super) fn sostar_col_pair(
    n: usize,
    src: &Mat,
    s: &Quat,
    k: usize,
) -> Option<(CScalar, CScalar)> {
    let h = n + 1;
    let sigma = CScalar::new(s[0].clone(), s[1].clone());
    let tau = CScalar::new(s[2].clone(), s[3].clone());
    let z = src.at(k, 0).clone();
    let wbar = crate::scalar::conj(src.at(k, h));
    if z.is_zero() && wbar.is_zero() {
        return None;
    }
    let v1 = sigma.clone() * z.clone() - tau.clone() * crate::scalar::conj(&wbar);
    let v2 = sigma * wbar + tau * crate::scalar::conj(&z);
    Some((v1.clone() + v2.clone(), v1 - v2))
}

fn sostar_col_entries(n: usize, src: &Mat, s: &Quat, col: usize, m: &mut Mat) {
    for k in 1..=n {
        if let Some((u1, u2)) = sostar_col_pair(n, src, s, k) {
            let cur = m.at(k, col).clone();
            m.set(k, col, cur + u1);
            let cur = m.at(n + k, col).clone();
            m.set(n + k, col, cur + u2);
        }
    }
}

fn cr_sostar_ctx(n: usize, b: &Quat) -> Result<CrSostarCtx, CoreError> {
    let source = Arc::new(build_sostar_symmetric(n));
    let target = Arc::new(build_su_contact(n, n));
    let alg = target.algebra.clone();
    let big = 2 * n + 2;
    let star: Vec<(usize, usize)> = (1..=2 * n).flat_map(|k| [(0usize, k), (big - 1, k)]).collect();
    let m_minus: Vec<Mat> = source
        .m_basis()
        .iter()
        .map(|src| {
            let mut m = Mat::zeros(big);
            sostar_col_entries(n, src, b, 0, &mut m);
            complete_to_algebra(&m, &star, &alg)
        })
        .collect::<Result<_, _>>()?;
    let k_images: Vec<Mat> = source
        .k_basis()
        .iter()
        .map(|z| super::solve::k_image_by_equivariance(&target, &source, &m_minus, z))
        .collect::<Result<_, _>>()?;
    let central = super::solve::centralizer_in_l0(&target, &k_images)?;
    Ok(CrSostarCtx { source, target, m_minus, k_images, central, star })
}

/// Assembles the extension at coefficients θ = (s0, e1, d1..d4, central…).
fn cr_sostar_alpha_with(
    ctx: &CrSostarCtx,
    n: usize,
    b: &Quat,
    theta: &[Scalar],
    params: &Params,
) -> Result<ExtensionMap, CoreError> {
    let _ = b;
    let big = 2 * n + 2;
    let alg = ctx.target.algebra.clone();
    assert_eq!(theta.len(), 6 + ctx.central.len());
    let s0 = &theta[0];
    let e1 = &theta[1];
    let d: Quat = [theta[2].clone(), theta[3].clone(), theta[4].clone(), theta[5].clone()];
    let central_coords = &theta[6..];

    let mut images = Vec::with_capacity(ctx.source.dim());
    {
        let mut m = ctx.target.grade(-2).basis_mat(0).scale_re(s0)
            + ctx.target.grade(2).basis_mat(0).scale_re(e1);
        for (c, z) in central_coords.iter().zip(&ctx.central) {
            m = m + z.scale_re(c);
        }
        images.push(m);
    }
    for (j, src) in ctx.source.m_basis().iter().enumerate() {
        let mut m = ctx.m_minus[j].clone();
        sostar_col_entries(n, src, &d, big - 1, &mut m);
        images.push(complete_to_algebra(&m, &ctx.star, &alg)?);
    }
    images.extend(ctx.k_images.iter().cloned());
    ExtensionMap::from_images(
        ctx.source.clone(),
        ctx.target.clone(),
        &images,
        cr_i_of_h(2 * n),
        params.clone(),
    )
    .map(|mut a| {
        a.family = Some("cr-sostar".into());
        a
    })
}

/// Extension from (SO*(2n+2), SO*(2n)) to su(n+1, n+1); the parameter is a
/// nonzero rational quaternion b in the commutant coordinates. The printed
/// coefficient formulas (with |b| read as the norm squared) seed a Newton
/// solve of the exact residuals.
fn build_cr_sostar(params: &Params) -> Result<ExtensionMap, CoreError> {
    let n = usize_param(params, "n")?;
    if n < 2 {
        return Err(CoreError::BadParameter("n must be >= 2".into()));
    }
    let b: Quat =
        [param(params, "b1")?, param(params, "b2")?, param(params, "b3")?, param(params, "b4")?];
    let nb = qnorm2(&b);
    if nb.is_zero() {
        return Err(CoreError::BadParameter("b must be nonzero".into()));
    }
    let ctx = cr_sostar_ctx(n, &b)?;
    let t = sostar_t_raw(&b);
    let tn1 = int(2 * n as i64 + 1);
    let np1 = int(n as i64 + 1);
    let den = &tn1 * &(&nb * &nb);
    let f_a = &(&(&tn1 * &nb) - &(&np1 * &t)) / &den;
    let f_b = &(&(&np1 * &nb) - &(&tn1 * &t)) / &den;
    // seed from the printed d-formula in the relabeled coordinates
    let d: Quat = [&b[0] * &f_a, &b[1] * &f_a, &b[2] * &f_b, &b[3] * &f_b];
    // the corner pairing of the base column map is -2 times the source
    // bracket form, so the regular l_{-2} coefficient sits at -2|b|²
    let mut seed = vec![
        -&(&nb * &int(2)),
        qnorm2(&d),
        d[0].clone(),
        d[1].clone(),
        d[2].clone(),
        d[3].clone(),
    ];
    seed.extend(vec![Scalar::zero(); ctx.central.len()]);
    let theta = super::solve::solve_normality(
        |th| cr_sostar_alpha_with(&ctx, n, &b, th, params),
        seed,
    )?;
    cr_sostar_alpha_with(&ctx, n, &b, &theta, params)
}

pub fn entries() -> Vec<Construction> {
    let mut out = Vec::new();

    out.push(Construction {
        name: "cr-psu",
        summary: "flat extension (PSU(p+1,q), U(p,q)) -> CR structure",
        param_domain: vec![
            ("p", "integer >= 1"),
            ("q", "integer >= 0"),
            ("b_re", "real part of b"),
            ("b_im", "imaginary part of b; b nonzero"),
        ],
        samples: vec![
            ps(&[("p", int(1)), ("q", int(0)), ("b_re", int(1)), ("b_im", int(0))]),
            ps(&[("p", int(1)), ("q", int(1)), ("b_re", int(1)), ("b_im", rat(1, 2))]),
            ps(&[("p", int(2)), ("q", int(0)), ("b_re", rat(2, 3)), ("b_im", int(-1))]),
            ps(&[("p", int(2)), ("q", int(1)), ("b_re", int(1)), ("b_im", int(1))]),
        ],
        builder: Box::new(build_cr_psu),
        expected_flat: Box::new(|_| true),
        expected_aut_dim: Box::new(|_, _, a| Some(a.target.dim())),
        expected_curvature: Some(Box::new(|a, _, _| Ok(Mat::zeros(a.target.ambient)))),
        notes: vec![],
    });

    out.push(Construction {
        name: "cr-so-c",
        summary: "O(p+2,q)/O(p+1,q+1) -> CR structure, one-parameter class",
        param_domain: vec![
            ("p", "integer >= 0"),
            ("q", "integer >= 0, p+q >= 1"),
            ("c", "+1 for so(p+2,q) (t >= 1), -1 for so(p+1,q+1) (t > -1)"),
            ("b1_re/b1_im", "complex b1"),
            ("b2_re/b2_im", "complex b2 with |b1| != |b2|"),
        ],
        samples: {
            let mut s = Vec::new();
            // c = -1 witnesses: t = 0, 3/4, 4/3, 3/4, 2
            for (pq, b1, b2im) in [
                ((1usize, 0usize), (int(1), int(0)), int(0)),
                ((1, 0), (int(1), int(0)), rat(1, 3)),
                ((1, 1), (int(1), int(0)), rat(1, 2)),
                ((2, 0), (int(1), int(0)), rat(1, 3)),
                ((1, 1), (int(1), int(1)), int(1)), // b1 = 1+i, b2 = i: t = 2
            ] {
                s.push(ps(&[
                    ("p", int(pq.0 as i64)),
                    ("q", int(pq.1 as i64)),
                    ("c", int(-1)),
                    ("b1_re", b1.0),
                    ("b1_im", b1.1),
                    ("b2_re", int(0)),
                    ("b2_im", b2im),
                ]));
            }
            // c = +1 witnesses: t = 1 (exceptional), 5/4, 5/3
            for (pq, b2re) in [
                ((1usize, 0usize), int(0)),
                ((1, 1), int(0)),
                ((1, 0), rat(1, 3)),
                ((2, 0), rat(1, 2)),
                ((1, 1), rat(1, 2)),
            ] {
                s.push(ps(&[
                    ("p", int(pq.0 as i64)),
                    ("q", int(pq.1 as i64)),
                    ("c", int(1)),
                    ("b1_re", int(1)),
                    ("b1_im", int(0)),
                    ("b2_re", b2re),
                    ("b2_im", int(0)),
                ]));
            }
            s
        },
        builder: Box::new(build_cr_so),
        expected_flat: Box::new(|p| {
            let Ok(c) = c_param(p) else { return false };
            let Ok(b1) = cparam(p, "b1_re", "b1_im") else { return false };
            let Ok(b2) = cparam(p, "b2_re", "b2_im") else { return false };
            let Ok(t) = cr_so_t(c, &b1, &b2) else { return false };
            let n = usize_param(p, "p").unwrap_or(0) + usize_param(p, "q").unwrap_or(0);
            // at n = 1 the c = +1, t = 1 point degenerates to the flat model
            t.is_zero() || (n == 1 && c == 1 && t == int(1))
        }),
        expected_aut_dim: Box::new(|params, flat, a| {
            if flat {
                return Some(a.target.dim());
            }
            let p = usize_param(params, "p").ok()?;
            let q = usize_param(params, "q").ok()?;
            let c = c_param(params).ok()?;
            let b1 = cparam(params, "b1_re", "b1_im").ok()?;
            let b2 = cparam(params, "b2_re", "b2_im").ok()?;
            let t = cr_so_t(c, &b1, &b2).ok()?;
            let base = so_source_dim(p, q);
            Some(if c == 1 && t == int(1) { base + 1 } else { base })
        }),
        expected_curvature: None,
        notes: vec![
            "no published κ table; the published claims are flatness ⇔ t = 0 and the automorphism dimensions"
                .into(),
        ],
    });

    out.push(Construction {
        name: "cr-sostar",
        summary: "(SO*(2n+2), SO*(2n)) -> su(n+1,n+1) CR structure",
        param_domain: vec![
            ("n", "integer >= 2"),
            ("b1..b4", "rational quaternion b != 0; invariant t = (b1²-b2²-b3²+b4²)/|b|²"),
        ],
        samples: vec![
            ps(&[("n", int(2)), ("b1", int(1)), ("b2", int(0)), ("b3", int(0)), ("b4", int(0))]),
            ps(&[("n", int(2)), ("b1", int(1)), ("b2", int(1)), ("b3", int(1)), ("b4", int(1))]),
            ps(&[("n", int(2)), ("b1", int(2)), ("b2", int(1)), ("b3", int(1)), ("b4", int(0))]),
            ps(&[
                ("n", int(2)),
                ("b1", rat(4, 5)),
                ("b2", int(0)),
                ("b3", rat(3, 5)),
                ("b4", int(0)),
            ]),
            ps(&[("n", int(3)), ("b1", int(1)), ("b2", int(0)), ("b3", int(0)), ("b4", int(0))]),
        ],
        builder: Box::new(build_cr_sostar),
        expected_flat: Box::new(|p| {
            let b: Result<Quat, CoreError> = (|| {
                Ok([param(p, "b1")?, param(p, "b2")?, param(p, "b3")?, param(p, "b4")?])
            })();
            b.map(|b| sostar_t_raw(&b).is_zero()).unwrap_or(false)
        }),
        expected_aut_dim: Box::new(|params, flat, a| {
            if flat {
                return Some(a.target.dim());
            }
            let n = usize_param(params, "n").ok()?;
            Some((n + 1) * (2 * n + 1))
        }),
        expected_curvature: None,
        notes: vec![
            "|b|, |d| are read as quaternion norms squared (scaling-consistent and rational)".into(),
        ],
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerates column-map conventions: (z-slot, w-slot) each from
    /// {z, z̄, w, w̄} with signs, optional S-mixing; prints which admit an
    /// equivariant k-image and a corner pairing proportional to the source
    /// bracket form.
    #[test]
    fn sostar_convention_search() {
        let n = 2usize;
        let source = Arc::new(build_sostar_symmetric(n));
        let target = Arc::new(build_su_contact(n, n));
        let alg = target.algebra.clone();
        let big = 2 * n + 2;
        let h = n + 1;
        let star: Vec<(usize, usize)> =
            (1..=2 * n).flat_map(|k| [(0usize, k), (big - 1, k)]).collect();
        // source bracket form: hk coefficient of [m_i, m_j]
        let m_dim = source.m_dim;
        let mut omega = vec![vec![Scalar::zero(); m_dim]; m_dim];
        for i in 0..m_dim {
            for j in 0..m_dim {
                let br = source.m_basis()[i].bracket(&source.m_basis()[j]).unwrap();
                let coords = source.g.coords_of(&br).unwrap();
                omega[i][j] = coords[0].clone();
            }
        }
        let variants: Vec<(&str, Box<dyn Fn(&CScalar, &CScalar) -> (CScalar, CScalar)>)> = vec![
            ("(z, w)", Box::new(|z: &CScalar, w: &CScalar| (z.clone(), w.clone()))),
            ("(z, wbar)", Box::new(|z, w| (z.clone(), crate::scalar::conj(w)))),
            ("(z+w, z-w)", Box::new(|z, w| (z.clone() + w.clone(), z.clone() - w.clone()))),
            (
                "(z+wbar, z-wbar)",
                Box::new(|z, w| {
                    let wb = crate::scalar::conj(w);
                    (z.clone() + wb.clone(), z.clone() - wb)
                }),
            ),
            (
                "(zbar+w, zbar-w)",
                Box::new(|z, w| {
                    let zb = crate::scalar::conj(z);
                    (zb.clone() + w.clone(), zb - w.clone())
                }),
            ),
            ("(w, zbar)", Box::new(|z, w| (w.clone(), crate::scalar::conj(z)))),
            ("(w, z)", Box::new(|z, w| (w.clone(), z.clone()))),
            ("(wbar, z)", Box::new(|z, w| (crate::scalar::conj(w), z.clone()))),
        ];
        for (name, f) in &variants {
            let m_minus: Result<Vec<Mat>, _> = source
                .m_basis()
                .iter()
                .map(|src| {
                    let mut m = Mat::zeros(big);
                    for k in 1..=n {
                        let z = src.at(k, 0).clone();
                        let w = src.at(k, h).clone();
                        if z.is_zero() && w.is_zero() {
                            continue;
                        }
                        let (v1, v2) = f(&z, &w);
                        m.set(k, 0, v1);
                        m.set(n + k, 0, v2);
                    }
                    complete_to_algebra(&m, &star, &alg)
                })
                .collect();
            let Ok(m_minus) = m_minus else {
                println!("{name}: completion fails");
                continue;
            };
            let keq: Result<Vec<Mat>, _> = source
                .k_basis()
                .iter()
                .map(|z| super::super::solve::k_image_by_equivariance(&target, &source, &m_minus, z))
                .collect();
            let Ok(_k_images) = keq else {
                println!("{name}: no equivariant k-image");
                continue;
            };
            // corner pairing of the images vs omega: proportional?
            let corner = target.grade(-2).basis_mat(0).clone();
            let cpos = corner
                .flatten_real()
                .iter()
                .position(|x| !x.is_zero())
                .unwrap();
            let cscale = corner.flatten_real()[cpos].clone();
            let mut ratio: Option<Scalar> = None;
            let mut proportional = true;
            for i in 0..m_dim {
                for j in 0..m_dim {
                    let br = m_minus[i].bracket(&m_minus[j]).unwrap();
                    let val = &br.flatten_real()[cpos] / &cscale;
                    let om = &omega[i][j];
                    if om.is_zero() {
                        if !val.is_zero() {
                            proportional = false;
                        }
                        continue;
                    }
                    let r = &val / om;
                    match &ratio {
                        None => ratio = Some(r),
                        Some(r0) => {
                            if *r0 != r {
                                proportional = false;
                            }
                        }
                    }
                }
            }
            println!(
                "{name}: equivariant OK; corner form proportional to omega: {proportional} (ratio {:?})",
                ratio.map(|r| r.to_string())
            );
        }
    }
}
