//! Lagrangean contact targets: the flat PGl extension and the O(p+2,q) /
//! O(p+1,q+1) one-parameter families with their exceptional cases.

use super::{param, param_or, Construction, Params};
use crate::contact::build_sl_contact;
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::linalg::RatMat;
use crate::mat::Mat;
use crate::scalar::{cre, int, rat, Scalar};
use crate::symmetric::{build_sl_para_symmetric, build_so_symmetric};
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

pub fn usize_param(params: &Params, name: &str) -> Result<usize, CoreError> {
    let v = param(params, name)?;
    if !v.is_integer() || v.is_negative() {
        return Err(CoreError::BadParameter(format!("{name} must be a nonnegative integer")));
    }
    v.numer()
        .try_into()
        .map_err(|_| CoreError::BadParameter(format!("{name} too large")))
}

pub fn c_param(params: &Params) -> Result<i64, CoreError> {
    let c = param(params, "c")?;
    if c == int(1) {
        Ok(1)
    } else if c == int(-1) {
        Ok(-1)
    } else {
        Err(CoreError::BadParameter("c must be 1 or -1".into()))
    }
}

pub fn ps(vals: &[(&str, Scalar)]) -> Params {
    vals.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// i(h) for the (1, n, 1) targets.
fn lagr_i_of_h(n: usize) -> Mat {
    let mut d = vec![-1i64; n + 2];
    d[0] = 1;
    d[n + 1] = 1;
    Mat::diag_int(&d)
}

/// The flat extension from (PGl(n+1,R), Gl(n,R)): the normality conditions
/// force c1 = 1/2, d1 = 1/(2 b1), d2 = 1/(2 b2), e1 = d1 d2 for any nonzero
/// b1, b2, and every such α is flat.
fn build_lagr_pgl(params: &Params) -> Result<ExtensionMap, CoreError> {
    let n = usize_param(params, "n")?;
    if n < 2 {
        return Err(CoreError::BadParameter("n must be >= 2".into()));
    }
    let b1 = param(params, "b1")?;
    let b2 = param(params, "b2")?;
    if b1.is_zero() || b2.is_zero() {
        return Err(CoreError::BadParameter("b1, b2 must be nonzero".into()));
    }
    let source = Arc::new(build_sl_para_symmetric(n));
    let target = Arc::new(build_sl_contact(n));
    let big = n + 2;
    let half = rat(1, 2);
    let d1 = &half / &b1;
    let d2 = &half / &b2;
    let e1 = &d1 * &d2;

    let mut images = Vec::with_capacity(source.dim());
    // h/k generator: a = n, A = -E
    {
        let mut m = Mat::zeros(big);
        let a = int(n as i64);
        m.set(0, 0, cre(&half * &a));
        m.set(0, big - 1, cre(&e1 * &a));
        for k in 1..=n {
            m.set(k, k, cre(int(-1)));
        }
        m.set(big - 1, 0, cre(&(&b1 * &b2) * &a));
        m.set(big - 1, big - 1, cre(&half * &a));
        images.push(m);
    }
    // m: X columns then Y rows
    for k in 1..=n {
        let mut m = Mat::zeros(big);
        m.set(k, 0, cre(b1.clone()));
        m.set(k, big - 1, cre(d2.clone()));
        images.push(m);
    }
    for k in 1..=n {
        let mut m = Mat::zeros(big);
        m.set(0, k, cre(d1.clone()));
        m.set(big - 1, k, cre(b2.clone()));
        images.push(m);
    }
    // k = sl(n) embeds as the middle block
    for kb in source.k_basis() {
        let mut m = Mat::zeros(big);
        for r in 1..=n {
            for c in 1..=n {
                m.set(r, c, kb.at(r, c).clone());
            }
        }
        images.push(m);
    }
    ExtensionMap::from_images(source, target, &images, lagr_i_of_h(n), params.clone()).map(
        |mut a| {
            a.family = Some("lagr-pgl".into());
            a
        },
    )
}

/// Shared builder for the O-family Lagrangean extensions with arbitrary
/// admissible (b1, b2, b3, b4): solves the four linear normality conditions
/// for d1..d4 and sets c1 = nγ/(2(n+1)δ), c2 = -nγ/((n+1)δ), e1 = d2d3 - d1d4.
/// `c1_shift` moves c1 off the solution locus (normality negative control).
pub fn lagr_so_alpha(
    p: usize,
    q: usize,
    c: i64,
    b: [Scalar; 4],
    c1_shift: Scalar,
    params: Params,
    family: &str,
) -> Result<ExtensionMap, CoreError> {
    let n = p + q;
    if n < 1 {
        return Err(CoreError::BadParameter("need p + q >= 1".into()));
    }
    let [b1, b2, b3, b4] = b;
    let delta = &(&b1 * &b4) - &(&b2 * &b3);
    if delta.is_zero() {
        return Err(CoreError::BadParameter("need b1 b4 - b2 b3 != 0".into()));
    }
    let cs = int(c);
    let gamma = &(&cs * &(&b1 * &b3)) + &(&b2 * &b4);
    let nn = int(n as i64);
    let np1 = int(n as i64 + 1);
    let c1 = &(&nn * &gamma) / &(&(&np1 * &int(2)) * &delta) + &c1_shift;
    let c2 = -&(&nn * &gamma) / &(&np1 * &delta);
    // the four linear conditions on d1..d4
    let sys = RatMat::from_rows(vec![
        vec![b4.clone(), -b3.clone(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), b2.clone(), -b1.clone()],
        vec![b2.clone(), -b1.clone(), -b4.clone(), b3.clone()],
        vec![b2.clone(), -b1.clone(), b4.clone(), -b3.clone()],
    ]);
    let rhs = vec![
        (-&(&b4 * &b4) - &(&cs * &(&b3 * &b3))) / &delta,
        (&(&b2 * &b2) + &(&cs * &(&b1 * &b1))) / &delta,
        -&(&nn * &gamma) / &(&np1 * &delta),
        &(&nn * &gamma) / &(&np1 * &delta) - &(&c1 * &int(2)),
    ];
    let d = sys
        .solve(&rhs)
        .ok_or_else(|| CoreError::Singular("normality conditions degenerate".into()))?;
    let (d1, d2, d3, d4) = (d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone());
    let e1 = &(&d2 * &d3) - &(&d1 * &d4);

    let source = Arc::new(build_so_symmetric(p, q, c));
    let target = Arc::new(build_sl_contact(n));
    let big = n + 2;
    let sig = |k: usize| if k <= p { int(1) } else { int(-1) };

    let mut images = Vec::with_capacity(source.dim());
    // h/k generator (a = 1)
    {
        let mut m = Mat::zeros(big);
        m.set(0, 0, cre(c1.clone()));
        m.set(0, big - 1, cre(e1.clone()));
        for k in 1..=n {
            m.set(k, k, cre(&c2 / &nn));
        }
        m.set(big - 1, 0, cre(delta.clone()));
        m.set(big - 1, big - 1, cre(-&c1 - &c2));
        images.push(m);
    }
    // m: X columns, then Y columns
    for k in 1..=n {
        let mut m = Mat::zeros(big);
        m.set(0, k, cre(&d1 * &sig(k)));
        m.set(k, 0, cre(b1.clone()));
        m.set(k, big - 1, cre(d3.clone()));
        m.set(big - 1, k, cre(&b3 * &sig(k)));
        images.push(m);
    }
    for k in 1..=n {
        let mut m = Mat::zeros(big);
        m.set(0, k, cre(&d2 * &sig(k)));
        m.set(k, 0, cre(b2.clone()));
        m.set(k, big - 1, cre(d4.clone()));
        m.set(big - 1, k, cre(&b4 * &sig(k)));
        images.push(m);
    }
    // k = so(p,q) embeds as the middle block
    for kb in source.k_basis() {
        let mut m = Mat::zeros(big);
        for r in 1..=n {
            for cc in 1..=n {
                m.set(r, cc, kb.at(r + 1, cc + 1).clone());
            }
        }
        images.push(m);
    }
    ExtensionMap::from_images(source, target, &images, lagr_i_of_h(n), params).map(|mut a| {
        a.family = Some(family.to_string());
        a
    })
}

fn build_lagr_so_c(params: &Params) -> Result<ExtensionMap, CoreError> {
    let p = usize_param(params, "p")?;
    let q = usize_param(params, "q")?;
    let c = c_param(params)?;
    let t = param(params, "t")?;
    let shift = param_or(params, "c1_shift", Scalar::zero());
    lagr_so_alpha(
        p,
        q,
        c,
        [Scalar::one(), Scalar::zero(), t, Scalar::one()],
        shift,
        params.clone(),
        "lagr-so-c",
    )
}

fn build_lagr_so_exc_a(params: &Params) -> Result<ExtensionMap, CoreError> {
    let p = usize_param(params, "p")?;
    let q = usize_param(params, "q")?;
    lagr_so_alpha(
        p,
        q,
        -1,
        [Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::one()],
        Scalar::zero(),
        params.clone(),
        "lagr-so-c-exc-a",
    )
}

fn build_lagr_so_exc_b(params: &Params) -> Result<ExtensionMap, CoreError> {
    let p = usize_param(params, "p")?;
    let q = usize_param(params, "q")?;
    lagr_so_alpha(
        p,
        q,
        -1,
        [Scalar::one(), Scalar::one(), int(-1), Scalar::one()],
        Scalar::zero(),
        params.clone(),
        "lagr-so-c-exc-b",
    )
}

/// Components (a; X; Y) of an O-family source element.
pub fn so_components(m: &Mat) -> (Scalar, Vec<Scalar>, Vec<Scalar>) {
    let n = m.size - 2;
    let a = m.at(0, 1).re.clone();
    let x: Vec<Scalar> = (1..=n).map(|k| m.at(k + 1, 0).re.clone()).collect();
    let y: Vec<Scalar> = (1..=n).map(|k| m.at(k + 1, 1).re.clone()).collect();
    (a, x, y)
}

/// Outer product u (vᵀ I) as an n×n grid.
fn outer_i(u: &[Scalar], v: &[Scalar], sig: &dyn Fn(usize) -> Scalar) -> Vec<Vec<Scalar>> {
    let n = u.len();
    (0..n).map(|r| (0..n).map(|c| &u[r] * &(&v[c] * &sig(c + 1))).collect()).collect()
}

fn grid_sub(a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    a.into_iter()
        .zip(b)
        .map(|(ra, rb)| ra.into_iter().zip(rb).map(|(x, y)| &x - &y).collect())
        .collect()
}

fn grid_add(a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    a.into_iter()
        .zip(b)
        .map(|(ra, rb)| ra.into_iter().zip(rb).map(|(x, y)| &x + &y).collect())
        .collect()
}

fn grid_scale(a: Vec<Vec<Scalar>>, s: &Scalar) -> Vec<Vec<Scalar>> {
    a.into_iter().map(|r| r.into_iter().map(|x| &x * s).collect()).collect()
}

/// uᵀ I v.
fn inner_i(u: &[Scalar], v: &[Scalar], sig: &dyn Fn(usize) -> Scalar) -> Scalar {
    u.iter()
        .zip(v)
        .enumerate()
        .fold(Scalar::zero(), |acc, (k, (a, b))| acc + a * &(&sig(k + 1) * b))
}

/// Assembles a Lagrangean κ value from its (0,·), middle, and (·,l_2) blocks.
fn lagr_kappa_mat(n: usize, row: Vec<Scalar>, middle: Vec<Vec<Scalar>>, col: Vec<Scalar>) -> Mat {
    let big = n + 2;
    let mut m = Mat::zeros(big);
    for k in 1..=n {
        m.set(0, k, cre(row[k - 1].clone()));
        m.set(k, big - 1, cre(col[k - 1].clone()));
        for c in 1..=n {
            m.set(k, c, cre(middle[k - 1][c - 1].clone()));
        }
    }
    m
}

fn source_pq(alpha: &ExtensionMap) -> Result<(usize, usize, i64), CoreError> {
    match &alpha.source.family {
        crate::symmetric::SymmetricFamily::SoC { p, q, c } => Ok((*p, *q, *c)),
        _ => Err(CoreError::BadParameter("not an O-family source".into())),
    }
}

/// Theorem 5.6 main-family table. Two c-dependent readings, both invisible
/// at c = +1 and fixed by exact comparison at n = 1 against the dim-3
/// tables: the (0,·) coefficient is (n+2)t/(n+1) (t² + c) (printed 1 + ct²),
/// and the Y, W slots enter all blocks through cY, cW.
fn lagr_so_c_table(alpha: &ExtensionMap, v: &Mat, w: &Mat) -> Result<Mat, CoreError> {
    let (p, _q, c) = source_pq(alpha)?;
    let n = alpha.source.m_dim / 2;
    let t = param(&alpha.params, "t")?;
    let cs = int(c);
    let sig = move |k: usize| if k <= p { int(1) } else { int(-1) };
    let (a, x, y) = so_components(v);
    let (b, z, w_) = so_components(w);
    let y: Vec<Scalar> = y.into_iter().map(|v| &v * &cs).collect();
    let w_: Vec<Scalar> = w_.into_iter().map(|v| &v * &cs).collect();
    let np1 = int(n as i64 + 1);
    let np2 = int(n as i64 + 2);

    let coef_row = &(&np2 * &t) / &np1 * (&(&t * &t) + &cs);
    let row: Vec<Scalar> = (0..n)
        .map(|k| {
            let d = &(&b * &x[k]) - &(&a * &z[k]);
            &coef_row * &(&d * &sig(k + 1))
        })
        .collect();

    let r1m = grid_sub(outer_i(&w_, &x, &sig), outer_i(&z, &y, &sig));
    let r2m = grid_sub(outer_i(&x, &w_, &sig), outer_i(&y, &z, &sig));
    let r3m = grid_sub(outer_i(&z, &x, &sig), outer_i(&x, &z, &sig));
    let r1s = &inner_i(&w_, &x, &sig) - &inner_i(&y, &z, &sig);
    let mut middle = grid_scale(r1m, &np1);
    middle = grid_sub(middle, r2m);
    middle = grid_add(middle, grid_scale(r3m, &(&(&np2 * &cs) * &t)));
    middle = grid_scale(middle, &(&t / &np1));
    for k in 0..n {
        middle[k][k] = &middle[k][k] - &(&(&t * &r1s) / &np1);
    }

    let coef_col = -&(&np2 * &t) / &np1;
    let col: Vec<Scalar> = (0..n)
        .map(|k| {
            let v1 = &(&t * &(&(&b * &x[k]) - &(&a * &z[k])))
                + &(&cs * &(&(&b * &y[k]) - &(&a * &w_[k])));
            &coef_col * &v1
        })
        .collect();
    Ok(lagr_kappa_mat(n, row, middle, col))
}

fn lagr_exc_a_table(alpha: &ExtensionMap, v: &Mat, w: &Mat) -> Result<Mat, CoreError> {
    let (p, _q, _c) = source_pq(alpha)?;
    let n = alpha.source.m_dim / 2;
    let sig = move |k: usize| if k <= p { int(1) } else { int(-1) };
    let (a, x, y) = so_components(v);
    let (b, z, w_) = so_components(w);
    let np1 = int(n as i64 + 1);
    let np2 = int(n as i64 + 2);
    let coef = &np2 / &np1;
    let row: Vec<Scalar> = (0..n)
        .map(|k| {
            let d = &(&(&b * &y[k]) - &(&a * &z[k])) + &(&(&b * &x[k]) - &(&a * &w_[k]));
            &coef * &(&d * &sig(k + 1))
        })
        .collect();
    let r1m = grid_sub(outer_i(&w_, &x, &sig), outer_i(&y, &z, &sig));
    let r2m = grid_sub(outer_i(&x, &w_, &sig), outer_i(&z, &y, &sig));
    let r3m = grid_sub(outer_i(&y, &w_, &sig), outer_i(&w_, &y, &sig));
    let r1s = &inner_i(&w_, &x, &sig) - &inner_i(&y, &z, &sig);
    let mut middle = grid_scale(r1m, &np1);
    middle = grid_sub(middle, r2m);
    middle = grid_sub(middle, grid_scale(r3m, &np2));
    middle = grid_scale(middle, &(Scalar::one() / &np1));
    for k in 0..n {
        middle[k][k] = &middle[k][k] - &(&r1s / &np1);
    }
    Ok(lagr_kappa_mat(n, row, middle, vec![Scalar::zero(); n]))
}

fn lagr_exc_b_table(alpha: &ExtensionMap, v: &Mat, w: &Mat) -> Result<Mat, CoreError> {
    let (p, _q, _c) = source_pq(alpha)?;
    let n = alpha.source.m_dim / 2;
    let sig = move |k: usize| if k <= p { int(1) } else { int(-1) };
    let (_a, x, y) = so_components(v);
    let (_b, z, w_) = so_components(w);
    let np1 = int(n as i64 + 1);
    let np2 = int(n as i64 + 2);
    let nn = int(n as i64);
    let r1m = grid_sub(outer_i(&x, &w_, &sig), outer_i(&z, &y, &sig));
    let r2m = grid_sub(outer_i(&w_, &x, &sig), outer_i(&y, &z, &sig));
    let r3m = grid_sub(outer_i(&x, &z, &sig), outer_i(&z, &x, &sig));
    let r4m = grid_sub(outer_i(&y, &w_, &sig), outer_i(&w_, &y, &sig));
    let r1s = &inner_i(&w_, &x, &sig) - &inner_i(&y, &z, &sig);
    let mut middle = grid_add(grid_scale(r1m, &nn), grid_scale(r2m, &nn));
    middle = grid_add(middle, grid_scale(r3m, &np2));
    middle = grid_sub(middle, grid_scale(r4m, &np2));
    middle = grid_scale(middle, &(Scalar::one() / &(&np1 * &int(2))));
    for k in 0..n {
        middle[k][k] = &middle[k][k] - &(&r1s / &np1);
    }
    Ok(lagr_kappa_mat(n, vec![Scalar::zero(); n], middle, vec![Scalar::zero(); n]))
}

/// dim so(p+2, q) = dim so(p+1, q+1).
pub fn so_source_dim(p: usize, q: usize) -> usize {
    let m = p + q + 2;
    m * (m - 1) / 2
}

pub fn entries() -> Vec<Construction> {
    let mut out = Vec::new();

    out.push(Construction {
        name: "lagr-pgl",
        summary: "flat extension (PGl(n+1,R), Gl(n,R)) -> Lagrangean contact",
        param_domain: vec![
            ("n", "n >= 2 integer"),
            ("b1", "nonzero rational"),
            ("b2", "nonzero rational"),
        ],
        samples: vec![
            ps(&[("n", int(2)), ("b1", int(1)), ("b2", int(1))]),
            ps(&[("n", int(2)), ("b1", int(2)), ("b2", rat(1, 2))]),
            ps(&[("n", int(3)), ("b1", int(1)), ("b2", int(1))]),
            ps(&[("n", int(3)), ("b1", rat(-1, 3)), ("b2", int(5))]),
            ps(&[("n", int(4)), ("b1", int(1)), ("b2", int(2))]),
        ],
        builder: Box::new(build_lagr_pgl),
        expected_flat: Box::new(|_| true),
        expected_aut_dim: Box::new(|_, _, a| Some(a.target.dim())),
        expected_curvature: Some(Box::new(|a, _, _| Ok(Mat::zeros(a.target.ambient)))),
        notes: vec![],
    });

    out.push(Construction {
        name: "lagr-so-c",
        summary: "O(p+2,q)/O(p+1,q+1) -> Lagrangean contact, one-parameter class",
        param_domain: vec![
            ("p", "integer >= 0"),
            ("q", "integer >= 0, p+q >= 1"),
            ("c", "+1 for so(p+2,q), -1 for so(p+1,q+1)"),
            ("t", "rational; t = 0 is the flat point"),
        ],
        samples: {
            let mut s = Vec::new();
            for (p, q) in [(2usize, 0usize), (1, 1), (2, 1)] {
                for c in [1i64, -1] {
                    for t in [int(0), int(1), int(2), rat(1, 2)] {
                        s.push(ps(&[
                            ("p", int(p as i64)),
                            ("q", int(q as i64)),
                            ("c", int(c)),
                            ("t", t.clone()),
                        ]));
                    }
                }
            }
            s
        },
        builder: Box::new(build_lagr_so_c),
        expected_flat: Box::new(|p| p.get("t").map(|t| t.is_zero()).unwrap_or(false)),
        expected_aut_dim: Box::new(|params, flat, a| {
            if flat {
                Some(a.target.dim())
            } else {
                let p = usize_param(params, "p").ok()?;
                let q = usize_param(params, "q").ok()?;
                Some(so_source_dim(p, q))
            }
        }),
        expected_curvature: Some(Box::new(lagr_so_c_table)),
        notes: vec![
            "the (0,*) table coefficient is read as (n+2)t/(n+1) (t^2+c); the printed 1+ct^2 is its c = +1 form"
                .into(),
        ],
    });

    out.push(Construction {
        name: "lagr-so-c-exc-a",
        summary: "O(p+1,q+1) exceptional case b1^2 = b2^2, b3^2 < b4^2",
        param_domain: vec![("p", "integer >= 0"), ("q", "integer >= 0, p+q >= 1")],
        samples: vec![
            ps(&[("p", int(2)), ("q", int(0))]),
            ps(&[("p", int(1)), ("q", int(1))]),
            ps(&[("p", int(2)), ("q", int(1))]),
        ],
        builder: Box::new(build_lagr_so_exc_a),
        expected_flat: Box::new(|_| false),
        expected_aut_dim: Box::new(|params, _, _| {
            let p = usize_param(params, "p").ok()?;
            let q = usize_param(params, "q").ok()?;
            Some(so_source_dim(p, q))
        }),
        expected_curvature: Some(Box::new(lagr_exc_a_table)),
        notes: vec![],
    });

    out.push(Construction {
        name: "lagr-so-c-exc-b",
        summary: "O(p+1,q+1) double-exceptional case b1^2 = b2^2, b3^2 = b4^2",
        param_domain: vec![("p", "integer >= 0"), ("q", "integer >= 0, p+q >= 1")],
        samples: vec![
            ps(&[("p", int(2)), ("q", int(0))]),
            ps(&[("p", int(1)), ("q", int(1))]),
            ps(&[("p", int(2)), ("q", int(1))]),
        ],
        builder: Box::new(build_lagr_so_exc_b),
        expected_flat: Box::new(|_| false),
        expected_aut_dim: Box::new(|params, flat, a| {
            if flat {
                return Some(a.target.dim());
            }
            let p = usize_param(params, "p").ok()?;
            let q = usize_param(params, "q").ok()?;
            Some(so_source_dim(p, q) + 1)
        }),
        expected_curvature: Some(Box::new(lagr_exc_b_table)),
        notes: vec!["automorphisms gain the central l_0 element with trivial l_2 action".into()],
    });

    out
}
