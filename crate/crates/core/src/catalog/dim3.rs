//! The dimension-3 constructions: so(3)/so(2) and so(2,1)/so(1,1) extended
//! to sl(3,R), su(2,1) and sp(4,R).
//!
//! The su(2,1) families are stored in the M1-rescaled form whose entries are
//! rational functions of u = t²; the published invariant is s = u + c/u.

use super::{param, Construction, Params};
use crate::algebra::complete_to_algebra;
use crate::contact::{build_sl_contact, build_sp_contact, build_su_contact, GradedContactAlgebra};
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::mat::Mat;
use crate::scalar::{cim, cre, int, rat, CScalar, Scalar};
use crate::symmetric::{build_so_symmetric, SymmetricSpaceDatum};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Components (e, x1, x2) of a dim-3 source element.
pub fn dim3_components(m: &Mat) -> (Scalar, Scalar, Scalar) {
    (m.at(0, 1).re.clone(), m.at(2, 0).re.clone(), m.at(2, 1).re.clone())
}

fn sources() -> (Arc<SymmetricSpaceDatum>, Arc<SymmetricSpaceDatum>) {
    (Arc::new(build_so_symmetric(1, 0, 1)), Arc::new(build_so_symmetric(1, 0, -1)))
}

/// Builds an extension from a display: a closure producing the image matrix
/// of the source element with components (e, x1, x2).
fn from_display(
    source: Arc<SymmetricSpaceDatum>,
    target: Arc<GradedContactAlgebra>,
    i_of_h: Mat,
    params: Params,
    display: impl Fn(Scalar, Scalar, Scalar) -> Result<Mat, CoreError>,
) -> Result<ExtensionMap, CoreError> {
    let images = vec![
        display(Scalar::one(), Scalar::zero(), Scalar::zero())?,
        display(Scalar::zero(), Scalar::one(), Scalar::zero())?,
        display(Scalar::zero(), Scalar::zero(), Scalar::one())?,
    ];
    ExtensionMap::from_images(source, target, &images, i_of_h, params)
}

fn re(x: &Scalar) -> CScalar {
    cre(x.clone())
}

fn im(x: &Scalar) -> CScalar {
    cim(x.clone())
}

/// The su(2,1) displays leave two entries to the algebra structure.
fn su_star_positions() -> Vec<(usize, usize)> {
    vec![(0, 1), (2, 1)]
}

fn sl3_row_display(rows: [[Scalar; 3]; 3]) -> Result<Mat, CoreError> {
    Ok(Mat::from_fn(3, |r, c| re(&rows[r][c])))
}

fn check_positive(t: &Scalar, name: &str) -> Result<(), CoreError> {
    use num_traits::Signed;
    if t.is_positive() {
        Ok(())
    } else {
        Err(CoreError::BadParameter(format!("{name} must be > 0, got {t}")))
    }
}

fn samples_t(values: &[(&str, i64, i64)]) -> Vec<Params> {
    values
        .iter()
        .map(|(name, n, d)| {
            let mut p = BTreeMap::new();
            p.insert(name.to_string(), rat(*n, *d));
            p
        })
        .collect()
}

/// α for so(3)/so(2) → sl(3,R), one-parameter class t ≥ 0.
fn build_sl3_so3(params: &Params) -> Result<ExtensionMap, CoreError> {
    let t = param(params, "t")?;
    let (so3, _) = sources();
    let target = Arc::new(build_sl_contact(1));
    let i_of_h = Mat::diag_int(&[-1, 1, -1]);
    let t2 = &t * &t;
    from_display(so3, target, i_of_h, params.clone(), move |e, x1, x2| {
        sl3_row_display([
            [
                &t / &int(4) * &e,
                -(&(&t2 * &int(3)) + &int(4)) / &int(4) * &x1 + &t / &int(4) * &x2,
                -(&(&t2 * &int(15)) + &int(16)) / &int(16) * &e,
            ],
            [x1.clone(), -&t / &int(2) * &e, &t * &rat(-3, 4) * &x1 - &x2],
            [e.clone(), &t * &x1 + &x2, &t / &int(4) * &e],
        ])
    })
    .map(|mut a| {
        a.family = Some("dim3-sl3-so3".into());
        a
    })
}

fn build_sl3_so21_a(params: &Params) -> Result<ExtensionMap, CoreError> {
    let t = param(params, "t")?;
    let (_, so21) = sources();
    let target = Arc::new(build_sl_contact(1));
    let i_of_h = Mat::diag_int(&[-1, 1, -1]);
    let t2 = &t * &t;
    from_display(so21, target, i_of_h, params.clone(), move |e, x1, x2| {
        sl3_row_display([
            [
                -&t / &int(4) * &e,
                (&(&t2 * &int(3)) - &int(4)) / &int(4) * &x1 - &t / &int(4) * &x2,
                (&int(16) - &(&t2 * &int(15))) / &int(16) * &e,
            ],
            [x1.clone(), &t / &int(2) * &e, &t * &rat(3, 4) * &x1 + &x2],
            [e.clone(), &t * &x1 + &x2, -&t / &int(4) * &e],
        ])
    })
    .map(|mut a| {
        a.family = Some("dim3-sl3-so21-a".into());
        a
    })
}

fn build_sl3_so21_b(params: &Params) -> Result<ExtensionMap, CoreError> {
    let (_, so21) = sources();
    let target = Arc::new(build_sl_contact(1));
    let i_of_h = Mat::diag_int(&[-1, 1, -1]);
    from_display(so21, target, i_of_h, params.clone(), |e, x1, x2| {
        sl3_row_display([
            [
                rat(1, 4) * &e,
                -&x1 - &(rat(3, 4) * &x2),
                rat(1, 16) * &e,
            ],
            [&x1 + &x2, rat(-1, 2) * &e, rat(1, 4) * &x1 + rat(1, 4) * &x2],
            [e.clone(), x2.clone(), rat(1, 4) * &e],
        ])
    })
    .map(|mut a| {
        a.family = Some("dim3-sl3-so21-b".into());
        a
    })
}

fn build_sl3_so21_c(params: &Params) -> Result<ExtensionMap, CoreError> {
    let (_, so21) = sources();
    let target = Arc::new(build_sl_contact(1));
    let i_of_h = Mat::diag_int(&[-1, 1, -1]);
    from_display(so21, target, i_of_h, params.clone(), |e, x1, x2| {
        sl3_row_display([
            [
                rat(1, 4) * &e,
                rat(-1, 8) * &x1 + rat(1, 8) * &x2,
                rat(1, 32) * &e,
            ],
            [&x1 + &x2, rat(-1, 2) * &e, rat(1, 8) * &x1 + rat(1, 8) * &x2],
            [int(2) * &e, -&x1 + &x2, rat(1, 4) * &e],
        ])
    })
    .map(|mut a| {
        a.family = Some("dim3-sl3-so21-c".into());
        a
    })
}

/// α for so(3)/so(2) or so(2,1)/so(1,1) → su(2,1), parameter u = t² > 0;
/// the source sign enters through csrc = ±1.
fn build_su21(params: &Params, csrc: i64, family: &'static str) -> Result<ExtensionMap, CoreError> {
    let u = param(params, "u")?;
    check_positive(&u, "u")?;
    if csrc == -1 {
        // admissibility s = 1/u - u > -2, i.e. u² - 2u - 1 < 0
        let s = Scalar::one() / &u - &u;
        if s <= int(-2) {
            return Err(CoreError::BadParameter(format!(
                "u = {u} gives s = {s} outside the admissible range s > -2"
            )));
        }
    }
    let (so3, so21) = sources();
    let source = if csrc == 1 { so3 } else { so21 };
    let target = Arc::new(build_su_contact(1, 0));
    let alg = target.algebra.clone();
    let i_of_h = Mat::diag_int(&[-1, 1, -1]);
    let u2 = &u * &u;
    // coefficients of the rescaled display; sign of u² flips with the source
    let cu2 = if csrc == 1 { u2.clone() } else { -u2.clone() };
    let diag = (Scalar::one() + &cu2) / (&u * &int(8));
    let corner2 = if csrc == 1 {
        -(&(&u2 * &u2) * &int(15) - &(&u2 * &int(34)) + &int(15)) / (&u * &int(128))
    } else {
        -(&(&u2 * &u2) * &int(15) + &(&u2 * &int(34)) + &int(15)) / (&u * &int(128))
    };
    let (v1, v2) = if csrc == 1 {
        ((int(5) - &u2 * &int(3)) / &int(16), (&u2 * &int(5) - &int(3)) / (&u * &int(16)))
    } else {
        ((&u2 * &int(3) + &int(5)) / &int(16), -(&u2 * &int(5) + &int(3)) / (&u * &int(16)))
    };
    from_display(source, target, i_of_h, params.clone(), move |e, x1, x2| {
        let mut m = Mat::zeros(3);
        m.set(0, 0, im(&(&diag * &e)));
        m.set(0, 2, im(&(&corner2 * &e)));
        m.set(1, 0, re(&x1) + im(&(&x2 / &u)));
        m.set(1, 1, im(&(-(&diag * &int(2)) * &e)));
        m.set(1, 2, re(&(&v1 * &x1)) + im(&(&v2 * &x2)));
        m.set(2, 0, im(&(&e * &int(2) / &u)));
        m.set(2, 2, im(&(&diag * &e)));
        complete_to_algebra(&m, &su_star_positions(), &alg)
    })
    .map(|mut a| {
        a.family = Some(family.into());
        a
    })
}

fn build_sp4(params: &Params, csrc: i64, family: &'static str) -> Result<ExtensionMap, CoreError> {
    let (so3, so21) = sources();
    let source = if csrc == 1 { so3 } else { so21 };
    let target = Arc::new(build_sp_contact(1));
    let i_of_h = Mat::diag_int(&[-1, 1, 1, -1]);
    // set s = -c: the two displays differ by the signs of the e- and x2-entries
    // in the upper triangle
    let s = int(-csrc);
    from_display(source, target, i_of_h, params.clone(), move |e, x1, x2| {
        let mut m = Mat::zeros(4);
        m.set(0, 1, re(&(rat(-1, 4) * &x1)));
        m.set(0, 2, re(&(&s * &(rat(1, 4) * &x2))));
        m.set(0, 3, re(&(&s * &(rat(1, 8) * &e))));
        m.set(1, 0, re(&x1));
        m.set(1, 2, re(&(&s * &(rat(-1, 2) * &e))));
        m.set(1, 3, re(&(&s * &(rat(1, 4) * &x2))));
        m.set(2, 0, re(&x2));
        m.set(2, 1, re(&(rat(-1, 2) * &e)));
        m.set(2, 3, re(&(rat(1, 4) * &x1)));
        m.set(3, 0, re(&(int(2) * &e)));
        m.set(3, 1, re(&x2));
        m.set(3, 2, re(&(-x1.clone())));
        Ok(m)
    })
    .map(|mut a| {
        a.family = Some(family.into());
        a
    })
}

/// The pre-normality general α for sl(3,R) targets, used by the move tests:
/// all eleven display coefficients are free.
pub fn general_sl3_alpha(csrc: i64, coeffs: &BTreeMap<String, Scalar>) -> Result<ExtensionMap, CoreError> {
    let g = |n: &str| param(coeffs, n);
    let (a1, a2) = (g("a1")?, g("a2")?);
    let (b1, b2, b3, b4) = (g("b1")?, g("b2")?, g("b3")?, g("b4")?);
    let (c1, d1, d2, d3, d4) = (g("c1")?, g("d1")?, g("d2")?, g("d3")?, g("d4")?);
    let delta = &(&b1 * &b4) - &(&b2 * &b3);
    if delta.is_zero() {
        return Err(CoreError::BadParameter("need b1 b4 - b2 b3 != 0".into()));
    }
    let (so3, so21) = sources();
    let source = if csrc == 1 { so3 } else { so21 };
    let target = Arc::new(build_sl_contact(1));
    let i_of_h = Mat::diag_int(&[-1, 1, -1]);
    from_display(source, target, i_of_h, coeffs.clone(), move |e, x1, x2| {
        sl3_row_display([
            [&a1 * &e, &d1 * &x1 + &d2 * &x2, &c1 * &e],
            [&b1 * &x1 + &b2 * &x2, &a2 * &e, &d3 * &x1 + &d4 * &x2],
            [&delta * &e, &b3 * &x1 + &b4 * &x2, -(&a1 + &a2) * &e],
        ])
    })
    .map(|mut a| {
        a.family = Some("dim3-sl3-general".into());
        a
    })
}

/// κ table shared by the sl(3,R) families: entries (0,1) and (1,2) as linear
/// combinations of (h x1 - e y1) and (h x2 - e y2).
fn sl3_kappa_table(
    c01_1: Scalar,
    c01_2: Scalar,
    c12_1: Scalar,
    c12_2: Scalar,
) -> impl Fn(&ExtensionMap, &Mat, &Mat) -> Result<Mat, CoreError> + Send + Sync {
    move |_alpha, v, w| {
        let (e, x1, x2) = dim3_components(v);
        let (h, y1, y2) = dim3_components(w);
        let d1 = &(&h * &x1) - &(&e * &y1);
        let d2 = &(&h * &x2) - &(&e * &y2);
        let mut m = Mat::zeros(3);
        m.set(0, 1, re(&(&(&c01_1 * &d1) + &(&c01_2 * &d2))));
        m.set(1, 2, re(&(&(&c12_1 * &d1) + &(&c12_2 * &d2))));
        Ok(m)
    }
}

fn su21_kappa_table(u: Scalar) -> impl Fn(&ExtensionMap, &Mat, &Mat) -> Result<Mat, CoreError> + Send + Sync {
    move |alpha, v, w| {
        let (e, x1, x2) = dim3_components(v);
        let (h, y1, y2) = dim3_components(w);
        let d1 = &(&h * &x1) - &(&e * &y1);
        let d2 = &(&h * &x2) - &(&e * &y2);
        let u2 = &u * &u;
        let f = Scalar::one() - &u2 * &u2; // 1 - u⁴
        let coef_re = &(&f * &int(3)) / &(&u2 * &int(16));
        let coef_im = &(&f * &int(3)) / &(&u * &int(16));
        let mut m = Mat::zeros(3);
        m.set(1, 2, re(&(&coef_re * &d2)) + im(&(&coef_im * &d1)));
        complete_to_algebra(&m, &su_star_positions(), &alpha.target.algebra)
    }
}

fn zero_table() -> impl Fn(&ExtensionMap, &Mat, &Mat) -> Result<Mat, CoreError> + Send + Sync {
    |alpha, _v, _w| Ok(Mat::zeros(alpha.target.ambient))
}

pub fn entries() -> Vec<Construction> {
    let mut out = Vec::new();

    out.push(Construction {
        name: "dim3-sl3-so3",
        summary: "so(3)/so(2) -> sl(3,R), one-parameter class t >= 0",
        param_domain: vec![("t", "t >= 0 rational")],
        samples: samples_t(&[("t", 0, 1), ("t", 1, 1), ("t", 2, 1), ("t", 1, 2), ("t", 5, 1)]),
        builder: Box::new(build_sl3_so3),
        expected_flat: Box::new(|p| p.get("t").map(|t| t.is_zero()).unwrap_or(false)),
        expected_aut_dim: Box::new(|_, flat, a| Some(if flat { a.target.dim() } else { 3 })),
        expected_curvature: Some(Box::new(move |a, v, w| {
            let t = param(&a.params, "t")?;
            let t2 = &t * &t;
            sl3_kappa_table(
                (&t * &(&t2 + &int(1))) * rat(3, 2),
                Scalar::zero(),
                -&t2 * &rat(3, 2),
                -&t * &rat(3, 2),
            )(a, v, w)
        })),
        notes: vec!["curvature entries 3(t^3+t)/2 and -3t^2/2, -3t/2".into()],
    });

    out.push(Construction {
        name: "dim3-sl3-so21-a",
        summary: "so(2,1)/so(1,1) -> sl(3,R), case b1^2 > b2^2, t >= 0",
        param_domain: vec![("t", "t >= 0 rational")],
        samples: samples_t(&[("t", 0, 1), ("t", 1, 1), ("t", 2, 1), ("t", 1, 2), ("t", 5, 1)]),
        builder: Box::new(build_sl3_so21_a),
        expected_flat: Box::new(|p| p.get("t").map(|t| t.is_zero()).unwrap_or(false)),
        expected_aut_dim: Box::new(|_, flat, a| Some(if flat { a.target.dim() } else { 3 })),
        expected_curvature: Some(Box::new(move |a, v, w| {
            let t = param(&a.params, "t")?;
            let t2 = &t * &t;
            sl3_kappa_table(
                (&t * &(&t2 - &int(1))) * rat(3, 2),
                Scalar::zero(),
                -&t2 * &rat(3, 2),
                -&t * &rat(3, 2),
            )(a, v, w)
        })),
        notes: vec!["curvature entries 3(t^3-t)/2 and -3t^2/2, -3t/2".into()],
    });

    out.push(Construction {
        name: "dim3-sl3-so21-b",
        summary: "so(2,1)/so(1,1) -> sl(3,R), case b1^2 = b2^2, b3^2 < b4^2",
        param_domain: vec![],
        samples: vec![BTreeMap::new()],
        builder: Box::new(build_sl3_so21_b),
        expected_flat: Box::new(|_| false),
        expected_aut_dim: Box::new(|_, _, _| Some(3)),
        expected_curvature: Some(Box::new(|a, v, w| {
            sl3_kappa_table(rat(3, 2), rat(3, 2), Scalar::zero(), Scalar::zero())(a, v, w)
        })),
        notes: vec!["curvature entry 3/2 (h x1 - e y1) + 3/2 (h x2 - e y2)".into()],
    });

    out.push(Construction {
        name: "dim3-sl3-so21-c",
        summary: "so(2,1)/so(1,1) -> sl(3,R), case b1^2 = b2^2, b3^2 = b4^2 (flat)",
        param_domain: vec![],
        samples: vec![BTreeMap::new()],
        builder: Box::new(build_sl3_so21_c),
        expected_flat: Box::new(|_| true),
        expected_aut_dim: Box::new(|_, _, a| Some(a.target.dim())),
        expected_curvature: Some(Box::new(|a, v, w| zero_table()(a, v, w))),
        notes: vec![],
    });

    out.push(Construction {
        name: "dim3-su21-so3",
        summary: "so(3)/so(2) -> su(2,1), parameter u = t^2 > 0 (s = u + 1/u >= 2)",
        param_domain: vec![("u", "u > 0 rational; the invariant is s = u + 1/u")],
        samples: samples_t(&[("u", 1, 1), ("u", 2, 1), ("u", 3, 1), ("u", 1, 2), ("u", 5, 1)]),
        builder: Box::new(|p| build_su21(p, 1, "dim3-su21-so3")),
        expected_flat: Box::new(|p| p.get("u").map(|u| *u == int(1)).unwrap_or(false)),
        expected_aut_dim: Box::new(|_, flat, a| Some(if flat { a.target.dim() } else { 3 })),
        expected_curvature: Some(Box::new(|a, v, w| {
            let u = param(&a.params, "u")?;
            su21_kappa_table(u)(a, v, w)
        })),
        notes: vec!["entries are rational in u = t^2 after the M1 rescale by diag(1/t, 1, t)".into()],
    });

    out.push(Construction {
        name: "dim3-su21-so21",
        summary: "so(2,1)/so(1,1) -> su(2,1), parameter u = t^2 with s = 1/u - u > -2",
        param_domain: vec![("u", "0 < u < 1 + sqrt(2); the invariant is s = 1/u - u")],
        samples: samples_t(&[("u", 1, 1), ("u", 2, 1), ("u", 1, 2)]),
        builder: Box::new(|p| build_su21(p, -1, "dim3-su21-so21")),
        expected_flat: Box::new(|p| p.get("u").map(|u| *u == int(1)).unwrap_or(false)),
        expected_aut_dim: Box::new(|_, flat, a| Some(if flat { a.target.dim() } else { 3 })),
        expected_curvature: Some(Box::new(|a, v, w| {
            let u = param(&a.params, "u")?;
            su21_kappa_table(u)(a, v, w)
        })),
        notes: vec!["entries are rational in u = t^2 after the M1 rescale by diag(1/t, 1, t)".into()],
    });

    out.push(Construction {
        name: "dim3-sp4-so21",
        summary: "so(2,1)/so(1,1) -> sp(4,R), unique and flat",
        param_domain: vec![],
        samples: vec![BTreeMap::new()],
        builder: Box::new(|p| build_sp4(p, -1, "dim3-sp4-so21")),
        expected_flat: Box::new(|_| true),
        expected_aut_dim: Box::new(|_, _, a| Some(a.target.dim())),
        expected_curvature: Some(Box::new(|a, v, w| zero_table()(a, v, w))),
        notes: vec!["the display's 1/8e token is read as (1/8)e".into()],
    });

    out.push(Construction {
        name: "dim3-sp4-so3",
        summary: "so(3)/so(2) -> sp(4,R), unique and flat",
        param_domain: vec![],
        samples: vec![BTreeMap::new()],
        builder: Box::new(|p| build_sp4(p, 1, "dim3-sp4-so3")),
        expected_flat: Box::new(|_| true),
        expected_aut_dim: Box::new(|_, _, a| Some(a.target.dim())),
        expected_curvature: Some(Box::new(|a, v, w| zero_table()(a, v, w))),
        notes: vec![],
    });

    out
}
