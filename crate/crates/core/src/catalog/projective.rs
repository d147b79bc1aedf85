//! Contact projective targets sp(2n+2, R): the O-family extension and the
//! quaternionic so* extension.

use super::lagrangean::{c_param, ps, so_source_dim, usize_param};
use super::{Construction, Params};
use crate::algebra::complete_to_algebra;
use crate::contact::build_sp_contact;
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::mat::Mat;
use crate::scalar::{cre, int, rat, Scalar};
use crate::symmetric::{build_so_symmetric, build_sostar_symmetric};
use num_traits::Zero;
use std::sync::Arc;

fn sp_i_of_h(w: usize) -> Mat {
    let mut d = vec![1i64; w + 2];
    d[0] = -1;
    d[w + 1] = -1;
    Mat::diag_int(&d)
}

/// O-family extension to sp(2n+2, R); parameter free. The (1,2) middle block
/// carries c/(n+1) aI: the printed 1/(n+1) is its c = +1 form (fixed against
/// the dim-3 display and verified by the normality residuals).
fn build_proj_so(params: &Params) -> Result<ExtensionMap, CoreError> {
    let p = usize_param(params, "p")?;
    let q = usize_param(params, "q")?;
    let c = c_param(params)?;
    let n = p + q;
    if n < 2 {
        return Err(CoreError::BadParameter(
            "n must be >= 2 (n = 1 is covered by the dim3-sp4 entries)".into(),
        ));
    }
    let source = Arc::new(build_so_symmetric(p, q, c));
    let target = Arc::new(build_sp_contact(n));
    let big = 2 * n + 2;
    let sig = |k: usize| if k <= p { int(1) } else { int(-1) };
    let np1 = int(n as i64 + 1);
    let nn = int(n as i64);
    let cs = int(c);
    let half = |x: &Scalar| x / &int(2);
    let coef = half(&(&nn / &np1)); // n/(2(n+1))
    let corner = -(&(&cs * &(&nn * &nn)) / &(&(&np1 * &np1) * &int(2))); // -2cn²/(4(n+1)²)

    // image of (a; X1; X2; A)
    let image = |a: Scalar, x1: Vec<Scalar>, x2: Vec<Scalar>, mid: Option<&Mat>| -> Mat {
        let mut m = Mat::zeros(big);
        if !a.is_zero() {
            m.set(0, big - 1, cre(&corner * &a));
            m.set(big - 1, 0, cre(&a * &int(2)));
            for k in 1..=n {
                // the aI blocks at (1,2) and (2,1)
                m.set(k, n + k, cre(&(&(&cs / &np1) * &a) * &sig(k)));
                m.set(n + k, k, cre(&(-&(Scalar::from_integer(1.into()) / &np1) * &a) * &sig(k)));
            }
        }
        for k in 1..=n {
            if !x1[k - 1].is_zero() {
                let v = &x1[k - 1];
                m.set(0, k, cre(-&(&coef * &(v * &sig(k)))));
                m.set(k, 0, cre(v.clone()));
                m.set(n + k, big - 1, cre(&coef * &(v * &sig(k))));
                m.set(big - 1, n + k, cre(-v.clone()));
            }
            if !x2[k - 1].is_zero() {
                let v = &x2[k - 1];
                m.set(0, n + k, cre(-&(&(&cs * &coef) * v)));
                m.set(n + k, 0, cre(v * &sig(k)));
                m.set(k, big - 1, cre(-&(&(&cs * &coef) * v)));
                m.set(big - 1, k, cre(v * &sig(k)));
            }
        }
        if let Some(a0) = mid {
            // A at (1,1) and I A I at (2,2)
            for r in 1..=n {
                for cc in 1..=n {
                    let e = a0.at(r + 1, cc + 1).clone();
                    if !e.is_zero() {
                        m.set(r, cc, e.clone());
                        m.set(n + r, n + cc, cre(&(&sig(r) * &sig(cc)) * &e.re));
                    }
                }
            }
        }
        m
    };

    let mut images = Vec::with_capacity(source.dim());
    images.push(image(Scalar::from_integer(1.into()), vec![Scalar::zero(); n], vec![Scalar::zero(); n], None));
    for k in 1..=n {
        let mut x1 = vec![Scalar::zero(); n];
        x1[k - 1] = Scalar::from_integer(1.into());
        images.push(image(Scalar::zero(), x1, vec![Scalar::zero(); n], None));
    }
    for k in 1..=n {
        let mut x2 = vec![Scalar::zero(); n];
        x2[k - 1] = Scalar::from_integer(1.into());
        images.push(image(Scalar::zero(), vec![Scalar::zero(); n], x2, None));
    }
    for kb in source.k_basis() {
        images.push(image(Scalar::zero(), vec![Scalar::zero(); n], vec![Scalar::zero(); n], Some(kb)));
    }
    ExtensionMap::from_images(source, target, &images, sp_i_of_h(2 * n), params.clone()).map(
        |mut a| {
            a.family = Some("proj-so-c".into());
            a
        },
    )
}

/// The published κ table of the O-family contact projective extension,
/// blocks (1, n, n, 1). R2 is read with the signature matrix inserted
/// (X2ᵀ I Y1 - X1ᵀ I Y2), which the display leaves implicit.
fn proj_so_table(alpha: &ExtensionMap, v: &Mat, w: &Mat) -> Result<Mat, CoreError> {
    let (p, c) = match &alpha.source.family {
        crate::symmetric::SymmetricFamily::SoC { p, c, .. } => (*p, *c),
        _ => return Err(CoreError::BadParameter("not an O-family source".into())),
    };
    let n = alpha.source.m_dim / 2;
    let big = 2 * n + 2;
    let sig = |k: usize| if k <= p { int(1) } else { int(-1) };
    let cs = int(c);
    let np1 = int(n as i64 + 1);
    let np2 = int(n as i64 + 2);
    let nn = int(n as i64);
    let comp = |m: &Mat| -> (Vec<Scalar>, Vec<Scalar>) {
        let x1: Vec<Scalar> = (1..=n).map(|k| m.at(k + 1, 0).re.clone()).collect();
        let x2: Vec<Scalar> = (1..=n).map(|k| m.at(k + 1, 1).re.clone()).collect();
        (x1, x2)
    };
    let (x1, x2) = comp(v);
    let (y1, y2) = comp(w);
    let anti = |u: &[Scalar], vv: &[Scalar]| -> Vec<Vec<Scalar>> {
        // u vᵀ - v uᵀ
        (0..n)
            .map(|r| (0..n).map(|cc| &(&u[r] * &vv[cc]) - &(&vv[r] * &u[cc])).collect())
            .collect()
    };
    let symm = |u: &[Scalar], vv: &[Scalar]| -> Vec<Vec<Scalar>> {
        // u vᵀ + v uᵀ
        (0..n)
            .map(|r| (0..n).map(|cc| &(&u[r] * &vv[cc]) + &(&vv[r] * &u[cc])).collect())
            .collect()
    };
    // R1 = (n+2)/(2(n+1)) (X1 Y1ᵀ - Y1 X1ᵀ + c X2 Y2ᵀ - c Y2 X2ᵀ)
    let c1 = &np2 / &(&np1 * &int(2));
    let a11 = anti(&x1, &y1);
    let a22 = anti(&x2, &y2);
    let r1: Vec<Vec<Scalar>> = (0..n)
        .map(|r| (0..n).map(|cc| &(&c1 * &a11[r][cc]) + &(&(&c1 * &cs) * &a22[r][cc])).collect())
        .collect();
    // R2 = 1/(n+1) (X2ᵀ I Y1 - X1ᵀ I Y2), a scalar
    let dot_i = |u: &[Scalar], vv: &[Scalar]| -> Scalar {
        (0..n).fold(Scalar::zero(), |acc, k| acc + &(&u[k] * &vv[k]) * &sig(k + 1))
    };
    let r2 = &(&dot_i(&x2, &y1) - &dot_i(&x1, &y2)) / &np1;
    // R3 = n/(2(n+1)) (X1 Y2ᵀ + Y2 X1ᵀ - X2 Y1ᵀ - Y1 X2ᵀ)
    let c3 = &nn / &(&np1 * &int(2));
    let s12 = symm(&x1, &y2);
    let s21 = symm(&x2, &y1);
    let r3: Vec<Vec<Scalar>> =
        (0..n).map(|r| (0..n).map(|cc| &(&c3 * &s12[r][cc]) - &(&c3 * &s21[r][cc])).collect()).collect();

    let mut m = Mat::zeros(big);
    for r in 1..=n {
        for cc in 1..=n {
            // (1,1) block R1; (2,2) block I R1 I
            m.set(r, cc, cre(r1[r - 1][cc - 1].clone()));
            m.set(
                n + r,
                n + cc,
                cre(&(&sig(r) * &sig(cc)) * &r1[r - 1][cc - 1]),
            );
            // (1,2) block -c R3 I - R2 I; (2,1) block I R3 + I R2
            let e12 = -&(&(&cs * &r3[r - 1][cc - 1]) * &sig(cc))
                - &(if r == cc { &r2 * &sig(cc) } else { Scalar::zero() });
            m.set(r, n + cc, cre(e12));
            let e21 = &(&sig(r) * &r3[r - 1][cc - 1])
                + &(if r == cc { &sig(r) * &r2 } else { Scalar::zero() });
            m.set(n + r, cc, cre(e21));
        }
    }
    Ok(m)
}

/// Extension from (SO*(2n+2), SO*(2n)) to sp(4n+2, R); parameter free.
fn build_proj_sostar(params: &Params) -> Result<ExtensionMap, CoreError> {
    let n = usize_param(params, "n")?;
    if n < 2 {
        return Err(CoreError::BadParameter("n must be >= 2".into()));
    }
    let source = Arc::new(build_sostar_symmetric(n));
    let target = Arc::new(build_sp_contact(2 * n));
    let alg = target.algebra.clone();
    let big = 4 * n + 2;
    let h = n + 1; // source half size
    let tn1 = int(2 * n as i64 + 1);
    let nn2 = int(2 * n as i64); // 2n
    let corner = -(&(&nn2 * &nn2) / &(&tn1 * &tn1)); // -4n²/(2n+1)²
    let lam = &nn2 / &tn1; // 2n/(2n+1)
    // star positions: row 0 and row big-1, middle columns
    let star: Vec<(usize, usize)> =
        (1..=4 * n).flat_map(|k| [(0usize, k), (big - 1, k)]).collect();

    // block row offsets for (X1, X2, X3, X4) inside the middle
    let off = |blk: usize, k: usize| blk * n + k; // blk in 0..4, k in 1..=n

    let image = |src: &Mat| -> Result<Mat, CoreError> {
        let a = src.at(0, h).im.clone();
        let mut m = Mat::zeros(big);
        if !a.is_zero() {
            m.set(0, big - 1, cre(&corner * &a));
            m.set(big - 1, 0, cre(a.clone()));
            // D1 = -a/(2n+1) E in the D slots
            let dv = -&a / &tn1;
            for k in 1..=n {
                m.set(off(0, k), off(2, k), cre(-dv.clone()));
                m.set(off(1, k), off(3, k), cre(dv.clone()));
                m.set(off(2, k), off(0, k), cre(dv.clone()));
                m.set(off(3, k), off(1, k), cre(-dv.clone()));
            }
        }
        // m-part: quaternion column entries
        for k in 1..=n {
            let z = src.at(k, 0);
            let w = src.at(k, h);
            let x = [z.re.clone(), z.im.clone(), w.re.clone(), w.im.clone()];
            if x.iter().all(|v| v.is_zero()) {
                continue;
            }
            // l_{-1} column: (X1, X2, X3, -X4)
            let cur = m.at(off(0, k), 0).clone();
            m.set(off(0, k), 0, cur + cre(x[0].clone()));
            let cur = m.at(off(1, k), 0).clone();
            m.set(off(1, k), 0, cur + cre(x[1].clone()));
            let cur = m.at(off(2, k), 0).clone();
            m.set(off(2, k), 0, cur + cre(x[2].clone()));
            let cur = m.at(off(3, k), 0).clone();
            m.set(off(3, k), 0, cur + cre(-x[3].clone()));
            // l_1 column: (2n/(2n+1)) (-X3, -X4, X1, -X2)
            let cur = m.at(off(0, k), big - 1).clone();
            m.set(off(0, k), big - 1, cur + cre(-&(&lam * &x[2])));
            let cur = m.at(off(1, k), big - 1).clone();
            m.set(off(1, k), big - 1, cur + cre(-&(&lam * &x[3])));
            let cur = m.at(off(2, k), big - 1).clone();
            m.set(off(2, k), big - 1, cur + cre(&lam * &x[0]));
            let cur = m.at(off(3, k), big - 1).clone();
            m.set(off(3, k), big - 1, cur + cre(-&(&lam * &x[1])));
        }
        // k-part: A, B skew; C skew; D symmetric, in the 4x4 block pattern
        for r in 1..=n {
            for cc in 1..=n {
                let z1 = src.at(r, cc);
                let z2 = src.at(r, h + cc);
                let (av, bv) = (z1.re.clone(), z1.im.clone());
                let (cv, dv) = (z2.re.clone(), z2.im.clone());
                let add = |m: &mut Mat, rr: usize, c2: usize, val: &Scalar| {
                    if !val.is_zero() {
                        let cur = m.at(rr, c2).clone();
                        m.set(rr, c2, cur + cre(val.clone()));
                    }
                };
                // [[A, -B, -D, -C], [B, A, -C, D], [D, C, A, -B], [C, -D, B, A]]
                add(&mut m, off(0, r), off(0, cc), &av);
                add(&mut m, off(0, r), off(1, cc), &-bv.clone());
                add(&mut m, off(0, r), off(2, cc), &-dv.clone());
                add(&mut m, off(0, r), off(3, cc), &-cv.clone());
                add(&mut m, off(1, r), off(0, cc), &bv);
                add(&mut m, off(1, r), off(1, cc), &av);
                add(&mut m, off(1, r), off(2, cc), &-cv.clone());
                add(&mut m, off(1, r), off(3, cc), &dv);
                add(&mut m, off(2, r), off(0, cc), &dv);
                add(&mut m, off(2, r), off(1, cc), &cv);
                add(&mut m, off(2, r), off(2, cc), &av);
                add(&mut m, off(2, r), off(3, cc), &-bv.clone());
                add(&mut m, off(3, r), off(0, cc), &cv);
                add(&mut m, off(3, r), off(1, cc), &-dv.clone());
                add(&mut m, off(3, r), off(2, cc), &bv);
                add(&mut m, off(3, r), off(3, cc), &av);
            }
        }
        complete_to_algebra(&m, &star, &alg)
    };

    let images: Vec<Mat> = (0..source.dim())
        .map(|j| image(source.g.basis_mat(j)))
        .collect::<Result<_, _>>()?;
    ExtensionMap::from_images(source, target, &images, sp_i_of_h(4 * n), params.clone()).map(
        |mut a| {
            a.family = Some("proj-sostar".into());
            a
        },
    )
}

/// The published R1..R8 table of the so* contact projective extension.
fn proj_sostar_table(alpha: &ExtensionMap, v: &Mat, w: &Mat) -> Result<Mat, CoreError> {
    let n = alpha.source.m_dim / 4;
    let big = 4 * n + 2;
    let h = n + 1;
    let tn1 = int(2 * n as i64 + 1);
    let comp = |m: &Mat| -> [Vec<Scalar>; 4] {
        let mut x = [vec![], vec![], vec![], vec![]];
        for part in 0..4 {
            x[part] = (1..=n)
                .map(|k| {
                    let z = m.at(k, 0);
                    let wq = m.at(k, h);
                    match part {
                        0 => z.re.clone(),
                        1 => z.im.clone(),
                        2 => wq.re.clone(),
                        _ => wq.im.clone(),
                    }
                })
                .collect();
        }
        x
    };
    let x = comp(v);
    let y = comp(w);
    let outer = |u: &[Scalar], vv: &[Scalar]| -> Vec<Vec<Scalar>> {
        (0..n).map(|r| (0..n).map(|cc| &u[r] * &vv[cc]).collect()).collect()
    };
    let gsub = |a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
        a.into_iter()
            .zip(b)
            .map(|(ra, rb)| ra.into_iter().zip(rb).map(|(p, q)| &p - &q).collect())
            .collect()
    };
    let gadd = |a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
        a.into_iter()
            .zip(b)
            .map(|(ra, rb)| ra.into_iter().zip(rb).map(|(p, q)| &p + &q).collect())
            .collect()
    };
    let gscale = |a: Vec<Vec<Scalar>>, s: &Scalar| -> Vec<Vec<Scalar>> {
        a.into_iter().map(|r| r.into_iter().map(|p| &p * s).collect()).collect()
    };
    let dot = |u: &[Scalar], vv: &[Scalar]| -> Scalar {
        u.iter().zip(vv).fold(Scalar::zero(), |acc, (p, q)| acc + p * q)
    };
    // pair antisymmetrizations X_a Y_bᵀ - Y_a X_bᵀ
    let pair = |a: usize, b: usize| -> Vec<Vec<Scalar>> { gsub(outer(&x[a], &y[b]), outer(&y[a], &x[b])) };
    let inv = Scalar::one() / &tn1;
    use num_traits::One;

    let p11_44 = gadd(pair(0, 0), pair(3, 3));
    let p22_33 = gadd(pair(1, 1), pair(2, 2));
    let r1 = gsub(gscale(p11_44.clone(), &inv), p22_33.clone());
    let r2 = gsub(p11_44, gscale(p22_33, &inv));
    let p13_42 = gadd(pair(0, 2), pair(3, 1));
    let p24_31 = gadd(pair(1, 3), pair(2, 0));
    let r3 = gsub(gscale(gscale(p13_42.clone(), &inv), &int(-1)), p24_31.clone());
    let r4 = gadd(p13_42, gscale(p24_31, &inv));
    // symmetric-style combinations for R5..R8
    let q14 = gsub(gadd(pair(0, 3), vec![vec![Scalar::zero(); n]; n]), gscale(vec![vec![Scalar::zero(); n]; n], &Scalar::one()));
    let s14 = gsub(outer(&x[0], &y[3]), outer(&y[0], &x[3]));
    let s41 = gsub(outer(&x[3], &y[0]), outer(&y[3], &x[0]));
    let m14 = gsub(s14.clone(), s41.clone());
    let s23 = gsub(outer(&x[1], &y[2]), outer(&y[1], &x[2]));
    let s32 = gsub(outer(&x[2], &y[1]), outer(&y[2], &x[1]));
    let m23 = gsub(s23.clone(), s32.clone());
    let tr_term = &(&(&dot(&x[0], &y[3]) - &dot(&x[3], &y[0])) + &(&dot(&x[1], &y[2]) - &dot(&x[2], &y[1])))
        * &(&int(2) / &tn1);
    let mut r5 = gsub(gscale(m14.clone(), &inv), m23.clone());
    let mut r6 = gadd(gscale(m23.clone(), &inv), gscale(m14.clone(), &int(-1)));
    for k in 0..n {
        r5[k][k] = &r5[k][k] - &tr_term;
        r6[k][k] = &r6[k][k] - &tr_term;
    }
    let s12 = gsub(outer(&x[0], &y[1]), outer(&y[0], &x[1]));
    let s43 = gsub(outer(&x[3], &y[2]), outer(&y[3], &x[2]));
    let m12_43 = gsub(s12, s43);
    let s21 = gsub(outer(&x[1], &y[0]), outer(&y[1], &x[0]));
    let s34 = gsub(outer(&x[2], &y[3]), outer(&y[2], &x[3]));
    let m21_34 = gsub(s21, s34);
    let r7 = gadd(gscale(m12_43.clone(), &inv), m21_34.clone());
    let r8 = gsub(gscale(m21_34, &(-inv.clone())), m12_43);
    let _ = q14;

    let off = |blk: usize, k: usize| blk * n + k;
    let mut m = Mat::zeros(big);
    let blocks: [[&Vec<Vec<Scalar>>; 4]; 4] = [
        [&r1, &r3, &r5, &r7],
        [&r4, &r2, &r8, &r6],
        [&r5, &r7, &r1, &r3],
        [&r8, &r6, &r4, &r2],
    ];
    let signs: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, 1, 1], [-1, 1, 1, -1], [1, -1, -1, 1]];
    for br in 0..4 {
        for bc in 0..4 {
            for r in 1..=n {
                for cc in 1..=n {
                    let val = &blocks[br][bc][r - 1][cc - 1] * &int(signs[br][bc]);
                    if !val.is_zero() {
                        m.set(off(br, r), off(bc, cc), cre(val));
                    }
                }
            }
        }
    }
    Ok(m)
}

pub fn entries() -> Vec<Construction> {
    let mut out = Vec::new();

    out.push(Construction {
        name: "proj-so-c",
        summary: "O(p+2,q)/O(p+1,q+1) -> contact projective structure, unique",
        param_domain: vec![
            ("p", "integer >= 0"),
            ("q", "integer >= 0, p+q >= 2"),
            ("c", "+1 for so(p+2,q), -1 for so(p+1,q+1)"),
        ],
        samples: {
            let mut s = Vec::new();
            for (p, q) in [(2usize, 0usize), (1, 1), (2, 1)] {
                for c in [1i64, -1] {
                    s.push(ps(&[("p", int(p as i64)), ("q", int(q as i64)), ("c", int(c))]));
                }
            }
            s
        },
        builder: Box::new(build_proj_so),
        expected_flat: Box::new(|_| false),
        expected_aut_dim: Box::new(|params, flat, a| {
            if flat {
                return Some(a.target.dim());
            }
            let p = usize_param(params, "p").ok()?;
            let q = usize_param(params, "q").ok()?;
            Some(so_source_dim(p, q))
        }),
        expected_curvature: Some(Box::new(proj_so_table)),
        notes: vec![
            "the (1,2) aI block of α carries c/(n+1); the printed 1/(n+1) is its c = +1 form".into(),
        ],
    });

    out.push(Construction {
        name: "proj-sostar",
        summary: "(SO*(2n+2), SO*(2n)) -> sp(4n+2,R) contact projective, unique",
        param_domain: vec![("n", "integer >= 2")],
        samples: vec![ps(&[("n", int(2))])],
        builder: Box::new(build_proj_sostar),
        expected_flat: Box::new(|_| false),
        expected_aut_dim: Box::new(|_, _, _| None),
        expected_curvature: Some(Box::new(proj_sostar_table)),
        notes: vec!["no published automorphism statement; the computed dimension is reported".into()],
    });

    let _ = rat(1, 2);
    out
}
