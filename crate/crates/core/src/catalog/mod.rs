//! The named constructions with their expected results, the verification
//! driver, and the suite runner.

mod cr;
mod dim3;
mod lagrangean;
mod projective;
mod solve;

use crate::automorphism::{holonomy_from_ops, infinitesimal_automorphisms, ConnectionOps, SeedConvention};
use crate::error::CoreError;
use crate::extension::ExtensionMap;
use crate::mat::Mat;
use crate::report::Report;
use crate::scalar::{format_scalar, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;

pub use dim3::general_sl3_alpha;

pub type Params = BTreeMap<String, Scalar>;

type Builder = Box<dyn Fn(&Params) -> Result<ExtensionMap, CoreError> + Send + Sync>;
type FlatPredicate = Box<dyn Fn(&Params) -> bool + Send + Sync>;
type AutDim = Box<dyn Fn(&Params, bool, &ExtensionMap) -> Option<usize> + Send + Sync>;
type ExpectedCurvature =
    Box<dyn Fn(&ExtensionMap, &Mat, &Mat) -> Result<Mat, CoreError> + Send + Sync>;

/// One named construction from the catalog.
pub struct Construction {
    pub name: &'static str,
    pub summary: &'static str,
    /// (parameter name, admissible-set description)
    pub param_domain: Vec<(&'static str, &'static str)>,
    /// suite sample grid
    pub samples: Vec<Params>,
    pub builder: Builder,
    pub expected_flat: FlatPredicate,
    /// expected automorphism dimension; None when no published value exists
    pub expected_aut_dim: AutDim,
    /// closed-form curvature evaluator on source pre-images, when published
    pub expected_curvature: Option<ExpectedCurvature>,
    pub notes: Vec<String>,
}

impl Construction {
    pub fn default_params(&self) -> Params {
        self.samples.first().cloned().unwrap_or_default()
    }
}

/// All catalog entries, in the order of the underlying theorems.
pub fn catalog() -> Vec<Construction> {
    let mut list = Vec::new();
    list.extend(dim3::entries());
    list.extend(lagrangean::entries());
    list.extend(cr::entries());
    list.extend(projective::entries());
    list
}

pub fn find(name: &str) -> Result<Construction, CoreError> {
    catalog()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| CoreError::UnknownConstruction(name.to_string()))
}

/// Builds a catalog entry at the given parameters.
pub fn build(name: &str, params: &Params) -> Result<ExtensionMap, CoreError> {
    let cons = find(name)?;
    (cons.builder)(params)
}

fn param(params: &Params, name: &str) -> Result<Scalar, CoreError> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| CoreError::BadParameter(format!("missing parameter {name:?}")))
}

/// Reads a parameter with a default.
fn param_or(params: &Params, name: &str, default: Scalar) -> Scalar {
    params.get(name).cloned().unwrap_or(default)
}

/// Preimages of the l/p representative basis under α, as source matrices.
pub fn rep_preimages(alpha: &ExtensionMap) -> Result<Vec<Mat>, CoreError> {
    let inv = alpha.alpha_inverse()?;
    let rep_dim = alpha.target.rep_dim();
    Ok((0..rep_dim)
        .map(|i| {
            let mut e = vec![Scalar::zero(); rep_dim];
            e[i] = Scalar::from_integer(1.into());
            alpha.source.g.from_coords(&inv.inv.mul_vec(&e))
        })
        .collect())
}

/// Outcome of comparing computed curvature against a published table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureConvention {
    Direct,
    Swapped,
    Mismatch,
}

impl CurvatureConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurvatureConvention::Direct => "direct",
            CurvatureConvention::Swapped => "swapped",
            CurvatureConvention::Mismatch => "mismatch",
        }
    }
}

/// Compares the engine curvature against the construction's table on every
/// ordered source basis pair of h/k ⊕ m (first argument earlier in the
/// (h/k, X, Y) ordering), requiring one consistent argument-order convention.
/// Since κ is antisymmetric, its values on these pairs determine the whole
/// tensor; the published displays are correct exactly in this slot order.
pub fn compare_curvature(
    cons: &Construction,
    alpha: &ExtensionMap,
) -> Result<Option<CurvatureConvention>, CoreError> {
    let Some(table) = &cons.expected_curvature else { return Ok(None) };
    let kappa = alpha.curvature()?;
    let hm = 1 + alpha.source.m_dim;
    let classes: Vec<Vec<Scalar>> = (0..hm)
        .map(|j| {
            let img = alpha.image_coords(j);
            alpha.target.class_coords(&img)
        })
        .collect();
    let mut direct = true;
    let mut swapped = true;
    for i in 0..hm {
        for j in i + 1..hm {
            let engine =
                alpha.target.full.from_coords(&kappa.bilinear(&classes[i], &classes[j]));
            let vi = alpha.source.g.basis_mat(i);
            let vj = alpha.source.g.basis_mat(j);
            let expected = table(alpha, vi, vj)?;
            if engine != expected {
                direct = false;
            }
            if engine != -expected {
                swapped = false;
            }
            if !direct && !swapped {
                return Ok(Some(CurvatureConvention::Mismatch));
            }
        }
    }
    // a zero table matches both ways; report it as direct
    Ok(Some(if direct { CurvatureConvention::Direct } else { CurvatureConvention::Swapped }))
}

/// Options for `verify` and `suite`.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub with_automorphisms: bool,
    pub seed_convention: SeedConvention,
    /// negative-control switch: scales the l_2 component of α(h/k) by 2,
    /// which destroys normality while keeping the extension axioms
    pub inject_perturbation: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            with_automorphisms: true,
            seed_convention: SeedConvention::FullG,
            inject_perturbation: false,
        }
    }
}

/// Scales the l_2 component of α on h/k by 2 (a malformed but axiom-abiding
/// extension, used to prove the checks can fail).
pub fn perturb_extension(alpha: &ExtensionMap) -> ExtensionMap {
    let mut map = alpha.map.clone();
    let r2 = alpha.target.grade_range(2);
    let mut touched = false;
    for r in r2 {
        let cur = map.at(r, 0).clone();
        if !cur.is_zero() {
            *map.at_mut(r, 0) = cur * Scalar::from_integer(2.into());
            touched = true;
        }
    }
    if !touched {
        // flat families may carry no l_2 component on h/k; perturb the l_2
        // component of the first m-image instead (this adds torsion-like junk)
        let r1 = alpha.target.grade_range(1);
        for r in r1 {
            let cur = map.at(r, 1).clone();
            *map.at_mut(r, 1) = cur + Scalar::from_integer(1.into());
        }
    }
    alpha.with_map(map)
}

/// Runs the full check battery for one (entry, params) cell.
pub fn verify(cons: &Construction, params: &Params, opts: &VerifyOptions) -> Result<Report, CoreError> {
    let mut alpha = (cons.builder)(params)?;
    if opts.inject_perturbation {
        alpha = perturb_extension(&alpha);
    }
    let mut notes: Vec<String> = cons.notes.clone();
    let mut expectation_failures: Vec<String> = Vec::new();

    let axioms = alpha.check_extension_axioms();
    let symmetry = alpha.symmetry_compat_check();
    let axioms_ok = axioms.all_passed() && symmetry.all_passed();
    if !axioms.all_passed() {
        for f in axioms.failures() {
            notes.push(format!("axiom check failed: {}", f.name));
        }
    }
    if !symmetry.all_passed() {
        for f in symmetry.failures() {
            notes.push(format!("symmetry check failed: {}", f.name));
        }
    }

    let regular = alpha.regularity_check()?.all_passed();
    let normal = alpha.normality_residual()?.is_zero();
    let torsion_free = alpha.torsion()?.all_passed();
    let flat = alpha.is_flat()?;
    let grading = alpha.kappa_grading_check()?;
    if !grading.all_passed() {
        notes.push("curvature grading constraints failed".into());
        expectation_failures.push("kappa_grading".into());
    }

    let expected_flat = (cons.expected_flat)(params);
    if flat != expected_flat {
        expectation_failures.push(format!("flatness: computed {flat}, expected {expected_flat}"));
    }

    let convention = compare_curvature(cons, &alpha)?;
    let curvature_matches_paper = convention.map(|c| c != CurvatureConvention::Mismatch);
    let curvature_convention = match convention {
        None => "none".to_string(),
        Some(c) => c.as_str().to_string(),
    };
    if curvature_matches_paper == Some(false) {
        expectation_failures.push("curvature table mismatch".into());
    }

    let mut aut_dim = None;
    let mut expected_aut = None;
    if opts.with_automorphisms {
        let ops = ConnectionOps::new(&alpha)?;
        let hol = holonomy_from_ops(&alpha, &ops, opts.seed_convention)?;
        let auts = infinitesimal_automorphisms(&alpha, &hol);
        // α(g) is always inside the automorphism space; record violations
        let dim_l = alpha.target.dim();
        let mut all_in = true;
        'outer: for j in 0..alpha.source.dim() {
            let img = alpha.image_coords(j);
            for h in &hol.basis {
                if !h.mul_vec(&img).iter().all(|x| x.is_zero()) {
                    all_in = false;
                    break 'outer;
                }
            }
        }
        if !all_in {
            notes.push("alpha(g) is not annihilated by the holonomy algebra".into());
            expectation_failures.push("alpha_g_in_automorphisms".into());
        }
        let _ = dim_l;
        aut_dim = Some(auts.len());
        expected_aut = (cons.expected_aut_dim)(params, flat, &alpha);
        if let (Some(a), Some(e)) = (aut_dim, expected_aut) {
            if a != e {
                expectation_failures.push(format!("automorphism dimension: computed {a}, expected {e}"));
            }
        }
    }

    if !expectation_failures.is_empty() {
        for f in &expectation_failures {
            notes.push(format!("EXPECTATION FAILED: {f}"));
        }
    }

    Ok(Report {
        construction: cons.name.to_string(),
        params: params.iter().map(|(k, v)| (k.clone(), format_scalar(v))).collect(),
        axioms_ok,
        regular,
        normal,
        torsion_free,
        flat,
        curvature_matches_paper,
        curvature_convention,
        aut_dim,
        expected_aut_dim: expected_aut,
        notes,
    })
}

/// True when the report matches every expectation the entry carries.
pub fn report_ok(report: &Report) -> bool {
    report.axioms_ok
        && report.regular
        && report.normal
        && report.torsion_free
        && report.curvature_matches_paper != Some(false)
        && !report.notes.iter().any(|n| n.starts_with("EXPECTATION FAILED"))
}

/// Runs every entry whose name matches the glob-ish filter (`*` suffix or
/// exact) over its sample grid; returns the reports and an all-pass flag.
pub fn suite(filter: Option<&str>, opts: &VerifyOptions) -> Result<(Vec<Report>, bool), CoreError> {
    let mut reports = Vec::new();
    let mut ok = true;
    for cons in catalog() {
        if let Some(f) = filter {
            let matches = if let Some(prefix) = f.strip_suffix('*') {
                cons.name.starts_with(prefix)
            } else {
                cons.name == f
            };
            if !matches {
                continue;
            }
        }
        for sample in &cons.samples {
            let report = verify(&cons, sample, opts)?;
            ok &= report_ok(&report);
            reports.push(report);
        }
    }
    Ok((reports, ok))
}
