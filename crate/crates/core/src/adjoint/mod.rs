//! `ad_X` matrices, closed-form exponentials, eigenvalues and adjoint
//! characters, each paired with a generic numeric counterpart.

mod eigen;
mod expm;

pub use eigen::{closed_form_eigenvalues, multiset_distance, numeric_eigenvalues, LinearEigenvalue};
pub use expm::exp_matrix_numeric;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{blocks, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{block_diag, Matrix};
use crate::FamilySpec;

/// Coordinates below this magnitude take the limit branch of a closed form.
pub const BRANCH_TOL: f64 = 1e-13;
/// Squared-radius threshold for the `x_3 = x_4 = 0` branch.
pub const BRANCH_TOL_SQ: f64 = 1e-26;

/// `ad_X` together with the coordinates of `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdMatrix {
    pub matrix: Matrix,
    pub x: Vec<f64>,
}

/// Builds `ad_X`; column `j` holds the coordinates of `[X, X_j]`.
pub fn ad_matrix(alg: &LieAlgebra, x: &[f64]) -> Result<AdMatrix> {
    let n = alg.dim();
    Error::check_len(n, x.len())?;
    let mut m = Matrix::zeros(n, n);
    for (l, &xl) in x.iter().enumerate() {
        if xl == 0.0 {
            continue;
        }
        for j in 0..n {
            for i in 0..n {
                m[(i, j)] += xl * alg.c(l, j, i);
            }
        }
    }
    Ok(AdMatrix { matrix: m, x: x.to_vec() })
}

/// Which removable-singularity limit a closed form used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "none")]
    Regular,
    #[serde(rename = "x3=0")]
    X3Zero,
    #[serde(rename = "x4=0")]
    X4Zero,
    #[serde(rename = "x3=x4=0")]
    X3X4Zero,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Regular => "none",
            Branch::X3Zero => "x3=0",
            Branch::X4Zero => "x4=0",
            Branch::X3X4Zero => "x3=x4=0",
        }
    }
}

/// How an [`ExpAdMatrix`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpMethod {
    ClosedForm,
    Blockwise,
    Numeric,
}

/// `exp(ad_X)` and the branch taken to evaluate it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpAdMatrix {
    pub matrix: Matrix,
    pub branch: Branch,
    pub method: ExpMethod,
}

/// `(e^t − 1) / t`, equal to 1 at `t = 0`.
fn phi1(t: f64) -> f64 {
    if t.abs() < BRANCH_TOL {
        1.0
    } else {
        t.exp_m1() / t
    }
}

/// `(t e^t − e^t + 1) / t²`, equal to 1/2 at `t = 0`.
fn phi2(t: f64) -> f64 {
    if t.abs() < 0.5 {
        // Σ_j (j+1) t^j / (j+2)!
        let mut sum = 0.0;
        let mut fact = 2.0; // (j+2)!
        let mut pow = 1.0;
        for j in 0..30 {
            sum += (j as f64 + 1.0) * pow / fact;
            pow *= t;
            fact *= j as f64 + 3.0;
        }
        sum
    } else {
        (t * t.exp() - t.exp_m1()) / (t * t)
    }
}

/// `(e^w − 1) / w` for complex `w`.
fn phi1_complex(w: Complex64) -> Complex64 {
    if w.norm() < 0.5 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for j in 1..30 {
            sum += term;
            term *= w / (j as f64 + 1.0);
        }
        sum
    } else {
        let (a, b) = (w.re, w.im);
        let half = (b / 2.0).sin();
        let num = Complex64::new(a.exp_m1() * b.cos() - 2.0 * half * half, a.exp() * b.sin());
        num / w
    }
}

/// Writes the trailing pair entries `−x_{a+1}, x_a` into row 1 (zero-based)
/// for each pair `(a, a+1)` starting at zero-based column `first`.
fn pair_row(m: &mut Matrix, x: &[f64], first: usize) {
    let n = x.len();
    let mut a = first;
    while a + 1 < n {
        m[(1, a)] = -x[a + 1];
        m[(1, a + 1)] = x[a];
        a += 2;
    }
}

/// Closed-form `exp(ad_X)` for a catalog family.
pub fn exp_ad_closed(spec: &FamilySpec, x: &[f64]) -> Result<ExpAdMatrix> {
    if !spec.is_catalog() {
        return Err(Error::unsupported(spec, "closed-form exp(ad_X)"));
    }
    let n = spec.dim();
    Error::check_len(n, x.len())?;
    let mut m = Matrix::identity(n, n);
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let x3_zero = x3.abs() < BRANCH_TOL;
    let mut branch = if x3_zero { Branch::X3Zero } else { Branch::Regular };
    match spec {
        FamilySpec::G3_1 { lambda } => {
            let l = *lambda;
            let p = phi1(x3);
            let q = if x3_zero { l } else { l * phi1(l * x3) };
            m[(0, 0)] = x3.exp();
            m[(1, 1)] = (l * x3).exp();
            m[(0, 2)] = -x1 * p;
            m[(1, 2)] = -x2 * q;
        }
        FamilySpec::G3_2 => {
            let e = x3.exp();
            let p = phi1(x3);
            m[(0, 0)] = e;
            m[(0, 1)] = x3 * e;
            m[(0, 2)] = -x1 * p - x2 * e;
            m[(1, 1)] = e;
            m[(1, 2)] = -x2 * p;
        }
        FamilySpec::G3_3 { lambda } => {
            let l = *lambda;
            let e = (l * x3).exp();
            let (p, q) = if x3_zero {
                (1.0, l)
            } else {
                // e^{λt} cos t − 1 = expm1(λt) cos t − 2 sin²(t/2)
                let h = (x3 / 2.0).sin();
                (e * x3.sin() / x3, ((l * x3).exp_m1() * x3.cos() - 2.0 * h * h) / x3)
            };
            m[(0, 0)] = e * x3.cos();
            m[(0, 1)] = e * x3.sin();
            m[(1, 0)] = -e * x3.sin();
            m[(1, 1)] = e * x3.cos();
            m[(0, 2)] = -x2 * p - x1 * q;
            m[(1, 2)] = x1 * p - x2 * q;
        }
        FamilySpec::G4_1 => {
            let x4 = x[3];
            m[(0, 0)] = x3.exp();
            m[(0, 2)] = -x1 * phi1(x3);
            m[(1, 2)] = -x4;
            m[(1, 3)] = x3;
        }
        FamilySpec::G4_2 => {
            let x4 = x[3];
            m[(0, 1)] = x3;
            m[(0, 2)] = -0.5 * x3 * x4 - x2;
            m[(0, 3)] = 0.5 * x3 * x3;
            m[(1, 2)] = -x4;
            m[(1, 3)] = x3;
            branch = Branch::Regular;
        }
        FamilySpec::G4_3 => {
            let x4 = x[3];
            let x4_zero = x4.abs() < BRANCH_TOL;
            branch = if x4_zero { Branch::X4Zero } else { Branch::Regular };
            let e = x4.exp();
            let (p, q) = if x4_zero { (1.0, 0.5) } else { (phi1(x4), phi2(x4)) };
            m[(0, 0)] = e;
            m[(0, 1)] = x3 * e;
            m[(0, 2)] = -x2 * p;
            m[(0, 3)] = -x1 * p - x2 * x3 * q;
            m[(1, 1)] = e;
            m[(1, 3)] = -x2 * p;
        }
        FamilySpec::G4_4 | FamilySpec::AffC => {
            let x4 = x[3];
            let origin = x3 * x3 + x4 * x4 < BRANCH_TOL_SQ;
            branch = if origin { Branch::X3X4Zero } else { Branch::Regular };
            let (p, q) = if origin {
                (-x2, -x1)
            } else {
                let pq = -phi1_complex(Complex64::new(x4, x3)) * Complex64::new(x2, x1);
                (pq.re, pq.im)
            };
            let e = x4.exp();
            m[(0, 0)] = e * x3.cos();
            m[(0, 1)] = e * x3.sin();
            m[(1, 0)] = -e * x3.sin();
            m[(1, 1)] = e * x3.cos();
            m[(0, 2)] = p;
            m[(0, 3)] = q;
            m[(1, 2)] = -q;
            m[(1, 3)] = p;
        }
        FamilySpec::G5_2k { .. } => {
            let (x4, x5) = (x[3], x[4]);
            m[(0, 2)] = -x4;
            m[(0, 3)] = x3;
            m[(1, 0)] = x3;
            m[(1, 2)] = -0.5 * x3 * x4 - x1;
            m[(1, 3)] = 0.5 * x3 * x3 - x5;
            m[(1, 4)] = x4;
            pair_row(&mut m, x, 5);
            branch = Branch::Regular;
        }
        FamilySpec::G6_2k_1 { .. } => {
            let x4 = x[3];
            m[(0, 0)] = x3.exp();
            m[(0, 2)] = -x1 * phi1(x3);
            m[(1, 2)] = -x4;
            m[(1, 3)] = x3;
            pair_row(&mut m, x, 4);
        }
        FamilySpec::G6_2k_2 { .. } => {
            let x4 = x[3];
            m[(0, 2)] = -x4;
            m[(0, 3)] = x3;
            m[(1, 0)] = x3;
            m[(1, 2)] = -0.5 * x3 * x4 - x1;
            m[(1, 3)] = 0.5 * x3 * x3;
            pair_row(&mut m, x, 4);
            branch = Branch::Regular;
        }
        _ => unreachable!("is_catalog covers the families above"),
    }
    Ok(ExpAdMatrix { matrix: m, branch, method: ExpMethod::ClosedForm })
}

/// `exp(ad_X)` for any algebra built from the catalog.
///
/// Catalog families use their closed form. Composite algebras are handled
/// block by block: catalog and abelian blocks use exact formulas, other
/// blocks fall back to the numeric exponential of their `ad` block.
pub fn exp_ad(alg: &LieAlgebra, x: &[f64]) -> Result<ExpAdMatrix> {
    let spec = alg.spec();
    Error::check_len(alg.dim(), x.len())?;
    if spec.is_catalog() {
        return exp_ad_closed(spec, x);
    }
    let parts = blocks(spec);
    let mut mats = Vec::with_capacity(parts.len());
    let mut branch = Branch::Regular;
    let mut all_closed = true;
    for (off, block) in &parts {
        let xs = &x[*off..*off + block.dim()];
        let e = match block {
            FamilySpec::Abelian { m } => Matrix::identity(*m as usize, *m as usize),
            b if b.is_catalog() => {
                let e = exp_ad_closed(b, xs)?;
                if branch == Branch::Regular {
                    branch = e.branch;
                }
                e.matrix
            }
            b => {
                all_closed = false;
                let sub = crate::build(b)?;
                exp_matrix_numeric(&ad_matrix(&sub, xs)?.matrix)
            }
        };
        mats.push(e);
    }
    let refs: Vec<&Matrix> = mats.iter().collect();
    let method = match (parts.len(), all_closed) {
        (1, false) => ExpMethod::Numeric,
        _ => ExpMethod::Blockwise,
    };
    Ok(ExpAdMatrix { matrix: block_diag(&refs), branch, method })
}

/// Adjoint character `Tr exp(ad_X)` from its closed form.
pub fn character_ad(spec: &FamilySpec, x: &[f64]) -> Result<f64> {
    if !spec.is_catalog() {
        return Err(Error::unsupported(spec, "closed-form adjoint character"));
    }
    let n = spec.dim();
    Error::check_len(n, x.len())?;
    let x3 = x[2];
    Ok(match spec {
        FamilySpec::G3_1 { lambda } => x3.exp() + (lambda * x3).exp() + 1.0,
        FamilySpec::G3_2 => 2.0 * x3.exp() + 1.0,
        FamilySpec::G3_3 { lambda } => 2.0 * (lambda * x3).exp() * x3.cos() + 1.0,
        FamilySpec::G4_1 => x3.exp() + 3.0,
        FamilySpec::G4_2 => 4.0,
        FamilySpec::G4_3 => 2.0 * x[3].exp() + 2.0,
        FamilySpec::G4_4 | FamilySpec::AffC => 2.0 * x[3].exp() * x3.cos() + 2.0,
        FamilySpec::G5_2k { .. } | FamilySpec::G6_2k_2 { .. } => n as f64,
        FamilySpec::G6_2k_1 { .. } => x3.exp() + (n - 1) as f64,
        _ => unreachable!("is_catalog covers the families above"),
    })
}

/// Eigenvalues of `ad_X` with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub eigenvalues: Vec<(Complex64, usize)>,
    pub closed_form_available: bool,
}

impl EigenReport {
    /// Every eigenvalue repeated by its multiplicity.
    pub fn flat(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().flat_map(|&(z, m)| std::iter::repeat_n(z, m)).collect()
    }
}

fn group(values: impl IntoIterator<Item = (Complex64, usize)>) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for (z, m) in values {
        match out.iter_mut().find(|(w, _)| *w == z) {
            Some(slot) => slot.1 += m,
            None => out.push((z, m)),
        }
    }
    out
}

/// Eigenvalues of `ad_X`: closed forms for catalog families, the numeric
/// eigensolver otherwise.
pub fn ad_eigenvalues(alg: &LieAlgebra, x: &[f64]) -> Result<EigenReport> {
    Error::check_len(alg.dim(), x.len())?;
    if alg.spec().is_catalog() {
        let forms = closed_form_eigenvalues(alg.spec())?;
        let eigenvalues = group(forms.iter().map(|f| (f.eval(x), f.multiplicity)));
        return Ok(EigenReport { eigenvalues, closed_form_available: true });
    }
    let numeric = numeric_eigenvalues(&ad_matrix(alg, x)?.matrix);
    Ok(EigenReport { eigenvalues: group(numeric.into_iter().map(|z| (z, 1))), closed_form_available: false })
}

/// Whether the simply connected group of a catalog family is exponential,
/// decided by whether some `ad_X` can have a nonzero purely imaginary
/// eigenvalue.
pub fn is_exponential(spec: &FamilySpec) -> Result<bool> {
    let forms = closed_form_eigenvalues(spec)?;
    let n = spec.dim();
    Ok(!forms.iter().any(|f| f.can_be_purely_imaginary(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn ad_g4_2_of_x3() {
        let g = build(&FamilySpec::G4_2).unwrap();
        let m = ad_matrix(&g, &[0.0, 0.0, 1.0, 0.0]).unwrap().matrix;
        let mut want = Matrix::zeros(4, 4);
        want[(0, 1)] = 1.0;
        want[(1, 3)] = 1.0;
        assert_eq!(m, want);
    }

    #[test]
    fn ad_g3_3_rotation_block() {
        let g = build(&FamilySpec::G3_3 { lambda: 1.0 }).unwrap();
        let m = ad_matrix(&g, &[0.0, 0.0, 2.0]).unwrap().matrix;
        let want = Matrix::from_row_slice(3, 3, &[2.0, 2.0, 0.0, -2.0, 2.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(m, want);
    }

    #[test]
    fn ad_dimension_checked() {
        let g = build(&FamilySpec::G3_2).unwrap();
        assert!(matches!(ad_matrix(&g, &[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn exp_g3_2_on_x3_zero() {
        let (x1, x2) = (0.7, -1.3);
        let e = exp_ad_closed(&FamilySpec::G3_2, &[x1, x2, 0.0]).unwrap();
        let want = Matrix::from_row_slice(3, 3, &[1.0, 0.0, -x1 - x2, 0.0, 1.0, -x2, 0.0, 0.0, 1.0]);
        assert_eq!(e.matrix, want);
        assert_eq!(e.branch, Branch::X3Zero);
    }

    #[test]
    fn exp_g4_2_entries() {
        let e = exp_ad_closed(&FamilySpec::G4_2, &[0.0, 1.0, 2.0, 3.0]).unwrap();
        let want = Matrix::from_row_slice(
            4,
            4,
            &[1.0, 2.0, -4.0, 2.0, 0.0, 1.0, -3.0, 2.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        );
        assert_eq!(e.matrix, want);
    }

    #[test]
    fn g4_4_matches_the_tabulated_expression() {
        let (x1, x2, x3, x4): (f64, f64, f64, f64) = (0.4, -1.1, 2.3, -0.6);
        let r2 = x3 * x3 + x4 * x4;
        let (ec, es) = (x4.exp() * x3.cos(), x4.exp() * x3.sin());
        let p = ((1.0 - ec) * (x1 * x3 + x2 * x4) + es * (x1 * x4 - x2 * x3)) / r2;
        let q = ((1.0 - ec) * (x1 * x4 - x2 * x3) - es * (x1 * x3 + x2 * x4)) / r2;
        let e = exp_ad_closed(&FamilySpec::G4_4, &[x1, x2, x3, x4]).unwrap().matrix;
        assert!((e[(0, 2)] - p).abs() < 1e-13);
        assert!((e[(0, 3)] - q).abs() < 1e-13);
    }

    #[test]
    fn closed_forms_match_numeric_oracle() {
        let specs = [
            FamilySpec::G3_1 { lambda: 1.0 },
            FamilySpec::G3_1 { lambda: -0.3 },
            FamilySpec::G3_2,
            FamilySpec::G3_3 { lambda: 0.0 },
            FamilySpec::G3_3 { lambda: 0.7 },
            FamilySpec::G4_1,
            FamilySpec::G4_2,
            FamilySpec::G4_3,
            FamilySpec::G4_4,
            FamilySpec::G5_2k { k: 2 },
            FamilySpec::G6_2k_1 { k: 1 },
            FamilySpec::G6_2k_2 { k: 2 },
        ];
        for spec in specs {
            let g = build(&spec).unwrap();
            let n = g.dim();
            let x: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 / 11.0 * 6.0 - 3.0).collect();
            let closed = exp_ad_closed(&spec, &x).unwrap().matrix;
            let numeric = exp_matrix_numeric(&ad_matrix(&g, &x).unwrap().matrix);
            assert!(close(&closed, &numeric, 1e-9 * (1.0 + closed.norm())), "{spec}");
        }
    }

    #[test]
    fn g3_1_unit_lambda_at_ones() {
        let spec = FamilySpec::G3_1 { lambda: 1.0 };
        let g = build(&spec).unwrap();
        let x = [1.0, 1.0, 1.0];
        let closed = exp_ad_closed(&spec, &x).unwrap().matrix;
        let numeric = exp_matrix_numeric(&ad_matrix(&g, &x).unwrap().matrix);
        assert!(close(&closed, &numeric, 1e-10));
    }

    #[test]
    fn limits_are_continuous() {
        let cases: [(FamilySpec, Vec<f64>, Vec<f64>); 3] = [
            (FamilySpec::G3_3 { lambda: 0.4 }, vec![1.0, -2.0, 1e-8], vec![1.0, -2.0, 0.0]),
            (FamilySpec::G4_3, vec![1.0, 2.0, -1.5, 1e-8], vec![1.0, 2.0, -1.5, 0.0]),
            (FamilySpec::G4_4, vec![1.0, 2.0, 1e-8, 1e-8], vec![1.0, 2.0, 0.0, 0.0]),
        ];
        for (spec, near, at) in cases {
            let a = exp_ad_closed(&spec, &near).unwrap().matrix;
            let b = exp_ad_closed(&spec, &at).unwrap().matrix;
            assert!(close(&a, &b, 1e-6), "{spec}");
        }
    }

    #[test]
    fn characters_from_the_table() {
        let c = character_ad(&FamilySpec::G4_1, &[0.0, 0.0, 2f64.ln(), 0.0]).unwrap();
        assert!((c - 5.0).abs() < 1e-12);
        let c = character_ad(&FamilySpec::G3_3 { lambda: 0.0 }, &[0.0, 0.0, std::f64::consts::PI]).unwrap();
        assert!((c + 1.0).abs() < 1e-12);
        let c = character_ad(&FamilySpec::G6_2k_2 { k: 1 }, &[0.0; 8]).unwrap();
        assert_eq!(c, 8.0);
    }

    #[test]
    fn eigenvalue_examples() {
        let g = build(&FamilySpec::G3_1 { lambda: 0.5 }).unwrap();
        let r = ad_eigenvalues(&g, &[0.3, -0.2, 2.0]).unwrap();
        let want = [Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)];
        assert_eq!(multiset_distance(&r.flat(), &want), Some(0.0));

        let g = build(&FamilySpec::G4_4).unwrap();
        let r = ad_eigenvalues(&g, &[0.0, 0.0, 3.0, 1.0]).unwrap();
        let want = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 3.0),
            Complex64::new(1.0, -3.0),
        ];
        assert_eq!(multiset_distance(&r.flat(), &want), Some(0.0));

        let g = build(&FamilySpec::G5_2k { k: 1 }).unwrap();
        let r = ad_eigenvalues(&g, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        assert_eq!(r.eigenvalues, vec![(Complex64::new(0.0, 0.0), 7)]);
    }

    #[test]
    fn exponential_table() {
        assert!(!is_exponential(&FamilySpec::G3_3 { lambda: 0.0 }).unwrap());
        assert!(is_exponential(&FamilySpec::G3_3 { lambda: 0.2 }).unwrap());
        assert!(!is_exponential(&FamilySpec::G4_4).unwrap());
        assert!(is_exponential(&FamilySpec::G6_2k_1 { k: 1 }).unwrap());
        assert!(is_exponential(&FamilySpec::G4_3).unwrap());
    }

    #[test]
    fn composite_exp_is_blockwise() {
        let spec: FamilySpec = "g3_2+aff_r".parse().unwrap();
        let g = build(&spec).unwrap();
        let x = [0.5, -1.0, 0.8, 1.2, -0.4];
        let e = exp_ad(&g, &x).unwrap();
        let numeric = exp_matrix_numeric(&ad_matrix(&g, &x).unwrap().matrix);
        assert_eq!(e.method, ExpMethod::Blockwise);
        assert!(close(&e.matrix, &numeric, 1e-10));
    }
}
