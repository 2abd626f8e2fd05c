//! Explicit matrix representations: the Heisenberg representation `π`, the
//! homomorphism `φ` onto a Heisenberg algebra, the adjoint representation
//! and the faithful `(π∘φ) ⊕ ad`, together with homomorphism and
//! faithfulness checks and the bound on the minimal faithful degree `μ`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::adjoint::exp_matrix_numeric;
use crate::algebra::{blocks, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{block_diag, numeric_rank, Matrix, RANK_RTOL};
use crate::{build, FamilySpec};

/// A linear map from an algebra into `gl(d)`, stored as the images of the
/// basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub algebra: FamilySpec,
    pub degree: usize,
    pub images: Vec<Matrix>,
    pub label: String,
}

impl Representation {
    /// `ρ(X)` for `X = Σ x_i X_i`.
    pub fn eval(&self, x: &[f64]) -> Result<Matrix> {
        Error::check_len(self.images.len(), x.len())?;
        let mut m = Matrix::zeros(self.degree, self.degree);
        for (xi, img) in x.iter().zip(&self.images) {
            if *xi != 0.0 {
                m += img * *xi;
            }
        }
        Ok(m)
    }

    /// The representation sending every basis vector to the zero `d × d` matrix.
    pub fn zero(alg: &LieAlgebra, d: usize) -> Self {
        Representation {
            algebra: alg.spec().clone(),
            degree: d,
            images: vec![Matrix::zeros(d, d); alg.dim()],
            label: format!("0_{d}"),
        }
    }

    pub fn to_json(&self, alg: &LieAlgebra) -> Value {
        let images: Vec<Vec<Vec<f64>>> = self.images.iter().map(crate::linalg::rows_of).collect();
        json!({
            "label": self.label,
            "family": self.algebra.to_string(),
            "degree": self.degree,
            "images": images,
            "faithful": verify_faithful(alg, self),
            "homomorphism_defect": verify_homomorphism(alg, self),
        })
    }
}

/// A linear map between two algebras as a `codomain × domain` coordinate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    pub domain: FamilySpec,
    pub codomain: FamilySpec,
    pub matrix: Matrix,
}

impl LinearMap {
    /// Largest `‖φ[X_i, X_j] − [φX_i, φX_j]‖` over basis pairs.
    pub fn homomorphism_defect(&self) -> Result<f64> {
        let dom = build(&self.domain)?;
        let cod = build(&self.codomain)?;
        let n = dom.dim();
        let col = |i: usize| self.matrix.column(i).iter().copied().collect::<Vec<_>>();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = &self.matrix * nalgebra::DVector::from_vec(dom.bracket_basis(i, j));
                let rhs = cod.bracket(&col(i), &col(j))?;
                let d = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }
}

fn unit(d: usize, r: usize, c: usize) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    m[(r, c)] = 1.0;
    m
}

/// The standard degree `m + 2` representation of the Heisenberg algebra of
/// dimension `2m + 1` (basis `x_1..x_m, y_1..y_m, z`).
pub fn heisenberg_rep(m: u32) -> Result<Representation> {
    if m == 0 {
        return Err(Error::InvalidParameter("Heisenberg rank m must be at least 1".into()));
    }
    let m = m as usize;
    let d = m + 2;
    let mut images = Vec::with_capacity(2 * m + 1);
    images.extend((1..=m).map(|i| unit(d, 0, i)));
    images.extend((1..=m).map(|i| unit(d, i, d - 1)));
    images.push(unit(d, 0, d - 1));
    Ok(Representation {
        algebra: FamilySpec::Heisenberg { m: m as u32 },
        degree: d,
        images,
        label: "pi".into(),
    })
}

/// `φ: G → h_{n−1}` for the families with a one-dimensional center spanned
/// by `X_2`: `X_1 ↦ 0`, `X_2 ↦ z`, `X_{3+2i} ↦ x_{i+1}`, `X_{4+2i} ↦ y_{i+1}`.
pub fn build_phi(alg: &LieAlgebra) -> Result<LinearMap> {
    let spec = alg.spec();
    if !matches!(spec, FamilySpec::G4_1 | FamilySpec::G6_2k_1 { .. }) {
        return Err(Error::unsupported(spec, "homomorphism onto a Heisenberg algebra"));
    }
    let n = alg.dim();
    let m = n / 2 - 1;
    let mut a = Matrix::zeros(2 * m + 1, n);
    a[(2 * m, 1)] = 1.0;
    for i in 0..m {
        a[(i, 2 + 2 * i)] = 1.0;
        a[(m + i, 3 + 2 * i)] = 1.0;
    }
    Ok(LinearMap {
        domain: spec.clone(),
        codomain: FamilySpec::Heisenberg { m: m as u32 },
        matrix: a,
    })
}

/// `π ∘ φ`.
pub fn compose_rep(pi: &Representation, phi: &LinearMap) -> Result<Representation> {
    if pi.algebra != phi.codomain {
        return Err(Error::AlgebraMismatch {
            left: pi.algebra.to_string(),
            right: phi.codomain.to_string(),
        });
    }
    Error::check_len(pi.images.len(), phi.matrix.nrows())?;
    let images = (0..phi.matrix.ncols())
        .map(|i| {
            let coords: Vec<f64> = phi.matrix.column(i).iter().copied().collect();
            pi.eval(&coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation {
        algebra: phi.domain.clone(),
        degree: pi.degree,
        images,
        label: format!("{}∘phi", pi.label),
    })
}

/// Block-diagonal sum of two representations of the same algebra.
pub fn direct_sum_rep(r1: &Representation, r2: &Representation) -> Result<Representation> {
    if r1.algebra != r2.algebra || r1.images.len() != r2.images.len() {
        return Err(Error::AlgebraMismatch { left: r1.algebra.to_string(), right: r2.algebra.to_string() });
    }
    let images = r1.images.iter().zip(&r2.images).map(|(a, b)| block_diag(&[a, b])).collect();
    Ok(Representation {
        algebra: r1.algebra.clone(),
        degree: r1.degree + r2.degree,
        images,
        label: format!("({})+({})", r1.label, r2.label),
    })
}

/// `X ↦ ad_X`.
pub fn adjoint_rep(alg: &LieAlgebra) -> Representation {
    let n = alg.dim();
    Representation {
        algebra: alg.spec().clone(),
        degree: n,
        images: (0..n).map(|i| alg.ad_basis(i)).collect(),
        label: "ad".into(),
    }
}

/// A faithful representation of an indecomposable piece, or an error when
/// the construction is not available.
fn faithful_block(spec: &FamilySpec) -> Result<Representation> {
    let alg = build(spec)?;
    match spec {
        FamilySpec::G3_1 { .. }
        | FamilySpec::G3_2
        | FamilySpec::G3_3 { .. }
        | FamilySpec::G4_3
        | FamilySpec::G4_4
        | FamilySpec::AffC
        | FamilySpec::AffR => Ok(adjoint_rep(&alg)),
        FamilySpec::G4_1 | FamilySpec::G6_2k_1 { .. } => {
            let phi = build_phi(&alg)?;
            let pi = heisenberg_rep((alg.dim() / 2 - 1) as u32)?;
            direct_sum_rep(&compose_rep(&pi, &phi)?, &adjoint_rep(&alg))
        }
        FamilySpec::Heisenberg { m } => heisenberg_rep(*m),
        FamilySpec::Abelian { m } => {
            let m = *m as usize;
            Ok(Representation {
                algebra: spec.clone(),
                degree: m,
                images: (0..m).map(|i| unit(m, i, i)).collect(),
                label: "diag".into(),
            })
        }
        _ => Err(Error::unsupported(spec, "explicit faithful representation")),
    }
}

/// The faithful representation used for the upper bound on `μ`: `ad` when
/// the center is trivial, `(π∘φ) ⊕ ad` for the families whose center is
/// spanned by `X_2`. Composite algebras get the block sum of their parts.
pub fn faithful_rep(alg: &LieAlgebra) -> Result<Representation> {
    let spec = alg.spec();
    if !spec.is_composite() {
        return faithful_block(spec);
    }
    let n = alg.dim();
    let parts = blocks(spec);
    let reps = parts.iter().map(|(_, b)| faithful_block(b)).collect::<Result<Vec<_>>>()?;
    let degree: usize = reps.iter().map(|r| r.degree).sum();
    let mut images = vec![Matrix::zeros(degree, degree); n];
    let mut row_off = 0;
    for ((off, _), r) in parts.iter().zip(&reps) {
        for (i, img) in r.images.iter().enumerate() {
            images[off + i].view_mut((row_off, row_off), (r.degree, r.degree)).copy_from(img);
        }
        row_off += r.degree;
    }
    let label = reps.iter().map(|r| r.label.as_str()).collect::<Vec<_>>().join(" + ");
    Ok(Representation { algebra: spec.clone(), degree, images, label })
}

/// Largest `‖ρ[X_i, X_j] − [ρX_i, ρX_j]‖_F` over basis pairs.
pub fn verify_homomorphism(alg: &LieAlgebra, r: &Representation) -> f64 {
    let n = alg.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let Ok(lhs) = r.eval(&alg.bracket_basis(i, j)) else {
                return f64::INFINITY;
            };
            let (a, b) = (&r.images[i], &r.images[j]);
            let comm = a * b - b * a;
            worst = worst.max((lhs - comm).norm());
        }
    }
    worst
}

/// Whether the images of the basis vectors are linearly independent.
pub fn verify_faithful(alg: &LieAlgebra, r: &Representation) -> bool {
    let n = alg.dim();
    if r.images.len() != n {
        return false;
    }
    let d2 = r.degree * r.degree;
    if d2 < n {
        return false;
    }
    let stacked = Matrix::from_fn(n, d2, |i, e| r.images[i][(e / r.degree, e % r.degree)]);
    numeric_rank(&stacked, RANK_RTOL) == n
}

/// `Tr exp(ρ(X))`.
pub fn character(r: &Representation, x: &[f64]) -> Result<f64> {
    Ok(exp_matrix_numeric(&r.eval(x)?).trace())
}

/// Which argument produced the upper bound in a [`MuReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuRule {
    /// Trivial center: `ad` is faithful, `μ ≤ n`.
    TrivialCenterAdjoint,
    /// Nilpotent of class three: `μ ≤ n + 1`.
    Nilpotent3Step,
    /// Center spanned by `X_2`: `(π∘φ) ⊕ ad`, `μ ≤ 3n/2 + 1`.
    CenterHeisenberg,
    /// Sum of the bounds of the summands.
    DirectSumAdditivity,
    /// Heisenberg algebra `h_{2m+1}`: standard representation, `μ ≤ m + 2`.
    HeisenbergStandard,
    /// Abelian algebra of dimension `m`: diagonal matrices, `μ ≤ m`.
    AbelianDiagonal,
}

/// Upper bound on the minimal faithful degree, with known exact values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuReport {
    pub upper_bound: usize,
    pub exact_known: Option<usize>,
    pub rule_applied: MuRule,
    pub mu_z: Option<usize>,
}

/// Exact values of `μ` known from the literature for small dimensions.
fn exact_mu(spec: &FamilySpec) -> Option<usize> {
    match spec {
        FamilySpec::G3_1 { .. } | FamilySpec::G3_2 | FamilySpec::G3_3 { .. } => Some(3),
        FamilySpec::G4_1 | FamilySpec::G4_2 => Some(4),
        FamilySpec::G4_3 | FamilySpec::G4_4 | FamilySpec::AffC => Some(3),
        FamilySpec::G5_2k { k: 0 } => Some(4),
        FamilySpec::G6_2k_2 { k: 0 } => Some(5),
        _ => None,
    }
}

/// Bound on `μ` following the case analysis: trivial center, class-three
/// nilpotent, or center spanned by `X_2`; composites add the bounds of
/// their summands.
pub fn mu_report(spec: &FamilySpec) -> MuReport {
    let n = spec.dim();
    let simple = |upper_bound, rule_applied| MuReport {
        upper_bound,
        exact_known: exact_mu(spec),
        rule_applied,
        mu_z: None,
    };
    match spec {
        FamilySpec::G3_1 { .. }
        | FamilySpec::G3_2
        | FamilySpec::G3_3 { .. }
        | FamilySpec::G4_3
        | FamilySpec::G4_4
        | FamilySpec::AffC
        | FamilySpec::AffR => simple(n, MuRule::TrivialCenterAdjoint),
        FamilySpec::G4_2 | FamilySpec::G5_2k { .. } | FamilySpec::G6_2k_2 { .. } => {
            simple(n + 1, MuRule::Nilpotent3Step)
        }
        FamilySpec::G4_1 | FamilySpec::G6_2k_1 { .. } => MuReport {
            upper_bound: 3 * n / 2 + 1,
            exact_known: exact_mu(spec),
            rule_applied: MuRule::CenterHeisenberg,
            mu_z: Some(n / 2 + 1),
        },
        FamilySpec::Heisenberg { m } => simple(*m as usize + 2, MuRule::HeisenbergStandard),
        FamilySpec::Abelian { m } => simple(*m as usize, MuRule::AbelianDiagonal),
        FamilySpec::DirectSum(_) | FamilySpec::TrivialExtension { .. } => MuReport {
            upper_bound: blocks(spec).iter().map(|(_, b)| mu_report(b).upper_bound).sum(),
            exact_known: None,
            rule_applied: MuRule::DirectSumAdditivity,
            mu_z: None,
        },
    }
}

/// `π ∘ φ` for an algebra supported by [`build_phi`].
pub fn pi_phi(alg: &LieAlgebra) -> Result<Representation> {
    let phi = build_phi(alg)?;
    compose_rep(&heisenberg_rep(phi.codomain.dim() as u32 / 2)?, &phi)
}
