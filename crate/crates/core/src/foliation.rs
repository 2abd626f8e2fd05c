//! The foliation formed by the orbits of maximal dimension for the
//! families `G_{5+2k}`, `G_{6+2k,1}` and `G_{6+2k,2}`: leaf assignment via
//! the fibration maps, the tangent differential systems, the map `h`
//! relating the two foliations of dimension `6+2k`, and the leafwise
//! Jacobian of the coadjoint action.

use serde_json::{json, Value};

use crate::adjoint::exp_ad;
use crate::algebra::LieAlgebra;
use crate::coadjoint::{Invariant, ZERO_THRESHOLD};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::FamilySpec;

/// The two topological types of foliation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoliationType {
    /// `n = 5 + 2k`, fibration over `R*`.
    Odd,
    /// `n = 6 + 2k`, fibration over `R* × R`.
    Even,
}

fn foliation_type(spec: &FamilySpec) -> Result<FoliationType> {
    match spec {
        FamilySpec::G5_2k { .. } => Ok(FoliationType::Odd),
        FamilySpec::G6_2k_1 { .. } | FamilySpec::G6_2k_2 { .. } => Ok(FoliationType::Even),
        other => Err(Error::unsupported(other, "foliation by maximal orbits")),
    }
}

/// Whether `F` lies in the union of the maximal orbits, i.e. `f_2 ≠ 0`.
pub fn in_foliated_manifold(alg: &LieAlgebra, f: &[f64]) -> Result<bool> {
    in_foliated_manifold_with(alg, f, ZERO_THRESHOLD)
}

pub fn in_foliated_manifold_with(alg: &LieAlgebra, f: &[f64], zero: f64) -> Result<bool> {
    foliation_type(alg.spec())?;
    Error::check_len(alg.dim(), f.len())?;
    Ok(f[1].abs() > zero)
}

/// Value of the fibration map at a point: `x_2` alone for `n = 5 + 2k`,
/// and `x_2` with the second leaf invariant for `n = 6 + 2k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafId {
    pub family: FamilySpec,
    pub x2: f64,
    /// `x_1 e^{−x_4/x_2}` for `G_{6+2k,1}`, `x_1² − 2 x_2 x_4` for `G_{6+2k,2}`.
    pub second: Option<Invariant>,
}

impl LeafId {
    /// Whether two leaf ids agree within relative tolerance `tol`.
    pub fn same_leaf(&self, other: &LeafId, tol: f64) -> bool {
        if self.family != other.family {
            return false;
        }
        let x2 = Invariant::Value(self.x2).distance(&Invariant::Value(other.x2));
        let second = match (&self.second, &other.second) {
            (None, None) => 0.0,
            (Some(a), Some(b)) => a.distance(b),
            _ => f64::INFINITY,
        };
        x2 <= tol && second <= tol
    }

    /// Fibration components as plain numbers.
    pub fn values(&self) -> Vec<f64> {
        let mut out = vec![self.x2];
        match self.second {
            Some(Invariant::Value(v)) => out.push(v),
            Some(Invariant::Exponential { sign, log_abs }) => out.push(sign * log_abs.exp()),
            Some(Invariant::Periodic { value, .. }) => out.push(value),
            None => {}
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.to_string(),
            "x2": self.x2,
            "second": self.second.map(|s| s.to_json()),
        })
    }
}

/// The leaf through `F`.
pub fn leaf_of(alg: &LieAlgebra, f: &[f64]) -> Result<LeafId> {
    if !in_foliated_manifold(alg, f)? {
        return Err(Error::NotInFoliatedManifold);
    }
    let second = match alg.spec() {
        FamilySpec::G5_2k { .. } => None,
        FamilySpec::G6_2k_1 { .. } => Some(if f[0] == 0.0 {
            Invariant::Value(0.0)
        } else {
            Invariant::Exponential { sign: f[0].signum(), log_abs: f[0].abs().ln() - f[3] / f[1] }
        }),
        _ => Some(Invariant::Value(f[0] * f[0] - 2.0 * f[1] * f[3])),
    };
    Ok(LeafId { family: alg.spec().clone(), x2: f[1], second })
}

/// The differential system whose integral manifolds are the leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentSystem {
    pub family: FamilySpec,
    n: usize,
}

impl TangentSystem {
    pub fn len(&self) -> usize {
        match self.family {
            FamilySpec::G5_2k { .. } => self.n - 1,
            _ => self.n - 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates (zero-based) carrying a plain `∂/∂x_j` field.
    fn coordinate_fields(&self) -> Vec<usize> {
        match self.family {
            FamilySpec::G5_2k { .. } => [2].into_iter().chain(3..self.n).collect(),
            _ => [2].into_iter().chain(4..self.n).collect(),
        }
    }

    /// The fields evaluated at `p`, first field first.
    pub fn fields_at(&self, p: &[f64]) -> Result<Vec<Vec<f64>>> {
        Error::check_len(self.n, p.len())?;
        let mut first = vec![0.0; self.n];
        match self.family {
            FamilySpec::G5_2k { .. } => first[0] = 1.0,
            FamilySpec::G6_2k_1 { .. } => {
                first[0] = p[0];
                first[3] = p[1];
            }
            _ => {
                first[0] = p[1];
                first[3] = p[0];
            }
        }
        let mut out = vec![first];
        for j in self.coordinate_fields() {
            let mut e = vec![0.0; self.n];
            e[j] = 1.0;
            out.push(e);
        }
        Ok(out)
    }

    /// The fields as `n × len` matrix columns.
    pub fn frame_at(&self, p: &[f64]) -> Result<Matrix> {
        let fields = self.fields_at(p)?;
        Ok(Matrix::from_fn(self.n, fields.len(), |i, j| fields[j][i]))
    }

    /// Human-readable field list, e.g. `x1*d1 + x2*d4`.
    pub fn describe(&self) -> Vec<String> {
        let first = match self.family {
            FamilySpec::G5_2k { .. } => "d1".to_string(),
            FamilySpec::G6_2k_1 { .. } => "x1*d1 + x2*d4".to_string(),
            _ => "x2*d1 + x1*d4".to_string(),
        };
        std::iter::once(first)
            .chain(self.coordinate_fields().into_iter().map(|j| format!("d{}", j + 1)))
            .collect()
    }
}

pub fn tangent_system(alg: &LieAlgebra) -> Result<TangentSystem> {
    foliation_type(alg.spec())?;
    Ok(TangentSystem { family: alg.spec().clone(), n: alg.dim() })
}

/// Gradients at `p` of functions whose common level sets are the leaves.
/// For `x_1 e^{−x_4/x_2}` the gradient is divided by the positive factor
/// `e^{−x_4/x_2}`, which leaves its direction unchanged.
fn leaf_gradients(spec: &FamilySpec, p: &[f64]) -> Vec<Vec<f64>> {
    let n = p.len();
    let mut e2 = vec![0.0; n];
    e2[1] = 1.0;
    let mut out = vec![e2];
    let (x1, x2, x4) = (p[0], p[1], p[3]);
    match spec {
        FamilySpec::G6_2k_1 { .. } => {
            let mut g = vec![0.0; n];
            g[0] = 1.0;
            g[1] = x1 * x4 / (x2 * x2);
            g[3] = -x1 / x2;
            out.push(g);
        }
        FamilySpec::G6_2k_2 { .. } => {
            let mut g = vec![0.0; n];
            g[0] = 2.0 * x1;
            g[1] = -2.0 * x4;
            g[3] = -2.0 * x2;
            out.push(g);
        }
        _ => {}
    }
    out
}

/// Largest normalized directional derivative `|∇g·v| / (‖∇g‖ ‖v‖)` of a
/// leaf-defining function `g` along a field `v` of the system at `F`.
pub fn verify_tangency(alg: &LieAlgebra, f: &[f64]) -> Result<f64> {
    if !in_foliated_manifold(alg, f)? {
        return Err(Error::NotInFoliatedManifold);
    }
    let sys = tangent_system(alg)?;
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let mut worst = 0.0f64;
    for g in leaf_gradients(alg.spec(), f) {
        let ng = norm(&g);
        if ng == 0.0 {
            continue;
        }
        for v in sys.fields_at(f)? {
            let dot: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
            worst = worst.max(dot.abs() / (ng * norm(&v)));
        }
    }
    Ok(worst)
}

/// Codimension of the foliation: 1 for `n = 5 + 2k`, 2 for `n = 6 + 2k`.
pub fn codimension(alg: &LieAlgebra) -> Result<usize> {
    Ok(match foliation_type(alg.spec())? {
        FoliationType::Odd => 1,
        FoliationType::Even => 2,
    })
}

/// Isomorphism class of the foliation C*-algebra.
pub fn connes_label(alg: &LieAlgebra) -> Result<&'static str> {
    Ok(match foliation_type(alg.spec())? {
        FoliationType::Odd => "C0(R*) ⊗ K",
        FoliationType::Even => "C0(R* x R) ⊗ K",
    })
}

fn check_even_point(f: &[f64]) -> Result<()> {
    if f.len() < 6 || f.len() % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "the map h acts on points of even dimension at least 6, got {}",
            f.len()
        )));
    }
    if f[1].abs() <= ZERO_THRESHOLD {
        return Err(Error::NotInFoliatedManifold);
    }
    Ok(())
}

/// The map `h` sending leaves of the `G_{6+2k,1}` foliation to leaves of
/// the `G_{6+2k,2}` foliation:
/// `x̃_1 = x_1 + x_4`, `x̃_4 = ((x_1 + x_4)² − x_1 e^{−x_4/x_2}) / (2 x_2)`,
/// every other coordinate unchanged.
pub fn equivalence_h(f: &[f64]) -> Result<Vec<f64>> {
    check_even_point(f)?;
    let (x1, x2, x4) = (f[0], f[1], f[3]);
    let s = x1 + x4;
    let c = x1 * (-x4 / x2).exp();
    let mut out = f.to_vec();
    out[0] = s;
    out[3] = (s * s - c) / (2.0 * x2);
    Ok(out)
}

/// `|x̃_1² − 2 x̃_2 x̃_4 − x_1 e^{−x_4/x_2}|` for `x̃ = h(x)`.
pub fn h_residual(f: &[f64]) -> Result<f64> {
    let t = equivalence_h(f)?;
    let c = f[0] * (-f[3] / f[1]).exp();
    let q = t[0] * t[0] - 2.0 * t[1] * t[3];
    Ok((q - c).abs())
}

/// Frame used to restrict the coadjoint action to a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeafFrame {
    /// The fields of the tangent system at each point.
    #[default]
    TangentSystem,
    /// An orthonormal basis of the tangent space at each point.
    Orthonormal,
}

fn orthonormal(frame: Matrix) -> Matrix {
    let qr = frame.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..q.ncols() {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Determinant of the differential of `F ↦ F·exp(ad_X)` restricted to the
/// leaf through `F`, expressed in the chosen frames at `F` and its image.
pub fn leaf_jacobian(alg: &LieAlgebra, x: &[f64], f: &[f64], frame: LeafFrame) -> Result<f64> {
    if !in_foliated_manifold(alg, f)? {
        return Err(Error::NotInFoliatedManifold);
    }
    let sys = tangent_system(alg)?;
    let e = exp_ad(alg, x)?.matrix;
    let et = e.transpose();
    let image: Vec<f64> = (&et * nalgebra::DVector::from_column_slice(f)).iter().copied().collect();
    let (v_in, v_out) = (sys.frame_at(f)?, sys.frame_at(&image)?);
    let (v_in, v_out) = match frame {
        LeafFrame::TangentSystem => (v_in, v_out),
        LeafFrame::Orthonormal => (orthonormal(v_in), orthonormal(v_out)),
    };
    let pushed = &et * &v_in;
    let a = v_out
        .svd(true, true)
        .solve(&pushed, 1e-14)
        .map_err(|e| Error::InvalidParameter(format!("degenerate leaf frame: {e}")))?;
    Ok(a.determinant())
}

/// `|J(F_1) − J(F_2)|` for two points of the same leaf, using the
/// tangent-system frame.
pub fn jacobian_constancy(alg: &LieAlgebra, x: &[f64], f1: &[f64], f2: &[f64]) -> Result<f64> {
    jacobian_constancy_with(alg, x, f1, f2, LeafFrame::TangentSystem)
}

pub fn jacobian_constancy_with(
    alg: &LieAlgebra,
    x: &[f64],
    f1: &[f64],
    f2: &[f64],
    frame: LeafFrame,
) -> Result<f64> {
    if !leaf_of(alg, f1)?.same_leaf(&leaf_of(alg, f2)?, 1e-8) {
        return Err(Error::LeafMismatch);
    }
    Ok((leaf_jacobian(alg, x, f1, frame)? - leaf_jacobian(alg, x, f2, frame)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::coadjoint::coadjoint_move;

    fn alg(s: &str) -> LieAlgebra {
        build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn membership() {
        let g = alg("g5_2k(k=0)");
        assert!(in_foliated_manifold(&g, &[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(!in_foliated_manifold(&g, &[5.0, 0.0, 1.0, 1.0, 1.0]).unwrap());
        let mut f = vec![0.0; 8];
        f[0] = 1.0;
        f[1] = -2.0;
        assert!(in_foliated_manifold(&alg("g6_2k_2(k=1)"), &f).unwrap());
        assert!(in_foliated_manifold(&alg("g4_1"), &[0.0, 1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn leaves() {
        let l = leaf_of(&alg("g5_2k(k=0)"), &[7.0, 2.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(l.values(), vec![2.0]);
        let l = leaf_of(&alg("g6_2k_2(k=0)"), &[1.0, 2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(l.values(), vec![2.0, 1.0]);
        let l = leaf_of(&alg("g6_2k_1(k=0)"), &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(l.values(), vec![1.0, 1.0]);
        assert_eq!(
            leaf_of(&alg("g5_2k(k=0)"), &[1.0, 0.0, 0.0, 0.0, 0.0]),
            Err(Error::NotInFoliatedManifold)
        );
    }

    #[test]
    fn systems() {
        assert_eq!(tangent_system(&alg("g5_2k(k=0)")).unwrap().describe(), ["d1", "d3", "d4", "d5"]);
        assert_eq!(
            tangent_system(&alg("g6_2k_1(k=0)")).unwrap().describe(),
            ["x1*d1 + x2*d4", "d3", "d5", "d6"]
        );
        assert_eq!(
            tangent_system(&alg("g6_2k_2(k=0)")).unwrap().describe(),
            ["x2*d1 + x1*d4", "d3", "d5", "d6"]
        );
        assert_eq!(tangent_system(&alg("g6_2k_2(k=3)")).unwrap().len(), 10);
    }

    #[test]
    fn tangency_examples() {
        assert_eq!(verify_tangency(&alg("g5_2k(k=1)"), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap(), 0.0);
        let f = [1.0, 2.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(verify_tangency(&alg("g6_2k_2(k=0)"), &f).unwrap(), 0.0);
        let f = [1.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(verify_tangency(&alg("g6_2k_1(k=0)"), &f).unwrap(), 0.0);
    }

    #[test]
    fn h_examples() {
        let t = equivalence_h(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(t, vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let t = equivalence_h(&[0.0, 1.0, 4.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!((t[0], t[3]), (0.0, 0.0));
        let f = [2.0, 1.0, 0.0, 1.0, 0.0, 0.0];
        let t = equivalence_h(&f).unwrap();
        let c = 2.0 * (-1f64).exp();
        assert_eq!(t[0], 3.0);
        assert!((t[3] - (9.0 - c) / 2.0).abs() < 1e-15);
        assert!(h_residual(&f).unwrap() < 1e-15);
        assert_eq!(equivalence_h(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]), Err(Error::NotInFoliatedManifold));
        assert!(equivalence_h(&[1.0, 1.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn labels_and_codimension() {
        assert_eq!(connes_label(&alg("g5_2k(k=1)")).unwrap(), "C0(R*) ⊗ K");
        assert_eq!(connes_label(&alg("g6_2k_1(k=0)")).unwrap(), "C0(R* x R) ⊗ K");
        assert_eq!(connes_label(&alg("g6_2k_2(k=2)")).unwrap(), "C0(R* x R) ⊗ K");
        assert_eq!(codimension(&alg("g5_2k(k=0)")).unwrap(), 1);
        assert_eq!(codimension(&alg("g6_2k_1(k=0)")).unwrap(), 2);
    }

    #[test]
    fn jacobian_is_constant_on_leaves() {
        for name in ["g5_2k(k=1)", "g6_2k_1(k=1)", "g6_2k_2(k=1)"] {
            let g = alg(name);
            let n = g.dim();
            let f: Vec<f64> = (0..n).map(|i| 0.4 * i as f64 - 1.1).collect();
            let y: Vec<f64> = (0..n).map(|i| 0.3 - 0.2 * i as f64).collect();
            let x: Vec<f64> = (0..n).map(|i| ((i * 5) % 7) as f64 * 0.5 - 1.5).collect();
            let f2 = coadjoint_move(&g, &f, &y).unwrap();
            assert!(jacobian_constancy(&g, &x, &f, &f2).unwrap() <= 1e-8, "{name}");
            assert!(jacobian_constancy(&g, &vec![0.0; n], &f, &f2).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn orthonormal_frame_is_not_leaf_invariant() {
        // an orthonormal frame measures induced surface area, which the
        // coadjoint action does not preserve on curved leaves
        let mut worst = 0.0f64;
        for name in ["g6_2k_1(k=1)", "g6_2k_2(k=1)"] {
            let g = alg(name);
            let n = g.dim();
            let x: Vec<f64> = (0..n).map(|i| ((i * 5) % 7) as f64 * 0.8 - 2.1).collect();
            for s in 1..6 {
                let f: Vec<f64> = (0..n).map(|i| ((i * 3 + s) % 5) as f64 * 1.3 - 2.5).collect();
                let y: Vec<f64> = (0..n).map(|i| ((i * 2 + 3 * s) % 7) as f64 * 0.9 - 2.7).collect();
                let f2 = coadjoint_move(&g, &f, &y).unwrap();
                worst = worst.max(jacobian_constancy_with(&g, &x, &f, &f2, LeafFrame::Orthonormal).unwrap());
                assert!(jacobian_constancy(&g, &x, &f, &f2).unwrap() <= 1e-8);
            }
        }
        assert!(worst > 1e-3, "{worst}");
    }

    #[test]
    fn different_leaves_are_rejected() {
        let g = alg("g5_2k(k=0)");
        let r = jacobian_constancy(&g, &[0.0; 5], &[0.0, 1.0, 0.0, 0.0, 0.0], &[0.0, 2.0, 0.0, 0.0, 0.0]);
        assert_eq!(r, Err(Error::LeafMismatch));
    }
}
