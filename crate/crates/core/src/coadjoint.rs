//! Coadjoint orbits: the move `F ↦ F·exp(ad_X)`, the Kirillov form whose
//! rank is the orbit dimension, the classification of orbits for every
//! catalog family and seeded orbit sampling.
//!
//! Functionals are plain coordinate slices `f_1..f_n` in the dual basis.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::adjoint::exp_ad;
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, Matrix, RANK_RTOL};
use crate::sampling::{rng_for, uniform_vec, COORD_RANGE};
use crate::FamilySpec;

/// Default threshold below which `f_1` or `f_2` counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// `F·exp(ad_X)` as a row vector.
pub fn coadjoint_move(alg: &LieAlgebra, f: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let n = alg.dim();
    Error::check_len(n, f.len())?;
    let e = exp_ad(alg, x)?.matrix;
    Ok((0..n).map(|j| (0..n).map(|i| f[i] * e[(i, j)]).sum()).collect())
}

/// `B_ij = ⟨F, [X_i, X_j]⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct KirillovForm {
    pub matrix: Matrix,
}

impl KirillovForm {
    /// Numerical rank, rounded down to even.
    pub fn rank(&self) -> usize {
        let r = numeric_rank(&self.matrix, RANK_RTOL);
        if r % 2 == 1 {
            log::warn!("skew form has odd numerical rank {r}; rounding down");
        }
        r - r % 2
    }
}

pub fn kirillov_form(alg: &LieAlgebra, f: &[f64]) -> Result<KirillovForm> {
    let n = alg.dim();
    Error::check_len(n, f.len())?;
    let matrix = Matrix::from_fn(n, n, |i, j| (0..n).map(|k| alg.c(i, j, k) * f[k]).sum());
    Ok(KirillovForm { matrix })
}

/// Dimension of the orbit through `F`.
pub fn orbit_dimension(alg: &LieAlgebra, f: &[f64]) -> Result<usize> {
    Ok(kirillov_form(alg, f)?.rank())
}

/// Geometric type of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    Trivial,
    HalfPlane,
    Plane,
    Cylinder,
    ParabolicCylinder,
    HalfSpace,
    Hyperplane,
    OpenDense,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::Trivial => "trivial",
            OrbitKind::HalfPlane => "half_plane",
            OrbitKind::Plane => "plane",
            OrbitKind::Cylinder => "cylinder",
            OrbitKind::ParabolicCylinder => "parabolic_cylinder",
            OrbitKind::HalfSpace => "half_space",
            OrbitKind::Hyperplane => "hyperplane",
            OrbitKind::OpenDense => "open_dense",
        }
    }
}

/// Open condition that every point of an orbit satisfies. Coordinates are
/// zero-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    /// `sign · x_coord > 0`.
    SignOf { coord: usize, sign: f64 },
    /// `x_a² + x_b² > 0`.
    NotBothZero { a: usize, b: usize },
}

impl Constraint {
    pub fn holds(&self, p: &[f64]) -> bool {
        match *self {
            Constraint::SignOf { coord, sign } => sign * p[coord] > 0.0,
            Constraint::NotBothZero { a, b } => p[a] != 0.0 || p[b] != 0.0,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Constraint::SignOf { coord, sign } => {
                write!(f, "x{} {} 0", coord + 1, if sign > 0.0 { ">" } else { "<" })
            }
            Constraint::NotBothZero { a, b } => write!(f, "x{}^2 + x{}^2 > 0", a + 1, b + 1),
        }
    }
}

/// Value of an orbit invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Invariant {
    Value(f64),
    /// `sign · e^{log_abs}`, kept in the log domain to avoid overflow.
    Exponential { sign: f64, log_abs: f64 },
    /// A value defined modulo `period`.
    Periodic { value: f64, period: f64 },
}

impl Invariant {
    /// Relative distance between two values of the same invariant;
    /// infinite when the kinds or signs differ.
    pub fn distance(&self, other: &Invariant) -> f64 {
        let rel = |a: f64, b: f64, d: f64| d / 1f64.max(a.abs()).max(b.abs());
        match (*self, *other) {
            (Invariant::Value(a), Invariant::Value(b)) => rel(a, b, (a - b).abs()),
            (
                Invariant::Exponential { sign: s1, log_abs: a },
                Invariant::Exponential { sign: s2, log_abs: b },
            ) if s1 == s2 => rel(a, b, (a - b).abs()),
            (Invariant::Periodic { value: a, period: p }, Invariant::Periodic { value: b, .. }) => {
                let d = (a - b).rem_euclid(p);
                rel(a, b, d.min(p - d))
            }
            _ => f64::INFINITY,
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Invariant::Value(v) => json!(v),
            Invariant::Exponential { sign, log_abs } => json!({
                "sign": sign,
                "log_abs": log_abs,
                "value": sign * log_abs.exp(),
            }),
            Invariant::Periodic { value, period } => json!({ "value": value, "period": period }),
        }
    }
}

/// Closed-form invariant of an orbit, evaluated at any point of it.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Expr {
    /// A fixed coordinate.
    Coord(usize),
    /// `λ ln|x_1| − ln|x_2|`.
    LogRatio(f64),
    /// `x_2 / x_1 − ln|x_1|`.
    LogShift,
    /// `x_1² + x_2²`.
    RadiusSq,
    /// `ln r − λ θ` with `x_1 + i x_2 = r e^{iθ}`, modulo `2πλ`.
    SpiralPhase(f64),
    /// `x_1 e^{−x_4/x_2}`.
    ExpShift,
    /// `x_s² − 2 x_a x_b`.
    Quadratic { s: usize, a: usize, b: usize },
}

impl Expr {
    fn eval(&self, name: &str, p: &[f64]) -> Result<Invariant> {
        let undefined = || Error::BranchUndefined(name.to_string());
        Ok(match *self {
            Expr::Coord(i) => Invariant::Value(p[i]),
            Expr::LogRatio(l) => {
                if p[0] == 0.0 || p[1] == 0.0 {
                    return Err(undefined());
                }
                Invariant::Value(l * p[0].abs().ln() - p[1].abs().ln())
            }
            Expr::LogShift => {
                if p[0] == 0.0 {
                    return Err(undefined());
                }
                Invariant::Value(p[1] / p[0] - p[0].abs().ln())
            }
            Expr::RadiusSq => Invariant::Value(p[0] * p[0] + p[1] * p[1]),
            Expr::SpiralPhase(l) => {
                if p[0] == 0.0 && p[1] == 0.0 {
                    return Err(undefined());
                }
                let r = p[0].hypot(p[1]);
                Invariant::Periodic { value: r.ln() - l * p[1].atan2(p[0]), period: 2.0 * PI * l }
            }
            Expr::ExpShift => {
                if p[1] == 0.0 || p[0] == 0.0 {
                    return Err(undefined());
                }
                Invariant::Exponential { sign: p[0].signum(), log_abs: p[0].abs().ln() - p[3] / p[1] }
            }
            Expr::Quadratic { s, a, b } => Invariant::Value(p[s] * p[s] - 2.0 * p[a] * p[b]),
        })
    }
}

/// Classified orbit through a functional.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitDescriptor {
    pub family: FamilySpec,
    pub kind: OrbitKind,
    pub dim: usize,
    /// Invariants evaluated at the base point, in a fixed order.
    pub invariants: Vec<(String, Invariant)>,
    pub constraints: Vec<Constraint>,
    /// Zero-based index and value of every coordinate fixed on the orbit.
    pub fixed_coords: Vec<(usize, f64)>,
    exprs: Vec<(String, Expr)>,
}

impl OrbitDescriptor {
    /// The orbit's invariants evaluated at another point.
    pub fn invariants_at(&self, p: &[f64]) -> Result<Vec<(String, Invariant)>> {
        Error::check_len(self.family.dim(), p.len())?;
        self.exprs.iter().map(|(name, e)| Ok((name.clone(), e.eval(name, p)?))).collect()
    }

    pub fn constraints_hold(&self, p: &[f64]) -> bool {
        self.constraints.iter().all(|c| c.holds(p))
    }

    /// Largest relative drift of any invariant between the base point and
    /// `p`; infinite when a constraint fails or an invariant is undefined.
    pub fn drift(&self, p: &[f64]) -> Result<f64> {
        if !self.constraints_hold(p) {
            return Ok(f64::INFINITY);
        }
        let at = match self.invariants_at(p) {
            Ok(v) => v,
            Err(Error::BranchUndefined(_)) => return Ok(f64::INFINITY),
            Err(e) => return Err(e),
        };
        Ok(self.invariants.iter().zip(&at).map(|((_, a), (_, b))| a.distance(b)).fold(0.0, f64::max))
    }

    /// Whether `p` satisfies every defining equation within `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> Result<bool> {
        Ok(self.drift(p)? <= tol)
    }

    pub fn to_json(&self) -> Value {
        let mut inv = Map::new();
        for (name, v) in &self.invariants {
            inv.insert(name.clone(), v.to_json());
        }
        let mut fixed = Map::new();
        for (i, v) in &self.fixed_coords {
            fixed.insert(format!("x{}", i + 1), json!(v));
        }
        json!({
            "family": self.family.to_string(),
            "kind": self.kind.as_str(),
            "dim": self.dim,
            "invariants": inv,
            "constraints": self.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "fixed_coords": fixed,
        })
    }
}

fn coords(idx: impl IntoIterator<Item = usize>) -> Vec<(String, Expr)> {
    idx.into_iter().map(|i| (format!("x{}", i + 1), Expr::Coord(i))).collect()
}

fn sign_of(coord: usize, f: &[f64]) -> Constraint {
    Constraint::SignOf { coord, sign: f[coord].signum() }
}

/// Classifies the orbit through `F` with the default zero threshold.
pub fn orbit_classify(alg: &LieAlgebra, f: &[f64]) -> Result<OrbitDescriptor> {
    orbit_classify_with(alg, f, ZERO_THRESHOLD)
}

/// Classifies the orbit through `F`; `|f_i| < zero` counts as zero in the
/// case split on `f_1, f_2`.
pub fn orbit_classify_with(alg: &LieAlgebra, f: &[f64], zero: f64) -> Result<OrbitDescriptor> {
    let spec = alg.spec();
    if !spec.is_catalog() {
        return Err(Error::unsupported(spec, "orbit classification"));
    }
    let n = alg.dim();
    Error::check_len(n, f.len())?;
    let z1 = f[0].abs() < zero;
    let z2 = f[1].abs() < zero;
    let big = n.saturating_sub(2);

    use OrbitKind as K;
    let (kind, dim, exprs, constraints): (OrbitKind, usize, Vec<(String, Expr)>, Vec<Constraint>) =
        if z1 && z2 {
            (K::Trivial, 0, coords(0..n), vec![])
        } else {
            match spec {
                FamilySpec::G3_1 { lambda } => match (z1, z2) {
                    (false, true) => (K::HalfPlane, 2, coords([1]), vec![sign_of(0, f)]),
                    (true, false) => (K::HalfPlane, 2, coords([0]), vec![sign_of(1, f)]),
                    _ => (
                        K::Cylinder,
                        2,
                        vec![("log_ratio".into(), Expr::LogRatio(*lambda))],
                        vec![sign_of(0, f), sign_of(1, f)],
                    ),
                },
                FamilySpec::G3_2 => {
                    if z1 {
                        (K::HalfPlane, 2, coords([0]), vec![sign_of(1, f)])
                    } else {
                        (K::Cylinder, 2, vec![("log_shift".into(), Expr::LogShift)], vec![sign_of(0, f)])
                    }
                }
                FamilySpec::G3_3 { lambda } => {
                    let e = if *lambda == 0.0 {
                        ("radius_sq".into(), Expr::RadiusSq)
                    } else {
                        ("spiral_phase".into(), Expr::SpiralPhase(*lambda))
                    };
                    (K::Cylinder, 2, vec![e], vec![Constraint::NotBothZero { a: 0, b: 1 }])
                }
                FamilySpec::G4_1 => {
                    if z2 {
                        (K::HalfPlane, 2, coords([1, 3]), vec![sign_of(0, f)])
                    } else if z1 {
                        (K::Plane, 2, coords([1, 0]), vec![])
                    } else {
                        let mut e = coords([1]);
                        e.push(("c".into(), Expr::ExpShift));
                        (K::Cylinder, 2, e, vec![sign_of(0, f)])
                    }
                }
                FamilySpec::G4_2 => {
                    if z1 {
                        (K::Plane, 2, coords([0, 1]), vec![])
                    } else {
                        let mut e = coords([0]);
                        e.push(("q".into(), Expr::Quadratic { s: 1, a: 0, b: 3 }));
                        (K::ParabolicCylinder, 2, e, vec![])
                    }
                }
                FamilySpec::G4_3 => {
                    if z1 {
                        (K::HalfPlane, 2, coords([0, 2]), vec![sign_of(1, f)])
                    } else {
                        (K::HalfSpace, 4, vec![], vec![sign_of(0, f)])
                    }
                }
                FamilySpec::G4_4 | FamilySpec::AffC => {
                    (K::OpenDense, 4, vec![], vec![Constraint::NotBothZero { a: 0, b: 1 }])
                }
                FamilySpec::G5_2k { .. } => {
                    if z2 {
                        (K::Plane, 2, coords([0, 1].into_iter().chain(4..n)), vec![])
                    } else {
                        (K::Hyperplane, n - 1, coords([1]), vec![])
                    }
                }
                FamilySpec::G6_2k_1 { .. } => {
                    if z2 {
                        (K::HalfPlane, 2, coords([1].into_iter().chain(3..n)), vec![sign_of(0, f)])
                    } else if z1 {
                        (K::Plane, big, coords([1, 0]), vec![])
                    } else {
                        let mut e = coords([1]);
                        e.push(("c".into(), Expr::ExpShift));
                        (K::Cylinder, big, e, vec![sign_of(0, f)])
                    }
                }
                FamilySpec::G6_2k_2 { .. } => {
                    if z2 {
                        (K::Plane, 2, coords([0, 1].into_iter().chain(4..n)), vec![])
                    } else {
                        let mut e = coords([1]);
                        e.push(("q".into(), Expr::Quadratic { s: 0, a: 1, b: 3 }));
                        (K::ParabolicCylinder, big, e, vec![])
                    }
                }
                _ => unreachable!("is_catalog covers the families above"),
            }
        };

    let invariants = exprs
        .iter()
        .map(|(name, e)| Ok((name.clone(), e.eval(name, f)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut fixed_coords: Vec<(usize, f64)> = exprs
        .iter()
        .filter_map(|(_, e)| match e {
            Expr::Coord(i) => Some((*i, f[*i])),
            _ => None,
        })
        .collect();
    fixed_coords.sort_by_key(|(i, _)| *i);
    Ok(OrbitDescriptor { family: spec.clone(), kind, dim, invariants, constraints, fixed_coords, exprs })
}

/// The defining invariants of the orbit through `F`.
pub fn orbit_invariants(alg: &LieAlgebra, f: &[f64]) -> Result<Vec<(String, Invariant)>> {
    Ok(orbit_classify(alg, f)?.invariants)
}

/// `count` points `F·exp(ad_{X_i})` with `X_i` uniform in `[−3, 3]^n`;
/// sample `i` draws from its own stream `(seed, i)`.
pub fn sample_orbit(alg: &LieAlgebra, f: &[f64], count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Err(Error::InvalidParameter("sample count must be at least 1".into()));
    }
    let n = alg.dim();
    Error::check_len(n, f.len())?;
    (0..count)
        .map(|i| {
            let x = uniform_vec(&mut rng_for(seed, i as u64), n, COORD_RANGE);
            coadjoint_move(alg, f, &x)
        })
        .collect()
}
