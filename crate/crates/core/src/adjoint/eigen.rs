//! Closed-form eigenvalues of `ad_X` and a numeric eigensolver used to
//! check them.

use num_complex::Complex64;

use crate::algebra::FamilySpec;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// An eigenvalue that is linear in the coordinates of `X`:
/// `Σ re_i x_i + i Σ im_i x_i`, repeated `multiplicity` times.
/// Coordinates are zero-based (`0` is `x_1`).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEigenvalue {
    pub re: Vec<(usize, f64)>,
    pub im: Vec<(usize, f64)>,
    pub multiplicity: usize,
}

impl LinearEigenvalue {
    fn zero(multiplicity: usize) -> Self {
        LinearEigenvalue { re: vec![], im: vec![], multiplicity }
    }

    fn real(coord: usize, coeff: f64, multiplicity: usize) -> Self {
        LinearEigenvalue { re: vec![(coord, coeff)], im: vec![], multiplicity }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let dot = |t: &[(usize, f64)]| t.iter().map(|&(i, c)| c * x[i]).sum::<f64>();
        Complex64::new(dot(&self.re), dot(&self.im))
    }

    /// True when some `X` makes this eigenvalue nonzero and purely imaginary,
    /// i.e. the imaginary coefficient vector is not a multiple of the real one.
    pub fn can_be_purely_imaginary(&self, n: usize) -> bool {
        let dense = |t: &[(usize, f64)]| {
            let mut v = vec![0.0; n];
            for &(i, c) in t {
                v[i] += c;
            }
            v
        };
        let (re, im) = (dense(&self.re), dense(&self.im));
        if im.iter().all(|&v| v == 0.0) {
            return false;
        }
        if re.iter().all(|&v| v == 0.0) {
            return true;
        }
        // im ∈ span(re) iff every 2x2 minor vanishes
        (0..n).any(|i| (0..n).any(|j| re[i] * im[j] - re[j] * im[i] != 0.0))
    }
}

/// Eigenvalues of `ad_X` as listed for each indecomposable family.
pub fn closed_form_eigenvalues(spec: &FamilySpec) -> Result<Vec<LinearEigenvalue>> {
    let (x3, x4) = (2, 3);
    Ok(match spec {
        FamilySpec::G3_1 { lambda } => vec![
            LinearEigenvalue::zero(1),
            LinearEigenvalue::real(x3, 1.0, 1),
            LinearEigenvalue::real(x3, *lambda, 1),
        ],
        FamilySpec::G3_2 => vec![LinearEigenvalue::zero(1), LinearEigenvalue::real(x3, 1.0, 2)],
        FamilySpec::G3_3 { lambda } => vec![
            LinearEigenvalue::zero(1),
            LinearEigenvalue { re: vec![(x3, *lambda)], im: vec![(x3, 1.0)], multiplicity: 1 },
            LinearEigenvalue { re: vec![(x3, *lambda)], im: vec![(x3, -1.0)], multiplicity: 1 },
        ],
        FamilySpec::G4_1 => vec![LinearEigenvalue::zero(3), LinearEigenvalue::real(x3, 1.0, 1)],
        FamilySpec::G4_2 => vec![LinearEigenvalue::zero(4)],
        FamilySpec::G4_3 => vec![LinearEigenvalue::zero(2), LinearEigenvalue::real(x4, 1.0, 2)],
        FamilySpec::G4_4 | FamilySpec::AffC => vec![
            LinearEigenvalue::zero(2),
            LinearEigenvalue { re: vec![(x4, 1.0)], im: vec![(x3, 1.0)], multiplicity: 1 },
            LinearEigenvalue { re: vec![(x4, 1.0)], im: vec![(x3, -1.0)], multiplicity: 1 },
        ],
        FamilySpec::G5_2k { .. } | FamilySpec::G6_2k_2 { .. } => {
            vec![LinearEigenvalue::zero(spec.dim())]
        }
        FamilySpec::G6_2k_1 { .. } => vec![
            LinearEigenvalue::zero(spec.dim() - 1),
            LinearEigenvalue::real(x3, 1.0, 1),
        ],
        other => return Err(Error::unsupported(other, "closed-form eigenvalues")),
    })
}

/// Eigenvalues of a real square matrix.
///
/// Rows and columns that isolate an eigenvalue are permuted out first (the
/// permutation step of standard balancing), so triangular parts are read
/// off exactly and only the remaining core goes through a Schur
/// decomposition. This keeps nilpotent blocks from being smeared into
/// `O(ε^{1/p})` clusters.
pub fn numeric_eigenvalues(m: &Matrix) -> Vec<Complex64> {
    assert!(m.is_square());
    let n = m.nrows();
    let mut a = m.clone();
    let (mut lo, mut hi) = (0usize, n); // active window [lo, hi)
    'outer: loop {
        if hi <= lo {
            break;
        }
        // a row with no off-diagonal entries inside the window
        if let Some(i) = (lo..hi).rev().find(|&i| (lo..hi).all(|j| j == i || a[(i, j)] == 0.0)) {
            swap_sym(&mut a, i, hi - 1);
            hi -= 1;
            continue 'outer;
        }
        // a column with no off-diagonal entries inside the window
        if let Some(j) = (lo..hi).find(|&j| (lo..hi).all(|i| i == j || a[(i, j)] == 0.0)) {
            swap_sym(&mut a, j, lo);
            lo += 1;
            continue 'outer;
        }
        break;
    }
    let mut out: Vec<Complex64> = (0..lo).chain(hi..n).map(|i| Complex64::new(a[(i, i)], 0.0)).collect();
    if hi > lo {
        let core = a.view((lo, lo), (hi - lo, hi - lo)).clone_owned();
        out.extend(core.schur().complex_eigenvalues().iter().copied());
    }
    out
}

fn swap_sym(a: &mut Matrix, i: usize, j: usize) {
    if i != j {
        a.swap_rows(i, j);
        a.swap_columns(i, j);
    }
}

/// Matches two eigenvalue multisets greedily by nearest distance; returns
/// the largest matched distance, or `None` when the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let key = |z: &Complex64| (z.re, z.im);
    let mut a = a.to_vec();
    a.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap_or(std::cmp::Ordering::Equal));
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for z in &a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, w)| (i, (z - w).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
        if idx == usize::MAX {
            return None;
        }
        used[idx] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_jordan_block_is_exact() {
        let m = Matrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let ev = numeric_eigenvalues(&m);
        assert!(ev.iter().all(|z| *z == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn rotation_core() {
        let m = Matrix::from_row_slice(3, 3, &[1.0, 2.0, 5.0, -2.0, 1.0, 7.0, 0.0, 0.0, 0.0]);
        let ev = numeric_eigenvalues(&m);
        let want = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 2.0), Complex64::new(1.0, -2.0)];
        assert!(multiset_distance(&ev, &want).unwrap() < 1e-12);
    }

    #[test]
    fn multiset_sizes_must_agree() {
        assert_eq!(multiset_distance(&[Complex64::new(1.0, 0.0)], &[]), None);
    }

    #[test]
    fn multiset_distance_sees_perturbations() {
        let a = [Complex64::new(1.0, 2.0), Complex64::new(1.0, -2.0), Complex64::new(0.0, 0.0)];
        let b = [Complex64::new(0.0, 0.0), Complex64::new(1.0, -2.0), Complex64::new(1.0, 2.0 + 1e-6)];
        assert_eq!(multiset_distance(&a, &a).unwrap(), 0.0);
        assert!((multiset_distance(&a, &b).unwrap() - 1e-6).abs() < 1e-12);
        let doubled = [Complex64::new(1.0, 2.0), Complex64::new(1.0, 2.0), Complex64::new(0.0, 0.0)];
        assert!(multiset_distance(&a, &doubled).unwrap() >= 4.0);
    }

    #[test]
    fn purely_imaginary_detection() {
        let rot = LinearEigenvalue { re: vec![(2, 0.0)], im: vec![(2, 1.0)], multiplicity: 1 };
        assert!(rot.can_be_purely_imaginary(3));
        let spiral = LinearEigenvalue { re: vec![(2, 0.5)], im: vec![(2, 1.0)], multiplicity: 1 };
        assert!(!spiral.can_be_purely_imaginary(3));
        let affc = LinearEigenvalue { re: vec![(3, 1.0)], im: vec![(2, 1.0)], multiplicity: 1 };
        assert!(affc.can_be_purely_imaginary(4));
    }
}
