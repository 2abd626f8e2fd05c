//! Numeric matrix exponential: scaling and squaring with the degree-13
//! diagonal Padé approximant. Used as the oracle for the closed forms.

use crate::linalg::Matrix;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Scaled matrices satisfy `‖M‖₁ / 2^s ≤ SCALED_NORM`.
const SCALED_NORM: f64 = 0.5;

fn norm1(m: &Matrix) -> f64 {
    m.column_iter().map(|c| c.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// `e^M` for a square matrix.
pub fn exp_matrix_numeric(m: &Matrix) -> Matrix {
    assert!(m.is_square(), "matrix exponential needs a square matrix");
    let n = m.nrows();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let norm = norm1(m);
    if norm == 0.0 {
        return Matrix::identity(n, n);
    }
    let s = if norm > SCALED_NORM { (norm / SCALED_NORM).log2().ceil() as i32 } else { 0 };
    let a = m * 2f64.powi(-s);

    let id = Matrix::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = &PADE13;
    let u_inner = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    let u = &a * (&a6 * u_inner + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &id * b[1]);
    let v_inner = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    let v = &a6 * v_inner + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &id * b[0];

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is nonsingular for scaled input");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gives_identity() {
        assert_eq!(exp_matrix_numeric(&Matrix::zeros(3, 3)), Matrix::identity(3, 3));
    }

    #[test]
    fn diagonal() {
        let m = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0]));
        let e = exp_matrix_numeric(&m);
        assert!((e[(0, 0)] - 1f64.exp()).abs() < 1e-12 * 1f64.exp());
        assert!((e[(1, 1)] - 2f64.exp()).abs() < 1e-12 * 2f64.exp());
        assert_eq!(e[(0, 1)], 0.0);
    }

    #[test]
    fn rotation_generator() {
        // exp([[0, t], [-t, 0]]) = [[cos t, sin t], [-sin t, cos t]]
        let t = 7.3;
        let m = Matrix::from_row_slice(2, 2, &[0.0, t, -t, 0.0]);
        let e = exp_matrix_numeric(&m);
        let want = Matrix::from_row_slice(2, 2, &[t.cos(), t.sin(), -t.sin(), t.cos()]);
        assert!((e - want).norm() < 1e-12);
    }

    #[test]
    fn large_norm_stays_accurate() {
        // diag(-20, 20) conjugated by a shear: exact exponential known.
        let s = Matrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let s_inv = Matrix::from_row_slice(2, 2, &[1.0, -1.0, 0.0, 1.0]);
        let d = Matrix::from_row_slice(2, 2, &[-10.0, 0.0, 0.0, 10.0]);
        let ed = Matrix::from_row_slice(2, 2, &[(-10f64).exp(), 0.0, 0.0, 10f64.exp()]);
        let want = &s * ed * &s_inv;
        let got = exp_matrix_numeric(&(&s * d * &s_inv));
        assert!((&got - &want).norm() <= 1e-11 * want.norm());
    }
}
