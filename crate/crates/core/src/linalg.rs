//! Small dense linear-algebra helpers shared by the other modules.

use nalgebra::DMatrix;

pub type Matrix = DMatrix<f64>;

/// Pivot threshold used by row reduction.
pub const PIVOT_TOL: f64 = 1e-10;

/// Relative singular-value cutoff for numerical rank.
pub const RANK_RTOL: f64 = 1e-9;

/// Reduced row echelon form of the given rows; zero rows are dropped.
pub fn row_reduce(rows: &[Vec<f64>], ncols: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = rows.iter().filter(|r| r.len() == ncols).cloned().collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row >= a.len() {
            break;
        }
        let (best, best_abs) = (pivot_row..a.len())
            .map(|r| (r, a[r][col].abs()))
            .fold((pivot_row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best_abs <= tol {
            for row in a.iter_mut().skip(pivot_row) {
                row[col] = 0.0;
            }
            continue;
        }
        a.swap(pivot_row, best);
        let p = a[pivot_row][col];
        for v in a[pivot_row].iter_mut() {
            *v /= p;
        }
        a[pivot_row][col] = 1.0;
        let prow = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let factor = row[col];
            if factor != 0.0 {
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= factor * pv;
                }
                row[col] = 0.0;
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            if v.abs() <= tol {
                *v = 0.0;
            }
        }
    }
    a
}

/// Basis of the null space of `a` (vectors of length `a.ncols()`).
pub fn null_space(a: &Matrix, tol: f64) -> Vec<Vec<f64>> {
    let ncols = a.ncols();
    let rows: Vec<Vec<f64>> = (0..a.nrows()).map(|i| a.row(i).iter().copied().collect()).collect();
    let rref = row_reduce(&rows, ncols, tol);
    let pivots: Vec<usize> = rref
        .iter()
        .map(|r| r.iter().position(|&v| v != 0.0).expect("rref rows are nonzero"))
        .collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0.0; ncols];
            v[free] = 1.0;
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = -row[free];
            }
            v
        })
        .collect()
}

/// Numerical rank: singular values below `rtol * sigma_max` count as zero.
pub fn numeric_rank(m: &Matrix, rtol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rtol * smax).count()
}

pub fn frobenius(m: &Matrix) -> f64 {
    m.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Block-diagonal matrix from square blocks.
pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Matrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    out
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn from_rows(rows: &[Vec<f64>]) -> Matrix {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    Matrix::from_fn(nr, nc, |i, j| rows[i][j])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_drops_dependent_rows() {
        let rows = vec![vec![1.0, 2.0, 0.0], vec![2.0, 4.0, 0.0], vec![0.0, 0.0, 3.0]];
        let r = row_reduce(&rows, 3, PIVOT_TOL);
        assert_eq!(r, vec![vec![1.0, 2.0, 0.0], vec![0.0, 0.0, 1.0]]);
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&a, PIVOT_TOL);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((v[0] + v[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn rank_of_zero_matrix() {
        assert_eq!(numeric_rank(&Matrix::zeros(3, 3), RANK_RTOL), 0);
        assert_eq!(numeric_rank(&Matrix::identity(3, 3), RANK_RTOL), 3);
    }
}
