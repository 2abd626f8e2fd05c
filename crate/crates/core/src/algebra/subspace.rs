use crate::linalg::{row_reduce, PIVOT_TOL};

/// A linear subspace of `R^n`, stored as a row-reduced basis.
///
/// The zero subspace keeps its ambient dimension and has an empty basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<f64>]) -> Self {
        Subspace { ambient_dim, basis: row_reduce(vectors, ambient_dim, PIVOT_TOL) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![0.0; ambient_dim];
                v[i] = 1.0;
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Membership test: adding `v` does not raise the dimension.
    pub fn contains(&self, v: &[f64]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        row_reduce(&rows, self.ambient_dim, PIVOT_TOL).len() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_subspace_keeps_ambient_dim() {
        let z = Subspace::span(4, &[vec![0.0; 4]]);
        assert_eq!(z.dim(), 0);
        assert_eq!(z.ambient_dim(), 4);
        assert!(z.contains(&[0.0; 4]));
        assert!(!z.contains(&[1.0, 0.0, 0.0, 0.0]));
    }
}
