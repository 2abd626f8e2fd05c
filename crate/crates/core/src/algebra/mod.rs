//! Structure-constant construction of every algebra in the catalog, with
//! bracket, Jacobi, derived-ideal, center and lower-central-series queries.
//!
//! Basis vectors are indexed from zero in code: index `i` is the basis
//! vector `X_{i+1}`. Exported JSON uses one-based indices.

mod family;
mod json;
mod subspace;

pub use family::{parse_family, FamilySpec, ParamDefaults};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PIVOT_TOL};

/// A real Lie algebra given by its structure constants:
/// `[X_i, X_j] = Σ_k c(i, j, k) X_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    n: usize,
    c: Vec<f64>,
    spec: FamilySpec,
}

/// Result of [`LieAlgebra::nilpotency_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    Class(usize),
    NotNilpotent,
}

impl LieAlgebra {
    /// Zero bracket on `n` generators.
    fn zero(n: usize, spec: FamilySpec) -> Self {
        LieAlgebra { n, c: vec![0.0; n * n * n], spec }
    }

    /// Builds an algebra from a raw tensor, checking only its shape.
    pub fn from_tensor(n: usize, c: Vec<f64>, spec: FamilySpec) -> Result<Self> {
        Error::check_len(n * n * n, c.len())?;
        Ok(LieAlgebra { n, c, spec })
    }

    /// Sets `[X_i, X_j] = Σ coeffs` (one-based indices) and its antisymmetric image.
    fn set(&mut self, i: usize, j: usize, coeffs: &[(usize, f64)]) {
        for &(k, v) in coeffs {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            let n = self.n;
            self.c[(i * n + j) * n + k] = v;
            self.c[(j * n + i) * n + k] = -v;
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// Structure constant `c(i, j, k)`, zero-based.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.n + j) * self.n + k]
    }

    pub fn tensor(&self) -> &[f64] {
        &self.c
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        Error::check_len(self.n, u.len())?;
        Error::check_len(self.n, v.len())?;
        let n = self.n;
        let mut out = vec![0.0; n];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0.0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0.0 {
                    continue;
                }
                let w = ui * vj;
                let base = (i * n + j) * n;
                for (o, cijk) in out.iter_mut().zip(&self.c[base..base + n]) {
                    *o += w * cijk;
                }
            }
        }
        Ok(out)
    }

    /// Bracket of two basis vectors as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<f64> {
        let base = (i * self.n + j) * self.n;
        self.c[base..base + self.n].to_vec()
    }

    /// Largest entrywise deviation from antisymmetry.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.c(i, j, k) + self.c(j, i, k)).abs());
                }
            }
        }
        worst
    }

    /// Max over `(i, j, l, k)` of the absolute cyclic Jacobi sum.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.c(i, j, m) * self.c(m, l, k)
                                + self.c(j, l, m) * self.c(m, i, k)
                                + self.c(l, i, m) * self.c(m, j, k);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Row-reduced span of all `[X_i, X_j]`.
    pub fn derived_ideal(&self) -> Subspace {
        let mut gens = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                gens.push(self.bracket_basis(i, j));
            }
        }
        Subspace::span(self.n, &gens)
    }

    /// `{v : [v, X_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace {
        let n = self.n;
        // row (j, k) of the system: Σ_i v_i c(i, j, k) = 0
        let a = Matrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            self.c(i, j, k)
        });
        Subspace::span(n, &crate::linalg::null_space(&a, PIVOT_TOL))
    }

    /// `[𝔤, V]` for a subspace `V`.
    pub fn bracket_with(&self, v: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for i in 0..self.n {
            let mut e = vec![0.0; self.n];
            e[i] = 1.0;
            for b in v.basis() {
                gens.push(self.bracket(&e, b).expect("lengths match"));
            }
        }
        Subspace::span(self.n, &gens)
    }

    /// Smallest `c` with `𝔤^{c+1} = 0` in the lower central series
    /// `𝔤^1 = 𝔤`, `𝔤^{i+1} = [𝔤, 𝔤^i]`.
    pub fn nilpotency_class(&self) -> Nilpotency {
        let mut term = Subspace::full(self.n);
        let mut class = 0;
        loop {
            if term.dim() == 0 {
                return Nilpotency::Class(class.max(1));
            }
            let next = self.bracket_with(&term);
            if next.dim() == term.dim() {
                return Nilpotency::NotNilpotent;
            }
            term = next;
            class += 1;
        }
    }

    /// Block direct sum; cross brackets vanish.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let parts = match (&self.spec, &other.spec) {
            (FamilySpec::DirectSum(a), FamilySpec::DirectSum(b)) => {
                a.iter().chain(b).cloned().collect()
            }
            (FamilySpec::DirectSum(a), s) => a.iter().cloned().chain([s.clone()]).collect(),
            (s, FamilySpec::DirectSum(b)) => [s.clone()].into_iter().chain(b.iter().cloned()).collect(),
            (a, b) => vec![a.clone(), b.clone()],
        };
        let mut out = embed_blocks(&[self, other]);
        out.spec = FamilySpec::DirectSum(parts);
        out
    }

    /// `ad_X` for a basis vector, column convention.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, n, |row, col| self.c(i, col, row))
    }
}

/// Tensor of a block direct sum, spec left as a placeholder for the caller.
fn embed_blocks(blocks: &[&LieAlgebra]) -> LieAlgebra {
    let n: usize = blocks.iter().map(|b| b.n).sum();
    let mut out = LieAlgebra::zero(n, FamilySpec::Abelian { m: n.max(1) as u32 });
    let mut off = 0;
    for b in blocks {
        for i in 0..b.n {
            for j in 0..b.n {
                for k in 0..b.n {
                    out.c[((off + i) * n + off + j) * n + off + k] = b.c(i, j, k);
                }
            }
        }
        off += b.n;
    }
    out
}

/// Builds the algebra named by `spec`.
pub fn build(spec: &FamilySpec) -> Result<LieAlgebra> {
    spec.validate()?;
    let n = spec.dim();
    let mut g = LieAlgebra::zero(n, spec.clone());
    match spec {
        FamilySpec::G3_1 { lambda } => {
            g.set(3, 1, &[(1, 1.0)]);
            g.set(3, 2, &[(2, *lambda)]);
        }
        FamilySpec::G3_2 => {
            g.set(3, 1, &[(1, 1.0)]);
            g.set(3, 2, &[(1, 1.0), (2, 1.0)]);
        }
        FamilySpec::G3_3 { lambda } => {
            g.set(3, 1, &[(1, *lambda), (2, -1.0)]);
            g.set(3, 2, &[(1, 1.0), (2, *lambda)]);
        }
        FamilySpec::G4_1 => {
            g.set(3, 1, &[(1, 1.0)]);
            g.set(3, 4, &[(2, 1.0)]);
        }
        FamilySpec::G4_2 => {
            g.set(3, 2, &[(1, 1.0)]);
            g.set(3, 4, &[(2, 1.0)]);
        }
        FamilySpec::G4_3 => {
            g.set(3, 2, &[(1, 1.0)]);
            g.set(4, 1, &[(1, 1.0)]);
            g.set(4, 2, &[(2, 1.0)]);
        }
        FamilySpec::G4_4 | FamilySpec::AffC => {
            g.set(3, 1, &[(2, -1.0)]);
            g.set(3, 2, &[(1, 1.0)]);
            g.set(4, 1, &[(1, 1.0)]);
            g.set(4, 2, &[(2, 1.0)]);
        }
        FamilySpec::G5_2k { k } => {
            g.set(3, 4, &[(1, 1.0)]);
            g.set(3, 1, &[(2, 1.0)]);
            for i in 0..=*k as usize {
                g.set(4 + 2 * i, 5 + 2 * i, &[(2, 1.0)]);
            }
        }
        FamilySpec::G6_2k_1 { k } => {
            g.set(3, 1, &[(1, 1.0)]);
            g.set(3, 4, &[(2, 1.0)]);
            for i in 0..=*k as usize {
                g.set(5 + 2 * i, 6 + 2 * i, &[(2, 1.0)]);
            }
        }
        FamilySpec::G6_2k_2 { k } => {
            g.set(3, 4, &[(1, 1.0)]);
            g.set(3, 1, &[(2, 1.0)]);
            for i in 0..=*k as usize {
                g.set(5 + 2 * i, 6 + 2 * i, &[(2, 1.0)]);
            }
        }
        FamilySpec::AffR => g.set(1, 2, &[(2, 1.0)]),
        FamilySpec::Heisenberg { m } => {
            let m = *m as usize;
            for i in 1..=m {
                g.set(i, m + i, &[(2 * m + 1, 1.0)]);
            }
        }
        FamilySpec::Abelian { .. } => {}
        FamilySpec::DirectSum(parts) => {
            let built: Vec<LieAlgebra> = parts.iter().map(build).collect::<Result<_>>()?;
            let refs: Vec<&LieAlgebra> = built.iter().collect();
            g = embed_blocks(&refs);
            g.spec = spec.clone();
        }
        FamilySpec::TrivialExtension { base, m } => {
            let b = build(base)?;
            let a = build(&FamilySpec::Abelian { m: *m })?;
            g = embed_blocks(&[&b, &a]);
            g.spec = spec.clone();
        }
    }
    Ok(g)
}

/// Block decomposition of a composite algebra: `(offset, spec)` per summand.
/// A trivial extension contributes its base and one abelian block.
pub fn blocks(spec: &FamilySpec) -> Vec<(usize, FamilySpec)> {
    fn walk(spec: &FamilySpec, off: &mut usize, out: &mut Vec<(usize, FamilySpec)>) {
        match spec {
            FamilySpec::DirectSum(parts) => {
                for p in parts {
                    walk(p, off, out);
                }
            }
            FamilySpec::TrivialExtension { base, m } => {
                walk(base, off, out);
                walk(&FamilySpec::Abelian { m: *m }, off, out);
            }
            s => {
                out.push((*off, s.clone()));
                *off += s.dim();
            }
        }
    }
    let mut out = Vec::new();
    let mut off = 0;
    walk(spec, &mut off, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i - 1] = 1.0;
        v
    }

    #[test]
    fn g3_2_brackets() {
        let g = build(&FamilySpec::G3_2).unwrap();
        assert_eq!(g.c(2, 1, 0), 1.0);
        assert_eq!(g.c(2, 1, 1), 1.0);
        assert_eq!(g.c(1, 2, 0), -1.0);
    }

    #[test]
    fn abelian_is_zero() {
        let g = build(&FamilySpec::Abelian { m: 4 }).unwrap();
        assert_eq!(g.dim(), 4);
        assert!(g.tensor().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn g5_k1_entries() {
        let g = build(&FamilySpec::G5_2k { k: 1 }).unwrap();
        assert_eq!(g.dim(), 7);
        assert_eq!(g.c(2, 3, 0), 1.0);
        assert_eq!(g.c(2, 0, 1), 1.0);
        assert_eq!(g.c(3, 4, 1), 1.0);
        assert_eq!(g.c(5, 6, 1), 1.0);
        let nonzero = g.tensor().iter().filter(|&&v| v != 0.0).count();
        assert_eq!(nonzero, 2 * 4);
    }

    #[test]
    fn bracket_examples() {
        let g = build(&FamilySpec::G4_4).unwrap();
        assert_eq!(g.bracket(&e(4, 4), &e(4, 2)).unwrap(), e(4, 2));
        let g = build(&FamilySpec::G6_2k_2 { k: 0 }).unwrap();
        assert_eq!(g.bracket(&e(6, 3), &e(6, 4)).unwrap(), e(6, 1));
        let u = [0.3, -1.0, 2.0, 0.5, 1.5, -0.25];
        assert!(g.bracket(&u, &u).unwrap().iter().all(|&v| v == 0.0));
        assert_eq!(
            g.bracket(&[1.0], &u),
            Err(Error::DimensionMismatch { expected: 6, got: 1 })
        );
    }

    #[test]
    fn jacobi_of_perturbed_so3() {
        // so(3) plus one extra constant c(1,2,1) = 1 breaks the identity.
        let n = 3;
        let mut c = vec![0.0; 27];
        let mut put = |i: usize, j: usize, k: usize, v: f64| {
            c[(i * n + j) * n + k] = v;
            c[(j * n + i) * n + k] = -v;
        };
        put(0, 1, 2, 1.0);
        put(1, 2, 0, 1.0);
        put(2, 0, 1, 1.0);
        let so3 = LieAlgebra::from_tensor(3, c.clone(), FamilySpec::Abelian { m: 3 }).unwrap();
        assert_eq!(so3.jacobi_defect(), 0.0);
        c[3] = 1.0; // c(0,1,0)
        c[9] = -1.0; // c(1,0,0)
        let bad = LieAlgebra::from_tensor(3, c, FamilySpec::Abelian { m: 3 }).unwrap();
        // Only the triple (0,1,2) matters. With k = 1 the first cyclic term is
        // c(0,1,0)·c(0,2,1) = 1·(-1); the other two vanish, so the sum is -1.
        assert_eq!(bad.jacobi_defect(), 1.0);
    }

    #[test]
    fn derived_and_center_examples() {
        let g = build(&FamilySpec::G4_2).unwrap();
        let d = g.derived_ideal();
        assert_eq!(d.dim(), 2);
        assert!(d.contains(&e(4, 1)) && d.contains(&e(4, 2)));
        assert_eq!(build(&FamilySpec::Abelian { m: 3 }).unwrap().derived_ideal().dim(), 0);
        let aff = build(&FamilySpec::AffR).unwrap().derived_ideal();
        assert_eq!(aff.dim(), 1);
        assert!(aff.contains(&e(2, 2)));

        let z = build(&FamilySpec::G4_1).unwrap().center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&e(4, 2)));
        assert_eq!(build(&FamilySpec::G3_2).unwrap().center().dim(), 0);
        let h = build(&FamilySpec::Heisenberg { m: 2 }).unwrap().center();
        assert_eq!(h.dim(), 1);
        assert!(h.contains(&e(5, 5)));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(build(&FamilySpec::G5_2k { k: 0 }).unwrap().nilpotency_class(), Nilpotency::Class(3));
        assert_eq!(build(&FamilySpec::Abelian { m: 2 }).unwrap().nilpotency_class(), Nilpotency::Class(1));
        assert_eq!(build(&FamilySpec::G4_1).unwrap().nilpotency_class(), Nilpotency::NotNilpotent);
        assert_eq!(
            build(&FamilySpec::Heisenberg { m: 3 }).unwrap().nilpotency_class(),
            Nilpotency::Class(2)
        );
    }

    #[test]
    fn direct_sum_examples() {
        let a = build(&FamilySpec::AffR).unwrap();
        let s = a.direct_sum(&a);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.c(0, 1, 1), 1.0);
        assert_eq!(s.c(2, 3, 3), 1.0);
        assert_eq!(s.c(0, 3, 3), 0.0);
        assert_eq!(s, build(&FamilySpec::DirectSum(vec![FamilySpec::AffR, FamilySpec::AffR])).unwrap());

        let h = build(&FamilySpec::Heisenberg { m: 1 }).unwrap();
        assert_eq!(a.direct_sum(&h).derived_ideal().dim(), 2);

        let ext = build(&FamilySpec::TrivialExtension { base: Box::new(FamilySpec::G4_1), m: 2 }).unwrap();
        let sum = build(&FamilySpec::G4_1).unwrap().direct_sum(&build(&FamilySpec::Abelian { m: 2 }).unwrap());
        assert_eq!(ext.tensor(), sum.tensor());
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(build(&FamilySpec::G3_1 { lambda: 0.0 }), Err(Error::InvalidParameter(_))));
        assert!(matches!(build(&FamilySpec::G3_3 { lambda: -1.0 }), Err(Error::InvalidParameter(_))));
    }
}
