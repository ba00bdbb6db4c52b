//! Square matrices and vectors over a tagged semiring.
//!
//! Automaton semantics is linear algebra: a word maps to the product of its
//! letter matrices, and the value of the word is initial-vector ⊙ product ⊙
//! final-vector. Everything here is exact and tag-checked; multiplying
//! matrices over different semirings is an error, not a coercion.
//!
//! The boolean "shape" of a matrix — which entries are non-𝟘, and under
//! `PlusTimes` which are ∞ — is obtained entrywise with
//! [`Matrix::abstracted`]. A matrix is *stable* when that shape is closed
//! under squaring ([`Matrix::is_abstract_idempotent`]); the pumping
//! machinery only ever cuts loops at stable infixes.

use crate::semiring::{Semiring, Weight, WeightError};
use std::fmt;
use thiserror::Error;

/// Errors raised by matrix and vector arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right} in {op}")]
    Shape {
        left: usize,
        right: usize,
        op: &'static str,
    },
    #[error("index ({row}, {col}) out of bounds for dimension {dim}")]
    Index { row: usize, col: usize, dim: usize },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A dim × dim matrix of weights, all in one semiring, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    semiring: Semiring,
    dim: usize,
    entries: Vec<Weight>,
}

impl Matrix {
    /// The all-𝟘 matrix.
    pub fn zero(semiring: Semiring, dim: usize) -> Matrix {
        Matrix {
            semiring,
            dim,
            entries: vec![Weight::zero(semiring); dim * dim],
        }
    }

    /// The identity: 𝟙 on the diagonal, 𝟘 elsewhere.
    pub fn identity(semiring: Semiring, dim: usize) -> Matrix {
        let mut m = Matrix::zero(semiring, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Weight::one(semiring);
        }
        m
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Weight {
        &self.entries[row * self.dim + col]
    }

    /// Replace one entry; the weight must carry the matrix's semiring tag.
    pub fn set(&mut self, row: usize, col: usize, w: Weight) -> Result<(), MatrixError> {
        if row >= self.dim || col >= self.dim {
            return Err(MatrixError::Index {
                row,
                col,
                dim: self.dim,
            });
        }
        if w.semiring() != self.semiring {
            return Err(WeightError::Mismatch {
                left: self.semiring,
                right: w.semiring(),
                op: "matrix set",
            }
            .into());
        }
        self.entries[row * self.dim + col] = w;
        Ok(())
    }

    fn expect_same(&self, other: &Matrix, op: &'static str) -> Result<(), MatrixError> {
        if self.semiring != other.semiring {
            return Err(WeightError::Mismatch {
                left: self.semiring,
                right: other.semiring,
                op,
            }
            .into());
        }
        if self.dim != other.dim {
            return Err(MatrixError::Shape {
                left: self.dim,
                right: other.dim,
                op,
            });
        }
        Ok(())
    }

    /// Entrywise ⊕.
    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.expect_same(other, "matrix add")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            semiring: self.semiring,
            dim: self.dim,
            entries,
        })
    }

    /// Matrix product: (self · other)(i, k) = ⊕_j self(i, j) ⊙ other(j, k).
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.expect_same(other, "matrix mul")?;
        let d = self.dim;
        let mut out = Matrix::zero(self.semiring, d);
        for i in 0..d {
            for j in 0..d {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..d {
                    let b = other.get(j, k);
                    if b.is_zero() {
                        continue;
                    }
                    let term = a.mul(b)?;
                    let cur = out.get(i, k).clone();
                    out.entries[i * d + k] = cur.add(&term)?;
                }
            }
        }
        Ok(out)
    }

    /// k-th power by iterated multiplication (the pumping analyses need
    /// consecutive powers anyway, so repeated squaring would buy nothing);
    /// the 0-th power is the identity.
    pub fn pow(&self, k: usize) -> Result<Matrix, MatrixError> {
        let mut out = Matrix::identity(self.semiring, self.dim);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Entrywise quantity abstraction (see [`Weight::abstracted`]).
    pub fn abstracted(&self) -> Matrix {
        Matrix {
            semiring: self.semiring.abstraction_target(),
            dim: self.dim,
            entries: self.entries.iter().map(Weight::abstracted).collect(),
        }
    }

    /// Whether the abstracted matrix E satisfies E · E = E.
    pub fn is_abstract_idempotent(&self) -> Result<bool, MatrixError> {
        let e = self.abstracted();
        Ok(e.mul(&e)? == e)
    }

    /// Stable byte key of the matrix contents, usable for hashing.
    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for w in &self.entries {
            out.extend_from_slice(w.to_string().as_bytes());
            out.push(b';');
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            if i + 1 < self.dim {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Row-vector × matrix: out(k) = ⊕_j v(j) ⊙ m(j, k).
pub fn vec_mat(v: &[Weight], m: &Matrix) -> Result<Vec<Weight>, MatrixError> {
    if v.len() != m.dim() {
        return Err(MatrixError::Shape {
            left: v.len(),
            right: m.dim(),
            op: "vector-matrix product",
        });
    }
    let sr = m.semiring();
    let mut out = vec![Weight::zero(sr); m.dim()];
    for (j, vj) in v.iter().enumerate() {
        if vj.semiring() != sr {
            return Err(WeightError::Mismatch {
                left: sr,
                right: vj.semiring(),
                op: "vector-matrix product",
            }
            .into());
        }
        if vj.is_zero() {
            continue;
        }
        for k in 0..m.dim() {
            let e = m.get(j, k);
            if e.is_zero() {
                continue;
            }
            let term = vj.mul(e)?;
            out[k] = out[k].add(&term)?;
        }
    }
    Ok(out)
}

/// Bilinear form xᵀ · M · y, the value a weighted automaton assigns to a
/// word once M is that word's matrix.
pub fn bilinear(x: &[Weight], m: &Matrix, y: &[Weight]) -> Result<Weight, MatrixError> {
    dot(&vec_mat(x, m)?, y)
}

/// Dot product: ⊕_j u(j) ⊙ v(j).
pub fn dot(u: &[Weight], v: &[Weight]) -> Result<Weight, MatrixError> {
    if u.len() != v.len() {
        return Err(MatrixError::Shape {
            left: u.len(),
            right: v.len(),
            op: "dot product",
        });
    }
    let sr = match u.first() {
        Some(w) => w.semiring(),
        None => {
            return Err(MatrixError::Shape {
                left: 0,
                right: 0,
                op: "dot product of empty vectors",
            })
        }
    };
    let mut acc = Weight::zero(sr);
    for (a, b) in u.iter().zip(v) {
        acc = acc.add(&a.mul(b)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Semiring;

    fn w(sr: Semiring, n: u64) -> Weight {
        Weight::nat(sr, n).unwrap()
    }

    /// The min-plus letter matrix with loops on two states and a free switch
    /// from the first to the second: [[1, 0], [inf, 0]].
    fn switch_matrix() -> Matrix {
        let sr = Semiring::MinPlus;
        let mut m = Matrix::zero(sr, 2);
        m.set(0, 0, w(sr, 1)).unwrap();
        m.set(0, 1, w(sr, 0)).unwrap();
        m.set(1, 1, w(sr, 0)).unwrap();
        m
    }

    #[test]
    fn identity_is_neutral() {
        let m = switch_matrix();
        let id = Matrix::identity(Semiring::MinPlus, 2);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn min_plus_product_takes_cheapest_path() {
        let m = switch_matrix();
        let sq = m.mul(&m).unwrap();
        // Two-step cost 0→0 is 1+1; 0→1 is min(1+0, 0+0) = 0.
        assert_eq!(sq.get(0, 0), &w(Semiring::MinPlus, 2));
        assert_eq!(sq.get(0, 1), &w(Semiring::MinPlus, 0));
        assert_eq!(sq.get(1, 0), &Weight::zero(Semiring::MinPlus));
        assert_eq!(sq.get(1, 1), &w(Semiring::MinPlus, 0));
    }

    #[test]
    fn abstraction_commutes_with_product() {
        let m = switch_matrix();
        let lhs = m.mul(&m).unwrap().abstracted();
        let rhs = m.abstracted().mul(&m.abstracted()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn stable_shape_detected() {
        // The switch matrix has a transitively closed support, so its
        // boolean shape squares to itself.
        assert!(switch_matrix().is_abstract_idempotent().unwrap());
        // A pure two-cycle does not: its square is the identity's shape.
        let sr = Semiring::MinPlus;
        let mut flip = Matrix::zero(sr, 2);
        flip.set(0, 1, w(sr, 0)).unwrap();
        flip.set(1, 0, w(sr, 0)).unwrap();
        assert!(!flip.is_abstract_idempotent().unwrap());
    }

    #[test]
    fn vector_semantics_matches_matrix_semantics() {
        let m = switch_matrix();
        let init = vec![w(Semiring::MinPlus, 0), Weight::zero(Semiring::MinPlus)];
        let fin = vec![Weight::zero(Semiring::MinPlus), w(Semiring::MinPlus, 0)];
        // ⟨init| · M · M · |fin⟩ = cheapest 0→1 two-step path = 0.
        let v = vec_mat(&init, &m).unwrap();
        let v = vec_mat(&v, &m).unwrap();
        assert_eq!(dot(&v, &fin).unwrap(), w(Semiring::MinPlus, 0));
        assert_eq!(
            bilinear(&init, &m.pow(2).unwrap(), &fin).unwrap(),
            w(Semiring::MinPlus, 0)
        );
    }

    #[test]
    fn powers_by_iterated_multiplication() {
        let sr = Semiring::MinPlus;
        let mut m = Matrix::zero(sr, 1);
        m.set(0, 0, w(sr, 1)).unwrap();
        assert_eq!(m.pow(0).unwrap(), Matrix::identity(sr, 1));
        assert_eq!(m.pow(1).unwrap(), m);
        assert_eq!(m.pow(5).unwrap().get(0, 0), &w(sr, 5));
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zero(Semiring::MinPlus, 2);
        let b = Matrix::zero(Semiring::MinPlus, 3);
        assert!(matches!(a.mul(&b), Err(MatrixError::Shape { .. })));
        let c = Matrix::zero(Semiring::MaxPlus, 2);
        assert!(a.mul(&c).is_err());
    }
}
