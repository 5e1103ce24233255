//! Exact linear algebra over the rationals.

mod echelon;
mod markowitz;
mod rational;
mod sparse;

pub use echelon::Echelon;
pub use markowitz::rank_of_vectors;
pub use rational::{ParseRationalError, Rational};
pub use sparse::{SparseMatrix, SparseVec};

use crate::error::{Error, Result};

/// A subspace of `Q^dim` held as an echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { echelon: Echelon::new(dim) }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(dim: usize, vectors: I) -> Self {
        let mut echelon = Echelon::new(dim);
        for v in vectors {
            let _ = echelon.insert(v);
        }
        Subspace { echelon }
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v)
    }

    /// Returns false if `v` was already in the span.
    pub fn add(&mut self, v: &SparseVec) -> bool {
        self.echelon.insert(v).is_ok()
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.echelon.reduce(v)
    }

    /// Reduced row echelon basis; each vector has leading coefficient 1.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.echelon.reduced_basis()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    if m.ncols() <= m.nrows() {
        rank_of_vectors(m.nrows(), m.columns().to_vec(), None)
    } else {
        rank_of_vectors(m.ncols(), m.transpose().into_columns(), None)
    }
}

/// Column space of `m`.
pub fn image(m: &SparseMatrix) -> Subspace {
    Subspace::span(m.nrows(), m.columns())
}

/// Null space of `m`; one basis vector per column that depends on earlier columns.
pub fn kernel(m: &SparseMatrix) -> Subspace {
    let mut e = Echelon::tracking(m.nrows());
    let mut relations = Vec::new();
    for c in m.columns() {
        if let Err(Some(rel)) = e.insert(c) {
            relations.push(rel);
        }
    }
    Subspace::span(m.ncols(), relations.iter())
}

/// `dim(u) - dim(w)`, checking that `w` lies inside `u`.
pub fn quotient_dimension(u: &Subspace, w: &Subspace) -> Result<usize> {
    if u.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: u.ambient_dim(), found: w.ambient_dim() });
    }
    for b in w.echelon().rows() {
        if !u.contains(b) {
            return Err(Error::ContainmentViolation);
        }
    }
    Ok(u.dim() - w.dim())
}

pub fn membership(u: &Subspace, v: &SparseVec) -> bool {
    u.contains(v)
}

/// Some `x` with `m x = v`, or `None` when `v` is not in the column space.
pub fn solve(m: &SparseMatrix, v: &SparseVec) -> Result<Option<SparseVec>> {
    if let Some(i) = v.max_index() {
        if i >= m.nrows() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: i + 1 });
        }
    }
    let mut e = Echelon::tracking(m.nrows());
    for c in m.columns() {
        let _ = e.insert(c);
    }
    Ok(e.express(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_kernel_image() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a);
        assert_eq!(k.dim(), 1);
        for b in k.basis() {
            assert!(a.mul_vec(&b).is_zero());
        }
        assert_eq!(image(&a).dim(), 2);
    }

    #[test]
    fn quotient_requires_containment() {
        let u = Subspace::span(3, &[SparseVec::unit(0), SparseVec::unit(1)]);
        let w = Subspace::span(3, &[SparseVec::unit(0)]);
        assert_eq!(quotient_dimension(&u, &w), Ok(1));
        let bad = Subspace::span(3, &[SparseVec::unit(2)]);
        assert_eq!(quotient_dimension(&u, &bad), Err(Error::ContainmentViolation));
    }

    #[test]
    fn solve_finds_preimage() {
        let a = m(&[&[1, 1], &[0, 2], &[1, 3]]);
        let v = SparseVec::from_dense(&[q(3), q(4), q(7)]);
        let x = solve(&a, &v).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), v);
        let w = SparseVec::from_dense(&[q(1), q(0), q(0)]);
        assert_eq!(solve(&a, &w).unwrap(), None);
        assert!(matches!(solve(&a, &SparseVec::unit(5)), Err(Error::DimensionMismatch { .. })));
    }
}
