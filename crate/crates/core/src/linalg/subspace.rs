use crate::error::LinalgError;
use crate::linalg::echelon::{sparse_from_dense, Echelon};
use crate::linalg::mat::Mat;
use crate::scalar::{Scalar, ScalarField};

/// A subspace of `field^ambient_dim`, stored by its reduced row-echelon
/// basis. Equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
    pivot_cols: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: ScalarField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(field, 0, ambient_dim),
            pivot_cols: Vec::new(),
        }
    }

    pub fn full(field: ScalarField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(field, ambient_dim),
            pivot_cols: (0..ambient_dim).collect(),
        }
    }

    pub fn span(field: ScalarField, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut e = Echelon::new(field, ambient_dim);
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            e.insert_dense(v);
        }
        Self::from_echelon(&e)
    }

    pub(crate) fn from_echelon(e: &Echelon) -> Self {
        let (basis, pivot_cols) = e.to_rref();
        Subspace {
            ambient_dim: e.cols(),
            basis,
            pivot_cols,
        }
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field(), self.ambient_dim);
        for r in 0..self.basis.rows() {
            e.insert_dense(self.basis.row(r));
        }
        e
    }

    pub fn field(&self) -> ScalarField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    /// Coefficients of `v` in the basis rows, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let coeffs: Vec<Scalar> = self.pivot_cols.iter().map(|p| v[*p].clone()).collect();
        let recon = self.basis.vec_mul(&coeffs);
        if recon.as_slice() == v {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn member(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok((0..other.dim()).all(|r| self.member(other.basis.row(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut e = self.echelon();
        for r in 0..other.dim() {
            e.insert(sparse_from_dense(other.basis.row(r)));
        }
        Ok(Self::from_echelon(&e))
    }

    /// `{c : c . v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        super::kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let joint = self.annihilator().sum(&other.annihilator())?;
        Ok(joint.annihilator())
    }

    /// Standard basis vectors, taken greedily in index order, that extend the
    /// subspace to the whole ambient space.
    pub fn complement_basis(&self) -> Vec<Vec<Scalar>> {
        let field = self.field();
        let mut e = self.echelon();
        let mut out = Vec::new();
        for i in 0..self.ambient_dim {
            let v = super::mat::unit_vec(field, self.ambient_dim, i);
            if e.insert_dense(&v) {
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarField = ScalarField::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|x| Q.from_i64(*x)).collect()
    }

    #[test]
    fn lattice_examples() {
        let e1 = Subspace::span(Q, 2, &[v(&[1, 0])]);
        let e2 = Subspace::span(Q, 2, &[v(&[0, 1])]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        let d = Subspace::span(Q, 2, &[v(&[1, 1])]);
        assert!(e1.sum(&d).unwrap().is_full());
        assert!(d.member(&v(&[1, 1])));
        assert!(!d.member(&v(&[1, 0])));
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(Q, 3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::span(Q, 3, &[v(&[1, 3, 4]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.pivot_cols(), &[0, 1]);
    }

    #[test]
    fn complement_is_greedy() {
        let s = Subspace::span(Q, 3, &[v(&[1, 1, 0])]);
        assert_eq!(s.complement_basis(), vec![v(&[1, 0, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Subspace::zero(Q, 2);
        let b = Subspace::zero(Q, 3);
        assert!(a.sum(&b).is_err());
    }
}
