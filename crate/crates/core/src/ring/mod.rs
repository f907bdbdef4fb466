//! Possibly-nonunital finite-dimensional algebras given by structure
//! constants, ring morphisms, group rings and the unitality predicates.

mod constructors;
mod group;
mod idempotent;
mod predicates;

pub use constructors::*;
pub use group::{group_ring, group_ring_map, FiniteGroup};
pub use idempotent::IdempotentFamily;
pub use predicates::*;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::RingError;
use crate::linalg::echelon::{sparse_collect, Echelon, SparseRow};
use crate::linalg::Mat;
use crate::scalar::{Scalar, ScalarField};

#[derive(Debug)]
struct RingData {
    label: String,
    field: ScalarField,
    dim: usize,
    // products[i * dim + j] = e_i e_j
    products: Vec<SparseRow>,
    generators: OnceLock<Vec<Vec<Scalar>>>,
}

/// A finite-dimensional associative algebra over an exact field, not
/// necessarily unital. Cloning is cheap; clones share the table.
#[derive(Clone, Debug)]
pub struct StructureRing(Arc<RingData>);

impl PartialEq for StructureRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.dim == other.0.dim
                && self.0.label == other.0.label
                && self.0.products == other.0.products)
    }
}

impl Eq for StructureRing {}

impl StructureRing {
    /// Builds a ring from `c[i][j][k]`, the coefficient of `e_k` in `e_i e_j`,
    /// verifying associativity on every basis triple.
    pub fn from_constants(
        field: ScalarField,
        c: &[Vec<Vec<Scalar>>],
        label: impl Into<String>,
    ) -> Result<Self, RingError> {
        let n = c.len();
        for (i, row) in c.iter().enumerate() {
            if row.len() != n {
                return Err(RingError::Shape(format!(
                    "c[{i}] has {} entries",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(RingError::Shape(format!(
                        "c[{i}][{j}] has {} entries",
                        v.len()
                    )));
                }
                if let Some(bad) = v.iter().find(|s| s.field() != field) {
                    return Err(RingError::FieldMismatch(field, bad.field()));
                }
            }
        }
        Self::from_products(field, n, label, |i, j| {
            crate::linalg::echelon::sparse_from_dense(&c[i][j])
        })
    }

    /// Builds a ring from a product rule on basis indices (sparse result).
    pub fn from_products(
        field: ScalarField,
        dim: usize,
        label: impl Into<String>,
        mut rule: impl FnMut(usize, usize) -> SparseRow,
    ) -> Result<Self, RingError> {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = sparse_collect(rule(i, j));
                if let Some((k, _)) = p.iter().find(|(k, _)| *k >= dim) {
                    return Err(RingError::Shape(format!("e{i} e{j} refers to e{k}")));
                }
                products.push(p);
            }
        }
        let ring = StructureRing(Arc::new(RingData {
            label: label.into(),
            field,
            dim,
            products,
            generators: OnceLock::new(),
        }));
        ring.check_associative()?;
        Ok(ring)
    }

    fn check_associative(&self) -> Result<(), RingError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for l in 0..n {
                    let left = self.mul_sparse_basis(ij, l, true);
                    let right = self.mul_sparse_basis(self.product(j, l), i, false);
                    if left != right {
                        let f = self.field();
                        let show = |s: &SparseRow| {
                            format_vec(&crate::linalg::echelon::dense_from_sparse(f, n, s))
                        };
                        return Err(RingError::AssociativityViolation {
                            i,
                            j,
                            l,
                            left: show(&left),
                            right: show(&right),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    // x * e_b (when `x_left`) or e_b * x, for sparse x
    fn mul_sparse_basis(&self, x: &SparseRow, b: usize, x_left: bool) -> SparseRow {
        let mut terms = Vec::new();
        for (k, v) in x {
            let p = if x_left {
                self.product(*k, b)
            } else {
                self.product(b, *k)
            };
            for (m, w) in p {
                terms.push((*m, v * w));
            }
        }
        sparse_collect(terms)
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn field(&self) -> ScalarField {
        self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// `e_i e_j` as a sparse coefficient vector.
    pub fn product(&self, i: usize, j: usize) -> &SparseRow {
        &self.0.products[i * self.0.dim + j]
    }

    /// The full tensor `c[i][j][k]`.
    pub fn constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let f = self.field();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| crate::linalg::echelon::dense_from_sparse(f, n, self.product(i, j)))
                    .collect()
            })
            .collect()
    }

    /// Same ring under a different label.
    pub fn relabel(&self, label: impl Into<String>) -> Self {
        StructureRing(Arc::new(RingData {
            label: label.into(),
            field: self.0.field,
            dim: self.0.dim,
            products: self.0.products.clone(),
            generators: OnceLock::new(),
        }))
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![self.field().zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        crate::linalg::mat::unit_vec(self.field(), self.dim(), i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "element length mismatch");
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in self.product(i, j) {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y` in the standard basis.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(self.field(), n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.product(i, j) {
                    let v = m.get(*k, j) + &(xi * c);
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// Matrix of `y -> y x` in the standard basis.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(self.field(), n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.product(j, i) {
                    let v = m.get(*k, j) + &(xi * c);
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// Left multiplication by basis element `e_i`.
    pub fn left_basis_matrix(&self, i: usize) -> Mat {
        self.left_mul_matrix(&self.basis_element(i))
    }

    pub fn right_basis_matrix(&self, i: usize) -> Mat {
        self.right_mul_matrix(&self.basis_element(i))
    }

    /// A small set of basis elements generating the ring as a (nonunital)
    /// algebra, chosen greedily in index order. Linear conditions of the form
    /// "commutes with every element" only need to be imposed on these.
    pub fn algebra_generators(&self) -> &[Vec<Scalar>] {
        self.0.generators.get_or_init(|| {
            let mut gens: Vec<Vec<Scalar>> = Vec::new();
            let mut closure = Echelon::new(self.field(), self.dim());
            for i in 0..self.dim() {
                let e = self.basis_element(i);
                if closure.contains(&crate::linalg::echelon::sparse_from_dense(&e)) {
                    continue;
                }
                gens.push(e);
                closure = self.subalgebra_echelon(&gens);
            }
            gens
        })
    }

    /// Span of all nonempty products of the given elements.
    pub fn generated_subalgebra(&self, gens: &[Vec<Scalar>]) -> crate::linalg::Subspace {
        crate::linalg::Subspace::from_echelon(&self.subalgebra_echelon(gens))
    }

    fn subalgebra_echelon(&self, gens: &[Vec<Scalar>]) -> Echelon {
        let f = self.field();
        let n = self.dim();
        let mut e = Echelon::new(f, n);
        let mut frontier: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            if e.insert_dense(g) {
                frontier.push(g.clone());
            }
        }
        while let Some(w) = frontier.pop() {
            for g in gens {
                let p = self.mul(&w, g);
                if e.insert_dense(&p) {
                    frontier.push(p);
                }
            }
        }
        e
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.product(i, j) == self.product(j, i)))
    }
}

impl fmt::Display for StructureRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {} over {})",
            self.label(),
            self.dim(),
            self.field()
        )
    }
}

pub(crate) fn format_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A ring homomorphism `source -> target`, stored as a
/// `dim(target) x dim(source)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    source: StructureRing,
    target: StructureRing,
    matrix: Mat,
}

impl RingMorphism {
    pub fn new(
        source: StructureRing,
        target: StructureRing,
        matrix: Mat,
    ) -> Result<Self, RingError> {
        if source.field() != target.field() {
            return Err(RingError::FieldMismatch(source.field(), target.field()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(RingError::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if matrix.field() != source.field() {
            return Err(RingError::FieldMismatch(source.field(), matrix.field()));
        }
        let images: Vec<Vec<Scalar>> = (0..source.dim()).map(|j| matrix.column(j)).collect();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let prod = crate::linalg::echelon::dense_from_sparse(
                    source.field(),
                    source.dim(),
                    source.product(i, j),
                );
                if matrix.mul_vec(&prod) != target.mul(&images[i], &images[j]) {
                    return Err(RingError::NotMultiplicative { i, j });
                }
            }
        }
        Ok(RingMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(ring: &StructureRing) -> Self {
        RingMorphism {
            source: ring.clone(),
            target: ring.clone(),
            matrix: Mat::identity(ring.field(), ring.dim()),
        }
    }

    /// The zero map, which is always a ring morphism in the nonunital sense.
    pub fn zero(source: &StructureRing, target: &StructureRing) -> Self {
        RingMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Mat::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &StructureRing {
        &self.source
    }

    pub fn target(&self) -> &StructureRing {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// Image of the source basis element `e_j`.
    pub fn image_of_basis(&self, j: usize) -> Vec<Scalar> {
        self.matrix.column(j)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingMorphism) -> Result<RingMorphism, RingError> {
        if inner.target != self.source {
            return Err(RingError::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.label(),
                self.target.label(),
                inner.source.label(),
                inner.target.label()
            )));
        }
        Ok(RingMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }
}
