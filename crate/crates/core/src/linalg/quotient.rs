use crate::linalg::echelon::SparseRow;
use crate::linalg::mat::Mat;
use crate::linalg::subspace::Subspace;
use crate::scalar::{Scalar, ScalarField};

/// `ambient / relations`, with coset coordinates given by the non-pivot
/// columns of the canonical relation basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient_dim: usize,
    relations: Subspace,
    coset_dim: usize,
    project: Mat,
    section: Mat,
    free_cols: Vec<usize>,
    // ambient column -> coset index, or the relation row it pivots
    slot: Vec<Slot>,
    relation_rows: Vec<SparseRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Free(usize),
    Pivot(usize),
}

impl QuotientSpace {
    pub fn new(relations: Subspace) -> Self {
        let field = relations.field();
        let ambient_dim = relations.ambient_dim();
        let mut slot = vec![Slot::Free(0); ambient_dim];
        for (r, p) in relations.pivot_cols().iter().enumerate() {
            slot[*p] = Slot::Pivot(r);
        }
        let mut free_cols = Vec::new();
        for (c, s) in slot.iter_mut().enumerate() {
            if let Slot::Free(t) = s {
                *t = free_cols.len();
                free_cols.push(c);
            }
        }
        let coset_dim = free_cols.len();
        let relation_rows: Vec<SparseRow> = (0..relations.dim())
            .map(|r| super::echelon::sparse_from_dense(relations.basis().row(r)))
            .collect();

        let mut project = Mat::zeros(field, coset_dim, ambient_dim);
        for (t, c) in free_cols.iter().enumerate() {
            project.set(t, *c, field.one());
        }
        for (r, p) in relations.pivot_cols().iter().enumerate() {
            for (c, v) in &relation_rows[r] {
                if let Slot::Free(t) = slot[*c] {
                    project.set(t, *p, -v);
                }
            }
        }
        let section = Mat::from_fn(field, ambient_dim, coset_dim, |r, t| {
            if free_cols[t] == r {
                field.one()
            } else {
                field.zero()
            }
        });
        QuotientSpace {
            ambient_dim,
            relations,
            coset_dim,
            project,
            section,
            free_cols,
            slot,
            relation_rows,
        }
    }

    pub fn field(&self) -> ScalarField {
        self.relations.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn coset_dim(&self) -> usize {
        self.coset_dim
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient -> coset coordinates.
    pub fn project(&self) -> &Mat {
        &self.project
    }

    /// Coset coordinates -> canonical ambient representatives.
    pub fn section(&self) -> &Mat {
        &self.section
    }

    /// Ambient indices used as coset coordinates.
    pub fn free_cols(&self) -> &[usize] {
        &self.free_cols
    }

    pub fn project_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let field = self.field();
        let mut out = vec![field.zero(); self.coset_dim];
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            match self.slot[*c] {
                Slot::Free(t) => out[t] += x,
                Slot::Pivot(r) => {
                    for (cc, val) in &self.relation_rows[r] {
                        if let Slot::Free(t) = self.slot[*cc] {
                            out[t] -= &(x * val);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn project_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let sparse: Vec<(usize, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        self.project_sparse(&sparse)
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.coset_dim, "coordinate length mismatch");
        let mut v = vec![self.field().zero(); self.ambient_dim];
        for (t, x) in coords.iter().enumerate() {
            v[self.free_cols[t]] = x.clone();
        }
        v
    }

    /// Whether `v` represents the zero coset.
    pub fn is_relation(&self, v: &[Scalar]) -> bool {
        self.project_vec(v).iter().all(Scalar::is_zero)
    }
}
