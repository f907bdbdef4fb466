//! Balanced tensor products `X ⊗_B Y` as explicit quotient spaces, the
//! multiplication maps `μ_{A/B}` and `μ_{A,M}`, and induction along a ring
//! morphism.

use crate::error::TensorError;
use crate::linalg::{self, Echelon, Mat, QuotientSpace, SparseRow, Subspace};
use crate::module::{self, LeftModule, ModuleMap, RightModule};
use crate::ring::{RingMorphism, StructureRing};
use crate::scalar::{Scalar, ScalarField};

/// `X ⊗_B Y`: the ambient space has basis `x_a ⊗ y_c` at index
/// `a * dim(Y) + c`, modulo the middle-linearity relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedTensor {
    base: StructureRing,
    left_dim: usize,
    right_dim: usize,
    space: QuotientSpace,
}

/// Sparse `u ⊗ v` for column-sparse factors.
fn kron_sparse(u: &[(usize, Scalar)], v: &[(usize, Scalar)], q: usize) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for (a, x) in u {
        for (c, y) in v {
            out.push((a * q + c, x * y));
        }
    }
    out
}

fn sparse_column(m: &Mat, c: usize) -> Vec<(usize, Scalar)> {
    (0..m.rows())
        .filter(|r| !m.get(*r, c).is_zero())
        .map(|r| (r, m.get(r, c).clone()))
        .collect()
}

fn sparse_columns(m: &Mat) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.cols()).map(|c| sparse_column(m, c)).collect()
}

/// Middle-linearity relations `(x·b) ⊗ y - x ⊗ (b·y)` for the given actions
/// of elements `b`, as sparse ambient vectors.
pub fn middle_relations(right: &[Mat], left: &[Mat], p: usize, q: usize) -> Vec<SparseRow> {
    let mut out = Vec::new();
    for (rb, lb) in right.iter().zip(left) {
        let rcols = sparse_columns(rb);
        let lcols = sparse_columns(lb);
        for a in 0..p {
            for c in 0..q {
                let mut terms = kron_sparse(&rcols[a], &[(c, rb.field().one())], q);
                for (k, v) in &lcols[c] {
                    terms.push((a * q + k, -v));
                }
                let row = linalg::echelon::sparse_collect(terms);
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
    }
    out
}

impl BalancedTensor {
    pub fn base(&self) -> &StructureRing {
        &self.base
    }

    pub fn field(&self) -> ScalarField {
        self.base.field()
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn dim(&self) -> usize {
        self.space.coset_dim()
    }

    pub fn space(&self) -> &QuotientSpace {
        &self.space
    }

    pub fn relations(&self) -> &Subspace {
        self.space.relations()
    }

    /// Coset coordinates of `x ⊗ y`.
    pub fn pure(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let u = linalg::echelon::sparse_from_dense(x);
        let v = linalg::echelon::sparse_from_dense(y);
        self.space
            .project_sparse(&kron_sparse(&u, &v, self.right_dim))
    }

    /// Ambient index of each coset coordinate as a pair `(a, c)`.
    pub fn coset_pairs(&self) -> Vec<(usize, usize)> {
        self.space
            .free_cols()
            .iter()
            .map(|i| (i / self.right_dim, i % self.right_dim))
            .collect()
    }

    /// Whether `Φ = p ⊗ q` sends every relation into the relations of `target`.
    fn respects_relations(&self, target: &BalancedTensor, p: &Mat, q: &Mat) -> Option<usize> {
        let pc = sparse_columns(p);
        let qc = sparse_columns(q);
        let rels = self.relations();
        for r in 0..rels.dim() {
            let row = rels.basis().row(r);
            let mut img = Vec::new();
            for (i, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (a, c) = (i / self.right_dim, i % self.right_dim);
                for (k, w) in kron_sparse(&pc[a], &qc[c], target.right_dim) {
                    img.push((k, v * &w));
                }
            }
            if target
                .space
                .project_sparse(&img)
                .iter()
                .any(|s| !s.is_zero())
            {
                return Some(r);
            }
        }
        None
    }

    /// The map induced on tensor quotients by `p ⊗ q`, checked to be well
    /// defined.
    pub fn induced_map(
        &self,
        target: &BalancedTensor,
        p: &Mat,
        q: &Mat,
    ) -> Result<Mat, TensorError> {
        if p.cols() != self.left_dim
            || q.cols() != self.right_dim
            || p.rows() != target.left_dim
            || q.rows() != target.right_dim
        {
            return Err(TensorError::RingMismatch("factor map shapes".into()));
        }
        if let Some(r) = self.respects_relations(target, p, q) {
            return Err(TensorError::RelationNotAnnihilated(r));
        }
        Ok(self.induced_map_unchecked(target, p, q))
    }

    pub(crate) fn induced_map_unchecked(&self, target: &BalancedTensor, p: &Mat, q: &Mat) -> Mat {
        let pc = sparse_columns(p);
        let qc = sparse_columns(q);
        let cols: Vec<Vec<Scalar>> = self
            .coset_pairs()
            .into_iter()
            .map(|(a, c)| {
                target
                    .space
                    .project_sparse(&kron_sparse(&pc[a], &qc[c], target.right_dim))
            })
            .collect();
        Mat::from_columns(self.field(), target.dim(), &cols)
    }

    /// A linear map out of the tensor given by its values on ambient basis
    /// vectors `x_a ⊗ y_c`, checked to vanish on the relations.
    pub fn descend(
        &self,
        values: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Result<Mat, TensorError> {
        let n = self.ambient_dim();
        let q = self.right_dim;
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| values(i / q, i % q)).collect();
        let out_dim = images.first().map_or(0, |v| v.len());
        let field = self.field();
        let rels = self.relations();
        for r in 0..rels.dim() {
            let mut acc = vec![field.zero(); out_dim];
            for (i, v) in rels.basis().row(r).iter().enumerate() {
                if !v.is_zero() {
                    for (k, w) in images[i].iter().enumerate() {
                        acc[k] += &(v * w);
                    }
                }
            }
            if acc.iter().any(|s| !s.is_zero()) {
                return Err(TensorError::RelationNotAnnihilated(r));
            }
        }
        let cols: Vec<Vec<Scalar>> = self
            .space
            .free_cols()
            .iter()
            .map(|i| images[*i].clone())
            .collect();
        Ok(Mat::from_columns(field, out_dim, &cols))
    }
}

/// `X ⊗_B Y`. Relations are generated from the algebra generators of `B`;
/// the relation `R(x, b₁b₂, y) = R(x b₁, b₂, y) + R(x, b₁, b₂ y)` makes this
/// span the same subspace as all basis triples.
pub fn tensor_over(x: &RightModule, y: &LeftModule) -> Result<BalancedTensor, TensorError> {
    if x.ring() != y.ring() {
        return Err(TensorError::RingMismatch(format!(
            "{} vs {}",
            x.ring().label(),
            y.ring().label()
        )));
    }
    let rels = middle_relations(
        &x.generator_actions(),
        &y.generator_actions(),
        x.dim(),
        y.dim(),
    );
    Ok(from_relation_rows(x.ring(), x.dim(), y.dim(), rels))
}

/// `X ⊗_B Y` with relations from every basis element of `B`.
pub fn tensor_over_all_triples(
    x: &RightModule,
    y: &LeftModule,
) -> Result<BalancedTensor, TensorError> {
    if x.ring() != y.ring() {
        return Err(TensorError::RingMismatch("inner rings differ".into()));
    }
    let rels = middle_relations(x.actions(), y.actions(), x.dim(), y.dim());
    Ok(from_relation_rows(x.ring(), x.dim(), y.dim(), rels))
}

fn from_relation_rows(
    base: &StructureRing,
    p: usize,
    q: usize,
    rows: Vec<SparseRow>,
) -> BalancedTensor {
    let mut e = Echelon::new(base.field(), p * q);
    for r in rows {
        e.insert(r);
    }
    BalancedTensor {
        base: base.clone(),
        left_dim: p,
        right_dim: q,
        space: QuotientSpace::new(Subspace::from_echelon(&e)),
    }
}

/// `A ⊗_B A` for `f: B -> A` together with `μ_{A/B}`.
#[derive(Clone, Debug)]
pub struct ExtensionTensor {
    pub morphism: RingMorphism,
    pub tensor: BalancedTensor,
    /// `dim(A) x dim(tensor)`
    pub mu: Mat,
}

impl ExtensionTensor {
    pub fn ring(&self) -> &StructureRing {
        self.morphism.target()
    }

    /// `t -> x t`, multiplying the left factor by `x ∈ A`.
    pub fn left_action(&self, x: &[Scalar]) -> Result<Mat, TensorError> {
        let a = self.ring();
        let id = Mat::identity(a.field(), a.dim());
        self.tensor
            .induced_map(&self.tensor, &a.left_mul_matrix(x), &id)
    }

    /// `t -> t x`, multiplying the right factor by `x ∈ A`.
    pub fn right_action(&self, x: &[Scalar]) -> Result<Mat, TensorError> {
        let a = self.ring();
        let id = Mat::identity(a.field(), a.dim());
        self.tensor
            .induced_map(&self.tensor, &id, &a.right_mul_matrix(x))
    }
}

/// Builds `A ⊗_B A` and `μ_{A/B}: a ⊗ a' -> a a'`.
pub fn mu_ring_extension(f: &RingMorphism) -> Result<ExtensionTensor, TensorError> {
    let a = f.target();
    let x = module::right_regular_via(f);
    let y = module::left_regular_via(f);
    let tensor = tensor_over(&x, &y)?;
    let field = a.field();
    let n = a.dim();
    let mu =
        tensor.descend(|i, j| linalg::echelon::dense_from_sparse(field, n, a.product(i, j)))?;
    Ok(ExtensionTensor {
        morphism: f.clone(),
        tensor,
        mu,
    })
}

/// `A ⊗_A M` and `μ_{A,M}: a ⊗ m -> a m`, as `dim(M) x dim(tensor)`.
pub fn mu_module(m: &LeftModule) -> Result<(BalancedTensor, Mat), TensorError> {
    let a = m.ring();
    let x = RightModule::regular(a);
    let tensor = tensor_over(&x, m)?;
    let mu = tensor.descend(|i, v| m.action(i).column(v))?;
    Ok((tensor, mu))
}

/// Bijectivity of `μ_{A,M}`.
pub fn is_firm(m: &LeftModule) -> bool {
    if m.dim() == 0 {
        return true;
    }
    match mu_module(m) {
        Ok((t, mu)) => t.dim() == m.dim() && linalg::rank(&mu) == m.dim(),
        Err(_) => false,
    }
}

/// `Ind_f(N) = A ⊗_B N` with `A` acting on the left factor.
#[derive(Clone, Debug)]
pub struct Induced {
    pub tensor: BalancedTensor,
    pub module: LeftModule,
}

pub fn induce(f: &RingMorphism, n: &LeftModule) -> Result<Induced, TensorError> {
    let a = f.target();
    let x = module::right_regular_via(f);
    let tensor = tensor_over(&x, n)?;
    let id = Mat::identity(a.field(), n.dim());
    let mut actions = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        actions.push(tensor.induced_map(&tensor, &a.left_basis_matrix(i), &id)?);
    }
    let module = LeftModule::new_unchecked(a, tensor.dim(), actions);
    Ok(Induced { tensor, module })
}

/// `id_A ⊗ g: Ind_f(N) -> Ind_f(N')` for a `B`-linear `g`.
pub fn induce_map(
    f: &RingMorphism,
    source: &Induced,
    target: &Induced,
    g: &ModuleMap,
) -> Result<ModuleMap, TensorError> {
    let id = Mat::identity(f.target().field(), f.target().dim());
    let m = source.tensor.induced_map(&target.tensor, &id, g.matrix())?;
    Ok(ModuleMap::new(&source.module, &target.module, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::*;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn tensor_dimensions() {
        let (q2, _) = truncated_sequence_ring(Q, 2);
        let t = tensor_over(&RightModule::regular(&q2), &LeftModule::regular(&q2)).unwrap();
        assert_eq!(t.dim(), 2);
        let z = square_zero_ring(Q);
        let t = tensor_over(&RightModule::regular(&z), &LeftModule::regular(&z)).unwrap();
        assert_eq!(t.dim(), 1);
        let q = field_as_ring(Q);
        let t = tensor_over(&RightModule::regular(&q), &LeftModule::regular(&q)).unwrap();
        assert_eq!(t.dim(), 1);
    }

    #[test]
    fn mu_examples() {
        let q = field_as_ring(Q);
        let (a, _) = group_ring(&q, &FiniteGroup::cyclic(2));
        let f = RingMorphism::new(q.clone(), a.clone(), Mat::from_i64(Q, &[&[1], &[0]])).unwrap();
        let ext = mu_ring_extension(&f).unwrap();
        let one = a.basis_element(0);
        let g = a.basis_element(1);
        assert_eq!(ext.mu.mul_vec(&ext.tensor.pure(&one, &g)), g);

        let (m2, _) = matrix_ring(Q, 2);
        let f = RingMorphism::new(
            q.clone(),
            m2.clone(),
            Mat::from_i64(Q, &[&[1], &[0], &[0], &[1]]),
        )
        .unwrap();
        let ext = mu_ring_extension(&f).unwrap();
        let e11 = m2.basis_element(0);
        let e12 = m2.basis_element(1);
        assert_eq!(ext.mu.mul_vec(&ext.tensor.pure(&e11, &e12)), e12);

        let z = square_zero_ring(Q);
        let ext = mu_ring_extension(&RingMorphism::identity(&z)).unwrap();
        assert_eq!(ext.tensor.dim(), 1);
        assert!(ext.mu.is_zero());
    }

    #[test]
    fn firmness_examples() {
        let q = field_as_ring(Q);
        assert!(is_firm(&LeftModule::regular(&q)));
        assert!(!is_firm(&LeftModule::regular(&square_zero_ring(Q))));
        let (q3, _) = truncated_sequence_ring(Q, 3);
        assert!(is_firm(&LeftModule::regular(&q3)));
        let (a, _) = group_ring(&q, &FiniteGroup::cyclic(2));
        let (t, mu) = mu_module(&LeftModule::regular(&a)).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(linalg::rank(&mu), 2);
    }

    #[test]
    fn induction_examples() {
        let q = field_as_ring(Q);
        let (a, f) = group_ring(&q, &FiniteGroup::cyclic(2));
        let ind = induce(&f, &LeftModule::regular(&q)).unwrap();
        assert_eq!(ind.module.dim(), 2);
        assert!(module::is_unitary(&ind.module));
        let ind0 = induce(&f, &LeftModule::zero(&q)).unwrap();
        assert_eq!(ind0.module.dim(), 0);
        let m = LeftModule::regular(&a);
        let along_id = induce(&RingMorphism::identity(&a), &m).unwrap();
        assert_eq!(along_id.module.dim(), m.dim());
    }
}
