//! Modules presented by action matrices: left, right and bimodules,
//! intertwiners, sub- and quotient modules, and the module predicates.

use crate::error::ModuleError;
use crate::linalg::{self, LinearSystem, Mat, QuotientSpace, Subspace};
use crate::ring::{RingMorphism, StructureRing};
use crate::scalar::{Scalar, ScalarField};

fn check_ring(a: &StructureRing, b: &StructureRing) -> Result<(), ModuleError> {
    if a != b {
        return Err(ModuleError::RingMismatch(format!(
            "{} vs {}",
            a.label(),
            b.label()
        )));
    }
    Ok(())
}

fn combine(field: ScalarField, dim: usize, actions: &[Mat], x: &[Scalar]) -> Mat {
    let mut m = Mat::zeros(field, dim, dim);
    for (xi, a) in x.iter().zip(actions) {
        if !xi.is_zero() {
            m = &m + &a.scale(xi);
        }
    }
    m
}

fn element_action(ring: &StructureRing, dim: usize, actions: &[Mat], i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(ring.field(), dim, dim);
    for (k, c) in ring.product(i, j) {
        m = &m + &actions[*k].scale(c);
    }
    m
}

/// A left module: `actions[i]` is the matrix of `m -> e_i m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    ring: StructureRing,
    dim: usize,
    actions: Vec<Mat>,
}

impl LeftModule {
    /// Checks shapes and `ρ(e_i e_j) = ρ_i ρ_j` on all basis pairs.
    pub fn new(ring: &StructureRing, dim: usize, actions: Vec<Mat>) -> Result<Self, ModuleError> {
        let m = Self::checked_shape(ring, dim, actions)?;
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                let lhs = element_action(ring, dim, &m.actions, i, j);
                if lhs != &m.actions[i] * &m.actions[j] {
                    return Err(ModuleError::ActionNotMultiplicative { i, j });
                }
            }
        }
        Ok(m)
    }

    fn checked_shape(
        ring: &StructureRing,
        dim: usize,
        actions: Vec<Mat>,
    ) -> Result<Self, ModuleError> {
        if actions.len() != ring.dim() {
            return Err(ModuleError::DimensionMismatch(format!(
                "{} action matrices for a ring of dimension {}",
                actions.len(),
                ring.dim()
            )));
        }
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim || a.field() != ring.field() {
                return Err(ModuleError::DimensionMismatch(format!(
                    "action {i} is {}x{} over {}, expected {dim}x{dim} over {}",
                    a.rows(),
                    a.cols(),
                    a.field(),
                    ring.field()
                )));
            }
        }
        Ok(LeftModule {
            ring: ring.clone(),
            dim,
            actions,
        })
    }

    /// For actions that are known to be multiplicative by construction.
    pub(crate) fn new_unchecked(ring: &StructureRing, dim: usize, actions: Vec<Mat>) -> Self {
        debug_assert_eq!(actions.len(), ring.dim());
        LeftModule {
            ring: ring.clone(),
            dim,
            actions,
        }
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(ring: &StructureRing) -> Self {
        let actions = (0..ring.dim()).map(|i| ring.left_basis_matrix(i)).collect();
        Self::new_unchecked(ring, ring.dim(), actions)
    }

    pub fn zero(ring: &StructureRing) -> Self {
        let actions = (0..ring.dim())
            .map(|_| Mat::zeros(ring.field(), 0, 0))
            .collect();
        Self::new_unchecked(ring, 0, actions)
    }

    /// Every element acts as zero on `k^dim`.
    pub fn trivial_zero_action(ring: &StructureRing, dim: usize) -> Self {
        let actions = (0..ring.dim())
            .map(|_| Mat::zeros(ring.field(), dim, dim))
            .collect();
        Self::new_unchecked(ring, dim, actions)
    }

    pub fn direct_sum(&self, other: &LeftModule) -> Result<LeftModule, ModuleError> {
        check_ring(&self.ring, &other.ring)?;
        let f = self.field();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| Mat::block_diag(f, &[a, b]))
            .collect();
        Ok(Self::new_unchecked(
            &self.ring,
            self.dim + other.dim,
            actions,
        ))
    }

    /// The same module in the basis given by the columns of invertible `p`:
    /// actions become `p^-1 ρ_i p`.
    pub fn change_basis(&self, p: &Mat) -> Result<LeftModule, ModuleError> {
        let inv = linalg::inverse(p).ok_or_else(|| {
            ModuleError::DimensionMismatch("change of basis is not invertible".into())
        })?;
        if p.rows() != self.dim {
            return Err(ModuleError::DimensionMismatch(
                "change of basis has wrong size".into(),
            ));
        }
        let actions = self.actions.iter().map(|a| &(&inv * a) * p).collect();
        Ok(Self::new_unchecked(&self.ring, self.dim, actions))
    }

    pub fn ring(&self) -> &StructureRing {
        &self.ring
    }

    pub fn field(&self) -> ScalarField {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.actions[i]
    }

    /// Matrix of `m -> x m`.
    pub fn action_of(&self, x: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.actions, x)
    }

    /// Action matrices of the ring's algebra generators.
    pub fn generator_actions(&self) -> Vec<Mat> {
        self.ring
            .algebra_generators()
            .iter()
            .map(|g| self.action_of(g))
            .collect()
    }

    /// Smallest invariant subspace containing the given vectors.
    pub fn spin(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        spin_with(self.field(), self.dim, &self.generator_actions(), vectors)
    }

    /// `A v`, the span of all `ρ(a) v`.
    pub fn cyclic_submodule(&self, v: &[Scalar]) -> Subspace {
        let images: Vec<Vec<Scalar>> = self.actions.iter().map(|a| a.mul_vec(v)).collect();
        self.spin(&images)
    }

    pub fn is_invariant(&self, w: &Subspace) -> Result<(), ModuleError> {
        if w.ambient_dim() != self.dim {
            return Err(ModuleError::DimensionMismatch(
                "subspace ambient dimension".into(),
            ));
        }
        for (i, a) in self.actions.iter().enumerate() {
            for r in 0..w.dim() {
                if !w.member(&a.mul_vec(w.basis().row(r))) {
                    return Err(ModuleError::NotInvariant(i));
                }
            }
        }
        Ok(())
    }

    /// The induced module on an invariant subspace, in the coordinates of
    /// its canonical basis.
    pub fn submodule(&self, w: &Subspace) -> Result<Submodule, ModuleError> {
        self.is_invariant(w)?;
        Ok(self.submodule_unchecked(w))
    }

    pub(crate) fn submodule_unchecked(&self, w: &Subspace) -> Submodule {
        let f = self.field();
        let k = w.dim();
        let basis = w.basis_vectors();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|b| {
                        let img = a.mul_vec(b);
                        w.pivot_cols().iter().map(|p| img[*p].clone()).collect()
                    })
                    .collect();
                Mat::from_columns(f, k, &cols)
            })
            .collect();
        Submodule {
            space: w.clone(),
            module: Self::new_unchecked(&self.ring, k, actions),
            inclusion: w.basis().transpose(),
        }
    }

    /// `M / W` with the induced action and the projection matrix.
    pub fn quotient(&self, w: &Subspace) -> Result<QuotientModule, ModuleError> {
        self.is_invariant(w)?;
        let q = QuotientSpace::new(w.clone());
        let actions = self
            .actions
            .iter()
            .map(|a| &(q.project() * a) * q.section())
            .collect();
        Ok(QuotientModule {
            module: Self::new_unchecked(&self.ring, q.coset_dim(), actions),
            space: q,
        })
    }
}

/// Smallest subspace containing `vectors` and stable under `gens`.
pub(crate) fn spin_with(
    field: ScalarField,
    dim: usize,
    gens: &[Mat],
    vectors: &[Vec<Scalar>],
) -> Subspace {
    let mut e = linalg::Echelon::new(field, dim);
    let mut frontier = Vec::new();
    for v in vectors {
        if e.insert_dense(v) {
            frontier.push(v.clone());
        }
    }
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = g.mul_vec(&v);
            if e.insert_dense(&w) {
                frontier.push(w);
            }
        }
    }
    Subspace::from_echelon(&e)
}

/// An invariant subspace together with its induced module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub space: Subspace,
    pub module: LeftModule,
    /// `dim(M) x dim(W)`, columns are the canonical basis of `W`.
    pub inclusion: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientModule {
    pub module: LeftModule,
    pub space: QuotientSpace,
}

impl QuotientModule {
    pub fn projection(&self) -> &Mat {
        self.space.project()
    }
}

/// A right module: `actions[i]` is the matrix of `m -> m e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    ring: StructureRing,
    dim: usize,
    actions: Vec<Mat>,
}

impl RightModule {
    /// Checks `ρ(e_i e_j) = ρ_j ρ_i` on all basis pairs.
    pub fn new(ring: &StructureRing, dim: usize, actions: Vec<Mat>) -> Result<Self, ModuleError> {
        let shape = LeftModule::checked_shape(ring, dim, actions)?;
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                let lhs = element_action(ring, dim, &shape.actions, i, j);
                if lhs != &shape.actions[j] * &shape.actions[i] {
                    return Err(ModuleError::ActionNotMultiplicative { i, j });
                }
            }
        }
        Ok(RightModule {
            ring: shape.ring,
            dim,
            actions: shape.actions,
        })
    }

    pub(crate) fn new_unchecked(ring: &StructureRing, dim: usize, actions: Vec<Mat>) -> Self {
        RightModule {
            ring: ring.clone(),
            dim,
            actions,
        }
    }

    pub fn regular(ring: &StructureRing) -> Self {
        let actions = (0..ring.dim())
            .map(|i| ring.right_basis_matrix(i))
            .collect();
        Self::new_unchecked(ring, ring.dim(), actions)
    }

    pub fn ring(&self) -> &StructureRing {
        &self.ring
    }

    pub fn field(&self) -> ScalarField {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }

    pub fn action_of(&self, x: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.actions, x)
    }

    pub fn generator_actions(&self) -> Vec<Mat> {
        self.ring
            .algebra_generators()
            .iter()
            .map(|g| self.action_of(g))
            .collect()
    }
}

/// A left `A`-module that is also a right `B`-module, the two actions
/// commuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: LeftModule,
    right: RightModule,
}

impl Bimodule {
    pub fn new(left: LeftModule, right: RightModule) -> Result<Self, ModuleError> {
        if left.dim() != right.dim() {
            return Err(ModuleError::DimensionMismatch(
                "left and right dimensions differ".into(),
            ));
        }
        for (i, a) in left.actions().iter().enumerate() {
            for (j, b) in right.actions().iter().enumerate() {
                if &(a * b) != &(b * a) {
                    return Err(ModuleError::ActionsDoNotCommute { i, j });
                }
            }
        }
        Ok(Bimodule { left, right })
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(ring: &StructureRing) -> Self {
        Bimodule {
            left: LeftModule::regular(ring),
            right: RightModule::regular(ring),
        }
    }

    pub fn left(&self) -> &LeftModule {
        &self.left
    }

    pub fn right(&self) -> &RightModule {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }
}

/// `A` as a right `B`-module through `f`: `a · b = a f(b)`.
pub fn right_regular_via(f: &RingMorphism) -> RightModule {
    let a = f.target();
    let actions = (0..f.source().dim())
        .map(|j| a.right_mul_matrix(&f.image_of_basis(j)))
        .collect();
    RightModule::new_unchecked(f.source(), a.dim(), actions)
}

/// `A` as a left `B`-module through `f`: `b · a = f(b) a`.
pub fn left_regular_via(f: &RingMorphism) -> LeftModule {
    let a = f.target();
    let actions = (0..f.source().dim())
        .map(|j| a.left_mul_matrix(&f.image_of_basis(j)))
        .collect();
    LeftModule::new_unchecked(f.source(), a.dim(), actions)
}

/// Restriction of scalars along `f: B -> A`: `b · m = f(b) m`.
pub fn restrict(f: &RingMorphism, m: &LeftModule) -> Result<LeftModule, ModuleError> {
    check_ring(f.target(), m.ring())?;
    let actions = (0..f.source().dim())
        .map(|j| m.action_of(&f.image_of_basis(j)))
        .collect();
    Ok(LeftModule::new_unchecked(f.source(), m.dim(), actions))
}

/// An `A`-linear map, `dim(target) x dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: LeftModule,
    target: LeftModule,
    matrix: Mat,
}

impl ModuleMap {
    pub fn new(source: &LeftModule, target: &LeftModule, matrix: Mat) -> Result<Self, ModuleError> {
        check_ring(source.ring(), target.ring())?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(ModuleError::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if let Some(i) = first_non_intertwined(source, target, &matrix) {
            return Err(ModuleError::NotIntertwiner(i));
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(m: &LeftModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Mat::identity(m.field(), m.dim()),
        }
    }

    pub fn source(&self) -> &LeftModule {
        &self.source
    }

    pub fn target(&self) -> &LeftModule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if inner.target != self.source {
            return Err(ModuleError::DimensionMismatch(
                "maps are not composable".into(),
            ));
        }
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    /// Restriction along `f`, keeping the matrix.
    pub fn restrict(&self, f: &RingMorphism) -> Result<ModuleMap, ModuleError> {
        Ok(ModuleMap {
            source: restrict(f, &self.source)?,
            target: restrict(f, &self.target)?,
            matrix: self.matrix.clone(),
        })
    }

    pub fn kernel(&self) -> Submodule {
        self.source
            .submodule_unchecked(&linalg::kernel(&self.matrix))
    }

    pub fn image(&self) -> Submodule {
        self.target
            .submodule_unchecked(&linalg::image(&self.matrix))
    }

    pub fn is_injective(&self) -> bool {
        linalg::rank(&self.matrix) == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        linalg::rank(&self.matrix) == self.target.dim()
    }
}

/// Index of the first ring basis element whose action is not intertwined.
pub fn first_non_intertwined(source: &LeftModule, target: &LeftModule, x: &Mat) -> Option<usize> {
    (0..source.ring().dim()).find(|i| &(x * source.action(*i)) != &(target.action(*i) * x))
}

/// Linear system in the entries `x[r * m + c]` of an `n x m` matrix `X`
/// requiring `X S_g = T_g X` for each pair of matrices.
pub(crate) fn intertwining_system(
    field: ScalarField,
    pairs: &[(Mat, Mat)],
    n: usize,
    m: usize,
) -> LinearSystem {
    let mut sys = LinearSystem::new(field, n * m);
    for (s, t) in pairs {
        // column-sparse views
        let s_cols: Vec<Vec<(usize, Scalar)>> = (0..m)
            .map(|c| {
                (0..m)
                    .filter(|k| !s.get(*k, c).is_zero())
                    .map(|k| (k, s.get(k, c).clone()))
                    .collect()
            })
            .collect();
        let t_rows: Vec<Vec<(usize, Scalar)>> = (0..n)
            .map(|r| {
                (0..n)
                    .filter(|k| !t.get(r, *k).is_zero())
                    .map(|k| (k, t.get(r, k).clone()))
                    .collect()
            })
            .collect();
        for r in 0..n {
            for c in 0..m {
                let mut terms = Vec::new();
                for (k, v) in &s_cols[c] {
                    terms.push((r * m + k, v.clone()));
                }
                for (k, v) in &t_rows[r] {
                    terms.push((k * m + c, -v));
                }
                sys.add_equation(terms, field.zero());
            }
        }
    }
    sys
}

/// All `A`-linear maps `M -> N` as a subspace of row-major `n x m` matrices.
pub fn hom_space(m: &LeftModule, n: &LeftModule) -> Result<Subspace, ModuleError> {
    check_ring(m.ring(), n.ring())?;
    let pairs: Vec<(Mat, Mat)> = m
        .ring()
        .algebra_generators()
        .iter()
        .map(|g| (m.action_of(g), n.action_of(g)))
        .collect();
    let sys = intertwining_system(m.field(), &pairs, n.dim(), m.dim());
    let basis = sys.homogeneous_basis();
    Ok(Subspace::span(m.field(), n.dim() * m.dim(), &basis))
}

/// The canonical basis of `hom_space` as matrices.
pub fn hom_basis(m: &LeftModule, n: &LeftModule) -> Result<Vec<Mat>, ModuleError> {
    let f = m.field();
    Ok(hom_space(m, n)?
        .basis_vectors()
        .iter()
        .map(|v| Mat::from_vector(f, n.dim(), m.dim(), v))
        .collect())
}

/// `AM = M`.
pub fn is_unitary(m: &LeftModule) -> bool {
    if m.dim() == 0 {
        return true;
    }
    let refs: Vec<&Mat> = m.actions().iter().collect();
    let stacked = Mat::hstack(m.field(), m.dim(), &refs);
    linalg::rank(&stacked) == m.dim()
}

/// Some `a` with `a m = m` for every `m`, if one exists.
pub fn common_unit_action(m: &LeftModule) -> Option<Vec<Scalar>> {
    let f = m.field();
    let d = m.dim();
    let mut sys = LinearSystem::new(f, m.ring().dim());
    for r in 0..d {
        for c in 0..d {
            let terms: Vec<(usize, Scalar)> = m
                .actions()
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.get(r, c).is_zero())
                .map(|(i, a)| (i, a.get(r, c).clone()))
                .collect();
            let rhs = if r == c { f.one() } else { f.zero() };
            sys.add_equation(terms, rhs);
        }
    }
    sys.solve().ok()
}

/// `m ∈ Am` for every `m`, decided by a common unit for the basis.
pub fn is_s_unital_module(m: &LeftModule) -> bool {
    m.dim() == 0 || common_unit_action(m).is_some()
}

/// `v ∈ Av`.
pub fn in_own_cyclic(m: &LeftModule, v: &[Scalar]) -> bool {
    let cols: Vec<Vec<Scalar>> = m.actions().iter().map(|a| a.mul_vec(v)).collect();
    let refs = Mat::from_columns(m.field(), m.dim(), &cols);
    linalg::solve(&refs, &Mat::from_columns(m.field(), m.dim(), &[v.to_vec()]))
        .ok()
        .flatten()
        .is_some()
}

/// `μ_{A,M}: A ⊗_A M -> M` is bijective.
pub fn is_firm(m: &LeftModule) -> bool {
    crate::tensor::is_firm(m)
}
