//! Separability of ring extensions: an exact feasibility solver for the
//! bimodule section of `μ_{A/B}`, an independent certificate verifier, the
//! Maschke splitting for group rings, the restriction operator `R` and the
//! splitting criterion for induction.

mod ind;
mod maschke;
mod restriction;

pub use ind::{ind_separability, verify_ind_splitting};
pub use maschke::{maschke_certificate, MaschkeSetup};
pub use restriction::{check_sf, FirmModule, RestrictionOperator, SfInstance, SfOutcome};

use std::fmt;

use crate::error::SeparabilityError;
use crate::linalg::echelon::{sparse_collect, Echelon, SparseRow};
use crate::linalg::{Infeasible, LinearSystem, Mat};
use crate::ring::{RingMorphism, StructureRing};
use crate::scalar::{Scalar, ScalarField};
use crate::tensor::{self, ExtensionTensor};

/// The matrix of an `A`-bimodule section `σ: A -> A ⊗_B A` of `μ_{A/B}`.
///
/// `tensor_basis` is `dim(A)² x T`; its columns are ambient representatives
/// (basis `e_i ⊗ e_j` at index `i * dim(A) + j`) of the coset coordinates
/// that `sigma` (`T x dim(A)`) is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityCertificate {
    pub morphism: RingMorphism,
    pub tensor_basis: Mat,
    pub sigma: Mat,
}

impl SeparabilityCertificate {
    pub fn ring(&self) -> &StructureRing {
        self.morphism.target()
    }

    pub fn base(&self) -> &StructureRing {
        self.morphism.source()
    }

    pub fn field(&self) -> ScalarField {
        self.ring().field()
    }

    /// `σ(e_k)` as an ambient vector.
    pub fn ambient_image(&self, k: usize) -> Vec<Scalar> {
        self.tensor_basis.mul_vec(&self.sigma.column(k))
    }
}

/// Which family of defining constraints a certificate violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintFamily {
    Shape,
    Section,
    LeftLinear,
    RightLinear,
}

impl fmt::Display for ConstraintFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstraintFamily::Shape => "shape",
            ConstraintFamily::Section => "mu o sigma = id",
            ConstraintFamily::LeftLinear => "left A-linearity",
            ConstraintFamily::RightLinear => "right A-linearity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub family: ConstraintFamily,
    /// Basis indices involved: `[k]` for the section family, `[i, k]` for
    /// linearity (`e_i` acting on `σ(e_k)`).
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at basis indices {:?}",
            self.family, self.indices
        )
    }
}

/// Solves for `σ` (free variables zeroed). `Err(Infeasible)` carries the
/// ranks of the constraint matrix and of the augmented matrix.
pub fn solve_separability(
    f: &RingMorphism,
) -> Result<Result<SeparabilityCertificate, Infeasible>, SeparabilityError> {
    let ext = tensor::mu_ring_extension(f)?;
    Ok(solve_on(&ext)?.map(|sigma| SeparabilityCertificate {
        morphism: f.clone(),
        tensor_basis: ext.tensor.space().section().clone(),
        sigma,
    }))
}

fn solve_on(ext: &ExtensionTensor) -> Result<Result<Mat, Infeasible>, SeparabilityError> {
    let a = ext.ring();
    let field = a.field();
    let n = a.dim();
    let t = ext.tensor.dim();
    // unknown σ[s, k] at index s * n + k
    let var = |s: usize, k: usize| s * n + k;
    let mut sys = LinearSystem::new(field, t * n);

    for r in 0..n {
        for k in 0..n {
            let terms = (0..t)
                .filter(|s| !ext.mu.get(r, *s).is_zero())
                .map(|s| (var(s, k), ext.mu.get(r, s).clone()))
                .collect();
            sys.add_equation(terms, if r == k { field.one() } else { field.zero() });
        }
    }

    for g in a.algebra_generators() {
        for left in [true, false] {
            let act = if left {
                ext.left_action(g)?
            } else {
                ext.right_action(g)?
            };
            for k in 0..n {
                let ek = a.basis_element(k);
                let prod = if left { a.mul(g, &ek) } else { a.mul(&ek, g) };
                for s in 0..t {
                    let mut terms: Vec<(usize, Scalar)> = prod
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(l, c)| (var(s, l), c.clone()))
                        .collect();
                    for u in 0..t {
                        let c = act.get(s, u);
                        if !c.is_zero() {
                            terms.push((var(u, k), -c));
                        }
                    }
                    sys.add_equation(terms, field.zero());
                }
            }
        }
    }

    Ok(sys.solve().map(|x| Mat::from_vector(field, t, n, &x)))
}

/// Relations `(x f(b)) ⊗ y - x ⊗ (f(b) y)` on every basis triple, computed
/// directly from the structure constants.
fn verifier_relations(f: &RingMorphism) -> Echelon {
    let a = f.target();
    let n = a.dim();
    let mut e = Echelon::new(a.field(), n * n);
    for j in 0..f.source().dim() {
        let fb = f.image_of_basis(j);
        for x in 0..n {
            let xb = a.mul(&a.basis_element(x), &fb);
            for y in 0..n {
                let by = a.mul(&fb, &a.basis_element(y));
                let mut terms = Vec::new();
                for (k, c) in xb.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((k * n + y, c.clone()));
                    }
                }
                for (k, c) in by.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((x * n + k, -c));
                    }
                }
                e.insert(sparse_collect(terms));
            }
        }
    }
    e
}

/// Re-checks a certificate against the structure constants alone: every
/// constraint is tested in the ambient space `A ⊗_k A` modulo the full
/// relation space, so nothing computed by the solver is trusted.
pub fn verify_certificate(cert: &SeparabilityCertificate) -> Result<(), Violation> {
    let a = cert.ring();
    let n = a.dim();
    let shape_ok = cert.tensor_basis.rows() == n * n
        && cert.sigma.rows() == cert.tensor_basis.cols()
        && cert.sigma.cols() == n
        && cert.tensor_basis.field() == a.field()
        && cert.sigma.field() == a.field();
    if !shape_ok {
        return Err(Violation {
            family: ConstraintFamily::Shape,
            indices: Vec::new(),
        });
    }
    let lifts: Vec<SparseRow> = (0..n)
        .map(|k| crate::linalg::echelon::sparse_from_dense(&cert.ambient_image(k)))
        .collect();

    for (k, s) in lifts.iter().enumerate() {
        let mut image = a.zero_element();
        for (idx, c) in s {
            for (m, w) in a.product(idx / n, idx % n) {
                image[*m] += &(c * w);
            }
        }
        if image != a.basis_element(k) {
            return Err(Violation {
                family: ConstraintFamily::Section,
                indices: vec![k],
            });
        }
    }

    let rels = verifier_relations(&cert.morphism);
    for left in [true, false] {
        for i in 0..n {
            for k in 0..n {
                // e_i σ(e_k) - σ(e_i e_k)   or   σ(e_k) e_i - σ(e_k e_i)
                let mut terms = Vec::new();
                for (idx, c) in &lifts[k] {
                    let (x, y) = (idx / n, idx % n);
                    if left {
                        for (m, w) in a.product(i, x) {
                            terms.push((m * n + y, c * w));
                        }
                    } else {
                        for (m, w) in a.product(y, i) {
                            terms.push((x * n + m, c * w));
                        }
                    }
                }
                let prod = if left {
                    a.product(i, k)
                } else {
                    a.product(k, i)
                };
                for (l, c) in prod {
                    for (idx, v) in &lifts[*l] {
                        terms.push((*idx, -(c * v)));
                    }
                }
                if !rels.contains(&sparse_collect(terms)) {
                    return Err(Violation {
                        family: if left {
                            ConstraintFamily::LeftLinear
                        } else {
                            ConstraintFamily::RightLinear
                        },
                        indices: vec![i, k],
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::*;

    const Q: ScalarField = ScalarField::Rationals;

    fn scalar_inclusion(a: &StructureRing, unit: &[i64]) -> RingMorphism {
        let k = a.field();
        let col: Vec<Vec<i64>> = unit.iter().map(|u| vec![*u]).collect();
        let rows: Vec<&[i64]> = col.iter().map(|r| r.as_slice()).collect();
        RingMorphism::new(field_as_ring(k), a.clone(), Mat::from_i64(k, &rows)).unwrap()
    }

    #[test]
    fn matrix_ring_over_scalars_is_separable() {
        let (m2, _) = matrix_ring(Q, 2);
        let f = scalar_inclusion(&m2, &[1, 0, 0, 1]);
        let cert = solve_separability(&f).unwrap().unwrap();
        assert_eq!(verify_certificate(&cert), Ok(()));
    }

    #[test]
    fn f2_c2_over_f2_is_not_separable() {
        let f2 = ScalarField::prime(2).unwrap();
        let (a, f) = group_ring(&field_as_ring(f2), &FiniteGroup::cyclic(2));
        let out = solve_separability(&f).unwrap();
        let err = out.unwrap_err();
        assert_eq!(err.augmented_rank, err.rank + 1);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn identity_extension_is_separable() {
        let (q3, _) = truncated_sequence_ring(Q, 3);
        let cert = solve_separability(&RingMorphism::identity(&q3))
            .unwrap()
            .unwrap();
        assert_eq!(verify_certificate(&cert), Ok(()));
    }

    #[test]
    fn perturbed_certificate_is_rejected() {
        let (m2, _) = matrix_ring(Q, 2);
        let f = scalar_inclusion(&m2, &[1, 0, 0, 1]);
        let mut cert = solve_separability(&f).unwrap().unwrap();
        let v = cert.sigma.get(0, 0) + &Q.one();
        cert.sigma.set(0, 0, v);
        let err = verify_certificate(&cert).unwrap_err();
        assert_eq!(err.family, ConstraintFamily::Section);
    }

    #[test]
    fn classical_matrix_element_verifies() {
        // σ(x) = Σ_i x e_{i1} ⊗ e_{1i}, entered directly on the ambient basis
        let (m2, _) = matrix_ring(Q, 2);
        let f = scalar_inclusion(&m2, &[1, 0, 0, 1]);
        let n = 4;
        let mut cols = Vec::new();
        for k in 0..n {
            let x = m2.basis_element(k);
            let mut v = vec![Q.zero(); n * n];
            for i in 0..2 {
                let ei1 = m2.basis_element(i * 2);
                let e1i = i;
                let left = m2.mul(&x, &ei1);
                for (p, c) in left.iter().enumerate() {
                    if !c.is_zero() {
                        v[p * n + e1i] += c;
                    }
                }
            }
            cols.push(v);
        }
        let cert = SeparabilityCertificate {
            morphism: f,
            tensor_basis: Mat::identity(Q, n * n),
            sigma: Mat::from_columns(Q, n * n, &cols),
        };
        assert_eq!(verify_certificate(&cert), Ok(()));
    }
}
