//! The unitality hierarchy for rings: unital, left s-unital, unitary,
//! locally unital.

use crate::linalg::{LinearSystem, Subspace};
use crate::ring::{IdempotentFamily, StructureRing};
use crate::scalar::Scalar;

// Equations `(a x)_k = x_k` for every x, unknowns the coordinates of `a`
// (left side) or `x a = x` (right side).
fn unit_system(ring: &StructureRing, xs: &[Vec<Scalar>], left: bool, right: bool) -> LinearSystem {
    let n = ring.dim();
    let mut sys = LinearSystem::new(ring.field(), n);
    for x in xs {
        for (side_left, active) in [(true, left), (false, right)] {
            if !active {
                continue;
            }
            // column i: e_i x (or x e_i)
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for i in 0..n {
                let e = ring.basis_element(i);
                let p = if side_left {
                    ring.mul(&e, x)
                } else {
                    ring.mul(x, &e)
                };
                for (k, v) in p.into_iter().enumerate() {
                    if !v.is_zero() {
                        rows[k].push((i, v));
                    }
                }
            }
            for (k, row) in rows.into_iter().enumerate() {
                sys.add_equation(row, x[k].clone());
            }
        }
    }
    sys
}

/// A two-sided identity, if one exists. The zero ring returns `None`.
pub fn is_unital(ring: &StructureRing) -> Option<Vec<Scalar>> {
    if ring.dim() == 0 {
        return None;
    }
    let basis: Vec<Vec<Scalar>> = (0..ring.dim()).map(|i| ring.basis_element(i)).collect();
    unit_system(ring, &basis, true, true).solve().ok()
}

/// Some `a` with `a x = x` for every `x` in `xs`.
pub fn common_left_unit(ring: &StructureRing, xs: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    unit_system(ring, xs, true, false).solve().ok()
}

/// Some `a` with `x a = x` for every `x` in `xs`.
pub fn common_right_unit(ring: &StructureRing, xs: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    unit_system(ring, xs, false, true).solve().ok()
}

/// Whether a common left unit exists for the whole basis, i.e. `m ∈ Am`
/// for every `m`.
pub fn is_left_s_unital_ring(ring: &StructureRing) -> bool {
    let basis: Vec<Vec<Scalar>> = (0..ring.dim()).map(|i| ring.basis_element(i)).collect();
    common_left_unit(ring, &basis).is_some()
}

pub fn is_right_s_unital_ring(ring: &StructureRing) -> bool {
    let basis: Vec<Vec<Scalar>> = (0..ring.dim()).map(|i| ring.basis_element(i)).collect();
    common_right_unit(ring, &basis).is_some()
}

/// Whether `m` lies in `Am = {a m : a ∈ A}`.
pub fn in_left_multiple(ring: &StructureRing, m: &[Scalar]) -> bool {
    common_left_unit(ring, &[m.to_vec()]).is_some()
}

/// `A A` as a subspace of `A`.
pub fn square_span(ring: &StructureRing) -> Subspace {
    let n = ring.dim();
    let f = ring.field();
    let mut vecs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            vecs.push(crate::linalg::echelon::dense_from_sparse(
                f,
                n,
                ring.product(i, j),
            ));
        }
    }
    Subspace::span(f, n, &vecs)
}

/// `A A = A`.
pub fn is_unitary_ring(ring: &StructureRing) -> bool {
    square_span(ring).is_full()
}

/// An idempotent from the family (a member, a declared sup, or a sum of
/// orthogonal members) absorbing every element of `xs` on both sides.
pub fn is_locally_unital(
    ring: &StructureRing,
    fam: &IdempotentFamily,
    xs: &[Vec<Scalar>],
) -> Option<Vec<Scalar>> {
    if fam.ring() != ring {
        return None;
    }
    fam.minimal_cover(xs).map(|(_, e)| e)
}
