//! Standard rings used throughout the corpus.

use std::collections::BTreeMap;

use crate::linalg::echelon::SparseRow;
use crate::linalg::Mat;
use crate::ring::{IdempotentFamily, RingMorphism, StructureRing};
use crate::scalar::{Scalar, ScalarField};

fn one_term(k: usize, v: Scalar) -> SparseRow {
    vec![(k, v)]
}

/// The field itself as a 1-dimensional ring.
pub fn field_as_ring(k: ScalarField) -> StructureRing {
    StructureRing::from_products(k, 1, k.to_string(), |_, _| one_term(0, k.one()))
        .expect("field is associative")
}

/// `{1}` as an idempotent family of a unital ring.
pub fn unit_family(ring: &StructureRing, unit: Vec<Scalar>) -> IdempotentFamily {
    IdempotentFamily::new(ring, vec![unit]).expect("a unit is idempotent")
}

pub fn zero_ring(k: ScalarField) -> StructureRing {
    StructureRing::from_products(k, 0, "0", |_, _| Vec::new()).expect("zero ring")
}

/// One-dimensional ring with `z^2 = 0`.
pub fn square_zero_ring(k: ScalarField) -> StructureRing {
    StructureRing::from_products(k, 1, format!("Z0({k})"), |_, _| Vec::new())
        .expect("square-zero ring")
}

/// `M_n(k)` with matrix units `e_{ij}` at index `i * n + j`, and the family
/// of diagonal matrix units.
pub fn matrix_ring(k: ScalarField, n: usize) -> (StructureRing, IdempotentFamily) {
    assert!(n >= 1, "matrix ring of size 0");
    let ring = StructureRing::from_products(k, n * n, format!("M{n}({k})"), |a, b| {
        let (i, j) = (a / n, a % n);
        let (l, m) = (b / n, b % n);
        if j == l {
            one_term(i * n + m, k.one())
        } else {
            Vec::new()
        }
    })
    .expect("matrix ring is associative");
    let diag = (0..n).map(|i| ring.basis_element(i * n + i)).collect();
    let fam = IdempotentFamily::new(&ring, diag).expect("matrix units are idempotent");
    (ring, fam)
}

/// The `n x n` corner of the ring of column- and row-finite matrices; as a
/// ring this is `M_n(k)`.
pub fn corner_truncation_crf(k: ScalarField, n: usize) -> (StructureRing, IdempotentFamily) {
    let (ring, fam) = matrix_ring(k, n);
    let ring = ring.relabel(format!("CRF{n}({k})"));
    let fam = IdempotentFamily::new(&ring, fam.members().to_vec()).expect("same idempotents");
    (ring, fam)
}

/// Componentwise product on `k^n`, with the coordinate idempotents and the
/// partial sums `e_1 + ... + e_m` declared as sups of initial segments.
pub fn truncated_sequence_ring(k: ScalarField, n: usize) -> (StructureRing, IdempotentFamily) {
    assert!(n >= 1, "sequence ring of length 0");
    let label = if n == 1 {
        k.to_string()
    } else {
        format!("{k}^{n}")
    };
    let ring = StructureRing::from_products(k, n, label, |i, j| {
        if i == j {
            one_term(i, k.one())
        } else {
            Vec::new()
        }
    })
    .expect("componentwise product is associative");
    let coords: Vec<Vec<Scalar>> = (0..n).map(|i| ring.basis_element(i)).collect();
    let mut sups = BTreeMap::new();
    for m in 2..=n {
        let mut e = ring.zero_element();
        for x in e.iter_mut().take(m) {
            *x = k.one();
        }
        sups.insert((0..m).collect(), e);
    }
    let fam = IdempotentFamily::with_sups(&ring, coords, sups).expect("coordinate family");
    (ring, fam)
}

/// Direct product of rings, blocks in the given order.
pub fn direct_sum(rings: &[StructureRing], label: impl Into<String>) -> StructureRing {
    let k = rings.first().map_or(ScalarField::Rationals, |r| r.field());
    assert!(
        rings.iter().all(|r| r.field() == k),
        "direct sum across fields"
    );
    let mut offsets = Vec::new();
    let mut dim = 0;
    for r in rings {
        offsets.push(dim);
        dim += r.dim();
    }
    let block = |x: usize| {
        let b = offsets.iter().rposition(|o| *o <= x).unwrap();
        (b, x - offsets[b])
    };
    StructureRing::from_products(k, dim, label, |x, y| {
        let (bx, i) = block(x);
        let (by, j) = block(y);
        if bx != by {
            return Vec::new();
        }
        rings[bx]
            .product(i, j)
            .iter()
            .map(|(c, v)| (offsets[bx] + c, v.clone()))
            .collect()
    })
    .expect("direct sum of associative rings is associative")
}

/// `k ⊕ A` with `(a, x)(b, y) = (ab, ay + bx + xy)`; the adjoined unit is
/// basis element 0 and `e_i` of `A` sits at index `i + 1`. Also returns the
/// inclusion `A -> A¹`.
pub fn unitalization(a: &StructureRing) -> (StructureRing, RingMorphism) {
    let k = a.field();
    let n = a.dim();
    let ring =
        StructureRing::from_products(k, n + 1, format!("{}^1", a.label()), |x, y| match (x, y) {
            (0, 0) => one_term(0, k.one()),
            (0, j) => one_term(j, k.one()),
            (i, 0) => one_term(i, k.one()),
            (i, j) => a
                .product(i - 1, j - 1)
                .iter()
                .map(|(c, v)| (c + 1, v.clone()))
                .collect(),
        })
        .expect("unitalization is associative");
    let incl = Mat::from_fn(
        k,
        n + 1,
        n,
        |r, c| if r == c + 1 { k.one() } else { k.zero() },
    );
    let f = RingMorphism::new(a.clone(), ring.clone(), incl).expect("inclusion is multiplicative");
    (ring, f)
}

/// The first-row matrices `{sum_j x_j e_{1j}}` in `M_n(k)`: `e_{11}` is a
/// left identity, but the ring has no right identity for `n >= 2`.
pub fn first_row_ring(k: ScalarField, n: usize) -> StructureRing {
    assert!(n >= 1, "row ring of size 0");
    StructureRing::from_products(k, n, format!("Row{n}({k})"), |i, j| {
        if i == 0 {
            one_term(j, k.one())
        } else {
            Vec::new()
        }
    })
    .expect("row ring is associative")
}

/// Upper triangular `n x n` matrices, basis `e_{ij}` (`i <= j`) in
/// row-major order.
pub fn upper_triangular_ring(k: ScalarField, n: usize) -> StructureRing {
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index = |p: (usize, usize)| units.iter().position(|q| *q == p).unwrap();
    StructureRing::from_products(k, units.len(), format!("T{n}({k})"), |a, b| {
        let (i, j) = units[a];
        let (l, m) = units[b];
        if j == l {
            one_term(index((i, m)), k.one())
        } else {
            Vec::new()
        }
    })
    .expect("triangular ring is associative")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn unitalization_of_square_zero() {
        let z = square_zero_ring(Q);
        let (u, _) = unitalization(&z);
        assert_eq!(u.dim(), 2);
        // (0, 1)^2 = 0
        assert!(u.product(1, 1).is_empty());
        assert!(crate::ring::is_unital(&u).is_some());
    }

    #[test]
    fn matrix_units_multiply() {
        let (m, _) = matrix_ring(Q, 2);
        // e11 e12 = e12, e12 e11 = 0
        assert_eq!(m.product(0, 1), &vec![(1, Q.one())]);
        assert!(m.product(1, 0).is_empty());
    }

    #[test]
    fn direct_sum_blocks() {
        let r = direct_sum(&[field_as_ring(Q), square_zero_ring(Q)], "Q+Z");
        assert_eq!(r.dim(), 2);
        assert_eq!(r.product(0, 0), &vec![(0, Q.one())]);
        assert!(r.product(1, 1).is_empty());
        assert!(r.product(0, 1).is_empty());
    }
}
