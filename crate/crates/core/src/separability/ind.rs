use crate::linalg::Mat;
use crate::module::intertwining_system;
use crate::ring::RingMorphism;
use crate::scalar::Scalar;

/// A `B`-bimodule map `s: A -> B` with `s ∘ f = id_B`, if one exists.
pub fn ind_separability(f: &RingMorphism) -> Option<Mat> {
    let (b, a) = (f.source(), f.target());
    let field = a.field();
    let (nb, na) = (b.dim(), a.dim());
    let mut pairs = Vec::new();
    for g in b.algebra_generators() {
        let fg = f.apply(g);
        pairs.push((a.left_mul_matrix(&fg), b.left_mul_matrix(g)));
        pairs.push((a.right_mul_matrix(&fg), b.right_mul_matrix(g)));
    }
    // unknown s[r, c] at index r * na + c
    let mut sys = intertwining_system(field, &pairs, nb, na);
    for r in 0..nb {
        for j in 0..nb {
            let terms: Vec<(usize, Scalar)> = (0..na)
                .filter(|c| !f.matrix().get(*c, j).is_zero())
                .map(|c| (r * na + c, f.matrix().get(c, j).clone()))
                .collect();
            sys.add_equation(terms, if r == j { field.one() } else { field.zero() });
        }
    }
    sys.solve()
        .ok()
        .map(|x| Mat::from_vector(field, nb, na, &x))
}

/// Re-substitutes a candidate splitting into every defining equation over
/// all basis elements.
pub fn verify_ind_splitting(f: &RingMorphism, s: &Mat) -> bool {
    let (b, a) = (f.source(), f.target());
    if s.rows() != b.dim() || s.cols() != a.dim() {
        return false;
    }
    if !(s * f.matrix()).is_identity() {
        return false;
    }
    (0..b.dim()).all(|j| {
        let fb = f.image_of_basis(j);
        let eb = b.basis_element(j);
        (0..a.dim()).all(|x| {
            let ex = a.basis_element(x);
            let sx = s.mul_vec(&ex);
            s.mul_vec(&a.mul(&fb, &ex)) == b.mul(&eb, &sx)
                && s.mul_vec(&a.mul(&ex, &fb)) == b.mul(&sx, &eb)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::*;
    use crate::scalar::ScalarField;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn scalars_in_group_ring_split() {
        let (_, f) = group_ring(&field_as_ring(Q), &FiniteGroup::cyclic(2));
        let s = ind_separability(&f).unwrap();
        assert!(verify_ind_splitting(&f, &s));
    }

    #[test]
    fn diagonal_in_matrix_ring_splits() {
        let (q2, _) = truncated_sequence_ring(Q, 2);
        let (m2, _) = matrix_ring(Q, 2);
        let f = RingMorphism::new(
            q2,
            m2,
            Mat::from_i64(Q, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]),
        )
        .unwrap();
        let s = ind_separability(&f).unwrap();
        assert!(verify_ind_splitting(&f, &s));
        assert_eq!(s, Mat::from_i64(Q, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn zero_map_has_no_splitting() {
        let q = field_as_ring(Q);
        let (a, _) = group_ring(&q, &FiniteGroup::cyclic(2));
        assert!(ind_separability(&RingMorphism::zero(&q, &a)).is_none());
    }
}
