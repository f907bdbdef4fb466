use crate::error::SemisimpleError;
use crate::linalg::{self, Mat, Subspace};
use crate::ring::{unitalization, StructureRing};
use crate::scalar::{Scalar, ScalarField};

/// Largest `p^(2n+1)` for which the brute-force radical enumerates pairs.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    TraceForm,
    BruteForceNilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub ring: StructureRing,
    pub radical: Subspace,
    pub method: RadicalMethod,
}

impl RadicalReport {
    pub fn is_zero(&self) -> bool {
        self.radical.is_zero()
    }
}

pub fn is_nilpotent(ring: &StructureRing, x: &[Scalar]) -> bool {
    let zero = ring.zero_element();
    let mut p = x.to_vec();
    for _ in 0..=ring.dim() {
        if p == zero {
            return true;
        }
        p = ring.mul(&p, x);
    }
    p == zero
}

/// Jacobson radical of `A`, computed as `J(A¹) ∩ A`.
pub fn radical(a: &StructureRing) -> Result<RadicalReport, SemisimpleError> {
    match a.field() {
        ScalarField::Rationals => Ok(trace_form_radical(a)),
        ScalarField::Prime(p) => {
            let n = a.dim() as u32;
            let fits = (p as u128)
                .checked_pow(2 * n + 1)
                .is_some_and(|v| v <= BRUTE_FORCE_LIMIT as u128);
            if !fits {
                let max = (0..=n)
                    .take_while(|k| {
                        (p as u128)
                            .checked_pow(2 * k + 1)
                            .is_some_and(|v| v <= BRUTE_FORCE_LIMIT as u128)
                    })
                    .last()
                    .unwrap_or(0);
                return Err(SemisimpleError::UnsupportedCharacteristic(
                    a.field(),
                    max as usize,
                ));
            }
            Ok(brute_force_radical(a))
        }
    }
}

/// Characteristic 0: the kernel of `(x, y) -> tr(L_{xy})` on the
/// unitalization is its radical (Dickson's criterion).
fn trace_form_radical(a: &StructureRing) -> RadicalReport {
    let (u, _) = unitalization(a);
    let n = u.dim();
    let f = u.field();
    let traces: Vec<Scalar> = (0..n)
        .map(|k| {
            let l = u.left_basis_matrix(k);
            let mut t = f.zero();
            for i in 0..n {
                t += l.get(i, i);
            }
            t
        })
        .collect();
    let gram = Mat::from_fn(f, n, n, |x, y| {
        let mut s = f.zero();
        for (k, c) in u.product(x, y) {
            s += &(c * &traces[*k]);
        }
        s
    });
    let rad_u = linalg::kernel(&gram);
    // elements of A¹ with zero unit coefficient, in A's coordinates
    let no_unit = Subspace::span(
        f,
        n,
        &(1..n)
            .map(|i| crate::linalg::mat::unit_vec(f, n, i))
            .collect::<Vec<_>>(),
    );
    let inside = rad_u.intersect(&no_unit).expect("same ambient");
    let vecs: Vec<Vec<Scalar>> = inside
        .basis_vectors()
        .into_iter()
        .map(|v| v[1..].to_vec())
        .collect();
    RadicalReport {
        ring: a.clone(),
        radical: Subspace::span(f, a.dim(), &vecs),
        method: RadicalMethod::TraceForm,
    }
}

fn all_vectors(f: ScalarField, n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let elems = f.elements().expect("finite field");
    let p = elems.len();
    let total = p.pow(n as u32);
    (0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let e = elems[idx % p].clone();
                idx /= p;
                e
            })
            .collect()
    })
}

/// Finite fields: `x ∈ J(A¹)` iff `y x` is nilpotent for every `y ∈ A¹`,
/// checked by enumerating both.
fn brute_force_radical(a: &StructureRing) -> RadicalReport {
    let (u, incl) = unitalization(a);
    let f = a.field();
    let ys: Vec<Vec<Scalar>> = all_vectors(f, u.dim()).collect();
    let members: Vec<Vec<Scalar>> = all_vectors(f, a.dim())
        .filter(|x| {
            let xu = incl.apply(x);
            ys.iter().all(|y| is_nilpotent(&u, &u.mul(y, &xu)))
        })
        .collect();
    RadicalReport {
        ring: a.clone(),
        radical: Subspace::span(f, a.dim(), &members),
        method: RadicalMethod::BruteForceNilpotent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::*;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn radical_examples() {
        let (a, _) = group_ring(&field_as_ring(Q), &FiniteGroup::cyclic(3));
        assert!(radical(&a).unwrap().is_zero());

        let f2 = ScalarField::prime(2).unwrap();
        let (a, _) = group_ring(&field_as_ring(f2), &FiniteGroup::cyclic(2));
        let r = radical(&a).unwrap();
        assert_eq!(r.method, RadicalMethod::BruteForceNilpotent);
        assert_eq!(
            r.radical,
            Subspace::span(f2, 2, &[vec![f2.one(), f2.one()]])
        );

        let z = square_zero_ring(Q);
        assert!(radical(&z).unwrap().radical.is_full());
    }

    #[test]
    fn trace_form_agrees_with_reduction_mod_five() {
        let f5 = ScalarField::prime(5).unwrap();
        let (a5, _) = group_ring(&field_as_ring(f5), &FiniteGroup::cyclic(2));
        assert!(radical(&a5).unwrap().is_zero());
        let t = upper_triangular_ring(Q, 2);
        // strictly upper triangular part
        assert_eq!(radical(&t).unwrap().radical.dim(), 1);
    }

    #[test]
    fn large_prime_fields_are_refused() {
        let f7 = ScalarField::prime(7).unwrap();
        let (a, _) = group_ring(&field_as_ring(f7), &FiniteGroup::cyclic(7));
        assert!(matches!(
            radical(&a),
            Err(SemisimpleError::UnsupportedCharacteristic(..))
        ));
    }
}
