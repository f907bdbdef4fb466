use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::Mat;
use crate::scalar::{Rational, Scalar, ScalarField};

/// Trial division is only attempted below this bound.
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;
/// Over `F_p` roots are found by evaluation when `p` is at most this.
const ROOT_SCAN_PRIME_LIMIT: u64 = 1 << 12;

/// Coefficients `c_0, ..., c_n` of `det(xI - M)` over the rationals
/// (Faddeev-LeVerrier).
pub fn charpoly_q(m: &Mat) -> Vec<Rational> {
    let n = m.rows();
    let f = ScalarField::Rationals;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Mat::zeros(f, n, n);
    for k in 1..=n {
        let shifted = &mk + &Mat::identity(f, n).scale(&Scalar::Q(coeffs[n - k + 1].clone()));
        mk = m * &shifted;
        let mut tr = Rational::zero();
        for i in 0..n {
            tr = tr.add_ref(mk.get(i, i).as_rational().expect("rational matrix"));
        }
        coeffs[n - k] = tr.neg_ref().mul_ref(&Rational::new(1, k as i64));
    }
    coeffs
}

fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of a polynomial, by the rational root theorem. Roots are
/// missed only when the integer-scaled end coefficients are too large to
/// factor by trial division.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return roots;
    }
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c.first().is_some_and(|x| x.is_zero()) {
            c.remove(0);
        }
    }
    if c.len() <= 1 {
        return roots;
    }
    let l = c.iter().fold(BigInt::from(1), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return roots;
    };
    if a0 > DIVISOR_SEARCH_LIMIT || an > DIVISOR_SEARCH_LIMIT || a0.is_zero() {
        return roots;
    }
    let mut cands: Vec<Rational> = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            let r = Rational::from_bigints(BigInt::from(p), BigInt::from(q)).expect("q > 0");
            cands.push(r.neg_ref());
            cands.push(r);
        }
    }
    cands.sort_by_key(|r| r.to_wire());
    cands.dedup();
    roots.extend(cands.into_iter().filter(|r| eval(&c, r).is_zero()));
    roots
}

/// Eigenvalues of a square matrix that lie in its base field, as far as
/// they can be found cheaply.
pub fn eigenvalues(m: &Mat) -> Vec<Scalar> {
    let f = m.field();
    match f {
        ScalarField::Rationals => rational_roots(&charpoly_q(m))
            .into_iter()
            .map(Scalar::Q)
            .collect(),
        ScalarField::Prime(p) => {
            let n = m.rows();
            let candidates: Vec<Scalar> = if p <= ROOT_SCAN_PRIME_LIMIT {
                f.elements().expect("finite")
            } else {
                vec![f.zero()]
            };
            candidates
                .into_iter()
                .filter(|l| {
                    let shifted = m - &Mat::identity(f, n).scale(l);
                    crate::linalg::rank(&shifted) < n
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn charpoly_of_companion() {
        // x^2 - 3x + 2
        let m = Mat::from_i64(Q, &[&[0, -2], &[1, 3]]);
        let c = charpoly_q(&m);
        assert_eq!(
            c,
            vec![
                Rational::from_integer(2),
                Rational::from_integer(-3),
                Rational::one()
            ]
        );
        let mut r = rational_roots(&c);
        r.sort_by_key(|x| x.to_wire());
        assert_eq!(
            r,
            vec![Rational::from_integer(1), Rational::from_integer(2)]
        );
    }

    #[test]
    fn irrational_and_fractional_roots() {
        let m = Mat::from_i64(Q, &[&[0, 2], &[1, 0]]);
        assert!(eigenvalues(&m).is_empty());
        let half = Mat::identity(Q, 2).scale(&Q.from_ratio(1, 2).unwrap());
        assert_eq!(eigenvalues(&half), vec![Q.from_ratio(1, 2).unwrap()]);
        let z = Mat::zeros(Q, 3, 3);
        assert_eq!(eigenvalues(&z), vec![Q.zero()]);
    }

    #[test]
    fn finite_field_roots() {
        let f3 = ScalarField::prime(3).unwrap();
        let m = Mat::from_i64(f3, &[&[1, 1], &[0, 2]]);
        assert_eq!(eigenvalues(&m), vec![f3.from_i64(1), f3.from_i64(2)]);
    }
}
