//! Exact scalars over the rationals or a prime field.
//!
//! Rationals are stored as machine-sized fractions while they fit and fall
//! back to big integers otherwise. Every value is kept in lowest terms with a
//! positive denominator, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ScalarError;

/// The exact arithmetic domain a ring or module is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarField {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

/// An exact rational number in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// Builds `num/den`; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Self::zero();
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128);
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small { num: n, den: d }),
            _ => Rational(Repr::Big(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small { num: n, den: d }),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num, den)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        })
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    return Self::from_i128(*a as i128 + *c as i128, 1);
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                Self::from_i128(n, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Self::from_i128(-(*num as i128), *den as i128),
            Repr::Big(b) => Self::from_big(-b.clone()),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    /// `"p/q"` with `q > 0` and `gcd(p, q) = 1`; integers carry `q = 1`.
    pub fn to_wire(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        let bad = || ScalarError::Parse(text.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Self::from_bigints(n, d).ok_or_else(bad)
    }

    fn signum_i32(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub_ref(other).signum_i32().cmp(&0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarField {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        // keeps products of residues inside u128 with room to spare
        if p >= 1 << 62 {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        Ok(ScalarField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarField::Rationals => 0,
            ScalarField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Q(Rational::zero()),
            ScalarField::Prime(p) => Scalar::Fp {
                value: 0,
                modulus: *p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Q(Rational::from_integer(n)),
            ScalarField::Prime(p) => Scalar::Fp {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// `num/den` in this field; `None` when `den` vanishes here.
    pub fn from_ratio(&self, num: i64, den: i64) -> Option<Scalar> {
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Maps a rational into the field; fails if the denominator is divisible by `p`.
    pub fn from_rational(&self, r: &Rational) -> Option<Scalar> {
        match self {
            ScalarField::Rationals => Some(Scalar::Q(r.clone())),
            ScalarField::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = r.numer().mod_floor(&pb).to_u64()?;
                let d = r.denom().mod_floor(&pb).to_u64()?;
                let num = Scalar::Fp {
                    value: n,
                    modulus: *p,
                };
                num.div(&Scalar::Fp {
                    value: d,
                    modulus: *p,
                })
            }
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        match self {
            ScalarField::Rationals => Ok(Scalar::Q(Rational::parse(text)?)),
            ScalarField::Prime(_) => {
                let r = Rational::parse(text)?;
                self.from_rational(&r)
                    .ok_or_else(|| ScalarError::Parse(text.to_string()))
            }
        }
    }

    /// All field elements in ascending residue order; `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            ScalarField::Rationals => None,
            ScalarField::Prime(p) => Some(
                (0..*p)
                    .map(|v| Scalar::Fp {
                        value: v,
                        modulus: *p,
                    })
                    .collect(),
            ),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ScalarField::Prime(_))
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "Q"),
            ScalarField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Wire form of a field: `{"kind":"Q"}` or `{"kind":"Fp","p":...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    Q,
    Fp { p: u64 },
}

impl From<ScalarField> for FieldDescriptor {
    fn from(f: ScalarField) -> Self {
        match f {
            ScalarField::Rationals => FieldDescriptor::Q,
            ScalarField::Prime(p) => FieldDescriptor::Fp { p },
        }
    }
}

impl TryFrom<FieldDescriptor> for ScalarField {
    type Error = ScalarError;

    fn try_from(d: FieldDescriptor) -> Result<Self, Self::Error> {
        match d {
            FieldDescriptor::Q => Ok(ScalarField::Rationals),
            FieldDescriptor::Fp { p } => ScalarField::prime(p),
        }
    }
}

/// A field element. Mixing elements of different fields is a logic error
/// and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Q(_) => ScalarField::Rationals,
            Scalar::Fp { modulus, .. } => ScalarField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.recip().map(Scalar::Q),
            Scalar::Fp { value, modulus } => {
                if *value == 0 {
                    return None;
                }
                // Fermat: a^(p-2)
                Some(Scalar::Fp {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Serialized form: `"p/q"` over the rationals, decimal residue over `F_p`.
    pub fn to_wire(&self) -> String {
        match self {
            Scalar::Q(r) => r.to_wire(),
            Scalar::Fp { value, .. } => value.to_string(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

fn check_same(a: u64, b: u64) {
    assert_eq!(a, b, "mixed scalar fields F_{a} and F_{b}");
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add_ref(b)),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                check_same(*p, *q);
                Scalar::Fp {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul_ref(b)),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                check_same(*p, *q);
                Scalar::Fp {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg_ref()),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.add_ref(&rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.mul_ref(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let a = Rational::new(2, 4);
        assert_eq!(a, Rational::new(-1, -2));
        assert_eq!(a.to_wire(), "1/2");
        assert_eq!(Rational::new(3, -6).to_wire(), "-1/2");
        assert_eq!(Rational::from_integer(5).to_wire(), "5/1");
    }

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let big = Rational::from_integer(i64::MAX);
        let sq = big.mul_ref(&big);
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = sq
            .mul_ref(&big.recip().unwrap())
            .mul_ref(&big.recip().unwrap());
        assert!(back.is_one());
        assert!(matches!(back.0, Repr::Small { .. }));
    }

    #[test]
    fn parses_wire_forms() {
        let q = ScalarField::Rationals;
        assert_eq!(
            q.parse_scalar("-3/6").unwrap(),
            q.from_ratio(-1, 2).unwrap()
        );
        assert_eq!(q.parse_scalar("7").unwrap(), q.from_i64(7));
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());
        let f5 = ScalarField::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.from_i64(-1).to_wire(), "4");
        assert!(f5.parse_scalar("1/5").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = ScalarField::prime(7).unwrap();
        let a = f7.from_i64(3);
        assert_eq!(&a * &a.inv().unwrap(), f7.one());
        assert_eq!(a.pow(6), f7.one());
        assert!(ScalarField::prime(9).is_err());
        let two = ScalarField::prime(2).unwrap().from_i64(2);
        assert!(two.is_zero());
        assert!(two.inv().is_none());
    }

    #[test]
    fn ordering_of_rationals() {
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::new(-1, 2) < Rational::zero());
    }
}
