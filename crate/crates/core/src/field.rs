//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! Every algebraic structure in the crate is generic over a [`Coeff`]
//! element type; the runtime [`Field`] descriptor carried by a ring tells
//! the element type which field it lives in (only relevant for `F_p`).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational coefficients with arbitrary precision.
pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Prime field `F_p`; `p` must be prime and below `2^31`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "FF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of a coefficient field.
pub trait Coeff:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Whether this element type represents elements of `field`.
    fn supports(field: Field) -> bool;
    fn from_bigint(n: &BigInt, field: Field) -> Self;
    fn from_i64(n: i64, field: Field) -> Self {
        Self::from_bigint(&BigInt::from(n), field)
    }
    fn zero(field: Field) -> Self {
        Self::from_i64(0, field)
    }
    fn one(field: Field) -> Self {
        Self::from_i64(1, field)
    }
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
    /// True when the printed form starts with a minus sign.
    fn is_negative(&self) -> bool;
    /// Size in bits of numerator and denominator; zero for elements of
    /// bounded size.
    fn bits(&self) -> u64 {
        0
    }
    /// False for fractions, whose arithmetic needs a gcd.
    fn is_integral(&self) -> bool {
        true
    }
    /// `n / d` as a field element; `None` when `d` vanishes in the field.
    fn from_fraction(n: &BigInt, d: &BigInt, field: Field) -> Option<Self> {
        Self::from_bigint(n, field).div(&Self::from_bigint(d, field))
    }
}

impl Coeff for BigRational {
    fn supports(field: Field) -> bool {
        field == Field::Rationals
    }
    fn from_bigint(n: &BigInt, _field: Field) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    // integer operands skip the reduction: num-rational takes a gcd with
    // the denominator 1, which costs time quadratic in the numerator size
    fn add(&self, other: &Self) -> Self {
        if self.is_integer() && other.is_integer() {
            return BigRational::from_integer(self.numer() + other.numer());
        }
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        if self.is_integer() && other.is_integer() {
            return BigRational::from_integer(self.numer() - other.numer());
        }
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_integer() && other.is_integer() {
            return BigRational::from_integer(self.numer() * other.numer());
        }
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Element of `F_p`, stored with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Fp {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u32,
            modulus,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    fn with(&self, value: u64) -> Fp {
        Fp {
            value: (value % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl Coeff for Fp {
    fn supports(field: Field) -> bool {
        matches!(field, Field::Prime(_))
    }
    fn from_bigint(n: &BigInt, field: Field) -> Self {
        let p = match field {
            Field::Prime(p) => p,
            Field::Rationals => panic!("Fp element requested for the rationals"),
        };
        let r = n.mod_floor(&BigInt::from(p));
        Fp {
            value: r.to_u32().expect("reduced residue fits"),
            modulus: p,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(self.value as u64 + other.value as u64)
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(self.value as u64 + self.modulus as u64 - other.value as u64)
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(self.value as u64 * other.value as u64)
    }
    fn neg(&self) -> Self {
        self.with(self.modulus as u64 - self.value as u64)
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut a, mut b) = (self.value as i64, self.modulus as i64);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        debug_assert_eq!(a, 1);
        Some(Fp::new(x0, self.modulus))
    }
    fn is_negative(&self) -> bool {
        self.signed() < 0
    }
}
