//! Exact coefficient arithmetic.
//!
//! Everything here is an immutable value type. The [`Scalar`] trait is the
//! minimal ring interface the noncommutative layers are generic over; fields
//! additionally implement [`Field`].

mod hbar;
mod poly;
mod ratfun;
mod series;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use hbar::HbarPoly;
pub use poly::Poly;
pub use ratfun::RatFun;
pub use series::{Bound, SeriesError, TruncatedSeries, Var};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero is undefined")]
    ZeroInput,
    #[error("pole at q = 1 (valuation {0})")]
    PoleAtOne(i64),
}

/// An associative ring, not necessarily commutative.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// A commutative coefficient ring.
pub trait Scalar: Ring + Display {
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A coefficient field.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar for Rational {
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        rat(n)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Binomial coefficient C(n, k) for n possibly negative (generalized).
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return rat(0);
    }
    let mut acc = rat(1);
    for t in 0..k {
        acc = acc * rat(n - t) / rat(t + 1);
    }
    acc
}
