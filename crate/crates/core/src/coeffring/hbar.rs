use std::fmt;

use super::{Poly, RatFun, Rational, Ring, Scalar};

/// Polynomial in the deformation parameter ħ with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HbarPoly(Poly);

impl HbarPoly {
    pub fn hbar() -> Self {
        HbarPoly(Poly::from_ints(&[0, 1]))
    }

    pub fn hbar_pow(e: usize) -> Self {
        HbarPoly(Poly::monomial(super::rat(1), e))
    }

    pub fn from_poly(p: Poly) -> Self {
        HbarPoly(p)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    /// Embedding into the fraction field ℚ(ħ), reusing the univariate
    /// rational-function type with its variable read as ħ.
    pub fn to_fraction(&self) -> RatFun {
        RatFun::from_poly(self.0.clone())
    }

    /// Specialization ħ = 0.
    pub fn at_zero(&self) -> Rational {
        self.0.coeff(0)
    }
}

impl Scalar for HbarPoly {
    fn one() -> Self {
        HbarPoly(Poly::one())
    }
    fn from_int(n: i64) -> Self {
        HbarPoly(Poly::constant(super::rat(n)))
    }
    fn from_rational(r: &Rational) -> Self {
        HbarPoly(Poly::constant(r.clone()))
    }
}

impl Ring for HbarPoly {
    fn zero() -> Self {
        HbarPoly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        HbarPoly(self.0.add(&other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        HbarPoly(self.0.mul(&other.0))
    }
    fn neg(&self) -> Self {
        HbarPoly(self.0.neg())
    }
}

impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.coeffs().len() > 1 {
            write!(f, "({})", self.0.display_in("ħ"))
        } else {
            write!(f, "{}", self.0.display_in("ħ"))
        }
    }
}

impl fmt::Debug for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
