use std::fmt;

use super::{rat, CoeffError, Field, Poly, Rational, Ring, Scalar};

/// Exact rational function in `q` over the rationals.
///
/// Canonical form: monic denominator, numerator and denominator coprime,
/// zero represented as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let l = d.lead();
        if !l.is_one() {
            let li = l.recip();
            n = n.scale(&li);
            d = d.scale(&li);
        }
        RatFun { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn q() -> Self {
        RatFun::from_poly(Poly::from_ints(&[0, 1]))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        let m = Poly::monomial(rat(1), e.unsigned_abs() as usize);
        if e >= 0 {
            RatFun::from_poly(m)
        } else {
            RatFun {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `q - q^{-1} = (q^2 - 1)/q`.
    pub fn q_minus_qinv() -> Self {
        RatFun {
            num: Poly::from_ints(&[-1, 0, 1]),
            den: Poly::from_ints(&[0, 1]),
        }
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        RatFun::from_poly(Poly::from_ints(&[-1, 1]))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `(q-1)`-adic valuation.
    pub fn q1_valuation(&self) -> Result<i64, CoeffError> {
        if self.num.is_zero() {
            return Err(CoeffError::ZeroInput);
        }
        Ok(self.num.valuation_at_one() as i64 - self.den.valuation_at_one() as i64)
    }

    /// Valuation with zero mapped to `i64::MAX`.
    pub fn val(&self) -> i64 {
        self.q1_valuation().unwrap_or(i64::MAX)
    }

    /// Value at `q = 1`; errors if there is a pole there.
    pub fn limit_q1(&self) -> Result<Rational, CoeffError> {
        let d = self.den.eval(&rat(1));
        if d.is_zero() {
            return Err(CoeffError::PoleAtOne(self.val()));
        }
        Ok(self.num.eval(&rat(1)) / d)
    }

    /// Splits `self = (q-1)^v * g` and returns `(v, g(1))`.
    pub fn leading_at_one(&self) -> Option<(i64, Rational)> {
        if self.num.is_zero() {
            return None;
        }
        let root = Poly::linear_root(rat(1));
        let strip = |p: &Poly| {
            let mut p = p.clone();
            let mut v = 0i64;
            loop {
                let (qt, r) = p.div_rem(&root);
                if !r.is_zero() {
                    return (v, p);
                }
                p = qt;
                v += 1;
            }
        };
        let (vn, n) = strip(&self.num);
        let (vd, d) = strip(&self.den);
        Some((vn - vd, n.eval(&rat(1)) / d.eval(&rat(1))))
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut acc = RatFun::one();
        let base = if e < 0 {
            self.inv().expect("inverse of zero")
        } else {
            self.clone()
        };
        for _ in 0..e.unsigned_abs() {
            acc = Ring::mul(&acc, &base);
        }
        acc
    }

    /// First `prec` coefficients of the expansion in powers of `q - 1`;
    /// `None` if there is a pole at `q = 1`.
    pub fn series_at_one(&self, prec: usize) -> Option<Vec<Rational>> {
        if prec == 0 {
            return Some(Vec::new());
        }
        let shift = |p: &Poly| -> Vec<Rational> {
            // coefficients of p(1 + e)
            let c = p.coeffs();
            (0..prec)
                .map(|k| {
                    c.iter().enumerate().skip(k).fold(rat(0), |acc, (d, a)| {
                        acc + a * super::binomial(d as i64, k as i64)
                    })
                })
                .collect()
        };
        let n = shift(&self.num);
        let d = shift(&self.den);
        if d[0] == rat(0) {
            return None;
        }
        let mut out: Vec<Rational> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut acc = n[k].clone();
            for t in 0..k {
                acc -= &out[t] * &d[k - t];
            }
            out.push(acc / &d[0]);
        }
        Some(out)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

impl Scalar for RatFun {
    fn one() -> Self {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    fn from_int(n: i64) -> Self {
        RatFun::constant(rat(n))
    }

    fn from_rational(r: &Rational) -> Self {
        RatFun::constant(r.clone())
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return RatFun::from_poly(self.num.add(&other.num));
            }
            return RatFun::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &other.den);
        let a_cof = other.den.div_rem(&g).0;
        let b_cof = self.den.div_rem(&g).0;
        let num = self.num.mul(&a_cof).add(&other.num.mul(&b_cof));
        let den = self.den.mul(&a_cof);
        RatFun::reduce(num, den)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFun::from_poly(self.num.mul(&other.num));
        }
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = other.den.div_rem(&g1).0;
        let n2 = other.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let l = den.lead();
        if l.is_one() {
            RatFun { num, den }
        } else {
            let li = l.recip();
            RatFun {
                num: num.scale(&li),
                den: den.scale(&li),
            }
        }
    }

    fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Field for RatFun {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFun::reduce(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.coeffs().len() > 1 {
                write!(f, "({})", self.num.display_in("q"))
            } else {
                write!(f, "{}", self.num.display_in("q"))
            }
        } else {
            write!(
                f,
                "({})/({})",
                self.num.display_in("q"),
                self.den.display_in("q")
            )
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> RatFun {
        RatFun::from_poly(Poly::from_ints(cs))
    }

    #[test]
    fn product_and_quotient() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).div(&b).unwrap(), a);
        assert!(a.div(&RatFun::zero()).is_none());
    }

    #[test]
    fn q_minus_qinv_is_canonical() {
        let direct = RatFun::q().sub(&RatFun::q_pow(-1));
        assert_eq!(direct, RatFun::q_minus_qinv());
        assert_eq!(direct.num(), &Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(direct.den(), &Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn valuations() {
        assert_eq!(
            p(&[-1, 0, 1]).div(&p(&[1, 1])).unwrap().q1_valuation(),
            Ok(1)
        );
        let x = RatFun::q_minus_qinv();
        assert_eq!(x.mul(&x).q1_valuation(), Ok(2));
        assert_eq!(p(&[-1, 1]).inv().unwrap().q1_valuation(), Ok(-1));
        assert_eq!(RatFun::zero().q1_valuation(), Err(CoeffError::ZeroInput));
    }

    #[test]
    fn limit_at_one() {
        let x = RatFun::q_minus_qinv().div(&RatFun::q_minus_one()).unwrap();
        assert_eq!(x.limit_q1().unwrap(), rat(2));
        assert!(RatFun::q_minus_one().inv().unwrap().limit_q1().is_err());
        assert_eq!(x.leading_at_one(), Some((0, rat(2))));
    }
}
