use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{rat, Rational};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    /// The monomial `c * x^d`.
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut coeffs = vec![rat(0); d + 1];
        coeffs[d] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Poly::from_coeffs(vec![-a, rat(1)])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(|| rat(0))
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            match (self.coeffs.get(d), other.coeffs.get(d)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.lead().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![rat(0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead().recip();
        self.scale(&l)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplicity of the root `x = 1`.
    pub fn valuation_at_one(&self) -> usize {
        assert!(!self.is_zero());
        let root = Poly::linear_root(rat(1));
        let mut p = self.clone();
        let mut v = 0;
        loop {
            let (qt, r) = p.div_rem(&root);
            if !r.is_zero() {
                return v;
            }
            p = qt;
            v += 1;
        }
    }

    fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Poly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in(self.1, f)
            }
        }
        D(self, var)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in("x", f)
    }
}
