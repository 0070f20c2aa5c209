//! Truncated formal series in up to three spectral variables `u, v, w`.
//!
//! Each variable is either exact (finitely many terms, all known), truncated
//! below (a series in `x^{-1}`: exponents `< floor` are unknown) or truncated
//! above (a series in `x`: exponents `> ceiling` are unknown). Coefficients
//! live in any ring, commutative or not; products keep factor order.

use std::collections::BTreeMap;

use super::{Ring, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U = 0,
    V = 1,
    W = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Exact,
    /// Exponents strictly below this value are unknown.
    Below(i32),
    /// Exponents strictly above this value are unknown.
    Above(i32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("incompatible truncation directions in variable {0:?}")]
    IncompatibleVariables(Var),
    #[error("coefficient {0:?} lies outside the validity window")]
    OutsideWindow([i32; 3]),
    #[error("substitution not representable for a truncated series in {0:?}")]
    SubstitutionOutsideDomain(Var),
}

pub type Exps = [i32; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    terms: BTreeMap<Exps, R>,
    bounds: [Bound; 3],
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero() -> Self {
        TruncatedSeries {
            terms: BTreeMap::new(),
            bounds: [Bound::Exact; 3],
        }
    }

    pub fn monomial(c: R, exps: Exps) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.terms.insert(exps, c);
        }
        s
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, [0; 3])
    }

    pub fn with_bound(mut self, var: Var, bound: Bound) -> Self {
        self.bounds[var as usize] = bound;
        self.prune();
        self
    }

    pub fn bounds(&self) -> [Bound; 3] {
        self.bounds
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn in_window(&self, e: &Exps) -> bool {
        self.bounds.iter().enumerate().all(|(k, b)| match *b {
            Bound::Exact => true,
            Bound::Below(f) => e[k] >= f,
            Bound::Above(c) => e[k] <= c,
        })
    }

    fn prune(&mut self) {
        let bounds = self.bounds;
        let probe = TruncatedSeries::<R> {
            terms: BTreeMap::new(),
            bounds,
        };
        self.terms.retain(|e, c| !c.is_zero() && probe.in_window(e));
    }

    /// Coefficient of `u^e0 v^e1 w^e2`; rejected outside the window.
    pub fn coeff(&self, e: Exps) -> Result<R, SeriesError> {
        if !self.in_window(&e) {
            return Err(SeriesError::OutsideWindow(e));
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(R::zero))
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let mut bounds = [Bound::Exact; 3];
        for k in 0..3 {
            bounds[k] = join_add(self.bounds[k], other.bounds[k], var_of(k))?;
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(x) => *x = x.add(c),
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        let mut out = TruncatedSeries { terms, bounds };
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            bounds: self.bounds,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let exact_zero =
            |s: &Self| s.terms.is_empty() && s.bounds.iter().all(|b| *b == Bound::Exact);
        if exact_zero(self) || exact_zero(other) {
            return Ok(Self::zero());
        }
        let mut bounds = [Bound::Exact; 3];
        for k in 0..3 {
            bounds[k] = join_mul(self, other, k)?;
        }
        let probe = TruncatedSeries::<R> {
            terms: BTreeMap::new(),
            bounds,
        };
        let mut terms: BTreeMap<Exps, R> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                if !probe.in_window(&e) {
                    continue;
                }
                let p = ca.mul(cb);
                if p.is_zero() {
                    continue;
                }
                match terms.get_mut(&e) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        terms.insert(e, p);
                    }
                }
            }
        }
        let mut out = TruncatedSeries { terms, bounds };
        out.prune();
        Ok(out)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        let mut out = TruncatedSeries {
            terms: BTreeMap::new(),
            bounds: self.bounds,
        };
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(*e, v);
            }
        }
        out
    }

    /// `x -> x^{-1}` for a variable in which the series is exact.
    pub fn invert_var(&self, var: Var) -> Result<Self, SeriesError> {
        let k = var as usize;
        if self.bounds[k] != Bound::Exact {
            return Err(SeriesError::SubstitutionOutsideDomain(var));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[k] = -e2[k];
                (e2, c.clone())
            })
            .collect();
        Ok(TruncatedSeries {
            terms,
            bounds: self.bounds,
        })
    }

    /// Highest exponent of `var` among stored terms.
    /// `x ↦ -x`; valid in any window.
    pub fn negate_var(&self, var: Var) -> Self {
        let k = var as usize;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, if e[k] % 2 != 0 { c.neg() } else { c.clone() }))
            .collect();
        TruncatedSeries {
            terms,
            bounds: self.bounds,
        }
    }

    /// Multiply by `x^e`, shifting the window with it.
    pub fn shift(&self, var: Var, e: i32) -> Self {
        let k = var as usize;
        let terms = self
            .terms
            .iter()
            .map(|(x, c)| {
                let mut x2 = *x;
                x2[k] += e;
                (x2, c.clone())
            })
            .collect();
        let mut bounds = self.bounds;
        bounds[k] = match bounds[k] {
            Bound::Exact => Bound::Exact,
            Bound::Below(f) => Bound::Below(f + e),
            Bound::Above(c) => Bound::Above(c + e),
        };
        TruncatedSeries { terms, bounds }
    }

    pub fn max_exp(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[var as usize]).max()
    }

    pub fn min_exp(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[var as usize]).min()
    }
}

impl<R: Ring> TruncatedSeries<R> {
    /// Linear substitution `var -> Σ c_y y` in a series that is an exact
    /// polynomial (nonnegative exponents) in `var`. Coefficients of the
    /// substitution are integers.
    pub fn substitute_linear(&self, var: Var, image: [i64; 3]) -> Result<Self, SeriesError>
    where
        R: ScaleByInt,
    {
        let k = var as usize;
        if self.bounds[k] != Bound::Exact || self.min_exp(var).is_some_and(|m| m < 0) {
            return Err(SeriesError::SubstitutionOutsideDomain(var));
        }
        let mut out = TruncatedSeries::<R> {
            terms: BTreeMap::new(),
            bounds: self.bounds,
        };
        let lin: Vec<(usize, i64)> = image
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(y, c)| (y, *c))
            .collect();
        for (e, c) in &self.terms {
            let d = e[k] as u32;
            let mut base = *e;
            base[k] = 0;
            // expand (Σ c_y y)^d by repeated multiplication on exponent maps
            let mut acc: BTreeMap<Exps, i64> = BTreeMap::new();
            acc.insert([0; 3], 1);
            for _ in 0..d {
                let mut next: BTreeMap<Exps, i64> = BTreeMap::new();
                for (ex, m) in &acc {
                    for &(y, cy) in &lin {
                        let mut e2 = *ex;
                        e2[y] += 1;
                        *next.entry(e2).or_insert(0) += m * cy;
                    }
                }
                acc = next;
            }
            for (ex, m) in acc {
                if m == 0 {
                    continue;
                }
                let tgt = [base[0] + ex[0], base[1] + ex[1], base[2] + ex[2]];
                let piece = TruncatedSeries::monomial(c.scale_int(m), tgt);
                out = out.add(&piece)?;
            }
        }
        Ok(out)
    }
}

/// Multiplication by an integer, used by substitutions.
pub trait ScaleByInt {
    fn scale_int(&self, m: i64) -> Self;
}

impl<T: Scalar> ScaleByInt for T {
    fn scale_int(&self, m: i64) -> Self {
        self.mul(&T::from_int(m))
    }
}

fn var_of(k: usize) -> Var {
    [Var::U, Var::V, Var::W][k]
}

fn join_add(a: Bound, b: Bound, v: Var) -> Result<Bound, SeriesError> {
    use Bound::*;
    Ok(match (a, b) {
        (Exact, x) | (x, Exact) => x,
        (Below(x), Below(y)) => Below(x.max(y)),
        (Above(x), Above(y)) => Above(x.min(y)),
        _ => return Err(SeriesError::IncompatibleVariables(v)),
    })
}

fn join_mul<R: Ring>(
    a: &TruncatedSeries<R>,
    b: &TruncatedSeries<R>,
    k: usize,
) -> Result<Bound, SeriesError> {
    use Bound::*;
    let v = var_of(k);
    let top = |s: &TruncatedSeries<R>| {
        let known = s.max_exp(v);
        match s.bounds[k] {
            Below(f) => Some(known.map_or(f - 1, |m| m.max(f - 1))),
            _ => known,
        }
    };
    let bot = |s: &TruncatedSeries<R>| {
        let known = s.min_exp(v);
        match s.bounds[k] {
            Above(c) => Some(known.map_or(c + 1, |m| m.min(c + 1))),
            _ => known,
        }
    };
    Ok(match (a.bounds[k], b.bounds[k]) {
        (Exact, Exact) => Exact,
        (Below(f), Exact) => top(b).map_or(Exact, |t| Below((f + t).max(f))),
        (Exact, Below(f)) => top(a).map_or(Exact, |t| Below((f + t).max(f))),
        (Below(fa), Below(fb)) => {
            let ta = top(a).unwrap_or(fa - 1);
            let tb = top(b).unwrap_or(fb - 1);
            // never claim more than either operand's own window
            Below((fa + tb).max(fb + ta).max(fa).max(fb))
        }
        (Above(c), Exact) => bot(b).map_or(Exact, |t| Above((c + t).min(c))),
        (Exact, Above(c)) => bot(a).map_or(Exact, |t| Above((c + t).min(c))),
        (Above(ca), Above(cb)) => {
            let ba = bot(a).unwrap_or(ca + 1);
            let bb = bot(b).unwrap_or(cb + 1);
            Above((ca + bb).min(cb + ba).min(ca).min(cb))
        }
        _ => return Err(SeriesError::IncompatibleVariables(v)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{rat, HbarPoly, Rational};

    fn u_pow(c: i64, e: i32) -> TruncatedSeries<Rational> {
        TruncatedSeries::monomial(rat(c), [e, 0, 0])
    }

    #[test]
    fn product_respects_floor() {
        let a = u_pow(1, -1).with_bound(Var::U, Bound::Below(-1));
        let p = a.mul(&a).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.bounds()[0], Bound::Below(-1));
        assert!(p.coeff([-2, 0, 0]).is_err());
        assert_eq!(p.coeff([0, 0, 0]).unwrap(), rat(0));
    }

    #[test]
    fn hbar_product_at_order_two() {
        let h = HbarPoly::hbar();
        let one = TruncatedSeries::constant(HbarPoly::one());
        let a = one
            .sub(&TruncatedSeries::monomial(h.clone(), [-1, 0, 0]))
            .unwrap()
            .with_bound(Var::U, Bound::Below(-2));
        let b = one
            .add(&TruncatedSeries::monomial(h.clone(), [-1, 0, 0]))
            .unwrap()
            .with_bound(Var::U, Bound::Below(-2));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff([-2, 0, 0]).unwrap(), h.mul(&h).neg());
        assert_eq!(p.coeff([-1, 0, 0]).unwrap(), HbarPoly::zero());
        assert_eq!(p.coeff([0, 0, 0]).unwrap(), HbarPoly::one());
    }

    #[test]
    fn telescoping_geometric_sum() {
        let l = 4;
        let mut geo = TruncatedSeries::zero();
        for k in 0..=l {
            geo = geo.add(&u_pow(1, -k)).unwrap();
        }
        let geo = geo.with_bound(Var::U, Bound::Below(-l));
        let f = u_pow(1, 0).sub(&u_pow(1, -1)).unwrap();
        let p = f.mul(&geo).unwrap();
        // 1 - u^{-(L+1)} truncated: only the constant survives
        assert_eq!(p.coeff([0, 0, 0]).unwrap(), rat(1));
        for k in 1..=l - 1 {
            assert_eq!(p.coeff([-k, 0, 0]).unwrap(), rat(0));
        }
    }

    #[test]
    fn mixed_directions_rejected() {
        let a = u_pow(1, -1).with_bound(Var::U, Bound::Below(-3));
        let b = u_pow(1, 1).with_bound(Var::U, Bound::Above(3));
        assert_eq!(a.mul(&b), Err(SeriesError::IncompatibleVariables(Var::U)));
    }

    #[test]
    fn linear_substitution() {
        // u^2 with u -> -u - v
        let s = u_pow(1, 2).substitute_linear(Var::U, [-1, -1, 0]).unwrap();
        assert_eq!(s.coeff([2, 0, 0]).unwrap(), rat(1));
        assert_eq!(s.coeff([1, 1, 0]).unwrap(), rat(2));
        assert_eq!(s.coeff([0, 2, 0]).unwrap(), rat(1));
    }
}
