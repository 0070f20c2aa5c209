use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::gen::{Gen, Word};
use crate::coeffring::{Ring, Scalar};

/// Sparse noncommutative polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> NCPoly<C> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn term(c: C, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(C::one(), Word::single(g))
    }

    pub fn monomial(c: C, gens: &[Gen]) -> Self {
        Self::term(c, Word(gens.to_vec()))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Largest word in canonical order.
    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_level(&self) -> Option<i32> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().map(|g| g.level))
            .max()
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (w, a) in &other.terms {
            let v = if one { a.clone() } else { a.mul(c) };
            self.add_term(w.clone(), v);
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Ring::sub(&Ring::mul(self, other), &Ring::mul(other, self))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    /// Left and right multiplication by plain words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    /// Substitute each generator by a polynomial; `None` keeps it.
    pub fn substitute(&self, f: impl Fn(&Gen) -> Option<Self>) -> Self {
        let mut cache: HashMap<Gen, Option<Self>> = HashMap::new();
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for g in &w.0 {
                let img = cache.entry(*g).or_insert_with(|| f(g));
                match img {
                    Some(p) => acc = Ring::mul(&acc, p),
                    None => acc = acc.sandwich(&Word::empty(), &Word::single(*g)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &C::one());
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> NCPoly<D> {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn generators(&self) -> std::collections::BTreeSet<Gen> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().copied())
            .collect()
    }
}

impl<C: Scalar> Ring for NCPoly<C> {
    fn zero() -> Self {
        NCPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &C::one());
        r
    }
    fn neg(&self) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                r.add_term(wa.concat(wb), ca.mul(cb));
            }
        }
        r
    }
}

impl<C: Scalar> fmt::Display for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})·{w}")?;
            }
        }
        Ok(())
    }
}
