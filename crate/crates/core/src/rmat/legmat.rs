use std::collections::BTreeMap;

use crate::coeffring::{Bound, Ring, SeriesError, TruncatedSeries};

/// Row or column multi-index, one 1-based entry per tensor leg (unused legs are 0).
pub type Idx = [u8; 3];

/// Matrix on `legs` tensor copies of `C^n`, entries truncated series over `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegMat<R> {
    n: usize,
    legs: usize,
    entries: BTreeMap<(Idx, Idx), TruncatedSeries<R>>,
}

fn exact_zero<R: Ring>(s: &TruncatedSeries<R>) -> bool {
    s.is_zero() && s.bounds().iter().all(|b| *b == Bound::Exact)
}

/// All multi-indices on `legs` legs.
pub fn all_indices(n: usize, legs: usize) -> Vec<Idx> {
    let mut out = vec![[0u8; 3]];
    for leg in 0..legs {
        let mut next = Vec::with_capacity(out.len() * n);
        for idx in &out {
            for a in 1..=n {
                let mut x = *idx;
                x[leg] = a as u8;
                next.push(x);
            }
        }
        out = next;
    }
    out
}

impl<R: Ring> LegMat<R> {
    pub fn zero(n: usize, legs: usize) -> Self {
        assert!((1..=3).contains(&legs));
        LegMat {
            n,
            legs,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn identity(n: usize, legs: usize, one: R) -> Self {
        let mut m = Self::zero(n, legs);
        for i in all_indices(n, legs) {
            m.set(i, i, TruncatedSeries::constant(one.clone()));
        }
        m
    }

    /// Single-leg matrix from an entry function (1-based indices).
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> TruncatedSeries<R>) -> Self {
        let mut m = Self::zero(n, 1);
        for i in 1..=n {
            for j in 1..=n {
                m.set([i as u8, 0, 0], [j as u8, 0, 0], f(i, j));
            }
        }
        m
    }

    /// Two-leg matrix whose `E_ij ⊗ E_kl` coefficient is `f(i, j, k, l)`.
    pub fn from_fn2(
        n: usize,
        f: impl Fn(usize, usize, usize, usize) -> TruncatedSeries<R>,
    ) -> Self {
        let mut m = Self::zero(n, 2);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        m.set([i as u8, k as u8, 0], [j as u8, l as u8, 0], f(i, j, k, l));
                    }
                }
            }
        }
        m
    }

    pub fn set(&mut self, row: Idx, col: Idx, s: TruncatedSeries<R>) {
        if exact_zero(&s) {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), s);
        }
    }

    pub fn get(&self, row: Idx, col: Idx) -> TruncatedSeries<R> {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(TruncatedSeries::zero)
    }

    /// Coefficient of `E_ij ⊗ E_kl` in a two-leg matrix.
    pub fn entry2(&self, i: usize, j: usize, k: usize, l: usize) -> TruncatedSeries<R> {
        self.get([i as u8, k as u8, 0], [j as u8, l as u8, 0])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Idx, Idx), &TruncatedSeries<R>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|s| s.is_zero())
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!((self.n, self.legs), (other.n, other.legs), "shape mismatch");
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other);
        let mut out = self.clone();
        for (k, s) in &other.entries {
            let v = match out.entries.get(k) {
                Some(a) => a.add(s)?,
                None => s.clone(),
            };
            out.set(k.0, k.1, v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LegMat {
            n: self.n,
            legs: self.legs,
            entries: self.entries.iter().map(|(k, s)| (*k, s.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other);
        let mut by_row: BTreeMap<Idx, Vec<(Idx, &TruncatedSeries<R>)>> = BTreeMap::new();
        for ((r, c), s) in &other.entries {
            by_row.entry(*r).or_default().push((*c, s));
        }
        let mut acc: BTreeMap<(Idx, Idx), TruncatedSeries<R>> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            let Some(row) = by_row.get(k) else { continue };
            for (j, b) in row {
                let p = a.mul(b)?;
                let slot = acc.entry((*i, *j)).or_insert_with(TruncatedSeries::zero);
                *slot = slot.add(&p)?;
            }
        }
        let mut out = Self::zero(self.n, self.legs);
        for ((i, j), s) in acc {
            out.set(i, j, s);
        }
        Ok(out)
    }

    pub fn product(factors: &[&Self]) -> Result<Self, SeriesError> {
        let mut it = factors.iter();
        let mut acc = (*it.next().expect("nonempty product")).clone();
        for f in it {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Embed a matrix with `self.legs` legs into `total` legs at the given positions (0-based).
    pub fn place(&self, positions: &[usize], total: usize) -> Self {
        assert_eq!(positions.len(), self.legs);
        let others: Vec<usize> = (0..total).filter(|p| !positions.contains(p)).collect();
        let spectator = all_indices(self.n, others.len());
        let mut out = Self::zero(self.n, total);
        for ((r, c), s) in &self.entries {
            for sp in &spectator {
                let (mut rr, mut cc) = ([0u8; 3], [0u8; 3]);
                for (a, &p) in positions.iter().enumerate() {
                    rr[p] = r[a];
                    cc[p] = c[a];
                }
                for (a, &p) in others.iter().enumerate() {
                    rr[p] = sp[a];
                    cc[p] = sp[a];
                }
                out.set(rr, cc, s.clone());
            }
        }
        out
    }

    /// Transpose in one tensor leg (0-based).
    pub fn transpose_leg(&self, leg: usize) -> Self {
        let mut out = Self::zero(self.n, self.legs);
        for ((r, c), s) in &self.entries {
            let (mut rr, mut cc) = (*r, *c);
            std::mem::swap(&mut rr[leg], &mut cc[leg]);
            out.set(rr, cc, s.clone());
        }
        out
    }

    pub fn map_entries<S: Ring>(
        &self,
        mut f: impl FnMut(&TruncatedSeries<R>) -> Result<TruncatedSeries<S>, SeriesError>,
    ) -> Result<LegMat<S>, SeriesError> {
        let mut out = LegMat::zero(self.n, self.legs);
        for ((r, c), s) in &self.entries {
            out.set(*r, *c, f(s)?);
        }
        Ok(out)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LegMat<S> {
        self.map_entries(|s| Ok(s.map(&f)))
            .expect("coefficient maps cannot fail")
    }
}
