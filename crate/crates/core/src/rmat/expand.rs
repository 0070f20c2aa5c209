use std::collections::BTreeMap;

use crate::coeffring::{Bound, Scalar, TruncatedSeries, Var};
use crate::freealg::NCPoly;

use super::legmat::{all_indices, LegMat};
use super::RmatError;

pub type NCMat<C> = LegMat<NCPoly<C>>;

/// Whether a generating series runs over `x^{-r}` or `x^{r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Inverse,
    Direct,
}

/// Single-leg matrix `Σ E_ij ⊗ Σ_{r ≤ order} f(i,j,r) x^{∓r}`.
pub fn series_matrix<C: Scalar>(
    n: usize,
    var: Var,
    dir: Direction,
    order: u32,
    f: impl Fn(usize, usize, i32) -> NCPoly<C>,
) -> NCMat<C> {
    let (sign, bound) = match dir {
        Direction::Inverse => (-1, Bound::Below(-(order as i32))),
        Direction::Direct => (1, Bound::Above(order as i32)),
    };
    LegMat::from_fn(n, |i, j| {
        let mut s = TruncatedSeries::zero().with_bound(var, bound);
        for r in 0..=order as i32 {
            let mut e = [0; 3];
            e[var as usize] = sign * r;
            s = s
                .add(&TruncatedSeries::monomial(f(i, j, r), e))
                .expect("same window");
        }
        s
    })
}

/// View a scalar matrix as one with constant noncommutative entries.
pub fn lift<C: Scalar>(m: &LegMat<C>) -> NCMat<C> {
    m.map_coeffs(|c| NCPoly::constant(c.clone()))
}

/// Index of a relation component: matrix unit `E_ij ⊗ E_kl` and spectral exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelKey {
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub l: u8,
    pub exps: [i32; 3],
}

impl RelKey {
    pub fn new(i: usize, j: usize, k: usize, l: usize, exps: [i32; 3]) -> Self {
        RelKey {
            i: i as u8,
            j: j as u8,
            k: k as u8,
            l: l as u8,
            exps,
        }
    }
}

impl std::fmt::Display for RelKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "E{}{}⊗E{}{}@{:?}",
            self.i, self.j, self.k, self.l, self.exps
        )
    }
}

/// Components of `LHS - RHS` of a matrix relation; zero members are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationFamily<C> {
    pub label: String,
    pub members: BTreeMap<RelKey, NCPoly<C>>,
}

impl<C: Scalar> RelationFamily<C> {
    pub fn new(label: impl Into<String>) -> Self {
        RelationFamily {
            label: label.into(),
            members: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, key: RelKey, p: NCPoly<C>) {
        if !p.is_zero() {
            self.members.insert(key, p);
        }
    }

    pub fn map(&self, f: impl Fn(&NCPoly<C>) -> NCPoly<C>) -> Self {
        let mut out = Self::new(self.label.clone());
        for (k, p) in &self.members {
            out.insert(*k, f(p));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Keys on which the two families differ.
    pub fn differences(&self, other: &Self) -> Vec<RelKey> {
        let mut keys: Vec<RelKey> = self
            .members
            .keys()
            .chain(other.members.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|k| self.members.get(k) != other.members.get(k))
            .collect()
    }

    /// Labelled list suitable for the membership solver.
    pub fn labelled(&self) -> Vec<(String, NCPoly<C>)> {
        self.members
            .iter()
            .map(|(k, p)| (format!("{}[{}]", self.label, k), p.clone()))
            .collect()
    }
}

/// Inclusive exponent ranges for `u`, `v`, `w`.
pub type ExpBox = [(i32, i32); 3];

/// Expand `Π lhs - Π rhs` (two-leg) and extract every coefficient in `window`.
pub fn expand_matrix_relation<C: Scalar>(
    label: &str,
    lhs: &[&NCMat<C>],
    rhs: &[&NCMat<C>],
    window: ExpBox,
) -> Result<RelationFamily<C>, RmatError> {
    let diff = LegMat::product(lhs)?.sub(&LegMat::product(rhs)?)?;
    let n = diff.n();
    let mut fam = RelationFamily::new(label);
    let idx = all_indices(n, 2);
    for row in &idx {
        for col in &idx {
            let s = diff.get(*row, *col);
            for a in window[0].0..=window[0].1 {
                for b in window[1].0..=window[1].1 {
                    for c in window[2].0..=window[2].1 {
                        let e = [a, b, c];
                        let p = s.coeff(e)?;
                        let key = RelKey {
                            i: row[0],
                            j: col[0],
                            k: row[1],
                            l: col[1],
                            exps: e,
                        };
                        fam.insert(key, p);
                    }
                }
            }
        }
    }
    Ok(fam)
}
