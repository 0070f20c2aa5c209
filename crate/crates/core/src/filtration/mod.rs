//! The filtration `𝐊_0 ⊇ 𝐊_1 ⊇ ⋯` of the 𝒜-form and certified congruences
//! modulo its members.

mod checks;
mod congruence;

pub(crate) use checks::yangian_id;
pub use checks::{
    congruence_outcome, graded_yangian_check, graded_yangian_target, probe_refutation, scong_check,
    scong_target, tbar_congruence_check, twisted_phi_check, twisted_phi_target,
    zeta_independence_check, zeta_target, Flip,
};
pub use congruence::{
    congruence_check, Bounds, CongruenceCertificate, CongruenceEngine, FiltError,
};

use crate::coeffring::{RatFun, Ring, Scalar};
use crate::freealg::Case;
use crate::qloop::{srm_expand, stilde_expand, trm_expand, QLoopElem, TrmFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerFamily {
    T,
    TBar,
    TTilde,
    S(Case),
    STilde(Case),
}

/// `X^(r,m)` for one of the families; lies in `𝕂_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Marker {
    pub family: MarkerFamily,
    pub i: usize,
    pub j: usize,
    pub r: i32,
    pub m: i32,
}

impl Marker {
    pub fn t(i: usize, j: usize, r: i32, m: i32) -> Self {
        Marker {
            family: MarkerFamily::T,
            i,
            j,
            r,
            m,
        }
    }

    pub fn expand(&self, n: usize) -> Result<QLoopElem, FiltError> {
        let Marker { family, i, j, r, m } = *self;
        let bad = |e: String| FiltError::Expansion(e);
        match family {
            MarkerFamily::T => trm_expand(TrmFamily::T, i, j, r, m).map_err(|e| bad(e.to_string())),
            MarkerFamily::TBar => {
                trm_expand(TrmFamily::TBar, i, j, r, m).map_err(|e| bad(e.to_string()))
            }
            MarkerFamily::TTilde => {
                trm_expand(TrmFamily::TTilde, i, j, r, m).map_err(|e| bad(e.to_string()))
            }
            MarkerFamily::S(c) => srm_expand(c, n, i, j, r, m).map_err(|e| bad(e.to_string())),
            MarkerFamily::STilde(c) => {
                stilde_expand(c, n, i, j, r, m).map_err(|e| bad(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilteredTerm {
    pub coefficient: RatFun,
    pub markers: Vec<Marker>,
}

impl FilteredTerm {
    pub fn new(coefficient: RatFun, markers: Vec<Marker>) -> Self {
        FilteredTerm {
            coefficient,
            markers,
        }
    }

    pub fn expand(&self, n: usize) -> Result<QLoopElem, FiltError> {
        let mut acc = QLoopElem::constant(self.coefficient.clone());
        for mk in &self.markers {
            acc = acc.mul(&mk.expand(n)?);
        }
        Ok(acc)
    }
}

/// Lower bound for the filtration degree read off from the shape of the term.
pub fn filt_degree(t: &FilteredTerm) -> i64 {
    let v = t.coefficient.val();
    if v == i64::MAX {
        return v;
    }
    v + t.markers.iter().map(|m| m.m as i64).sum::<i64>()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FilteredExpr {
    pub terms: Vec<FilteredTerm>,
}

impl FilteredExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, coefficient: RatFun, markers: Vec<Marker>) {
        self.terms.push(FilteredTerm::new(coefficient, markers));
    }

    pub fn extend(&mut self, other: FilteredExpr, scale: &RatFun) {
        for t in other.terms {
            self.push(t.coefficient.mul(scale), t.markers);
        }
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(filt_degree).min().unwrap_or(i64::MAX)
    }

    pub fn expand(&self, n: usize) -> Result<QLoopElem, FiltError> {
        let mut acc = QLoopElem::zero();
        for t in &self.terms {
            acc = acc.add(&t.expand(n)?);
        }
        Ok(acc)
    }
}

/// `φ(t_ij^(m+1)) = ξ_ij^(0,m)`.
pub fn phi_image(i: usize, j: usize, m: i32) -> FilteredExpr {
    let mut e = FilteredExpr::new();
    e.push(RatFun::one(), vec![Marker::t(i, j, 0, m)]);
    e
}

#[cfg(test)]
mod tests;
