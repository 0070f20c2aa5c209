use std::collections::HashMap;

use thiserror::Error;

use super::{
    diagonal_inverse_relations, embed_twisted_qloop, expand_qloop_relation, QKind, QLoopElem,
    QTwistError,
};
use crate::coeffring::{Field, RatFun, Rational, Ring, Scalar, Var};
use crate::freealg::{Case, Family, Gen};
use crate::report::{Check, Report};
use crate::rmat::{quantum_r, RmatError};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("evaluation point must be nonzero")]
    ZeroPoint,
    #[error("representation fails relation {0}")]
    SelfCertificationFailed(String),
    #[error("no image for generator {0}")]
    UnknownGenerator(Gen),
    #[error(transparent)]
    Rmat(#[from] RmatError),
    #[error(transparent)]
    Twist(#[from] QTwistError),
}

/// Dense square matrix over ℚ(q).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMat {
    dim: usize,
    data: Vec<RatFun>,
}

impl DenseMat {
    pub fn zero(dim: usize) -> Self {
        DenseMat {
            dim,
            data: vec![RatFun::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = RatFun::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFun {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: RatFun) {
        self.data[r * self.dim + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        DenseMat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        DenseMat {
            dim: self.dim,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * d + j] = out.data[i * d + j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (a, b) = (self.dim, o.dim);
        let mut out = Self::zero(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, x.mul(o.get(k, l)));
                    }
                }
            }
        }
        out
    }
}

/// Images of `T_ij^(r)`, `T̄_ij^(r)`; levels absent from the maps act as zero.
#[derive(Debug, Clone)]
pub struct EvalRep {
    n: usize,
    dim: usize,
    t: HashMap<(usize, usize, i32), DenseMat>,
    tbar: HashMap<(usize, usize, i32), DenseMat>,
    max_level: i32,
}

impl EvalRep {
    /// `T(u) ↦ R_q(u,a)/u`, `T̄(u) ↦ R_q(u,a)/(-a)` on `ℚ(q)^N`.
    pub fn evaluation(n: usize, a: &Rational) -> Result<Self, RepError> {
        if a == &Rational::from_integer(0.into()) {
            return Err(RepError::ZeroPoint);
        }
        let a = RatFun::from_rational(a);
        let r = quantum_r(n, Var::U, Var::V)?;
        let block = |i: usize, j: usize, e: [i32; 3]| -> Result<DenseMat, RepError> {
            let mut m = DenseMat::zero(n);
            for k in 1..=n {
                for l in 1..=n {
                    m.set(
                        k - 1,
                        l - 1,
                        r.entry2(i, j, k, l).coeff(e).map_err(RmatError::from)?,
                    );
                }
            }
            Ok(m)
        };
        let (mut t, mut tbar) = (HashMap::new(), HashMap::new());
        let inv_a = a.inv().expect("nonzero");
        for i in 1..=n {
            for j in 1..=n {
                let ua = block(i, j, [1, 0, 0])?;
                let vb = block(i, j, [0, 1, 0])?;
                t.insert((i, j, 0), ua.clone());
                t.insert((i, j, 1), vb.scale(&a));
                tbar.insert((i, j, 0), vb.scale(&RatFun::one().neg()));
                tbar.insert((i, j, 1), ua.scale(&inv_a.neg()));
            }
        }
        Ok(EvalRep {
            n,
            dim: n,
            t,
            tbar,
            max_level: 1,
        })
    }

    /// Tensor product through `T_ij(u) ↦ Σ_k T_ik(u) ⊗ T_kj(u)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.n;
        let max_level = self.max_level + other.max_level;
        let dim = self.dim * other.dim;
        let coprod = |x: &HashMap<(usize, usize, i32), DenseMat>,
                      y: &HashMap<(usize, usize, i32), DenseMat>| {
            let mut out = HashMap::new();
            for i in 1..=n {
                for j in 1..=n {
                    for r in 0..=max_level {
                        let mut acc = DenseMat::zero(dim);
                        for k in 1..=n {
                            for p in 0..=r {
                                if let (Some(a), Some(b)) =
                                    (x.get(&(i, k, p)), y.get(&(k, j, r - p)))
                                {
                                    acc = acc.add(&a.kron(b));
                                }
                            }
                        }
                        out.insert((i, j, r), acc);
                    }
                }
            }
            out
        };
        EvalRep {
            n,
            dim,
            t: coprod(&self.t, &other.t),
            tbar: coprod(&self.tbar, &other.tbar),
            max_level,
        }
    }

    /// Tensor product of evaluation representations at `points`.
    pub fn at_points(n: usize, points: &[Rational]) -> Result<Self, RepError> {
        let mut it = points.iter();
        let first = it.next().ok_or(RepError::ZeroPoint)?;
        let mut rep = Self::evaluation(n, first)?;
        for a in it {
            rep = rep.tensor(&Self::evaluation(n, a)?);
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_level(&self) -> i32 {
        self.max_level
    }

    fn raw(
        &self,
        map: &HashMap<(usize, usize, i32), DenseMat>,
        i: usize,
        j: usize,
        r: i32,
    ) -> DenseMat {
        map.get(&(i, j, r))
            .cloned()
            .unwrap_or_else(|| DenseMat::zero(self.dim))
    }

    /// Image of a single generator.
    pub fn generator(&self, g: &Gen) -> Result<DenseMat, RepError> {
        let (i, j, r) = (g.i as usize, g.j as usize, g.level);
        let qq = RatFun::q_minus_qinv();
        let a_form = |map| {
            if r == 0 && i == j {
                self.raw(map, i, i, 0)
                    .add(&DenseMat::identity(self.dim).scale(&RatFun::one().neg()))
                    .scale(&RatFun::q_minus_one().inv().expect("nonzero"))
            } else {
                self.raw(map, i, j, r).scale(&qq.inv().expect("nonzero"))
            }
        };
        match g.family {
            Family::T => Ok(self.raw(&self.t, i, j, r)),
            Family::TBar => Ok(self.raw(&self.tbar, i, j, r)),
            Family::Tau => Ok(a_form(&self.t)),
            Family::TauBar => Ok(a_form(&self.tbar)),
            _ => Err(RepError::UnknownGenerator(*g)),
        }
    }

    /// Evaluate, resolving generators through `lookup` first.
    pub fn eval_with(
        &self,
        p: &QLoopElem,
        lookup: &mut dyn FnMut(&Gen) -> Option<Result<DenseMat, RepError>>,
    ) -> Result<DenseMat, RepError> {
        let mut cache: HashMap<Gen, DenseMat> = HashMap::new();
        let mut out = DenseMat::zero(self.dim);
        for (w, c) in p.terms() {
            let mut m = DenseMat::identity(self.dim);
            for g in &w.0 {
                if !cache.contains_key(g) {
                    let img = match lookup(g) {
                        Some(r) => r?,
                        None => self.generator(g)?,
                    };
                    cache.insert(*g, img);
                }
                m = m.mul(&cache[g]);
            }
            out = out.add(&m.scale(c));
        }
        Ok(out)
    }

    pub fn eval(&self, p: &QLoopElem) -> Result<DenseMat, RepError> {
        self.eval_with(p, &mut |_| None)
    }

    /// Evaluate with `S` symbols sent through the embedding.
    pub fn eval_twisted(&self, case: Case, p: &QLoopElem) -> Result<DenseMat, RepError> {
        let n = self.n;
        let mut images: HashMap<Gen, DenseMat> = HashMap::new();
        let mut lookup = |g: &Gen| -> Option<Result<DenseMat, RepError>> {
            if g.family != Family::QS {
                return None;
            }
            if let Some(m) = images.get(g) {
                return Some(Ok(m.clone()));
            }
            let r = embed_twisted_qloop(case, n, g.i as usize, g.j as usize, g.level)
                .map_err(RepError::from)
                .and_then(|img| self.eval(&img));
            if let Ok(m) = &r {
                images.insert(*g, m.clone());
            }
            Some(r)
        };
        self.eval_with(p, &mut lookup)
    }

    /// Every component of the three defining families, up to series order `order`, acts as zero.
    pub fn self_certify(&self, order: u32) -> Result<(), RepError> {
        for kind in [QKind::TT, QKind::TbarTbar, QKind::TbarT] {
            let fam = expand_qloop_relation(kind, self.n, order)?;
            for (label, p) in fam.labelled() {
                if !self.eval(&p)?.is_zero() {
                    return Err(RepError::SelfCertificationFailed(label));
                }
            }
        }
        for (label, p) in diagonal_inverse_relations(self.n) {
            if !self.eval(&p)?.is_zero() {
                return Err(RepError::SelfCertificationFailed(label));
            }
        }
        Ok(())
    }
}

/// Evaluate every relation in the tensor product of evaluation representations at `points`.
///
/// With `case`, `S` symbols are read through the embedding of the twisted algebra.
pub fn rep_check(
    n: usize,
    relations: &[(String, QLoopElem)],
    points: &[Rational],
    order: u32,
    case: Option<Case>,
) -> Result<Report, RepError> {
    let rep = EvalRep::at_points(n, points)?;
    rep.self_certify(order)?;
    let mut report = Report::new("rep_check");
    for (label, p) in relations {
        let m = match case {
            Some(c) => rep.eval_twisted(c, p)?,
            None => rep.eval(p)?,
        };
        report.push(Check::from_bool(label.clone(), m.is_zero(), || {
            "nonzero image".into()
        }));
    }
    Ok(report)
}
