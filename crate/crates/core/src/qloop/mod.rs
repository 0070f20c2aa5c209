//! The quantum loop algebra of `gl_N` in its 𝒜-form, twisted analogues, and
//! evaluation representations.

mod rep;
mod trm;
mod twisted;

pub use rep::{rep_check, DenseMat, EvalRep, RepError};
pub use trm::{certify_rs_target, check_rs_identity, rs_identity, trm_expand, RsError, TrmFamily};
pub use twisted::{
    check_lemma_srm, embed_twisted_qloop, lemma_rhs, s_gen, srm_expand, srm_expand_with,
    stilde_expand, twisted_qloop_relations, verify_twisted_images, LemmaOutcome, QTwistError,
    ZeroLevelNorm,
};

use crate::coeffring::{Field, RatFun, Ring, Var};
use crate::freealg::{Family, Gen, NCPoly};
use crate::rmat::{
    expand_matrix_relation, lift, quantum_r, series_matrix, Direction, RelKey, RelationFamily,
    RmatError,
};

pub type QLoopElem = NCPoly<RatFun>;

fn qq() -> RatFun {
    RatFun::q_minus_qinv()
}

pub fn tau(i: usize, j: usize, r: i32) -> QLoopElem {
    QLoopElem::gen(Gen::tau(i, j, r))
}

pub fn taubar(i: usize, j: usize, r: i32) -> QLoopElem {
    QLoopElem::gen(Gen::taubar(i, j, r))
}

/// `T_ij^(r)` in 𝒜-form generators.
pub fn big_t(i: usize, j: usize, r: i32) -> QLoopElem {
    level_image(i, j, r, Gen::tau, |i, j| i < j)
}

/// `T̄_ij^(r)` in 𝒜-form generators.
pub fn big_tbar(i: usize, j: usize, r: i32) -> QLoopElem {
    level_image(i, j, r, Gen::taubar, |i, j| i > j)
}

fn level_image(
    i: usize,
    j: usize,
    r: i32,
    g: fn(usize, usize, i32) -> Gen,
    vanishes: fn(usize, usize) -> bool,
) -> QLoopElem {
    if r < 0 || (r == 0 && vanishes(i, j)) {
        return QLoopElem::zero();
    }
    if r == 0 && i == j {
        let mut p = QLoopElem::one();
        p.add_scaled(&QLoopElem::gen(g(i, i, 0)), &RatFun::q_minus_one());
        return p;
    }
    QLoopElem::gen(g(i, j, r)).scale(&qq())
}

/// Raw symbol `T_ij^(r)` or `T̄_ij^(r)`, zero at negative level.
pub fn raw(family: Family, i: usize, j: usize, r: i32) -> QLoopElem {
    if r < 0 {
        QLoopElem::zero()
    } else {
        QLoopElem::gen(Gen::new(family, i, j, r))
    }
}

/// Rewrite raw `T`, `T̄` symbols in 𝒜-form generators.
pub fn to_tau(p: &QLoopElem) -> QLoopElem {
    p.substitute(|g| match g.family {
        Family::T => Some(big_t(g.i as usize, g.j as usize, g.level)),
        Family::TBar => Some(big_tbar(g.i as usize, g.j as usize, g.level)),
        _ => None,
    })
}

/// Which pair of generating matrices enters `R_q(u,v) X_1(u) Y_2(v) = Y_2(v) X_1(u) R_q(u,v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QKind {
    TT,
    TbarTbar,
    TbarT,
}

impl QKind {
    fn families(self) -> (Family, Family) {
        match self {
            QKind::TT => (Family::T, Family::T),
            QKind::TbarTbar => (Family::TBar, Family::TBar),
            QKind::TbarT => (Family::TBar, Family::T),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QKind::TT => "TT",
            QKind::TbarTbar => "T̄T̄",
            QKind::TbarT => "T̄T",
        }
    }

    /// Exponent windows `(u, v)` of the expansion at series order `order`.
    pub fn window(self, order: u32) -> [(i32, i32); 2] {
        let l = order as i32;
        let below = (1 - l, 1);
        let above = (0, l);
        match self {
            QKind::TT => [below, below],
            QKind::TbarTbar => [above, above],
            QKind::TbarT => [above, below],
        }
    }
}

/// Coefficient of `x^e` in `T(x)` (powers `x^{-r}`) or `T̄(x)` (powers `x^r`).
fn coeff_at(family: Family, i: usize, j: usize, e: i32) -> QLoopElem {
    match family {
        Family::T => raw(family, i, j, -e),
        _ => raw(family, i, j, e),
    }
}

fn q_delta(a: usize, b: usize, sign: i64) -> RatFun {
    RatFun::q_pow(if a == b { sign } else { 0 })
}

/// Coefficient of `E_ij ⊗ E_kl u^a v^b` in `LHS - RHS`, raw symbols.
pub fn raw_component(
    kind: QKind,
    (i, j, k, l): (usize, usize, usize, usize),
    a: i32,
    b: i32,
) -> QLoopElem {
    let (fx, fy) = kind.families();
    let x = |p: usize, s: usize, e: i32| coeff_at(fx, p, s, e);
    let y = |p: usize, s: usize, e: i32| coeff_at(fy, p, s, e);
    let c = qq();
    let mut out = QLoopElem::zero();
    out.add_scaled(&x(i, j, a - 1).mul(&y(k, l, b)), &q_delta(i, k, -1));
    out.add_scaled(&x(i, j, a).mul(&y(k, l, b - 1)), &q_delta(i, k, 1).neg());
    if i > k {
        out.add_scaled(&x(k, j, a - 1).mul(&y(i, l, b)), &c.neg());
    }
    if i < k {
        out.add_scaled(&x(k, j, a).mul(&y(i, l, b - 1)), &c.neg());
    }
    out.add_scaled(&y(k, l, b).mul(&x(i, j, a - 1)), &q_delta(j, l, -1).neg());
    out.add_scaled(&y(k, l, b - 1).mul(&x(i, j, a)), &q_delta(j, l, 1));
    if l > j {
        out.add_scaled(&y(k, j, b).mul(&x(i, l, a - 1)), &c);
    }
    if l < j {
        out.add_scaled(&y(k, j, b - 1).mul(&x(i, l, a)), &c);
    }
    out
}

/// The displayed component family of the `TT` relation at `(r, s)`, as `LHS - RHS`.
pub fn tt_display_component(i: usize, j: usize, k: usize, l: usize, r: i32, s: i32) -> QLoopElem {
    let t = |p, q_, e| raw(Family::T, p, q_, e);
    let c = qq();
    let mut lhs = QLoopElem::zero();
    lhs.add_scaled(&t(i, j, r + 1).mul(&t(k, l, s)), &q_delta(i, k, -1));
    lhs.add_scaled(&t(i, j, r).mul(&t(k, l, s + 1)), &q_delta(i, k, 1).neg());
    lhs.add_scaled(&t(k, l, s).mul(&t(i, j, r + 1)), &q_delta(j, l, -1).neg());
    lhs.add_scaled(&t(k, l, s + 1).mul(&t(i, j, r)), &q_delta(j, l, 1));
    let mut rhs = QLoopElem::zero();
    if i > k {
        rhs.add_scaled(&t(k, j, r + 1).mul(&t(i, l, s)), &c);
    }
    if i < k {
        rhs.add_scaled(&t(k, j, r).mul(&t(i, l, s + 1)), &c);
    }
    if l > j {
        rhs.add_scaled(&t(k, j, s).mul(&t(i, l, r + 1)), &c.neg());
    }
    if l < j {
        rhs.add_scaled(&t(k, j, s + 1).mul(&t(i, l, r)), &c.neg());
    }
    lhs.sub(&rhs)
}

/// The displayed `TT` family for `-1 ≤ r, s < order`, keyed `E_ij ⊗ E_kl` at `u^{-r} v^{-s}`.
pub fn tt_display_family(n: usize, order: u32) -> RelationFamily<RatFun> {
    let mut fam = RelationFamily::new(QKind::TT.name());
    for (i, j, k, l) in crate::yangian::quads_pub(n) {
        for r in -1..order as i32 {
            for s in -1..order as i32 {
                fam.insert(
                    RelKey::new(i, j, k, l, [-r, -s, 0]),
                    tt_display_component(i, j, k, l, r, s),
                );
            }
        }
    }
    fam
}

/// Smallest `(q-1)`-adic valuation among the coefficients.
pub fn min_valuation(p: &QLoopElem) -> Option<i64> {
    p.terms().values().map(|c| c.val()).min()
}

/// Divide by the largest uniform power of `(q - q^{-1})`.
pub fn divide_uniform(p: &QLoopElem) -> (QLoopElem, i64) {
    match min_valuation(p) {
        Some(v) if v > 0 => (p.scale(&qq().pow(-v)), v),
        _ => (p.clone(), 0),
    }
}

/// Component in 𝒜-form generators, divided by its uniform `(q - q^{-1})` power.
pub fn qloop_relation_component(
    kind: QKind,
    idx: (usize, usize, usize, usize),
    a: i32,
    b: i32,
) -> QLoopElem {
    divide_uniform(&to_tau(&raw_component(kind, idx, a, b))).0
}

/// The same family produced by expanding the matrix relation.
pub fn expand_qloop_relation(
    kind: QKind,
    n: usize,
    order: u32,
) -> Result<RelationFamily<RatFun>, RmatError> {
    let (fx, fy) = kind.families();
    let dir = |f: Family| {
        if f == Family::T {
            Direction::Inverse
        } else {
            Direction::Direct
        }
    };
    let x = series_matrix(n, Var::U, dir(fx), order, |i, j, r| raw(fx, i, j, r)).place(&[0], 2);
    let y = series_matrix(n, Var::V, dir(fy), order, |i, j, r| raw(fy, i, j, r)).place(&[1], 2);
    let r = lift(&quantum_r(n, Var::U, Var::V)?);
    let [wu, wv] = kind.window(order);
    expand_matrix_relation(kind.name(), &[&r, &x, &y], &[&y, &x, &r], [wu, wv, (0, 0)])
}

/// `τ_ii^(0) + τ̄_ii^(0) + (q-1) τ_ii^(0) τ̄_ii^(0)`, i.e. `(T_ii^(0) T̄_ii^(0) - 1)/(q-1)`, and its mirror.
pub fn diagonal_inverse_relations(n: usize) -> Vec<(String, QLoopElem)> {
    let mut out = Vec::new();
    let qm1 = RatFun::q_minus_one();
    for i in 1..=n {
        let (a, b) = (tau(i, i, 0), taubar(i, i, 0));
        let mut p = a.add(&b);
        p.add_scaled(&a.mul(&b), &qm1);
        out.push((format!("inv{i}"), p));
        let mut p = a.add(&b);
        p.add_scaled(&b.mul(&a), &qm1);
        out.push((format!("inv'{i}"), p));
    }
    out
}

/// Every 𝒜-form relation component whose exponents lie in the windows of `order`.
pub fn relation_span(n: usize, order: u32, kinds: &[QKind]) -> Vec<(String, QLoopElem)> {
    let mut out = Vec::new();
    for &kind in kinds {
        let [wu, wv] = kind.window(order);
        for idx in crate::yangian::quads_pub(n) {
            for a in wu.0..=wu.1 {
                for b in wv.0..=wv.1 {
                    let p = qloop_relation_component(kind, idx, a, b);
                    if !p.is_zero() {
                        out.push((
                            format!(
                                "{}[{}{}{}{};{a},{b}]",
                                kind.name(),
                                idx.0,
                                idx.1,
                                idx.2,
                                idx.3
                            ),
                            p,
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Exact division of every coefficient; errors if a pole at `q = 1` remains.
pub fn divide_checked(p: &QLoopElem, d: &RatFun) -> Option<QLoopElem> {
    let inv = d.inv()?;
    let out = p.scale(&inv);
    out.terms().values().all(|c| c.val() >= 0).then_some(out)
}

#[cfg(test)]
mod tests;
