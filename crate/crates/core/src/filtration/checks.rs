//! The congruences of the degeneration proofs, as certified checks.

use super::congruence::{CongruenceCertificate, CongruenceEngine, FiltError};
use super::{FilteredExpr, Marker};
use crate::classical::{compositions, km_test, psi_apply, separation_probe, ClassicalError};
use crate::coeffring::{HbarPoly, RatFun, Ring, Scalar};
use crate::freealg::{b_entry, Case, Family};
use crate::qloop::{srm_expand, trm_expand, QLoopElem, TrmFamily};
use crate::report::{Check, Status};
use crate::yangian::{embed_twisted_yangian_unordered, YangianElem};

/// Whether to negate one term of a target (negative controls).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Flip {
    #[default]
    None,
    Sign,
}

impl Flip {
    fn sign(self) -> RatFun {
        match self {
            Flip::None => RatFun::one(),
            Flip::Sign => RatFun::one().neg(),
        }
    }
}

fn t0(i: usize, j: usize, m: i32) -> Marker {
    Marker::t(i, j, 0, m)
}

/// `[ξ_ij^(0,m+1), ξ_kl^(0,n)] - [ξ_ij^(0,m), ξ_kl^(0,n+1)] - ħ(ξ_kj^(0,m) ξ_il^(0,n) - ξ_kj^(0,n) ξ_il^(0,m))`
/// with `ħ = q - q^{-1}`; the flip negates the second commutator.
pub fn graded_yangian_target(
    (i, j, k, l): (usize, usize, usize, usize),
    m: i32,
    n: i32,
    flip: Flip,
) -> FilteredExpr {
    let one = RatFun::one();
    let h = RatFun::q_minus_qinv();
    let s = flip.sign().neg();
    let mut e = FilteredExpr::new();
    e.push(one.clone(), vec![t0(i, j, m + 1), t0(k, l, n)]);
    e.push(one.neg(), vec![t0(k, l, n), t0(i, j, m + 1)]);
    e.push(s.clone(), vec![t0(i, j, m), t0(k, l, n + 1)]);
    e.push(s.neg(), vec![t0(k, l, n + 1), t0(i, j, m)]);
    e.push(h.neg(), vec![t0(k, j, m), t0(i, l, n)]);
    e.push(h.clone(), vec![t0(k, j, n), t0(i, l, m)]);
    e
}

pub fn graded_yangian_check(
    engine: &CongruenceEngine,
    idx: (usize, usize, usize, usize),
    m: i32,
    n: i32,
) -> Result<CongruenceCertificate, FiltError> {
    let x = graded_yangian_target(idx, m, n, Flip::None).expand(engine.n())?;
    engine.certify(&yangian_id(idx, m, n), &x, (m + n + 2) as u32)
}

pub(crate) fn yangian_id((i, j, k, l): (usize, usize, usize, usize), m: i32, n: i32) -> String {
    format!("graded[{i}{j}{k}{l};{m},{n}]")
}

/// `Σ_k (b_kj ξ_ik^(0,m) + (-1)^{m+1} b_ik ξ_jk^(0,m)) + (q-q^{-1}) Σ_{k,l} Σ_p (-1)^{m+1-p} b_kl ξ_ik^(0,p-1) ξ_jl^(0,m-p)`,
/// with `coef` supplying `b` (or `g`).
pub(super) fn twisted_rhs(
    n: usize,
    i: usize,
    j: usize,
    m: i32,
    coef: impl Fn(usize, usize) -> RatFun,
) -> FilteredExpr {
    let alt = |e: i32| {
        if e.rem_euclid(2) == 0 {
            RatFun::one()
        } else {
            RatFun::one().neg()
        }
    };
    let mut e = FilteredExpr::new();
    for k in 1..=n {
        e.push(coef(k, j), vec![t0(i, k, m)]);
        e.push(coef(i, k).mul(&alt(m + 1)), vec![t0(j, k, m)]);
    }
    let h = RatFun::q_minus_qinv();
    for k in 1..=n {
        for l in 1..=n {
            let b = coef(k, l);
            if b.is_zero() {
                continue;
            }
            for p in 1..=m {
                e.push(
                    h.mul(&b).mul(&alt(m + 1 - p)),
                    vec![t0(i, k, p - 1), t0(j, l, m - p)],
                );
            }
        }
    }
    e
}

fn expand_err<E: std::fmt::Display>(e: E) -> FiltError {
    FiltError::Expansion(e.to_string())
}

/// `S_ij^(r,m)` minus the congruence's right-hand side; the flip negates `S`.
pub fn scong_target(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
    flip: Flip,
) -> Result<QLoopElem, FiltError> {
    let s = srm_expand(case, n, i, j, r, m).map_err(expand_err)?;
    let rhs = twisted_rhs(n, i, j, m, |a, b| b_entry(case, a, b)).expand(n)?;
    Ok(s.scale(&flip.sign()).sub(&rhs))
}

pub fn scong_check(
    engine: &CongruenceEngine,
    case: Case,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<CongruenceCertificate, FiltError> {
    let x = scong_target(case, engine.n(), i, j, r, m, Flip::None)?;
    engine.certify(
        &format!("scong[{}{i}{j};{r},{m}]", case.name()),
        &x,
        (m + 1) as u32,
    )
}

/// `S_ij^(r1,m) - S_ij^(r2,m)`; the flip turns the difference into a sum.
pub fn zeta_target(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    m: i32,
    (r1, r2): (i32, i32),
    flip: Flip,
) -> Result<QLoopElem, FiltError> {
    let a = srm_expand(case, n, i, j, r1, m).map_err(expand_err)?;
    let b = srm_expand(case, n, i, j, r2, m).map_err(expand_err)?;
    Ok(a.sub(&b.scale(&flip.sign())))
}

pub fn zeta_independence_check(
    engine: &CongruenceEngine,
    case: Case,
    i: usize,
    j: usize,
    m: i32,
    r1: i32,
    r2: i32,
) -> Result<CongruenceCertificate, FiltError> {
    let x = zeta_target(case, engine.n(), i, j, m, (r1, r2), Flip::None)?;
    engine.certify(
        &format!("zeta[{}{i}{j};{m};{r1},{r2}]", case.name()),
        &x,
        (m + 1) as u32,
    )
}

/// Push a Yangian element through `t_ij^(r) ↦ T_ij^(0,r-1)`, `ħ ↦ q - q^{-1}`.
pub(super) fn push_phi(y: &YangianElem) -> Result<QLoopElem, FiltError> {
    let hb = |c: &HbarPoly| {
        let h = RatFun::q_minus_qinv();
        let mut acc = RatFun::zero();
        for (k, a) in c.poly().coeffs().iter().enumerate() {
            acc = acc.add(&h.pow(k as i64).mul(&RatFun::from_rational(a)));
        }
        acc
    };
    let mut out = QLoopElem::zero();
    for (w, c) in y.terms() {
        let mut acc = QLoopElem::constant(hb(c));
        for g in &w.0 {
            if g.family != Family::YangT || g.level < 1 {
                return Err(FiltError::Expansion(format!("no image for {g}")));
            }
            let (i, j) = g.idx();
            acc = acc.mul(&trm_expand(TrmFamily::T, i, j, 0, g.level - 1).map_err(expand_err)?);
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// `φ(s_ij^(m+1)) - S_ij^(1,m)`, the twisted Yangian generator taken through
/// its embedding with `ħ` in the quadratic part; the flip negates `S`.
pub fn twisted_phi_target(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    m: i32,
    flip: Flip,
) -> Result<QLoopElem, FiltError> {
    let y = embed_twisted_yangian_unordered(case, n, i, j, m + 1, &HbarPoly::hbar());
    let image = push_phi(&y)?;
    let s = srm_expand(case, n, i, j, 1, m).map_err(expand_err)?;
    Ok(image.sub(&s.scale(&flip.sign())))
}

pub fn twisted_phi_check(
    engine: &CongruenceEngine,
    case: Case,
    i: usize,
    j: usize,
    m: i32,
) -> Result<CongruenceCertificate, FiltError> {
    let x = twisted_phi_target(case, engine.n(), i, j, m, Flip::None)?;
    engine.certify(
        &format!("phi_tw[{}{i}{j};{m}]", case.name()),
        &x,
        (m + 1) as u32,
    )
}

/// Pairwise differences of `T̄^(0,m)`, `(-1)^{m+1} T^(0,m)`, `T̃^(0,m)` lie in `𝕂_{m+1}`
/// at the classical level. The flip uses `(-1)^m` instead.
pub fn tbar_congruence_check(
    i: usize,
    j: usize,
    m: i32,
    flip: Flip,
) -> Result<bool, ClassicalError> {
    let trm = |f| trm_expand(f, i, j, 0, m).map_err(|_| ClassicalError::PoleAtQ1);
    let mut sign = if m % 2 == 0 {
        RatFun::one().neg()
    } else {
        RatFun::one()
    };
    if flip == Flip::Sign {
        sign = sign.neg();
    }
    let three = [
        trm(TrmFamily::TBar)?,
        trm(TrmFamily::T)?.scale(&sign),
        trm(TrmFamily::TTilde)?,
    ];
    for a in 0..3 {
        for b in a + 1..3 {
            let d = psi_apply(&three[a].sub(&three[b]))?;
            if !km_test(&d, (m + 1) as u32, None)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A probe `∂_α ∘ f^{⊗r} ∘ Δ ∘ ψ` with `|α| < threshold` that does not vanish
/// on `x`. Such probes vanish on all of `𝐊_threshold`, so this refutes membership.
pub fn probe_refutation(x: &QLoopElem, n: usize, threshold: u32) -> Option<String> {
    let p = psi_apply(x).ok()?;
    if p.is_zero() {
        return None;
    }
    let arity = p.max_len().max(1);
    for d in 0..threshold {
        for alpha in compositions(d, arity) {
            match separation_probe(&p, n, &alpha) {
                Ok(t) if !t.is_empty() => return Some(format!("probe {alpha:?} is nonzero")),
                _ => {}
            }
        }
    }
    None
}

/// Run a certification and turn the outcome into a check; failures are
/// reported as refuted only when a probe witnesses it.
pub fn congruence_outcome(
    engine: &CongruenceEngine,
    name: &str,
    x: &QLoopElem,
    threshold: u32,
) -> Check {
    match engine.certify(name, x, threshold) {
        Ok(cert) => Check::pass(name).with_certificate(cert.summary()),
        Err(e) => match probe_refutation(x, engine.n(), threshold) {
            Some(w) => Check::fail(name, format!("{e}; refuted: {w}")),
            None => Check::new(name, Status::Inconclusive).with_detail(e.to_string()),
        },
    }
}
