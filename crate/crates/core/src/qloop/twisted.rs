use thiserror::Error;

use super::{
    big_t, big_tbar, divide_checked, relation_span, tau, taubar, trm_expand, QKind, QLoopElem,
    TrmFamily,
};
use crate::coeffring::{Field, RatFun, Ring, Scalar, Var};
use crate::freealg::{b_entry, span_membership, Case, Family, Gen};
use crate::rmat::{
    expand_matrix_relation, lift, quantum_r, series_matrix, transpose_first, Direction, RmatError,
    Subst,
};

#[derive(Debug, Error)]
pub enum QTwistError {
    #[error("symplectic case needs even N, got {0}")]
    SymplecticOddN(usize),
    #[error("division leaves a pole at q = 1 for S_{i}{j}^({r},{m})")]
    NonintegralDivision { i: usize, j: usize, r: i32, m: i32 },
    #[error("index out of range")]
    IndexOutOfRange,
    #[error(transparent)]
    Rmat(#[from] RmatError),
}

fn check_case(case: Case, n: usize) -> Result<(), QTwistError> {
    if case.admits(n) {
        Ok(())
    } else {
        Err(QTwistError::SymplecticOddN(n))
    }
}

fn prime(i: usize) -> usize {
    if i % 2 == 1 {
        i + 1
    } else {
        i - 1
    }
}

/// Abstract generator `S_ij^(r)`.
pub fn s_gen(i: usize, j: usize, r: i32) -> QLoopElem {
    QLoopElem::gen(Gen::new(Family::QS, i, j, r))
}

/// Image of `S_ij^(r)` in the quantum loop algebra, 𝒜-form.
pub fn embed_twisted_qloop(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
) -> Result<QLoopElem, QTwistError> {
    check_case(case, n)?;
    if r < 0 {
        return Err(QTwistError::IndexOutOfRange);
    }
    let mut out = QLoopElem::zero();
    for k in 1..=n {
        for l in 1..=n {
            let b = b_entry(case, k, l);
            if b.is_zero() {
                continue;
            }
            for p in 0..=r {
                out.add_scaled(&big_t(i, k, p).mul(&big_tbar(j, l, r - p)), &b);
            }
        }
    }
    Ok(out)
}

fn substitute_images(case: Case, n: usize, p: &QLoopElem) -> QLoopElem {
    p.substitute(|g| {
        (g.family == Family::QS).then(|| {
            embed_twisted_qloop(case, n, g.i as usize, g.j as usize, g.level).expect("checked case")
        })
    })
}

/// Quaternary components at series order `order` plus the level-zero constraints.
///
/// With `images`, every `S` symbol is replaced by its embedded image.
pub fn twisted_qloop_relations(
    case: Case,
    n: usize,
    order: u32,
    images: bool,
) -> Result<Vec<(String, QLoopElem)>, QTwistError> {
    check_case(case, n)?;
    let s = |v| series_matrix(n, v, Direction::Inverse, order, |i, j, r| s_gen(i, j, r));
    let s1 = s(Var::U).place(&[0], 2);
    let s2 = s(Var::V).place(&[1], 2);
    let r = lift(&quantum_r(n, Var::U, Var::V)?);
    let rt = lift(&transpose_first(
        &quantum_r(n, Var::U, Var::V)?,
        Some(Subst::Invert(Var::U)),
    )?);
    let l = order as i32;
    let fam = expand_matrix_relation(
        "quat",
        &[&r, &s1, &rt, &s2],
        &[&s2, &rt, &s1, &r],
        [(1 - l, 1), (2 - l, 2), (0, 0)],
    )?;
    let mut out: Vec<(String, QLoopElem)> = fam
        .labelled()
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    for i in 1..=n {
        for j in 1..=n {
            let zero = match case {
                Case::O => i < j,
                Case::Sp => i < j && j != prime(i),
            };
            if zero {
                out.push((format!("S{i}{j}(0)=0"), s_gen(i, j, 0)));
            }
        }
        match case {
            Case::O => out.push((
                format!("S{i}{i}(0)=1"),
                s_gen(i, i, 0).sub(&QLoopElem::one()),
            )),
            Case::Sp if i % 2 == 1 => {
                let ip = prime(i);
                let mut p = s_gen(ip, ip, 0).mul(&s_gen(i, i, 0));
                p.add_scaled(
                    &s_gen(ip, i, 0).mul(&s_gen(i, ip, 0)),
                    &RatFun::q_pow(2).neg(),
                );
                p.add_scaled(&QLoopElem::one(), &RatFun::q_pow(3).neg());
                out.push((format!("det{i}"), p));
            }
            Case::Sp => {}
        }
    }
    if images {
        out = out
            .into_iter()
            .map(|(k, p)| (k, substitute_images(case, n, &p)))
            .collect();
    }
    Ok(out)
}

/// Divisor used for the symplectic `S^(0,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroLevelNorm {
    /// `(S^(0) - b)/(q - 1)`: `ψ` images match the closed forms.
    Adjusted,
    /// `(S^(0) - b)/(q - q^{-1})`: `ψ` images are half the closed forms at `r = 0`.
    Literal,
}

fn s_level0(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    norm: ZeroLevelNorm,
) -> Result<QLoopElem, QTwistError> {
    let direct = match case {
        Case::O => i > j,
        Case::Sp => i >= j || j == prime(i),
    };
    if !direct {
        if case == Case::O && i == j {
            return Ok(QLoopElem::zero());
        }
        return Ok(s_level0(case, n, j, i, norm)?.neg());
    }
    let mut img = embed_twisted_qloop(case, n, i, j, 0)?;
    let d = match case {
        Case::Sp => {
            img.add_scaled(&QLoopElem::one(), &b_entry(case, i, j).neg());
            match norm {
                ZeroLevelNorm::Adjusted => RatFun::q_minus_one(),
                ZeroLevelNorm::Literal => RatFun::q_minus_qinv(),
            }
        }
        Case::O => RatFun::q_minus_qinv(),
    };
    divide_checked(&img, &d).ok_or(QTwistError::NonintegralDivision { i, j, r: 0, m: 0 })
}

fn s_r0(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    norm: ZeroLevelNorm,
) -> Result<QLoopElem, QTwistError> {
    if r == 0 {
        return s_level0(case, n, i, j, norm);
    }
    let img = embed_twisted_qloop(case, n, i, j, r)?;
    divide_checked(&img, &RatFun::q_minus_qinv()).ok_or(QTwistError::NonintegralDivision {
        i,
        j,
        r,
        m: 0,
    })
}

/// `S_ij^(r,m)` through the embedding, 𝒜-form.
pub fn srm_expand(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<QLoopElem, QTwistError> {
    srm_expand_with(case, n, i, j, r, m, ZeroLevelNorm::Adjusted)
}

pub fn srm_expand_with(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
    norm: ZeroLevelNorm,
) -> Result<QLoopElem, QTwistError> {
    if r < 0 || m < 0 {
        return Err(QTwistError::IndexOutOfRange);
    }
    let mut out = QLoopElem::zero();
    for k in 0..=m {
        let mut c = crate::coeffring::binomial(m as i64, k as i64);
        if (m - k) % 2 == 1 {
            c = -c;
        }
        out.add_scaled(
            &s_r0(case, n, i, j, r + k, norm)?,
            &RatFun::from_rational(&c),
        );
    }
    Ok(out)
}

fn trm(f: TrmFamily, i: usize, j: usize, r: i32, m: i32) -> QLoopElem {
    trm_expand(f, i, j, r, m).expect("nonnegative indices")
}

/// Right-hand side of the expansion of `S_ij^(r,m)`, `r ≥ 1`.
///
/// The level-zero factors next to `(q/(q+1))^δ` are the plain generators
/// `τ_ik^(0)` (k ≤ i) and `τ̄_jl^(0)` (l ≥ j).
pub fn lemma_rhs(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<QLoopElem, QTwistError> {
    check_case(case, n)?;
    if r < 1 || m < 0 {
        return Err(QTwistError::IndexOutOfRange);
    }
    use TrmFamily::{TBar, T};
    let c = RatFun::q_minus_qinv();
    let frac = RatFun::q()
        .div(&RatFun::q().add(&RatFun::one()))
        .expect("nonzero");
    let mut out = QLoopElem::zero();
    for k in 1..=n {
        out.add_scaled(&trm(T, i, k, r, m), &b_entry(case, k, j));
        out.add_scaled(&trm(TBar, j, k, r, m), &b_entry(case, i, k));
    }
    for k in 1..=n {
        for l in 1..=n {
            let b = b_entry(case, k, l);
            if b.is_zero() {
                continue;
            }
            let cb = c.mul(&b);
            for p in 1..r {
                out.add_scaled(&trm(T, i, k, p, 0).mul(&trm(TBar, j, l, r - p, m)), &cb);
            }
            if k <= i {
                let w = if k == i { cb.mul(&frac) } else { cb.clone() };
                out.add_scaled(&tau(i, k, 0).mul(&trm(TBar, j, l, r, m)), &w);
            }
            if l >= j {
                let w = if l == j { cb.mul(&frac) } else { cb.clone() };
                out.add_scaled(&trm(T, i, k, r, m).mul(&taubar(j, l, 0)), &w);
            }
            for a in 0..m {
                out.add_scaled(&trm(T, i, k, r, a).mul(&trm(TBar, j, l, 1, m - 1 - a)), &cb);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOutcome {
    /// Equal in the free algebra.
    Free,
    /// Equal modulo the listed relation components.
    ModRelations(Vec<String>),
    Failed,
}

/// Compare `S^(r,m)` with the expansion, first freely then modulo relations.
pub fn check_lemma_srm(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<LemmaOutcome, QTwistError> {
    let diff = srm_expand(case, n, i, j, r, m)?.sub(&lemma_rhs(case, n, i, j, r, m)?);
    if diff.is_zero() {
        return Ok(LemmaOutcome::Free);
    }
    let order = (r + m + 1) as u32;
    let mut rels = relation_span(n, order, &[QKind::TT, QKind::TbarTbar, QKind::TbarT]);
    rels.extend(super::diagonal_inverse_relations(n));
    Ok(match span_membership(&diff, &rels) {
        Ok(cert) => {
            LemmaOutcome::ModRelations(cert.relations.into_iter().map(|(k, _)| k).collect())
        }
        Err(_) => LemmaOutcome::Failed,
    })
}

/// Largest image size for which exact span membership is attempted.
const EXACT_TERM_BUDGET: usize = 64;

/// Check every twisted relation under the embedding: exact span membership
/// when the image is small, otherwise evaluation in `⊗` of evaluation modules.
pub fn verify_twisted_images(
    case: Case,
    n: usize,
    order: u32,
    points: &[crate::coeffring::Rational],
) -> Result<crate::report::Report, super::RepError> {
    use crate::report::{Check, Report};
    let abstract_rels = twisted_qloop_relations(case, n, order, false)?;
    let rep = super::EvalRep::at_points(n, points)?;
    rep.self_certify(order + 1)?;
    let mut base = relation_span(n, order + 1, &[QKind::TT, QKind::TbarTbar, QKind::TbarT]);
    base.extend(super::diagonal_inverse_relations(n));
    let mut report = Report::new(format!("twisted-images-{}", case.name()));
    for (label, p) in &abstract_rels {
        let img = substitute_images(case, n, p);
        if img.is_zero() {
            report.push(Check::pass(label.clone()).with_detail("identically zero"));
            continue;
        }
        if img.len() <= EXACT_TERM_BUDGET {
            if let Ok(cert) = span_membership(&img, &base) {
                report.push(
                    Check::pass(label.clone())
                        .with_detail("span")
                        .with_certificate(cert.summary()),
                );
                continue;
            }
        }
        let ok = rep.eval_twisted(case, p)?.is_zero();
        report.push(if ok {
            Check::pass(label.clone()).with_detail("representation")
        } else {
            Check::fail(label.clone(), "nonzero in representation")
        });
    }
    Ok(report)
}

/// `S̃_ij^(r,m)`, `0 ≤ r ≤ m`: boundary values `±S_ji^(0,m)` (sign `+` orthogonal,
/// `-` symplectic) and `(-1)^{m+1} S_ij^(0,m)`, with `S̃^(r,m+1) = S̃^(r-1,m) - S̃^(r,m)`.
pub fn stilde_expand(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<QLoopElem, QTwistError> {
    if r < 0 || r > m {
        return Err(QTwistError::IndexOutOfRange);
    }
    if r == 0 {
        let p = srm_expand(case, n, j, i, 0, m)?;
        return Ok(if case.sign() < 0 { p.neg() } else { p });
    }
    if r == m {
        let p = srm_expand(case, n, i, j, 0, m)?;
        return Ok(if m % 2 == 0 { p.neg() } else { p });
    }
    Ok(stilde_expand(case, n, i, j, r - 1, m - 1)?.sub(&stilde_expand(case, n, i, j, r, m - 1)?))
}
