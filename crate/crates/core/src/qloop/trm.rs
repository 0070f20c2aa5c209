use std::collections::HashMap;

use thiserror::Error;

use super::{qloop_relation_component, tau, taubar, QKind, QLoopElem};
use crate::coeffring::{binomial, RatFun, Ring, Scalar};
use crate::freealg::{span_membership, Certificate, MembershipError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrmFamily {
    T,
    TBar,
    TTilde,
}

#[derive(Debug, Error)]
pub enum RsError {
    #[error("index out of range: r={r}, m={m}")]
    IndexOutOfRange { r: i32, m: i32 },
    #[error("identity not certified in the relation span")]
    NotCertified { residual: QLoopElem },
    #[error("certificate failed re-expansion")]
    VerificationFailed,
}

fn base(family: TrmFamily, i: usize, j: usize, r: i32) -> QLoopElem {
    match family {
        TrmFamily::T if r == 0 && i < j => taubar(i, j, 0).neg(),
        TrmFamily::T => tau(i, j, r),
        TrmFamily::TBar if r == 0 && i >= j => tau(i, j, 0).neg(),
        _ => taubar(i, j, r),
    }
}

/// Finite difference `Σ_k (-1)^{m-k} C(m,k) X^(r+k, 0)`.
fn difference(family: TrmFamily, i: usize, j: usize, r: i32, m: i32) -> QLoopElem {
    let mut out = QLoopElem::zero();
    for k in 0..=m {
        let mut c = binomial(m as i64, k as i64);
        if (m - k) % 2 == 1 {
            c = -c;
        }
        out.add_scaled(&base(family, i, j, r + k), &RatFun::from_rational(&c));
    }
    out
}

fn tilde(
    i: usize,
    j: usize,
    r: i32,
    m: i32,
    memo: &mut HashMap<(i32, i32), QLoopElem>,
) -> QLoopElem {
    if let Some(p) = memo.get(&(r, m)) {
        return p.clone();
    }
    let p = if r == 0 {
        difference(TrmFamily::TBar, i, j, 0, m)
    } else if r == m {
        let p = difference(TrmFamily::T, i, j, 0, m);
        if m % 2 == 0 {
            p.neg()
        } else {
            p
        }
    } else {
        tilde(i, j, r - 1, m - 1, memo).sub(&tilde(i, j, r, m - 1, memo))
    };
    memo.insert((r, m), p.clone());
    p
}

/// `T_ij^(r,m)`, `T̄_ij^(r,m)` or `T̃_ij^(r,m)` in 𝒜-form generators.
pub fn trm_expand(
    family: TrmFamily,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<QLoopElem, RsError> {
    if r < 0 || m < 0 || (family == TrmFamily::TTilde && r > m) {
        return Err(RsError::IndexOutOfRange { r, m });
    }
    Ok(match family {
        TrmFamily::TTilde => tilde(i, j, r, m, &mut HashMap::new()),
        f => difference(f, i, j, r, m),
    })
}

fn t(i: usize, j: usize, r: i32, m: i32) -> QLoopElem {
    difference(TrmFamily::T, i, j, r, m)
}

/// `LHS - RHS` of the `(r,m),(s,n)` commutation identity, `r, s ≥ 1`.
pub fn rs_identity(
    (i, j, k, l): (usize, usize, usize, usize),
    (r, m): (i32, i32),
    (s, n): (i32, i32),
) -> Result<QLoopElem, RsError> {
    if r < 1 || s < 1 || m < 0 || n < 0 {
        return Err(RsError::IndexOutOfRange {
            r: r.min(s),
            m: m.min(n),
        });
    }
    let d = |a: usize, b: usize, e: i64| RatFun::q_pow(if a == b { e } else { 0 });
    let dd = |a: usize, b: usize| d(a, b, 1).sub(&d(a, b, -1));
    let c = RatFun::q_minus_qinv();
    let mut out = QLoopElem::zero();
    let inner = t(i, j, r, m + 1)
        .mul(&t(k, l, s, n))
        .sub(&t(i, j, r, m).mul(&t(k, l, s, n + 1)));
    out.add_scaled(&inner, &d(i, k, -1));
    out.add_scaled(&t(i, j, r, m).mul(&t(k, l, s + 1, n)), &dd(i, k).neg());
    let inner = t(k, l, s, n)
        .mul(&t(i, j, r, m + 1))
        .sub(&t(k, l, s, n + 1).mul(&t(i, j, r, m)));
    out.add_scaled(&inner, &d(j, l, -1).neg());
    out.add_scaled(&t(k, l, s + 1, n).mul(&t(i, j, r, m)), &dd(j, l));
    if i > k {
        out.add_scaled(&t(k, j, r + 1, m).mul(&t(i, l, s, n)), &c.neg());
    }
    if i < k {
        out.add_scaled(&t(k, j, r, m).mul(&t(i, l, s + 1, n)), &c.neg());
    }
    if l > j {
        out.add_scaled(&t(k, j, s, n).mul(&t(i, l, r + 1, m)), &c);
    }
    if l < j {
        out.add_scaled(&t(k, j, s + 1, n).mul(&t(i, l, r, m)), &c);
    }
    Ok(out)
}

/// Certify the identity in the span of `TT` components at levels `[r, r+m] × [s, s+n]`.
pub fn check_rs_identity(
    idx: (usize, usize, usize, usize),
    rm: (i32, i32),
    sn: (i32, i32),
) -> Result<Certificate<RatFun>, RsError> {
    certify_rs_target(&rs_identity(idx, rm, sn)?, idx, rm, sn)
}

/// Certify `target` against the same `TT` components as [`check_rs_identity`].
pub fn certify_rs_target(
    target: &QLoopElem,
    idx: (usize, usize, usize, usize),
    rm: (i32, i32),
    sn: (i32, i32),
) -> Result<Certificate<RatFun>, RsError> {
    let mut rels = Vec::new();
    for a in rm.0..=rm.0 + rm.1 {
        for b in sn.0..=sn.0 + sn.1 {
            let p = qloop_relation_component(QKind::TT, idx, -a, -b);
            if !p.is_zero() {
                rels.push((format!("TT[{a},{b}]"), p));
            }
        }
    }
    span_membership(target, &rels).map_err(|e| match e {
        MembershipError::NotInSpan { residual } | MembershipError::Inconclusive { residual } => {
            RsError::NotCertified { residual }
        }
        MembershipError::VerificationFailed => RsError::VerificationFailed,
    })
}
