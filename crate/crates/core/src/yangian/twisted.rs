use rayon::prelude::*;

use super::{normalize, t, YangianElem};
use crate::coeffring::{rat_frac, HbarPoly, Poly, Ring, Scalar, Var};
use crate::freealg::{g_entry, substitute_constants, AlgebraTag, Case, Family, Gen, NCPoly};
use crate::report::{Check, Report};
use crate::rmat::{
    expand_matrix_relation, lift, series_matrix, transpose_first, yangian_r_cleared, Direction,
    NCMat, RelKey, RelationFamily, RmatError, Subst,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("symplectic case needs even N, got {0}")]
    SymplecticOddN(usize),
    #[error(transparent)]
    Rmat(#[from] RmatError),
}

impl From<crate::coeffring::SeriesError> for EmbedError {
    fn from(e: crate::coeffring::SeriesError) -> Self {
        EmbedError::Rmat(e.into())
    }
}

fn check_case(case: Case, n: usize) -> Result<(), EmbedError> {
    if case.admits(n) {
        Ok(())
    } else {
        Err(EmbedError::SymplecticOddN(n))
    }
}

/// `s_ij^(r)` with `s^(0) = g` applied.
pub fn s(case: Case, i: usize, j: usize, r: i32) -> YangianElem {
    match r {
        r if r < 0 => YangianElem::zero(),
        0 => YangianElem::constant(HbarPoly::from_int(g_entry(case, i, j))),
        _ => YangianElem::gen(Gen::new(Family::TwS, i, j, r)),
    }
}

/// `s(x) = Σ E_ij ⊗ s_ij(x)` truncated at `x^{-order}`.
pub fn s_matrix(case: Case, n: usize, var: Var, order: u32) -> NCMat<HbarPoly> {
    series_matrix(n, var, Direction::Inverse, order, |i, j, r| {
        s(case, i, j, r)
    })
}

fn half_hbar() -> HbarPoly {
    HbarPoly::from_poly(Poly::monomial(rat_frac(1, 2), 1))
}

/// Components of `s^t(-u) ∓ s(u) - ħ(s(u) - s(-u))/(2u)` at `u^{-r}`, `r ≤ order`, by series expansion.
pub fn twisted_symmetry_series(
    case: Case,
    n: usize,
    order: u32,
) -> Result<RelationFamily<HbarPoly>, EmbedError> {
    check_case(case, n)?;
    let su = s_matrix(case, n, Var::U, order);
    let s_neg = su.map_entries(|e| Ok(e.negate_var(Var::U)))?;
    let lhs = s_neg.transpose_leg(0);
    let sign = HbarPoly::from_int(case.sign());
    let odd = su.sub(&s_neg)?;
    let h = NCPoly::constant(half_hbar());
    let corr = odd.map_entries(|e| Ok(e.shift(Var::U, -1).map(|c| c.mul(&h))))?;
    let sc = NCPoly::constant(sign);
    let rhs = su.map_entries(|e| Ok(e.map(|c| c.mul(&sc))))?.add(&corr)?;
    let diff = lhs.sub(&rhs)?;
    let mut fam = RelationFamily::new("sym");
    for i in 1..=n {
        for j in 1..=n {
            let e = diff.get([i as u8, 0, 0], [j as u8, 0, 0]);
            for r in 0..=order as i32 {
                let p = e.coeff([-r, 0, 0]).map_err(RmatError::from)?;
                fam.insert(RelKey::new(i, j, 0, 0, [-r, 0, 0]), p);
            }
        }
    }
    Ok(fam)
}

/// `(-1)^r s_ji^(r) ∓ s_ij^(r) - ħ[r even, r ≥ 2] s_ij^(r-1)` for all `(i, j)`.
pub fn twisted_symmetry_components(
    case: Case,
    n: usize,
    r: i32,
) -> Vec<((usize, usize), YangianElem)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let sgn = if r % 2 == 0 { 1 } else { -1 };
            let mut p = s(case, j, i, r).scale(&HbarPoly::from_int(sgn));
            p = p.sub(&s(case, i, j, r).scale(&HbarPoly::from_int(case.sign())));
            if r >= 2 && r % 2 == 0 {
                p = p.sub(&s(case, i, j, r - 1).scale(&HbarPoly::hbar()));
            }
            out.push(((i, j), p));
        }
    }
    out
}

/// Cleared quaternary relation
/// `((u-v) - ħP) s1(u) ((u+v) + ħQ) s2(v) = s2(v) ((u+v) + ħQ) s1(u) ((u-v) - ħP)`,
/// components at `u^a v^b` with `a, b ∈ [2 - order, 2]`.
pub fn quaternary_family(
    case: Case,
    n: usize,
    order: u32,
) -> Result<RelationFamily<HbarPoly>, EmbedError> {
    check_case(case, n)?;
    let r = lift(&yangian_r_cleared(n, [1, -1, 0])?);
    // z - ħP at z = -u-v, transposed in the first leg, then negated
    let rt = transpose_first(
        &yangian_r_cleared(n, [1, 0, 0])?,
        Some(Subst::Linear(Var::U, [-1, -1, 0])),
    )?;
    let rt = lift(&rt).neg();
    let s1 = s_matrix(case, n, Var::U, order).place(&[0], 2);
    let s2 = s_matrix(case, n, Var::V, order).place(&[1], 2);
    let lo = 2 - order as i32;
    let fam = expand_matrix_relation(
        "quat",
        &[&r, &s1, &rt, &s2],
        &[&s2, &rt, &s1, &r],
        [(lo, 2), (lo, 2), (0, 0)],
    )?;
    Ok(fam)
}

/// Single component of the cleared quaternary relation at `u^{-r} v^{-s}`.
pub fn twisted_quaternary_components(
    case: Case,
    n: usize,
    (i, j, k, l): (usize, usize, usize, usize),
    r: i32,
    s_: i32,
) -> Result<YangianElem, EmbedError> {
    let order = (r.max(s_) + 2).max(0) as u32;
    let fam = quaternary_family(case, n, order)?;
    Ok(fam
        .members
        .get(&RelKey::new(i, j, k, l, [-r, -s_, 0]))
        .cloned()
        .unwrap_or_else(YangianElem::zero))
}

/// Image of `s_ij^(r)` in the Yangian.
pub fn embed_twisted_yangian(case: Case, n: usize, i: usize, j: usize, r: i32) -> YangianElem {
    embed_twisted_yangian_scaled(case, n, i, j, r, &HbarPoly::one())
}

/// Same, with the quadratic part multiplied by `middle`.
///
/// `middle = ħ` gives the image for generators rescaled by `ħ^{-1}`.
pub fn embed_twisted_yangian_scaled(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    middle: &HbarPoly,
) -> YangianElem {
    normalize(&embed_twisted_yangian_unordered(case, n, i, j, r, middle))
}

/// The image as written, before PBW normalization. The rescaled generators
/// do not satisfy the commutator rule of `t`, so products must stay in this
/// order when the image is read in terms of them.
pub fn embed_twisted_yangian_unordered(
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    middle: &HbarPoly,
) -> YangianElem {
    if r == 0 {
        return s(case, i, j, 0);
    }
    let g = |a: usize, b: usize| HbarPoly::from_int(g_entry(case, a, b));
    let sign = |e: i32| HbarPoly::from_int(if e % 2 == 0 { 1 } else { -1 });
    let mut acc = YangianElem::zero();
    for k in 1..=n {
        acc = acc.add(&t(i, k, r).scale(&g(k, j)));
        acc = acc.add(&t(j, k, r).scale(&g(i, k).mul(&sign(r))));
    }
    let mut quad = YangianElem::zero();
    for k in 1..=n {
        for l in 1..=n {
            let gkl = g(k, l);
            if gkl.is_zero() {
                continue;
            }
            for p in 1..r {
                quad = quad.add(
                    &t(i, k, p)
                        .mul(&t(j, l, r - p))
                        .scale(&gkl.mul(&sign(r - p))),
                );
            }
        }
    }
    acc.add(&quad.scale(middle))
}

/// Limits for the embedding verification.
#[derive(Debug, Clone, Copy)]
pub struct TwistedCaps {
    /// Symmetry components `r ≤ sym_rmax`.
    pub sym_rmax: i32,
    /// Quaternary components at `u^{-r} v^{-s}` with `r, s ≥ 2 - quat_rmax`, i.e. every
    /// component whose series levels are at most `quat_rmax`.
    pub quat_rmax: i32,
}

fn substitute_images(
    p: &YangianElem,
    image: &(impl Fn(usize, usize, i32) -> YangianElem + Sync),
) -> YangianElem {
    p.substitute(|g| (g.family == Family::TwS).then(|| image(g.i as usize, g.j as usize, g.level)))
}

/// Images of the generators satisfy every twisted relation within the caps.
pub fn verify_twisted_embedding(
    case: Case,
    n: usize,
    caps: TwistedCaps,
) -> Result<Report, EmbedError> {
    verify_twisted_embedding_with(case, n, caps, |i, j, r| {
        embed_twisted_yangian(case, n, i, j, r)
    })
}

pub fn verify_twisted_embedding_with(
    case: Case,
    n: usize,
    caps: TwistedCaps,
    image: impl Fn(usize, usize, i32) -> YangianElem + Sync,
) -> Result<Report, EmbedError> {
    check_case(case, n)?;
    let mut items: Vec<(String, YangianElem)> = Vec::new();
    for r in 0..=caps.sym_rmax {
        for ((i, j), p) in twisted_symmetry_components(case, n, r) {
            items.push((format!("sym {}{} r={r}", i, j), p));
        }
    }
    let order = caps.quat_rmax.max(0) as u32;
    for (key, p) in quaternary_family(case, n, order)?.members {
        let (a, b) = (key.exps[0], key.exps[1]);
        items.push((
            format!("quat E{}{}⊗E{}{} u^{a}v^{b}", key.i, key.j, key.k, key.l),
            p,
        ));
    }
    let checks: Vec<Check> = items
        .par_iter()
        .map(|(name, p)| {
            let p = substitute_constants(p, AlgebraTag::TwistedYangian(case)).expect("no q needed");
            let nf = normalize(&substitute_images(&p, &image));
            Check::from_bool(name.clone(), nf.is_zero(), || format!("normal form {nf}"))
        })
        .collect();
    let mut rep = Report::new(format!("embed-ytw/{}", case.name()));
    for c in checks {
        rep.push(c);
    }
    Ok(rep)
}
