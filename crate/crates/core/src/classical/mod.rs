//! The loop algebra `L(gl_N)`: PBW normal form, the specialization `ψ`,
//! the Lie ideals `𝖪_m`, `𝖪_m^tw`, and the separating functionals.

mod probe;

pub use probe::{
    compositions, monomial_independence_check, ordered_monomials, separation_probe, ProbeTensor,
};

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::coeffring::{binomial, rat, Rational, Ring};
use crate::freealg::{g_entry, span_membership, Case, Family, Gen, NCPoly, Word};
use crate::qloop::{self, QLoopElem, QTwistError, RsError, TrmFamily};

pub type LoopElem = NCPoly<Rational>;

#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("coefficient has a pole at q = 1")]
    PoleAtQ1,
    #[error("expected a Lie element (word length ≤ 1)")]
    NotLieElement,
    #[error("probe arity {arity} below word length {len}")]
    ArityTooSmall { arity: usize, len: usize },
    #[error("ordered monomials are linearly dependent: rank {rank} of {count}")]
    RankDeficient { rank: usize, count: usize },
    #[error("no ψ image for {0}")]
    UnmappedGenerator(Gen),
    #[error(transparent)]
    Rs(#[from] RsError),
    #[error(transparent)]
    Twist(#[from] QTwistError),
}

pub fn loop_gen(i: usize, j: usize, r: i32) -> Gen {
    Gen::new(Family::Loop, i, j, r)
}

/// `E_ij s^r`.
pub fn e(i: usize, j: usize, r: i32) -> LoopElem {
    LoopElem::gen(loop_gen(i, j, r))
}

/// `[E_ij s^r, E_kl s^p] = δ_jk E_il s^{r+p} - δ_li E_kj s^{r+p}`.
pub fn bracket(a: &Gen, b: &Gen) -> LoopElem {
    let (i, j, k, l) = (a.i, a.j, b.i, b.j);
    let lvl = a.level + b.level;
    let mut out = LoopElem::zero();
    if j == k {
        out.add_term(
            Word::single(Gen::new(Family::Loop, i as usize, l as usize, lvl)),
            rat(1),
        );
    }
    if l == i {
        out.add_term(
            Word::single(Gen::new(Family::Loop, k as usize, j as usize, lvl)),
            rat(-1),
        );
    }
    out
}

fn normalize_word(w: &[Gen], memo: &mut HashMap<Vec<Gen>, LoopElem>) -> LoopElem {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let out = match (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
        None => LoopElem::term(rat(1), Word(w.to_vec())),
        Some(k) => {
            let mut swapped = w.to_vec();
            swapped.swap(k, k + 1);
            let mut acc = normalize_word(&swapped, memo);
            for (bw, c) in bracket(&w[k], &w[k + 1]).terms() {
                let mut v = w[..k].to_vec();
                v.extend_from_slice(&bw.0);
                v.extend_from_slice(&w[k + 2..]);
                acc.add_scaled(&normalize_word(&v, memo), c);
            }
            acc
        }
    };
    memo.insert(w.to_vec(), out.clone());
    out
}

/// PBW normal form: words nondecreasing in `(r, i, j)`.
pub fn loop_normalize(p: &LoopElem) -> LoopElem {
    let mut memo = HashMap::new();
    let mut out = LoopElem::zero();
    for (w, c) in p.terms() {
        out.add_scaled(&normalize_word(&w.0, &mut memo), c);
    }
    out
}

/// Specialize at `q = 1`: `τ_ij^(r) ↦ E_ij s^r`, `τ̄_ij^(r) ↦ -E_ij s^{-r}`.
pub fn psi_apply(p: &QLoopElem) -> Result<LoopElem, ClassicalError> {
    let mut out = LoopElem::zero();
    for (w, c) in p.terms() {
        if c.val() < 0 {
            return Err(ClassicalError::PoleAtQ1);
        }
        let c = c.limit_q1().map_err(|_| ClassicalError::PoleAtQ1)?;
        if c == rat(0) {
            continue;
        }
        let mut m = LoopElem::constant(c);
        for g in &w.0 {
            let (i, j) = g.idx();
            let img = match g.family {
                Family::Tau => e(i, j, g.level),
                Family::TauBar => e(i, j, -g.level).neg(),
                Family::Zee => LoopElem::zero(),
                Family::Loop => LoopElem::gen(*g),
                _ => return Err(ClassicalError::UnmappedGenerator(*g)),
            };
            m = m.mul(&img);
        }
        out = out.add(&m);
    }
    Ok(loop_normalize(&out))
}

/// `E_ij s^shift (s-1)^m`, or `E_ij s^shift (s^{-1}-1)^m` with `inverse`.
pub fn laurent(i: usize, j: usize, shift: i32, m: i32, inverse: bool) -> LoopElem {
    let mut out = LoopElem::zero();
    for k in 0..=m {
        let mut c = binomial(m as i64, k as i64);
        if (m - k) % 2 == 1 {
            c = -c;
        }
        let e_ = if inverse { shift - k } else { shift + k };
        out.add_scaled(&e(i, j, e_), &c);
    }
    out
}

/// Families with a closed-form `ψ` image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFamily {
    T,
    TBar,
    TTilde,
    S,
    STilde,
}

fn sign(m: i32) -> Rational {
    if m % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn partner(case: Case, i: usize) -> usize {
    match case {
        Case::O => i,
        Case::Sp if i % 2 == 1 => i + 1,
        Case::Sp => i - 1,
    }
}

/// The expected image of a family member under `ψ`.
pub fn psi_closed_form(
    family: ClosedFamily,
    case: Case,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> LoopElem {
    let s1 = sign(m + 1);
    let twisted = |shift_a: i32, shift_b: i32| {
        let (ip, jp) = (partner(case, i), partner(case, j));
        let ga = rat(g_entry(case, jp, j));
        let gb = rat(g_entry(case, i, ip));
        laurent(i, jp, shift_a, m, false)
            .scale(&ga)
            .sub(&laurent(j, ip, shift_b, m, true).scale(&gb))
    };
    match family {
        ClosedFamily::T => laurent(i, j, r, m, false),
        ClosedFamily::TBar => laurent(i, j, -(m + r), m, false).scale(&s1),
        ClosedFamily::TTilde => laurent(i, j, -(m - r), m, false).scale(&s1),
        ClosedFamily::S => twisted(r, -r),
        ClosedFamily::STilde => twisted(-(m - r), m - r).scale(&s1),
    }
}

/// `ψ` of the expansion equals the closed form.
pub fn psi_closed_form_check(
    family: ClosedFamily,
    case: Case,
    n: usize,
    i: usize,
    j: usize,
    r: i32,
    m: i32,
) -> Result<bool, ClassicalError> {
    let expr = match family {
        ClosedFamily::T => qloop::trm_expand(TrmFamily::T, i, j, r, m)?,
        ClosedFamily::TBar => qloop::trm_expand(TrmFamily::TBar, i, j, r, m)?,
        ClosedFamily::TTilde => qloop::trm_expand(TrmFamily::TTilde, i, j, r, m)?,
        ClosedFamily::S => qloop::srm_expand(case, n, i, j, r, m)?,
        ClosedFamily::STilde => qloop::stilde_expand(case, n, i, j, r, m)?,
    };
    Ok(psi_apply(&expr)? == loop_normalize(&psi_closed_form(family, case, i, j, r, m)))
}

fn lie_components(
    p: &LoopElem,
) -> Result<BTreeMap<(usize, usize), BTreeMap<i32, Rational>>, ClassicalError> {
    let mut out: BTreeMap<(usize, usize), BTreeMap<i32, Rational>> = BTreeMap::new();
    for (w, c) in p.terms() {
        match w.0.as_slice() {
            [] => {}
            [g] if g.family == Family::Loop => {
                *out.entry(g.idx())
                    .or_default()
                    .entry(g.level)
                    .or_insert_with(|| rat(0)) += c;
            }
            _ => return Err(ClassicalError::NotLieElement),
        }
    }
    Ok(out)
}

/// `k`-th derivative at `s = 1` of `Σ c_r s^r`.
fn derivative_at_one(poly: &BTreeMap<i32, Rational>, k: u32) -> Rational {
    poly.iter()
        .map(|(&r, c)| {
            let ff: i64 = (0..k as i64).map(|t| r as i64 - t).product();
            c * rat(ff)
        })
        .sum()
}

/// Membership in `𝖪_m` (untwisted) or `𝖪_m^tw` for a Lie element.
pub fn km_test(p: &LoopElem, m: u32, twisted: Option<Case>) -> Result<bool, ClassicalError> {
    let comps = lie_components(p)?;
    if p.coeff(&Word::empty()) != rat(0) {
        return Ok(false);
    }
    match twisted {
        None => Ok(comps
            .values()
            .all(|poly| (0..m).all(|k| derivative_at_one(poly, k) == rat(0)))),
        Some(case) => {
            let (lo, hi) = comps
                .values()
                .flat_map(|poly| poly.keys().copied())
                .fold((0, 0), |(a, b), r| (a.min(r), b.max(r)));
            let n = comps.keys().flat_map(|&(i, j)| [i, j]).max().unwrap_or(1);
            let n = if case == Case::Sp { n + n % 2 } else { n };
            let mut span = Vec::new();
            let m = m as i32;
            for i in 1..=n {
                for j in 1..=n {
                    for r in lo - m - 1..=hi + m + 1 {
                        let el = ktw_spanning(case, i, j, r, m);
                        span.push((format!("K[{i}{j};{r}]"), el));
                    }
                }
            }
            let target = p.clone();
            Ok(span_membership(&target, &span).is_ok())
        }
    }
}

/// Spanning element of `𝖪_m^tw` at `(i, j, r)`.
pub fn ktw_spanning(case: Case, i: usize, j: usize, r: i32, m: i32) -> LoopElem {
    match case {
        Case::O => laurent(i, j, r, m, false).sub(&laurent(j, i, -r, m, true)),
        Case::Sp => {
            let (ip, jp) = (partner(case, i), partner(case, j));
            let c = sign((i + j + 1) as i32);
            laurent(i, jp, r, m, false).sub(&laurent(j, ip, -r, m, true).scale(&c))
        }
    }
}

/// Which fixed-point condition to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaVariant {
    /// `σ(A(s)) = A(-s)`.
    Current,
    /// `σ(A(s)) = A(s^{-1})`.
    Loop,
}

/// The automorphism of `gl_N` on `E_ij`, as `(coefficient, k, l)`.
pub fn sigma_on(case: Case, i: usize, j: usize) -> (i64, usize, usize) {
    match case {
        Case::O => (-1, j, i),
        Case::Sp => (
            (-1i64).pow((i + j + 1) as u32 % 2),
            partner(case, j),
            partner(case, i),
        ),
    }
}

/// Whether a Lie element lies in the twisted current or loop algebra.
pub fn sigma_membership(
    case: Case,
    p: &LoopElem,
    variant: SigmaVariant,
) -> Result<bool, ClassicalError> {
    lie_components(p)?;
    let img = p.substitute(|g| {
        let (c, k, l) = sigma_on(case, g.i as usize, g.j as usize);
        Some(match variant {
            SigmaVariant::Loop => e(k, l, -g.level).scale(&rat(c)),
            SigmaVariant::Current => e(k, l, g.level).scale(&(rat(c) * sign(g.level))),
        })
    });
    Ok(img == *p)
}

/// A relation in 𝒜-form specializes to zero in `U(L(gl_N))`.
pub fn classical_limit_check(relation: &QLoopElem) -> Result<bool, ClassicalError> {
    let (p, _) = qloop::divide_uniform(relation);
    Ok(psi_apply(&p)?.is_zero())
}

#[cfg(test)]
mod tests;
