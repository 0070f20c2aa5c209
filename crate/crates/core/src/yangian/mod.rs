//! The Yangian of `gl_N`: relations, PBW normal form, and twisted Yangians.

mod twisted;

pub use twisted::{
    embed_twisted_yangian, embed_twisted_yangian_scaled, embed_twisted_yangian_unordered,
    quaternary_family, s, s_matrix, twisted_quaternary_components, twisted_symmetry_components,
    twisted_symmetry_series, verify_twisted_embedding, verify_twisted_embedding_with, EmbedError,
    TwistedCaps,
};

use std::collections::BTreeMap;

use crate::coeffring::Var;
use crate::coeffring::{HbarPoly, RatFun, Ring, Scalar};
use crate::freealg::{
    span_membership, substitute_constants, AlgebraTag, Certificate, Gen, MembershipError, NCPoly,
    Word,
};
use crate::rmat::{
    expand_matrix_relation, lift, series_matrix, yangian_r_cleared, Direction, RelKey,
    RelationFamily, RmatError,
};

pub type YangianElem = NCPoly<HbarPoly>;

/// `t_ij^(r)` with `t^(0) = δ` applied.
pub fn t(i: usize, j: usize, r: i32) -> YangianElem {
    if r < 0 {
        YangianElem::zero()
    } else if r == 0 {
        YangianElem::constant(HbarPoly::from_int((i == j) as i64))
    } else {
        YangianElem::gen(Gen::yang(i, j, r))
    }
}

fn hbar() -> HbarPoly {
    HbarPoly::hbar()
}

/// `[t_ij^(m+1), t_kl^(n)] - [t_ij^(m), t_kl^(n+1)] - ħ(t_kj^(m) t_il^(n) - t_kj^(n) t_il^(m))`.
pub fn yangian_relation(i: usize, j: usize, k: usize, l: usize, m: i32, n: i32) -> YangianElem {
    let lhs = t(i, j, m + 1)
        .commutator(&t(k, l, n))
        .sub(&t(i, j, m).commutator(&t(k, l, n + 1)));
    let rhs = t(k, j, m)
        .mul(&t(i, l, n))
        .sub(&t(k, j, n).mul(&t(i, l, m)));
    lhs.sub(&rhs.scale(&hbar()))
}

/// Closed form of `[t_ij^(r), t_kl^(s)]` for `r, s ≥ 1`.
pub fn commutator_rule(i: usize, j: usize, r: i32, k: usize, l: usize, s: i32) -> YangianElem {
    let mut acc = YangianElem::zero();
    for p in 1..=r.min(s) {
        let a = t(k, j, p - 1).mul(&t(i, l, r + s - p));
        let b = t(k, j, r + s - p).mul(&t(i, l, p - 1));
        acc = acc.add(&a.sub(&b));
    }
    acc.scale(&hbar())
}

/// Every relation instance of total level `level` (`m + n + 1 = level`).
pub fn relation_instances(n: usize, level: i32) -> Vec<(String, YangianElem)> {
    let mut out = Vec::new();
    for (i, j, k, l) in quads(n) {
        for m in 0..level {
            let nn = level - 1 - m;
            let p = yangian_relation(i, j, k, l, m, nn);
            if !p.is_zero() {
                out.push((format!("Y({i}{j}{k}{l};{m},{nn})"), p));
            }
        }
    }
    out
}

/// Components of the cleared relation `((u-v) - ħP) t1(u) t2(v) = t2(v) t1(u) ((u-v) - ħP)`
/// with series truncated at `order`, keyed `E_ij ⊗ E_kl` at `u^{-m} v^{-n}`.
pub fn expand_yangian_relation(
    n: usize,
    order: u32,
) -> Result<RelationFamily<HbarPoly>, RmatError> {
    let t = |v: Var| {
        series_matrix::<HbarPoly>(n, v, Direction::Inverse, order, |i, j, r| {
            NCPoly::gen(Gen::yang(i, j, r))
        })
    };
    let (t1, t2) = (t(Var::U).place(&[0], 2), t(Var::V).place(&[1], 2));
    let r = lift(&yangian_r_cleared(n, [1, -1, 0])?);
    let lo = 1 - order as i32;
    let fam = expand_matrix_relation(
        "rtt",
        &[&r, &t1, &t2],
        &[&t2, &t1, &r],
        [(lo, 1), (lo, 1), (0, 0)],
    )?;
    Ok(fam.map(|p| substitute_constants(p, AlgebraTag::Yangian).expect("Yangian constants")))
}

/// The displayed relations for `0 ≤ m, n < order`, keyed as in [`expand_yangian_relation`].
pub fn yangian_relation_family(n: usize, order: u32) -> RelationFamily<HbarPoly> {
    let mut fam = RelationFamily::new("rtt");
    for (i, j, k, l) in quads(n) {
        for m in 0..order as i32 {
            for nn in 0..order as i32 {
                fam.insert(
                    RelKey::new(i, j, k, l, [-m, -nn, 0]),
                    yangian_relation(i, j, k, l, m, nn),
                );
            }
        }
    }
    fam
}

pub fn quads_pub(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    quads(n)
}

pub(crate) fn quads(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (1..=n).flat_map(move |i| {
        (1..=n).flat_map(move |j| (1..=n).flat_map(move |k| (1..=n).map(move |l| (i, j, k, l))))
    })
}

pub fn to_field(p: &YangianElem) -> NCPoly<RatFun> {
    p.map_coeffs(|c| c.to_fraction())
}

/// Certify `[t_ij^(r), t_kl^(s)] - rule` against the defining relations of the same total level.
pub fn certify_commutator_rule(
    n: usize,
    (i, j, r): (usize, usize, i32),
    (k, l, s): (usize, usize, i32),
) -> Result<Certificate<RatFun>, MembershipError<RatFun>> {
    let target = t(i, j, r)
        .commutator(&t(k, l, s))
        .sub(&commutator_rule(i, j, r, k, l, s));
    certify_in_relations(n, &target, r + s)
}

/// Decide membership of `target` in the span of relations of total level `level`.
pub fn certify_in_relations(
    n: usize,
    target: &YangianElem,
    level: i32,
) -> Result<Certificate<RatFun>, MembershipError<RatFun>> {
    let rels: Vec<(String, NCPoly<RatFun>)> = relation_instances(n, level)
        .iter()
        .map(|(k, p)| (k.clone(), to_field(p)))
        .collect();
    span_membership(&to_field(target), &rels)
}

/// Which descent to rewrite first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

fn descent(w: &Word, strategy: Strategy) -> Option<usize> {
    let g = w.gens();
    let mut positions = (0..g.len().saturating_sub(1)).filter(|&p| g[p] > g[p + 1]);
    match strategy {
        Strategy::Leftmost => positions.next(),
        Strategy::Rightmost => positions.last(),
    }
}

/// PBW normal form: nondecreasing words in the order `(level, i, j)`.
pub fn normalize(e: &YangianElem) -> YangianElem {
    normalize_with(e, Strategy::Leftmost)
}

pub fn normalize_with(e: &YangianElem, strategy: Strategy) -> YangianElem {
    let e =
        crate::freealg::substitute_constants(e, AlgebraTag::Yangian).expect("Yangian constants");
    let mut todo: BTreeMap<Word, HbarPoly> = e.into_terms();
    let mut out = YangianElem::zero();
    let mut rules: BTreeMap<(Gen, Gen), YangianElem> = BTreeMap::new();
    while let Some((w, c)) = todo.pop_last() {
        let Some(p) = descent(&w, strategy) else {
            out.add_term(w, c);
            continue;
        };
        let g = w.gens();
        let (a, b) = (g[p], g[p + 1]);
        let prefix = Word(g[..p].to_vec());
        let suffix = Word(g[p + 2..].to_vec());
        let mut swapped = g.to_vec();
        swapped.swap(p, p + 1);
        push(&mut todo, Word(swapped), c.clone());
        let rule = rules.entry((a, b)).or_insert_with(|| {
            let (ai, aj) = a.idx();
            let (bi, bj) = b.idx();
            commutator_rule(ai, aj, a.level, bi, bj, b.level)
        });
        for (rw, rc) in rule.terms() {
            push(&mut todo, prefix.concat(rw).concat(&suffix), c.mul(rc));
        }
    }
    out
}

fn push(todo: &mut BTreeMap<Word, HbarPoly>, w: Word, c: HbarPoly) {
    let s = match todo.remove(&w) {
        Some(old) => old.add(&c),
        None => c,
    };
    if !s.is_zero() {
        todo.insert(w, s);
    }
}

pub fn is_normal(e: &YangianElem) -> bool {
    e.terms()
        .keys()
        .all(|w| descent(w, Strategy::Leftmost).is_none())
}

#[cfg(test)]
mod tests;
