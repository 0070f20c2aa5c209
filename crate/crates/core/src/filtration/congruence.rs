//! Certificates for `X ∈ 𝐊_M` modulo the defining relations.
//!
//! Marker words: `M_ij^(k)` is the 𝒜-form preimage of `E_ij s^lo (s-1)^k`, and
//! `Z_ii = τ_ii^(0) + τ̄_ii^(0)` lies in every `𝕂_m`. Words in these letters
//! form an 𝒜-basis, and `𝐊_M` (restricted to bounded level) is spanned by
//! `(q-1)^{max(0, M - deg w)} w`. So `X ∈ V + 𝐊_M` with `V` the relation span
//! is decided by: saturate `V` inside the integral lattice, reduce `X`, and
//! solve the remaining congruence over `ℚ[ε]/ε^M` with `ε = q - 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::FilteredExpr;
use crate::coeffring::{binomial, rat, Field, Poly, RatFun, Rational, Ring, Scalar};
use crate::freealg::{
    span_membership, CertEntry, CertificateSummary, Echelon, Family, Gen, NCPoly, Word,
};
use crate::qloop::{
    diagonal_inverse_relations, min_valuation, relation_span, tau, taubar, QKind, QLoopElem,
};

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub n: usize,
    /// Relation instances reach this many levels above the target.
    pub level_slack: i32,
}

impl Bounds {
    pub fn new(n: usize) -> Self {
        Bounds { n, level_slack: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FiltError {
    #[error("inconclusive at threshold {threshold}: {detail}")]
    Inconclusive { threshold: u32, detail: String },
    #[error("a decomposition at threshold {threshold} exists only with poles at q = 1")]
    IntegralityFailed { threshold: u32 },
    #[error("expansion failed: {0}")]
    Expansion(String),
    #[error("certificate failed re-verification")]
    VerificationFailed,
}

/// `target = Σ c·relation + Σ (a_w/denominator)·w` with `val(a_w/denominator) ≥ threshold - deg w`.
#[derive(Debug, Clone)]
pub struct CongruenceCertificate {
    pub target_id: String,
    pub threshold: u32,
    /// The `lo` in `E_ij s^lo (s-1)^k`.
    pub base_level: i32,
    pub relation_part: Vec<(String, RatFun)>,
    pub high_degree_part: Vec<(Word, Poly)>,
    pub denominator: Poly,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub target_id: String,
    pub threshold: u32,
    pub base_level: i32,
    pub relation_part: Vec<(String, String)>,
    pub high_degree_part: Vec<(String, String)>,
    pub verified: bool,
}

impl CongruenceCertificate {
    /// Each high-degree entry as `(q-1)^e·w` times its coefficient over the shared denominator.
    fn monomials(&self) -> Vec<(String, String)> {
        let den = self.denominator.display_in("q").to_string();
        self.high_degree_part
            .iter()
            .map(|(w, a)| {
                let e = (self.threshold as i64 - word_degree(w)).max(0);
                let mono = if e == 0 {
                    w.to_string()
                } else {
                    format!("(q-1)^{e}·{w}")
                };
                (mono, format!("({})/((q-1)^{e}·({den}))", a.display_in("q")))
            })
            .collect()
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            target_id: self.target_id.clone(),
            threshold: self.threshold,
            base_level: self.base_level,
            relation_part: self
                .relation_part
                .iter()
                .map(|(k, c)| (k.clone(), c.to_string()))
                .collect(),
            high_degree_part: self.monomials(),
            verified: self.verified,
        }
    }

    pub fn summary(&self) -> CertificateSummary {
        let entry = |(id, coeff): (String, String)| CertEntry { id, coeff };
        CertificateSummary {
            relations: self
                .relation_part
                .iter()
                .map(|(k, c)| entry((k.clone(), c.to_string())))
                .collect(),
            high_degree: self.monomials().into_iter().map(entry).collect(),
        }
    }
}

fn word_degree(w: &Word) -> i64 {
    if w.0.iter().any(|g| g.family == Family::Zee) {
        return i64::MAX / 4;
    }
    w.0.iter().map(|g| g.level as i64).sum()
}

type Weight = Vec<i32>;

fn weight_of(w: &Word, n: usize) -> Weight {
    let mut v = vec![0; n];
    for g in &w.0 {
        v[g.i as usize - 1] += 1;
        v[g.j as usize - 1] -= 1;
    }
    v
}

fn split_by_weight(p: &QLoopElem, n: usize) -> BTreeMap<Weight, QLoopElem> {
    let mut out: BTreeMap<Weight, QLoopElem> = BTreeMap::new();
    for (w, c) in p.terms() {
        out.entry(weight_of(w, n))
            .or_insert_with(QLoopElem::zero)
            .add_term(w.clone(), c.clone());
    }
    out
}

fn marker(i: u8, j: u8, k: i32) -> Gen {
    Gen {
        family: Family::Marker,
        i,
        j,
        level: k,
    }
}

/// Letter in marker coordinates: `τ^(r) ↦ s^r`, `τ̄^(r) ↦ -s^{-r}` (and `τ̄_ii^(0) = Z_ii - τ_ii^(0)`).
fn letter_expansion(g: &Gen, lo: i32, kmax: Option<i32>) -> Vec<(Gen, Rational)> {
    let (sign, e) = match g.family {
        Family::Tau => (1, g.level),
        Family::TauBar => (-1, -g.level),
        Family::Zee | Family::Marker => return vec![(*g, rat(1))],
        _ => panic!("letter {g} has no marker expansion"),
    };
    assert!(e >= lo, "base level {lo} above exponent {e}");
    let top = kmax.map_or(e - lo, |k| (k - 1).min(e - lo));
    let mut out: Vec<(Gen, Rational)> = (0..=top)
        .map(|k| {
            (
                marker(g.i, g.j, k),
                binomial((e - lo) as i64, k as i64) * rat(sign),
            )
        })
        .collect();
    if g.family == Family::TauBar && g.level == 0 && g.i == g.j {
        out.push((
            Gen {
                family: Family::Zee,
                i: g.i,
                j: g.i,
                level: 0,
            },
            rat(1),
        ));
    }
    out
}

/// Lowest common denominator of the coefficients.
fn common_denominator(p: &QLoopElem) -> Poly {
    let mut l = Poly::one();
    for c in p.terms().values() {
        let g = Poly::gcd(&l, c.den());
        l = l.mul(&c.den().div_rem(&g).0);
    }
    l
}

/// Marker coordinates of `p·d`, where `d` clears all denominators.
fn marker_numerators(p: &QLoopElem, lo: i32, d: &Poly) -> BTreeMap<Word, Poly> {
    let mut out: BTreeMap<Word, Poly> = BTreeMap::new();
    for (w, c) in p.terms() {
        let num = c.num().mul(&d.div_rem(c.den()).0);
        let mut partial: Vec<(Vec<Gen>, Rational)> = vec![(Vec::new(), rat(1))];
        for g in &w.0 {
            let ex = letter_expansion(g, lo, None);
            partial = partial
                .iter()
                .flat_map(|(v, a)| {
                    ex.iter().map(move |(h, b)| {
                        let mut v = v.clone();
                        v.push(*h);
                        (v, a * b)
                    })
                })
                .collect();
        }
        for (v, a) in partial {
            let e = out.entry(Word(v)).or_insert_with(Poly::zero);
            *e = e.add(&num.scale(&a));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Exact marker coordinates of `p`.
fn marker_coords(p: &QLoopElem, lo: i32) -> BTreeMap<Word, RatFun> {
    let d = common_denominator(p);
    marker_numerators(p, lo, &d)
        .into_iter()
        .map(|(w, n)| (w, RatFun::new(n, d.clone()).expect("nonzero denominator")))
        .collect()
}

/// Checks `p ∈ 𝐊_m` through its marker coordinates and that they expand back
/// to `p`; returns the coordinates of `p·d` and the common denominator `d`.
fn verify_high_part(p: &QLoopElem, lo: i32, m: i32) -> Option<(Vec<(Word, Poly)>, Poly)> {
    let d = common_denominator(p);
    let dv = d.valuation_at_one() as i64;
    let nums = marker_numerators(p, lo, &d);
    for (w, n) in &nums {
        if (n.valuation_at_one() as i64) - dv < (m as i64 - word_degree(w)).max(0) {
            return None;
        }
    }
    let mut back: BTreeMap<Word, Poly> = BTreeMap::new();
    for (w, n) in &nums {
        for (u, c) in expand_marker_word(w, lo).terms() {
            let c = c.limit_q1().ok()?;
            let e = back.entry(u.clone()).or_insert_with(Poly::zero);
            *e = e.add(&n.scale(&c));
        }
    }
    back.retain(|_, c| !c.is_zero());
    let direct: BTreeMap<Word, Poly> = p
        .terms()
        .iter()
        .map(|(w, c)| (w.clone(), c.num().mul(&d.div_rem(c.den()).0)))
        .collect();
    if back != direct {
        return None;
    }
    Some((nums.into_iter().collect(), d))
}

/// Marker words of degree `< m` with the first `m - deg` coefficients in `q - 1`.
/// `None` if a needed coefficient has a pole at `q = 1`.
fn low_coords(p: &QLoopElem, lo: i32, m: i32) -> Option<BTreeMap<Word, Vec<Rational>>> {
    let mut out: BTreeMap<Word, Vec<Rational>> = BTreeMap::new();
    for (w, c) in p.terms() {
        let mut partial: Vec<(Vec<Gen>, i32, Rational)> = vec![(Vec::new(), 0, rat(1))];
        for g in &w.0 {
            let ex = letter_expansion(g, lo, Some(m));
            let mut next = Vec::new();
            for (v, d, a) in &partial {
                for (h, b) in &ex {
                    if h.family == Family::Zee || d + h.level >= m {
                        continue;
                    }
                    let mut v = v.clone();
                    v.push(*h);
                    next.push((v, d + h.level, a * b));
                }
            }
            partial = next;
        }
        if partial.is_empty() {
            continue;
        }
        let ser = c.series_at_one(m as usize)?;
        for (v, d, a) in partial {
            let len = (m - d) as usize;
            let e = out.entry(Word(v)).or_insert_with(|| vec![rat(0); len]);
            for (t, s) in e.iter_mut().zip(ser.iter()) {
                *t += &a * s;
            }
        }
    }
    out.retain(|_, v| v.iter().any(|x| *x != rat(0)));
    Some(out)
}

/// Rational vector with coordinates `(ε^p, w)`, shifted by `ε^shift`.
fn flatten(coords: &BTreeMap<Word, Vec<Rational>>, shift: usize) -> NCPoly<Rational> {
    let mut out = NCPoly::zero();
    for (w, ser) in coords {
        for p in shift..ser.len() {
            let c = &ser[p - shift];
            if *c != rat(0) {
                let mut v = vec![Gen::sym(p)];
                v.extend_from_slice(&w.0);
                out.add_term(Word(v), c.clone());
            }
        }
    }
    out
}

/// `E_ij s^e` pulled back to the 𝒜-form span.
fn preimage(i: usize, j: usize, e: i32) -> QLoopElem {
    match e.cmp(&0) {
        std::cmp::Ordering::Greater => tau(i, j, e),
        std::cmp::Ordering::Less => taubar(i, j, -e).neg(),
        std::cmp::Ordering::Equal if i < j => taubar(i, j, 0).neg(),
        std::cmp::Ordering::Equal => tau(i, j, 0),
    }
}

/// Expand a marker word back to 𝒜-form generators.
pub(crate) fn expand_marker_word(w: &Word, lo: i32) -> QLoopElem {
    let mut acc = QLoopElem::one();
    for g in &w.0 {
        let (i, j) = g.idx();
        let f = match g.family {
            Family::Zee => tau(i, i, 0).add(&taubar(i, i, 0)),
            Family::Marker => {
                let k = g.level;
                let mut f = QLoopElem::zero();
                for t in 0..=k {
                    let mut c = binomial(k as i64, t as i64);
                    if (k - t) % 2 == 1 {
                        c = -c;
                    }
                    f.add_scaled(&preimage(i, j, lo + t), &RatFun::from_rational(&c));
                }
                f
            }
            _ => QLoopElem::gen(*g),
        };
        acc = acc.mul(&f);
    }
    acc
}

struct SatRow {
    v: QLoopElem,
    comb: BTreeMap<usize, RatFun>,
}

/// Basis of `V ∩ 𝒜^words`: integral rows, each with a unit pivot that vanishes in the others.
struct Saturated {
    rows: Vec<SatRow>,
    pivots: BTreeMap<Word, usize>,
}

fn add_comb(into: &mut BTreeMap<usize, RatFun>, from: &BTreeMap<usize, RatFun>, c: &RatFun) {
    for (k, v) in from {
        let s = into
            .get(k)
            .map_or_else(|| v.mul(c), |old| old.add(&v.mul(c)));
        if s.is_zero() {
            into.remove(k);
        } else {
            into.insert(*k, s);
        }
    }
}

impl Saturated {
    fn new() -> Self {
        Saturated {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    /// Subtract `p[pivot]·row` for every pivot in the support.
    fn reduce(&self, p: &QLoopElem) -> (QLoopElem, Vec<(usize, RatFun)>) {
        let hits: Vec<(usize, RatFun)> = p
            .terms()
            .iter()
            .filter_map(|(w, c)| self.pivots.get(w).map(|&r| (r, c.clone())))
            .collect();
        let mut v = p.clone();
        for (r, c) in &hits {
            v.add_scaled(&self.rows[*r].v, &c.neg());
        }
        (v, hits)
    }

    fn insert(&mut self, p: &QLoopElem, idx: usize) {
        let Some(v0) = min_valuation(p) else { return };
        let s = RatFun::q_minus_one().pow(-v0);
        let (mut v, hits) = self.reduce(&p.scale(&s));
        if v.is_zero() {
            return;
        }
        let mut comb = BTreeMap::from([(idx, s)]);
        for (r, c) in &hits {
            add_comb(&mut comb, &self.rows[*r].comb.clone(), &c.neg());
        }
        let (pw, pc) = v
            .terms()
            .iter()
            .min_by_key(|(_, c)| c.val())
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("nonzero");
        let inv = pc.inv().expect("nonzero pivot");
        v = v.scale(&inv);
        comb = comb.into_iter().map(|(k, c)| (k, c.mul(&inv))).collect();
        for row in &mut self.rows {
            let c = row.v.coeff(&pw);
            if !c.is_zero() {
                row.v.add_scaled(&v, &c.neg());
                add_comb(&mut row.comb, &comb, &c.neg());
            }
        }
        self.pivots.insert(pw, self.rows.len());
        self.rows.push(SatRow { v, comb });
    }
}

struct WeightBlock {
    labels: Vec<String>,
    relations: Vec<QLoopElem>,
    sat: Saturated,
}

/// Relation data and saturated spans, cached per level cap and weight.
pub struct CongruenceEngine {
    n: usize,
    level_slack: i32,
    blocks: Mutex<HashMap<(i32, Weight), Arc<WeightBlock>>>,
    relations: Mutex<HashMap<i32, Arc<Vec<(String, QLoopElem)>>>>,
}

impl CongruenceEngine {
    pub fn new(bounds: Bounds) -> Self {
        CongruenceEngine {
            n: bounds.n,
            level_slack: bounds.level_slack,
            blocks: Mutex::new(HashMap::new()),
            relations: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn relations(&self, cap: i32) -> Arc<Vec<(String, QLoopElem)>> {
        if let Some(r) = self.relations.lock().expect("lock").get(&cap) {
            return r.clone();
        }
        let mut rels: Vec<(String, QLoopElem)> = relation_span(
            self.n,
            cap.max(1) as u32,
            &[QKind::TT, QKind::TbarTbar, QKind::TbarT],
        )
        .into_iter()
        .filter(|(_, p)| p.max_level().unwrap_or(0) <= cap)
        .collect();
        rels.extend(diagonal_inverse_relations(self.n));
        let rels = Arc::new(rels);
        self.relations
            .lock()
            .expect("lock")
            .insert(cap, rels.clone());
        rels
    }

    fn block(&self, cap: i32, weight: &Weight) -> Arc<WeightBlock> {
        let key = (cap, weight.clone());
        if let Some(b) = self.blocks.lock().expect("lock").get(&key) {
            return b.clone();
        }
        let mut labels = Vec::new();
        let mut relations = Vec::new();
        for (id, p) in self.relations(cap).iter() {
            let Some((w, _)) = p.leading() else { continue };
            if weight_of(w, self.n) == *weight {
                labels.push(id.clone());
                relations.push(p.clone());
            }
        }
        let mut sat = Saturated::new();
        for (k, p) in relations.iter().enumerate() {
            sat.insert(p, k);
        }
        let b = Arc::new(WeightBlock {
            labels,
            relations,
            sat,
        });
        self.blocks.lock().expect("lock").insert(key, b.clone());
        b
    }

    /// Certify `target ∈ 𝐊_threshold` modulo the relations.
    pub fn certify(
        &self,
        id: &str,
        target: &QLoopElem,
        threshold: u32,
    ) -> Result<CongruenceCertificate, FiltError> {
        let m = threshold as i32;
        let cap = target.max_level().unwrap_or(0) + self.level_slack;
        let lo = -cap;
        let mut relation_part: Vec<(String, RatFun)> = Vec::new();
        let mut combined = QLoopElem::zero();
        for (weight, x) in split_by_weight(target, self.n) {
            let block = self.block(cap, &weight);
            let row_coeffs = solve_block(&block.sat, &x, lo, m)?;
            let mut rel: BTreeMap<usize, RatFun> = BTreeMap::new();
            for (r, c) in row_coeffs {
                add_comb(&mut rel, &block.sat.rows[r].comb, &c);
            }
            for (k, c) in rel {
                combined.add_scaled(&block.relations[k], &c);
                relation_part.push((block.labels[k].clone(), c));
            }
        }
        let high = target.sub(&combined);
        let (coords, denominator) =
            verify_high_part(&high, lo, m).ok_or(FiltError::VerificationFailed)?;
        Ok(CongruenceCertificate {
            target_id: id.to_string(),
            threshold,
            base_level: lo,
            relation_part,
            high_degree_part: coords,
            denominator,
            verified: true,
        })
    }
}

/// Coefficients on saturated rows with `x - Σ c·row ∈ 𝐊_m`.
fn solve_block(
    sat: &Saturated,
    x: &QLoopElem,
    lo: i32,
    m: i32,
) -> Result<Vec<(usize, RatFun)>, FiltError> {
    let (xr, hits) = sat.reduce(x);
    let mut coeffs: BTreeMap<usize, RatFun> = hits.into_iter().collect();
    if xr.terms().values().any(|c| c.val() < 0) {
        return Err(field_fallback(sat, &xr, lo, m));
    }
    if m == 0 {
        return Ok(coeffs.into_iter().collect());
    }
    let target = low_coords(&xr, lo, m).expect("integral");
    if target.is_empty() {
        return Ok(coeffs.into_iter().collect());
    }
    let mut ech: Echelon<Rational> = Echelon::new();
    let mut inputs = Vec::new();
    for (r, row) in sat.rows.iter().enumerate() {
        let c = low_coords(&row.v, lo, m).expect("saturated rows are integral");
        if c.is_empty() {
            continue;
        }
        for shift in 0..m as usize {
            inputs.push((r, shift));
            ech.insert(&flatten(&c, shift));
        }
    }
    let (res, comb) = ech.reduce(&flatten(&target, 0));
    if !res.is_zero() {
        return Err(field_fallback(sat, &xr, lo, m));
    }
    let mut polys: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    for (k, lam) in comb {
        let (r, shift) = inputs[k];
        let v = polys.entry(r).or_insert_with(|| vec![rat(0); m as usize]);
        v[shift] += lam;
    }
    for (r, eps) in polys {
        let c = eps_poly(&eps);
        let e = coeffs.entry(r).or_insert_with(RatFun::zero);
        *e = e.add(&c);
    }
    Ok(coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// `Σ a_p (q-1)^p`.
fn eps_poly(a: &[Rational]) -> RatFun {
    let e = Poly::from_ints(&[-1, 1]);
    let mut acc = Poly::zero();
    let mut pw = Poly::one();
    for c in a {
        acc = acc.add(&pw.scale(c));
        pw = pw.mul(&e);
    }
    RatFun::from_poly(acc)
}

/// Distinguish "no integral solution" from "no solution at all" by
/// solving the same system over the field at a generic point.
fn field_fallback(sat: &Saturated, xr: &QLoopElem, lo: i32, m: i32) -> FiltError {
    let q0 = Rational::new(7.into(), 3.into());
    let project = |p: &QLoopElem| -> NCPoly<Rational> {
        let mut out = NCPoly::zero();
        for (w, c) in marker_coords(p, lo) {
            if word_degree(&w) < m as i64 {
                let v = c.num().eval(&q0) / c.den().eval(&q0);
                out.add_term(w, v);
            }
        }
        out
    };
    let rows: Vec<(String, NCPoly<Rational>)> = sat
        .rows
        .iter()
        .enumerate()
        .map(|(k, r)| (k.to_string(), project(&r.v)))
        .collect();
    let t = project(xr);
    if span_membership(&t, &rows).is_ok() {
        FiltError::IntegralityFailed {
            threshold: m as u32,
        }
    } else {
        FiltError::Inconclusive {
            threshold: m as u32,
            detail: format!("{} low-degree terms remain", t.len()),
        }
    }
}

/// Expand a filtered expression and certify it at `threshold`.
pub fn congruence_check(
    id: &str,
    target: &FilteredExpr,
    threshold: u32,
    engine: &CongruenceEngine,
) -> Result<CongruenceCertificate, FiltError> {
    let x = target.expand(engine.n())?;
    engine.certify(id, &x, threshold)
}
