use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::gen::{Gen, Word};
use super::ncpoly::NCPoly;
use crate::coeffring::{Field, Ring};

/// Linear witness: `Σ coeff·relation + Σ coeff·high_degree = target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<C> {
    pub relations: Vec<(String, C)>,
    pub high_degree: Vec<(String, C)>,
}

impl<C: Field> Certificate<C> {
    pub fn empty() -> Self {
        Certificate {
            relations: Vec::new(),
            high_degree: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.relations.len() + self.high_degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn summary(&self) -> CertificateSummary {
        let show = |v: &Vec<(String, C)>| {
            v.iter()
                .map(|(id, c)| CertEntry {
                    id: id.clone(),
                    coeff: c.to_string(),
                })
                .collect()
        };
        CertificateSummary {
            relations: show(&self.relations),
            high_degree: show(&self.high_degree),
        }
    }
}

/// Serializable rendering of a certificate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateSummary {
    #[serde(rename = "relation_part")]
    pub relations: Vec<CertEntry>,
    #[serde(rename = "high_degree_part")]
    pub high_degree: Vec<CertEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertEntry {
    pub id: String,
    pub coeff: String,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum MembershipError<C: Field> {
    #[error("target not in span; residual has {} terms", .residual.len())]
    NotInSpan { residual: NCPoly<C> },
    #[error("bounded search exhausted; residual has {} terms", .residual.len())]
    Inconclusive { residual: NCPoly<C> },
    #[error("certificate failed re-expansion")]
    VerificationFailed,
}

impl<C: Field> MembershipError<C> {
    pub fn residual(&self) -> Option<&NCPoly<C>> {
        match self {
            MembershipError::NotInSpan { residual }
            | MembershipError::Inconclusive { residual } => Some(residual),
            MembershipError::VerificationFailed => None,
        }
    }
}

/// Incremental row echelon form over a field, keyed by leading word.
///
/// Each stored row remembers the combination of inputs that produced it.
pub struct Echelon<C: Field> {
    rows: BTreeMap<Word, (NCPoly<C>, BTreeMap<usize, C>)>,
    inputs: usize,
}

impl<C: Field> Default for Echelon<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Field> Echelon<C> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            inputs: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `p` completely; returns residual and the combination subtracted.
    pub fn reduce(&self, p: &NCPoly<C>) -> (NCPoly<C>, BTreeMap<usize, C>) {
        let mut r = p.clone();
        let mut comb: BTreeMap<usize, C> = BTreeMap::new();
        let mut cursor: Option<Word> = None;
        loop {
            // largest word below the cursor that is a pivot
            let next = r
                .terms()
                .iter()
                .rev()
                .filter(|(w, _)| cursor.as_ref().map_or(true, |c| *w < c))
                .find(|(w, _)| self.rows.contains_key(*w))
                .map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = next else { break };
            let (row, rc) = &self.rows[&w];
            let f = c.div(&row.coeff(&w)).expect("pivot is nonzero");
            r.add_scaled(row, &f.neg());
            for (k, v) in rc {
                add_entry(&mut comb, *k, v.mul(&f));
            }
            cursor = Some(w);
        }
        (r, comb)
    }

    /// Insert an input row; returns false if it was dependent.
    pub fn insert(&mut self, p: &NCPoly<C>) -> bool {
        let idx = self.inputs;
        self.inputs += 1;
        let (r, comb) = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let mut comb: BTreeMap<usize, C> = comb.into_iter().map(|(k, v)| (k, v.neg())).collect();
        comb.insert(idx, C::one());
        let lead = r.leading().expect("nonzero").0.clone();
        self.rows.insert(lead, (r, comb));
        true
    }
}

fn add_entry<C: Field>(m: &mut BTreeMap<usize, C>, k: usize, v: C) {
    let s = match m.get(&k) {
        Some(old) => old.add(&v),
        None => v,
    };
    if s.is_zero() {
        m.remove(&k);
    } else {
        m.insert(k, s);
    }
}

/// Expand `Σ c·R` for a certificate whose ids are looked up in `relations`.
pub fn expand<C: Field>(
    cert: &Certificate<C>,
    relations: &[(String, NCPoly<C>)],
) -> Option<NCPoly<C>> {
    let by_id: BTreeMap<&str, &NCPoly<C>> =
        relations.iter().map(|(k, p)| (k.as_str(), p)).collect();
    let mut acc = NCPoly::zero();
    for (id, c) in cert.relations.iter().chain(cert.high_degree.iter()) {
        acc.add_scaled(by_id.get(id.as_str())?, c);
    }
    Some(acc)
}

/// Decide whether `target` lies in the linear span of `relations`.
pub fn span_membership<C: Field>(
    target: &NCPoly<C>,
    relations: &[(String, NCPoly<C>)],
) -> Result<Certificate<C>, MembershipError<C>> {
    let mut ech = Echelon::new();
    for (_, r) in relations {
        ech.insert(r);
    }
    let (res, comb) = ech.reduce(target);
    if !res.is_zero() {
        return Err(MembershipError::NotInSpan { residual: res });
    }
    let cert = Certificate {
        relations: comb
            .into_iter()
            .map(|(k, c)| (relations[k].0.clone(), c))
            .collect(),
        high_degree: Vec::new(),
    };
    match expand(&cert, relations) {
        Some(p) if p == *target => Ok(cert),
        _ => Err(MembershipError::VerificationFailed),
    }
}

fn words_up_to(alphabet: &[Gen], len: usize) -> Vec<Vec<Word>> {
    let mut by_len = vec![vec![Word::empty()]];
    for l in 1..=len {
        let mut next = Vec::new();
        for w in &by_len[l - 1] {
            for g in alphabet {
                let mut v = w.0.clone();
                v.push(*g);
                next.push(Word(v));
            }
        }
        by_len.push(next);
    }
    by_len
}

/// Search combinations `x·R·y` with `|x|+|y| ≤ multiplier_degree`.
///
/// Multipliers range over generators occurring in the target or relations,
/// and only instances no longer than the target are kept.
pub fn ideal_membership_bounded<C: Field>(
    target: &NCPoly<C>,
    relations: &[(String, NCPoly<C>)],
    multiplier_degree: usize,
) -> Result<Certificate<C>, MembershipError<C>> {
    let mut alphabet: BTreeSet<Gen> = target.generators();
    for (_, r) in relations {
        alphabet.extend(r.generators());
    }
    let alphabet: Vec<Gen> = alphabet.into_iter().collect();
    let words = words_up_to(&alphabet, multiplier_degree);
    let cap = target.max_len();
    let mut instances: Vec<(String, NCPoly<C>)> = Vec::new();
    for (id, r) in relations {
        let rl = r.max_len();
        for dl in 0..=multiplier_degree {
            for dr in 0..=(multiplier_degree - dl) {
                if rl + dl + dr > cap.max(rl) {
                    continue;
                }
                for x in &words[dl] {
                    for y in &words[dr] {
                        let label = if dl + dr == 0 {
                            id.clone()
                        } else {
                            format!("{x}·[{id}]·{y}")
                        };
                        instances.push((label, r.sandwich(x, y)));
                    }
                }
            }
        }
    }
    span_membership(target, &instances).map_err(|e| match e {
        MembershipError::NotInSpan { residual } => MembershipError::Inconclusive { residual },
        other => other,
    })
}

impl<C: Field> NCPoly<C> {
    /// Helper used by tests: `Σ c_α R_α` minus the target.
    pub fn residual_against(
        &self,
        cert: &Certificate<C>,
        relations: &[(String, NCPoly<C>)],
    ) -> Option<Self> {
        expand(cert, relations).map(|p| Ring::sub(self, &p))
    }
}
