use std::collections::BTreeMap;

use super::{laurent, ClassicalError, LoopElem};
use crate::coeffring::{rat, Rational, Ring};
use crate::freealg::{Family, Gen};
use crate::report::{Check, Report};

/// Sum of pure tensors of elementary matrices; key `k` lists `(row, col)` per slot.
pub type ProbeTensor = BTreeMap<Vec<(u8, u8)>, Rational>;

fn falling(t: i64, k: u32) -> i64 {
    (0..k as i64).map(|d| t - d).product()
}

/// `∂_α ∘ f^{⊗r} ∘ Δ` applied to `p`, for an `N × N` matrix index range.
pub fn separation_probe(
    p: &LoopElem,
    n: usize,
    alpha: &[u32],
) -> Result<ProbeTensor, ClassicalError> {
    let r = alpha.len();
    let len = p.max_len();
    if len > r {
        return Err(ClassicalError::ArityTooSmall { arity: r, len });
    }
    let mut out = ProbeTensor::new();
    for (w, c) in p.terms() {
        accumulate(&w.0, c, n, alpha, &mut out)?;
    }
    out.retain(|_, v| *v != rat(0));
    Ok(out)
}

fn accumulate(
    w: &[Gen],
    c: &Rational,
    n: usize,
    alpha: &[u32],
    out: &mut ProbeTensor,
) -> Result<(), ClassicalError> {
    let r = alpha.len();
    if let Some(g) = w.iter().find(|g| g.family != Family::Loop) {
        return Err(ClassicalError::UnmappedGenerator(*g));
    }
    // each letter goes to one tensor slot (Δ is primitive on generators)
    'assign: for code in 0..r.pow(w.len() as u32) {
        let mut slots: Vec<Vec<&Gen>> = vec![Vec::new(); r];
        let mut x = code;
        for g in w {
            slots[x % r].push(g);
            x /= r;
        }
        let mut scale = c.clone();
        let mut mats: Vec<Option<(u8, u8)>> = Vec::with_capacity(r);
        for (slot, letters) in slots.iter().enumerate() {
            let t: i64 = letters.iter().map(|g| g.level as i64).sum();
            let ff = falling(t, alpha[slot]);
            if ff == 0 {
                continue 'assign;
            }
            scale *= rat(ff);
            let mut m: Option<(u8, u8)> = None;
            for g in letters {
                m = match m {
                    None => Some((g.i, g.j)),
                    Some((a, b)) if b == g.i => Some((a, g.j)),
                    Some(_) => continue 'assign,
                };
            }
            mats.push(m);
        }
        let mut keys: Vec<Vec<(u8, u8)>> = vec![Vec::new()];
        for m in &mats {
            let choices: Vec<(u8, u8)> = match m {
                Some(e) => vec![*e],
                None => (1..=n as u8).map(|a| (a, a)).collect(),
            };
            keys = keys
                .into_iter()
                .flat_map(|k| {
                    choices.iter().map(move |e| {
                        let mut k = k.clone();
                        k.push(*e);
                        k
                    })
                })
                .collect();
        }
        for k in keys {
            *out.entry(k).or_insert_with(|| rat(0)) += &scale;
        }
    }
    Ok(())
}

pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Ordered monomials `Π E_{i_d j_d}(s-1)^{m_d}` with `Σ m_d = m`, nondecreasing in `(m_d, i_d, j_d)`,
/// every `m_d ≥ min_letter`.
pub fn ordered_monomials(
    m: u32,
    n: usize,
    max_len: usize,
    min_letter: u32,
) -> Vec<(String, LoopElem)> {
    let mut letters = Vec::new();
    for md in min_letter..=m {
        for i in 1..=n {
            for j in 1..=n {
                letters.push((md, i, j));
            }
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
    while let Some((word, deg)) = stack.pop() {
        if deg == m {
            let mut p = LoopElem::one();
            let mut name = String::new();
            for &k in &word {
                let (md, i, j) = letters[k];
                p = p.mul(&laurent(i, j, 0, md as i32, false));
                name.push_str(&format!("E{i}{j}(s-1)^{md}"));
            }
            out.push((if name.is_empty() { "1".into() } else { name }, p));
        }
        if word.len() == max_len {
            continue;
        }
        let start = word.last().copied().unwrap_or(0);
        for (k, letter) in letters.iter().enumerate().skip(start) {
            let d = deg + letter.0;
            if d <= m {
                let mut w = word.clone();
                w.push(k);
                stack.push((w, d));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

type Column = BTreeMap<(usize, Vec<(u8, u8)>), Rational>;

fn rank(vectors: &[Column]) -> usize {
    let mut pivots: BTreeMap<(usize, Vec<(u8, u8)>), Column> = BTreeMap::new();
    for v in vectors {
        let mut v = v.clone();
        loop {
            v.retain(|_, c| *c != rat(0));
            let Some(lead) = v.keys().next().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                Some(row) => {
                    let f = v[&lead].clone() / row[&lead].clone();
                    for (k, c) in row {
                        *v.entry(k.clone()).or_insert_with(|| rat(0)) -= &f * c;
                    }
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Stack the probes with `Σα = m` at arity `max_len` over the ordered monomials and check full column rank.
///
/// Letters `E_ij (s-1)^0` are excluded unless `min_letter = 0`: the central
/// `Σ_i E_ii` acts on every tensor slot as the identity, so such monomials are
/// not separated by these probes.
pub fn monomial_independence_check(
    m: u32,
    n: usize,
    max_len: usize,
    min_letter: u32,
    inject_duplicate: bool,
) -> Result<Report, ClassicalError> {
    let mut monos = ordered_monomials(m, n, max_len, min_letter);
    if inject_duplicate {
        if let Some(last) = monos.last().cloned() {
            monos.push((format!("{}(dup)", last.0), last.1));
        }
    }
    let alphas = compositions(m, max_len.max(1));
    let mut columns = Vec::with_capacity(monos.len());
    for (_, p) in &monos {
        let mut col = Column::new();
        for (ai, a) in alphas.iter().enumerate() {
            for (k, c) in separation_probe(p, n, a)? {
                col.insert((ai, k), c);
            }
        }
        columns.push(col);
    }
    let rk = rank(&columns);
    if rk < monos.len() {
        return Err(ClassicalError::RankDeficient {
            rank: rk,
            count: monos.len(),
        });
    }
    let mut report = Report::new(format!("monomial-independence-m{m}"));
    report.push(Check::pass(format!(
        "rank {rk} of {} ordered monomials",
        monos.len()
    )));
    Ok(report)
}
