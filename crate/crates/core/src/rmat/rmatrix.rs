use crate::coeffring::{Bound, HbarPoly, RatFun, Ring, Scalar, SeriesError, TruncatedSeries, Var};
use crate::freealg::{b_entry, g_entry, Case};

use super::legmat::{Idx, LegMat};
use super::RmatError;

fn mono<C: Scalar>(c: C, exps: [i32; 3]) -> TruncatedSeries<C> {
    TruncatedSeries::monomial(c, exps)
}

fn var_exp(v: Var, e: i32) -> [i32; 3] {
    let mut x = [0; 3];
    x[v as usize] = e;
    x
}

/// Linear form `Σ c_k x_k` in the spectral variables.
fn linear<C: Scalar>(form: [i64; 3]) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::zero();
    for (k, c) in form.iter().enumerate() {
        if *c != 0 {
            let mut e = [0; 3];
            e[k] = 1;
            s = s.add(&mono(C::from_int(*c), e)).expect("exact");
        }
    }
    s
}

pub fn check_dim(n: usize) -> Result<(), RmatError> {
    if n == 0 || n > 9 {
        return Err(RmatError::InvalidDimension(n));
    }
    Ok(())
}

/// `P = Σ E_ij ⊗ E_ji`.
pub fn permutation<C: Scalar>(n: usize) -> LegMat<C> {
    LegMat::from_fn2(n, |i, j, k, l| {
        if i == l && j == k {
            TruncatedSeries::constant(C::one())
        } else {
            TruncatedSeries::zero()
        }
    })
}

/// `Q = P^{t_1} = Σ E_ji ⊗ E_ji`.
pub fn q_matrix<C: Scalar>(n: usize) -> LegMat<C> {
    permutation::<C>(n).transpose_leg(0)
}

/// `R(u-v) = 1 - ħ(u-v)^{-1}P` with `(u-v)^{-1} = Σ_k u^{-1-k} v^k`, valid down to `u^{-order}`.
pub fn yangian_r(n: usize, order: u32) -> Result<LegMat<HbarPoly>, RmatError> {
    check_dim(n)?;
    let floor = -(order as i32);
    let mut inv = TruncatedSeries::zero();
    for k in 0..order as i32 {
        inv = inv.add(&mono(HbarPoly::one(), [-1 - k, k, 0]))?;
    }
    let inv = inv.with_bound(Var::U, Bound::Below(floor));
    let coef = inv.map(|c| c.mul(&HbarPoly::hbar()).neg());
    Ok(LegMat::from_fn2(n, |i, j, k, l| {
        let mut e = TruncatedSeries::zero().with_bound(Var::U, Bound::Below(floor));
        if i == j && k == l {
            e = e
                .add(&TruncatedSeries::constant(HbarPoly::one()))
                .expect("same window");
        }
        if i == l && j == k {
            e = e.add(&coef).expect("same window");
        }
        e
    }))
}

/// `z·R(z) = z - ħP` with `z` a linear form in the spectral variables.
pub fn yangian_r_cleared(n: usize, z: [i64; 3]) -> Result<LegMat<HbarPoly>, RmatError> {
    check_dim(n)?;
    let zf = linear::<HbarPoly>(z);
    let p = permutation::<HbarPoly>(n).map_coeffs(|c| c.mul(&HbarPoly::hbar()).neg());
    Ok(LegMat::identity(n, 2, HbarPoly::one())
        .map_entries(|s| s.mul(&zf))?
        .add(&p)?)
}

/// `R(±x) = 1 ∓ ħ x^{-1} P`, exact in `x`.
pub fn yangian_r_laurent(n: usize, x: Var, sign: i64) -> Result<LegMat<HbarPoly>, RmatError> {
    check_dim(n)?;
    let c = HbarPoly::hbar().mul(&HbarPoly::from_int(-sign));
    let p = permutation::<HbarPoly>(n).map_entries(|s| s.mul(&mono(c.clone(), var_exp(x, -1))))?;
    Ok(LegMat::identity(n, 2, HbarPoly::one()).add(&p)?)
}

/// `R_q(x, y)`.
pub fn quantum_r(n: usize, x: Var, y: Var) -> Result<LegMat<RatFun>, RmatError> {
    check_dim(n)?;
    let qq = RatFun::q_minus_qinv();
    Ok(LegMat::from_fn2(n, |i, j, k, l| {
        if i == j && k == l {
            let d = if i == k { 1 } else { 0 };
            mono(RatFun::q_pow(-d), var_exp(x, 1))
                .sub(&mono(RatFun::q_pow(d), var_exp(y, 1)))
                .expect("exact")
        } else if i == l && j == k && i > j {
            mono(qq.neg(), var_exp(x, 1))
        } else if i == l && j == k && i < j {
            mono(qq.neg(), var_exp(y, 1))
        } else {
            TruncatedSeries::zero()
        }
    }))
}

/// Twisting matrix `G` (single leg).
pub fn g_matrix<C: Scalar>(case: Case, n: usize) -> LegMat<C> {
    LegMat::from_fn(n, |i, j| {
        TruncatedSeries::constant(C::from_int(g_entry(case, i, j)))
    })
}

/// Quantum twisting matrix `B` (single leg).
pub fn b_matrix(case: Case, n: usize) -> LegMat<RatFun> {
    LegMat::from_fn(n, |i, j| TruncatedSeries::constant(b_entry(case, i, j)))
}

/// Spectral substitution applied after a partial transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subst {
    /// `x ↦ Σ c_k x_k`.
    Linear(Var, [i64; 3]),
    /// `x ↦ x^{-1}`.
    Invert(Var),
}

/// Transpose in the first leg, then substitute exactly.
pub fn transpose_first<C: Scalar>(
    m: &LegMat<C>,
    subst: Option<Subst>,
) -> Result<LegMat<C>, RmatError> {
    if m.legs() != 2 {
        return Err(RmatError::InvalidDimension(m.legs()));
    }
    let t = m.transpose_leg(0);
    let out = match subst {
        None => t,
        Some(Subst::Linear(v, img)) => t.map_entries(|s| s.substitute_linear(v, img))?,
        Some(Subst::Invert(v)) => t.map_entries(|s| s.invert_var(v))?,
    };
    Ok(out)
}

/// Which R-matrix to test in the Yang–Baxter equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RKind {
    Yangian,
    Quantum,
}

/// `R12 R13 R23 = R23 R13 R12` on three legs, spectral arguments `(u,v), (u,w), (v,w)`.
pub fn check_ybe(kind: RKind, n: usize) -> Result<bool, RmatError> {
    check_ybe_with(kind, n, false)
}

/// As [`check_ybe`]; with `flip`, the `E_12 ⊗ E_21` entry of `R13` is negated
/// (a negative control, meaningful for `n ≥ 2`).
pub fn check_ybe_with(kind: RKind, n: usize, flip: bool) -> Result<bool, RmatError> {
    Ok(ybe_defect(kind, n, flip)?.is_none())
}

/// First nonzero entry `(row, col)` of `R12 R13 R23 - R23 R13 R12`, if any.
pub fn ybe_defect(kind: RKind, n: usize, flip: bool) -> Result<Option<(Idx, Idx)>, RmatError> {
    use Var::*;
    fn ybe<C: Scalar>(
        flip: bool,
        r: impl Fn(Var, Var) -> Result<LegMat<C>, RmatError>,
    ) -> Result<Option<(Idx, Idx)>, RmatError> {
        let r12 = r(U, V)?.place(&[0, 1], 3);
        let mut r13 = r(U, W)?;
        if flip {
            let e = r13.get([1, 2, 0], [2, 1, 0]);
            r13.set([1, 2, 0], [2, 1, 0], e.neg());
        }
        let r13 = r13.place(&[0, 2], 3);
        let r23 = r(V, W)?.place(&[1, 2], 3);
        let lhs = LegMat::product(&[&r12, &r13, &r23])?;
        let rhs = LegMat::product(&[&r23, &r13, &r12])?;
        let d = lhs.sub(&rhs)?;
        let first = d.entries().find(|(_, s)| !s.is_zero()).map(|(k, _)| *k);
        Ok(first)
    }
    let flip = flip && n >= 2;
    match kind {
        RKind::Yangian => ybe(flip, |x, y| {
            let mut z = [0i64; 3];
            z[x as usize] += 1;
            z[y as usize] -= 1;
            yangian_r_cleared(n, z)
        }),
        RKind::Quantum => ybe(flip, |x, y| quantum_r(n, x, y)),
    }
}

/// `R(u) R(-u) = (1 - ħ² u^{-2}) Id`.
pub fn check_unitarity(n: usize) -> Result<bool, RmatError> {
    let a = yangian_r_laurent(n, Var::U, 1)?;
    let b = yangian_r_laurent(n, Var::U, -1)?;
    let h2 = HbarPoly::hbar().mul(&HbarPoly::hbar()).neg();
    let scalar = TruncatedSeries::constant(HbarPoly::one()).add(&mono(h2, [-2, 0, 0]))?;
    let expect = LegMat::identity(n, 2, HbarPoly::one()).map_entries(|s| s.mul(&scalar))?;
    Ok(a.mul(&b)?.sub(&expect)?.is_zero())
}

impl From<SeriesError> for RmatError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::OutsideWindow(x) => RmatError::TruncationInsufficient(x),
            SeriesError::SubstitutionOutsideDomain(v) => RmatError::SubstitutionOutsideDomain(v),
            SeriesError::IncompatibleVariables(v) => RmatError::IncompatibleVariables(v),
        }
    }
}
