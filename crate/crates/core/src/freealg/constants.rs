use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gen::{Family, Gen};
use super::ncpoly::NCPoly;
use crate::coeffring::{HbarPoly, RatFun, Rational, Ring, Scalar};

/// Orthogonal or symplectic twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    O,
    Sp,
}

impl Case {
    /// `g^t = sign·g`.
    pub fn sign(self) -> i64 {
        match self {
            Case::O => 1,
            Case::Sp => -1,
        }
    }

    pub fn admits(self, n: usize) -> bool {
        n >= 1 && (self == Case::O || n % 2 == 0)
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::O => "o",
            Case::Sp => "sp",
        }
    }
}

impl FromStr for Case {
    type Err = FreeAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "o" => Ok(Case::O),
            "sp" => Ok(Case::Sp),
            _ => Err(FreeAlgError::UnknownAlgebraTag(s.to_string())),
        }
    }
}

/// Entry `g_ij` of the twisting matrix (1-based).
pub fn g_entry(case: Case, i: usize, j: usize) -> i64 {
    match case {
        Case::O => (i == j) as i64,
        Case::Sp => {
            if i % 2 == 1 && j == i + 1 {
                1
            } else if i % 2 == 0 && j + 1 == i {
                -1
            } else {
                0
            }
        }
    }
}

/// Entry `b_ij` of the quantum twisting matrix.
pub fn b_entry(case: Case, i: usize, j: usize) -> RatFun {
    match case {
        Case::O => RatFun::constant(Rational::from_integer(((i == j) as i64).into())),
        Case::Sp => {
            if i % 2 == 1 && j == i + 1 {
                RatFun::q()
            } else if i % 2 == 0 && j + 1 == i {
                RatFun::constant(Rational::from_integer((-1).into()))
            } else {
                RatFun::zero()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeAlgError {
    #[error("unknown algebra tag `{0}`")]
    UnknownAlgebraTag(String),
    #[error("coefficient field has no parameter q")]
    NoQParameter,
}

/// Which algebra's level-0 conventions to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraTag {
    Yangian,
    QuantumLoop,
    TwistedYangian(Case),
}

impl FromStr for AlgebraTag {
    type Err = FreeAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "yangian" => Ok(AlgebraTag::Yangian),
            "qloop" => Ok(AlgebraTag::QuantumLoop),
            "twisted-o" => Ok(AlgebraTag::TwistedYangian(Case::O)),
            "twisted-sp" => Ok(AlgebraTag::TwistedYangian(Case::Sp)),
            _ => Err(FreeAlgError::UnknownAlgebraTag(s.to_string())),
        }
    }
}

/// Coefficient fields that may carry the quantum parameter.
pub trait QParam: Scalar {
    fn q() -> Option<Self>;
}

impl QParam for RatFun {
    fn q() -> Option<Self> {
        Some(RatFun::q())
    }
}

impl QParam for Rational {
    fn q() -> Option<Self> {
        None
    }
}

impl QParam for HbarPoly {
    fn q() -> Option<Self> {
        None
    }
}

/// Replace level-0 symbols by their defining constants.
pub fn substitute_constants<C: QParam>(
    a: &NCPoly<C>,
    alg: AlgebraTag,
) -> Result<NCPoly<C>, FreeAlgError> {
    let int = |v: i64| C::from_int(v);
    match alg {
        AlgebraTag::Yangian => Ok(a.substitute(|g| {
            (g.family == Family::YangT && g.level == 0)
                .then(|| NCPoly::constant(int((g.i == g.j) as i64)))
        })),
        AlgebraTag::TwistedYangian(case) => Ok(a.substitute(|g| {
            (g.family == Family::TwS && g.level == 0)
                .then(|| NCPoly::constant(int(g_entry(case, g.i as usize, g.j as usize))))
        })),
        AlgebraTag::QuantumLoop => {
            let q = C::q().ok_or(FreeAlgError::NoQParameter)?;
            let qm1 = q.sub(&C::one());
            Ok(a.substitute(|g| {
                if g.level != 0 {
                    return None;
                }
                let (i, j) = g.idx();
                let (diag_family, upper_zero) = match g.family {
                    Family::T => (Family::Tau, i < j),
                    Family::TBar => (Family::TauBar, i > j),
                    _ => return None,
                };
                if upper_zero {
                    Some(NCPoly::zero())
                } else if i == j {
                    let mut p = NCPoly::one();
                    p.add_scaled(&NCPoly::gen(Gen::new(diag_family, i, i, 0)), &qm1);
                    Some(p)
                } else {
                    None
                }
            }))
        }
    }
}
