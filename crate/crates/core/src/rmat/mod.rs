//! R-matrices, tensor legs, and coefficient extraction from matrix relations.

mod expand;
mod legmat;
mod rmatrix;

pub use expand::{
    expand_matrix_relation, lift, series_matrix, Direction, ExpBox, NCMat, RelKey, RelationFamily,
};
pub use legmat::{all_indices, Idx, LegMat};
pub use rmatrix::{
    b_matrix, check_dim, check_unitarity, check_ybe, check_ybe_with, g_matrix, permutation,
    q_matrix, quantum_r, transpose_first, yangian_r, yangian_r_cleared, yangian_r_laurent,
    ybe_defect, RKind, Subst,
};

use crate::coeffring::Var;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RmatError {
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("truncation insufficient for exponent {0:?}")]
    TruncationInsufficient([i32; 3]),
    #[error("substitution outside domain in {0:?}")]
    SubstitutionOutsideDomain(Var),
    #[error("incompatible truncation in {0:?}")]
    IncompatibleVariables(Var),
}

#[cfg(test)]
mod tests;
