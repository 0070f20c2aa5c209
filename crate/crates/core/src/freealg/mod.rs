//! Sparse noncommutative polynomials and exact membership certificates.

mod constants;
mod gen;
mod ncpoly;
mod solver;

pub use constants::{
    b_entry, g_entry, substitute_constants, AlgebraTag, Case, FreeAlgError, QParam,
};
pub use gen::{Family, Gen, Word};
pub use ncpoly::NCPoly;
pub use solver::{
    expand, ideal_membership_bounded, span_membership, CertEntry, Certificate, CertificateSummary,
    Echelon, MembershipError,
};

#[cfg(test)]
mod tests;
