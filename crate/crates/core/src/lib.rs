//! Exact verification of the degeneration of RTT-presented quantum loop
//! algebras (and their twisted analogues of types AI/AII) to the Yangian of
//! `gl_N` and the orthogonal/symplectic twisted Yangians.

pub mod classical;
pub mod cli;
pub mod coeffring;
pub mod filtration;
pub mod freealg;
pub mod qloop;
pub mod report;
pub mod rmat;
pub mod yangian;
