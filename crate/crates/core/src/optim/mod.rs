//! Constrained quadratic maximization lemmas and the extremal Ricci solver.

mod eigen;
mod lemmas;

pub use eigen::{max_ricci, symmetric_eigen, SymmetricEigen, MAX_SWEEPS};
pub use lemmas::{
    brute_force_max, brute_force_max_with, f1_max_closed, f2_max_closed, ConstrainedQuadratic, LemmaKind, LemmaMaximum,
    OracleMaximum, ORACLE_SAMPLES, ORACLE_SEED,
};
