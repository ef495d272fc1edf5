//! Brute-force reference for the cloner: the full `R` operator, its
//! spectrum, and checks of the reduced solution against it.

pub mod rmatrix;
pub mod verify;

pub use rmatrix::{
    brute_force_solve, build_r, build_r_haar_mc, mc_partial, BruteForce, McAccumulator, McEstimate, RMatrix,
};
pub use verify::{
    covariance_probes, in_verified_range, verify_ansatz, verify_condition, verify_covering_projection,
    AnsatzReport, CommutatorGram, ConditionReport, CoveringReport,
};
