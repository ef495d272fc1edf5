//! Dense complex linear algebra for registers of equal-dimension qudits.

pub mod eigen;
pub mod operator;
pub mod random;
pub mod register;
pub mod state;
pub mod weyl;

pub use num_complex::Complex64 as C64;

pub use eigen::{hermitian_eig, hermitian_eig_blocked, EigenDecomposition};
pub use operator::DenseOperator;
pub use random::{haar_qudit, haar_state, haar_unitary, RngSeed};
pub use register::QuditRegister;
pub use state::StateVector;
pub use weyl::{bell_basis_state, bell_projector, bell_state, weyl_operator, weyl_set};

/// Applies `u` on every site of `sites`, i.e. `u^{⊗|sites|}` on the state.
pub fn apply_on_sites(state: &mut StateVector, sites: &[usize], u: &DenseOperator) -> crate::Result<()> {
    for &s in sites {
        state.apply_local(s, u)?;
    }
    Ok(())
}
