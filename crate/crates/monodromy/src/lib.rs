//! Monodromy of the mirror-family hypergeometric operators: Frobenius bases
//! at 0 and infinity, ε-jet transition matrices, assembled monodromy suites,
//! and three independent numerical oracles (series evaluation, ODE transport
//! along loops, Mellin-Barnes quadrature).

pub mod error;
pub mod frobenius;
pub mod hyper;
pub mod linalg;
pub mod mb;
pub mod ode;
pub mod table1;
pub mod transition;

pub use error::MonodromyError;
pub use hyper::hypergeometric_eval;
pub use linalg::CMatrix;
pub use mb::mellin_barnes_eval;
pub use ode::{ode_transport, Loop};
pub use transition::{
    b_jet, b_jet_mirror_closed_form, m0_matrix, m_infinity_diag, monodromy_suite, transition_matrix, HypergeometricParams,
    MonodromySuite,
};
