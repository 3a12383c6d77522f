//! Entanglement of three-qubit states under local dephasing.
//!
//! The crate models noisy mixtures of GHZ-class and W-class states evolving
//! under independent phase damping on each qubit, and provides the tools to
//! track how their entanglement decays: concurrence of embedded pairs,
//! negativity across every bipartition, tri-partite negativity, projector
//! witnesses, closed-form decay curves with threshold solvers, and a
//! three-qubit phase-flip code whose syndrome branches can be followed one
//! by one.
//!
//! Everything is generic over the real scalar (`f32` or `f64`) through the
//! [`Real`] trait; the `*64` aliases at the crate root are what most callers
//! want.
//!
//! Convention used throughout: qubit 1 is the most significant bit, so the
//! basis state |q1 q2 q3> sits at index 4*q1 + 2*q2 + q3. Reported witness
//! values follow the detection sign, minus the expectation value, so that
//! positive means detected.

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod qec;
pub mod scalar;
pub mod states;
pub mod witnesses;

pub use error::{Error, Result};
pub use scalar::{Real, Tolerances};

pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type DensityMatrix64 = linalg::DensityMatrix<f64>;
pub type StateVector64 = states::StateVector<f64>;
pub type KrausSet64 = channels::KrausSet<f64>;
pub type Witness64 = witnesses::Witness<f64>;
pub type CurveSample64 = dynamics::CurveSample<f64>;
pub type ThresholdResult64 = dynamics::ThresholdResult<f64>;
pub type QecRun64 = qec::QecRun<f64>;

pub type ComplexMatrix32 = linalg::ComplexMatrix<f32>;
pub type DensityMatrix32 = linalg::DensityMatrix<f32>;
pub type StateVector32 = states::StateVector<f32>;
