//! Real scalar abstraction and the numerical tolerances tied to it.

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the whole crate is generic over.
///
/// The associated constants are absolute tolerances scaled to the precision
/// of the type. They are part of the numerical contract, not tuning knobs:
/// tests and the acceptance suite pin their values.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + 'static
{
    /// Absolute tolerance for equality checks on norms, traces and entries.
    const EQ_TOL: Self;
    /// How far below zero an eigenvalue may sit before positivity is rejected.
    const PSD_SLACK: Self;
    /// The Jacobi eigensolver stops once the off-diagonal norm falls below
    /// this fraction of the full matrix norm.
    const JACOBI_REL_TOL: Self;
    /// Interval width at which threshold bisection stops.
    const BISECT_TOL: Self;

    /// Converts an `f64` literal; every literal used by this crate fits.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in every Real type")
    }

    /// Lossy view of the value as `f64`, used in error reports.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const EQ_TOL: Self = 1e-12;
    const PSD_SLACK: Self = 1e-10;
    const JACOBI_REL_TOL: Self = 1e-14;
    const BISECT_TOL: Self = 1e-8;
}

impl Real for f32 {
    const EQ_TOL: Self = 1e-5;
    const PSD_SLACK: Self = 1e-4;
    const JACOBI_REL_TOL: Self = 1e-6;
    const BISECT_TOL: Self = 1e-4;
}

/// Tolerances used when validating density matrices and state vectors.
///
/// A single record threaded through every validation site, so there is one
/// source of truth for what counts as Hermitian, normalized and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Hermiticity, unit trace and unit norm must hold to within this bound.
    pub equality: T,
    /// Eigenvalues of a density matrix may undershoot zero by this much.
    pub psd_slack: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            equality: T::EQ_TOL,
            psd_slack: T::PSD_SLACK,
        }
    }
}
