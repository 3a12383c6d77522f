//! Projector-based entanglement witnesses.
//!
//! Every witness here is `c I - P` for a pure-state projector `P` and a
//! class-dependent offset `c`. A state is detected when the expectation
//! `Tr(W rho)` goes negative; reported curves elsewhere use the detection
//! sign `-Tr(W rho)` so that positive means detected.

use crate::error::{Error, Result};
use crate::linalg::{hadamard, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::states::{ghz_state, rotated_ghz, w_state, StateVector};

/// The six witnesses the decay study uses.
///
/// `G` and `W2` sit on the GHZ projector with offsets 3/4 and 1/2, `W1` on
/// the W projector with offset 2/3, `Ggb` and `Wgb` on a rotated-GHZ
/// projector with offsets 3/4 and 1/2, and `Wh` on the Hadamard-rotated GHZ
/// projector with offset 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessLabel {
    G,
    W1,
    W2,
    Ggb,
    Wgb,
    Wh,
}

impl WitnessLabel {
    pub fn name(self) -> &'static str {
        match self {
            WitnessLabel::G => "W_G",
            WitnessLabel::W1 => "W_W1",
            WitnessLabel::W2 => "W_W2",
            WitnessLabel::Ggb => "W_Ggb",
            WitnessLabel::Wgb => "W_Wgb",
            WitnessLabel::Wh => "W_WH",
        }
    }

    /// Which entanglement class a negative expectation certifies.
    pub fn detects(self) -> DetectionClass {
        match self {
            WitnessLabel::G | WitnessLabel::Ggb => DetectionClass::GhzClass,
            _ => DetectionClass::WClass,
        }
    }

    fn needs_angle(self) -> bool {
        matches!(self, WitnessLabel::Ggb | WitnessLabel::Wgb)
    }

    fn offset(self) -> f64 {
        match self {
            WitnessLabel::G | WitnessLabel::Ggb => 0.75,
            WitnessLabel::W1 => 2.0 / 3.0,
            _ => 0.5,
        }
    }
}

impl std::fmt::Display for WitnessLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// States beyond which class the witness certifies on detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionClass {
    /// Detection certifies the state is outside the W class.
    GhzClass,
    /// Detection certifies genuine tri-partite entanglement.
    WClass,
}

/// A witness observable with its label.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    label: WitnessLabel,
    observable: ComplexMatrix<T>,
}

impl<T: Real> Witness<T> {
    pub fn label(&self) -> WitnessLabel {
        self.label
    }

    pub fn observable(&self) -> &ComplexMatrix<T> {
        &self.observable
    }
}

/// Hadamard on every qubit applied to the GHZ state.
fn hadamard_ghz<T: Real>() -> Result<StateVector<T>> {
    let h = hadamard::<T>();
    let h3 = h.kron(&h)?.kron(&h)?;
    StateVector::new(h3.mul_vec(ghz_state::<T>().amplitudes()))
}

/// Builds the witness observable. `theta` is required by the rotated pair
/// `Ggb`/`Wgb` and ignored by the fixed-projector witnesses.
pub fn build<T: Real>(label: WitnessLabel, theta: Option<T>) -> Result<Witness<T>> {
    let target: StateVector<T> = match label {
        WitnessLabel::G | WitnessLabel::W2 => ghz_state(),
        WitnessLabel::W1 => w_state(),
        WitnessLabel::Ggb | WitnessLabel::Wgb => {
            let angle = theta.ok_or(Error::MissingAngle(label.name()))?;
            rotated_ghz(angle)?
        }
        WitnessLabel::Wh => hadamard_ghz()?,
    };
    let projector = target.projector()?;
    let observable = ComplexMatrix::identity(8)?
        .scale_re(T::of(label.offset()))
        .sub(projector.matrix());
    Ok(Witness { label, observable })
}

/// Expectation value `Tr(W rho)`; negative means detected.
pub fn expectation<T: Real>(witness: &Witness<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if witness.observable.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: witness.observable.dim(),
            right: rho.dim(),
        });
    }
    let n = rho.dim();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + (witness.observable[(i, j)] * rho.matrix()[(j, i)]).re;
        }
    }
    Ok(acc)
}

/// Angle whose rotated GHZ state is closest to the gb state: 2 atan(1/4).
pub fn gb_angle<T: Real>() -> T {
    T::of(2.0) * (T::one() / T::of(4.0)).atan()
}

fn wrap_angle<T: Real>(theta: T) -> T {
    let tau = T::of(std::f64::consts::TAU);
    let wrapped = theta - tau * (theta / tau).floor();
    // floor rounding can land exactly on tau; fold it back
    if wrapped >= tau {
        wrapped - tau
    } else {
        wrapped
    }
}

/// Finds the angle minimizing `Tr(W(theta) |target><target|)` for one of
/// the rotated witnesses, by a coarse periodic scan followed by golden
/// section refinement down to `BISECT_TOL`. Returns the angle in
/// `[0, 2 pi)` and the minimal expectation value.
pub fn optimize_theta<T: Real>(
    target: &StateVector<T>,
    label: WitnessLabel,
) -> Result<(T, T)> {
    if !label.needs_angle() {
        return Err(Error::NotParameterized(label.name()));
    }
    let rho = target.projector()?;
    let value = |theta: T| -> Result<T> {
        expectation(&build(label, Some(wrap_angle(theta)))?, &rho)
    };
    let tau = T::of(std::f64::consts::TAU);
    let scan_points = 720usize;
    let step = tau / T::of(scan_points as f64);
    let mut best_i = 0usize;
    let mut best_v = T::infinity();
    for i in 0..scan_points {
        let v = value(T::of(i as f64) * step)?;
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let center = T::of(best_i as f64) * step;
    let mut lo = center - step;
    let mut hi = center + step;
    let inv_phi = T::of(0.618_033_988_749_894_9);
    while hi - lo > T::BISECT_TOL {
        let mid_lo = hi - inv_phi * (hi - lo);
        let mid_hi = lo + inv_phi * (hi - lo);
        if value(mid_lo)? <= value(mid_hi)? {
            hi = mid_hi;
        } else {
            lo = mid_lo;
        }
    }
    let mut theta = wrap_angle((lo + hi) * T::of(0.5));
    // a minimum at zero reached from below canonicalizes to zero, not 2 pi
    if tau - theta < T::of(1e-9) {
        theta = T::zero();
    }
    Ok((theta, value(theta)?))
}
