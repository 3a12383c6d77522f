//! Pure three-qubit states, their standard five-amplitude form, and the
//! white-noise mixtures the decay curves start from.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{qubits_for_dim, validate_density, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;

/// Unit-norm state vector on 1, 2 or 3 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes after checking the dimension and unit norm.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if !matches!(amplitudes.len(), 2 | 4 | 8) {
            return Err(Error::UnsupportedDimension(amplitudes.len()));
        }
        let norm = norm_of(&amplitudes);
        if (norm - T::one()).abs() > T::EQ_TOL {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex<T> {
        self.amplitudes[i]
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn qubit_count(&self) -> usize {
        qubits_for_dim(self.dim())
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim(), other.dim(), "state dimensions must agree");
        let mut acc = Complex::zero();
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            acc = acc + a.conj() * b;
        }
        acc
    }

    /// Rank-one density matrix |self><self|.
    pub fn projector(&self) -> Result<DensityMatrix<T>> {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        validate_density(m)
    }
}

fn norm_of<T: Real>(amplitudes: &[Complex<T>]) -> T {
    let mut acc = T::zero();
    for a in amplitudes {
        acc = acc + a.norm_sqr();
    }
    acc.sqrt()
}

/// Standard form of a three-qubit pure state:
///
/// `l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>`
///
/// with every `l` nonnegative and `theta` in `[0, 2 pi)`. The squared
/// amplitudes must sum to 1 within 100 times the equality tolerance;
/// drift beyond the equality tolerance itself is renormalized away, smaller
/// drift leaves the amplitudes untouched.
pub fn standard_form<T: Real>(lambdas: [T; 5], theta: T) -> Result<StateVector<T>> {
    for (k, &l) in lambdas.iter().enumerate() {
        if !(l >= T::zero()) || !(l <= T::one()) {
            let names = ["l0", "l1", "l2", "l3", "l4"];
            return Err(Error::OutOfRange {
                name: names[k],
                value: l.as_f64(),
                lo: 0.0,
                hi: 1.0,
            });
        }
    }
    check_angle(theta)?;
    let sum_sq = lambdas.iter().fold(T::zero(), |acc, &l| acc + l * l);
    let drift = (sum_sq - T::one()).abs();
    if drift > T::of(100.0) * T::EQ_TOL {
        return Err(Error::NotNormalized {
            norm: sum_sq.sqrt().as_f64(),
        });
    }
    let mut amplitudes = vec![Complex::zero(); 8];
    amplitudes[0] = Complex::new(lambdas[0], T::zero());
    amplitudes[4] = Complex::from_polar(lambdas[1], theta);
    amplitudes[5] = Complex::new(lambdas[2], T::zero());
    amplitudes[6] = Complex::new(lambdas[3], T::zero());
    amplitudes[7] = Complex::new(lambdas[4], T::zero());
    if drift > T::EQ_TOL {
        let inv = T::one() / sum_sq.sqrt();
        for a in &mut amplitudes {
            *a = a.scale(inv);
        }
    }
    StateVector::new(amplitudes)
}

fn check_angle<T: Real>(theta: T) -> Result<()> {
    let two_pi = T::of(std::f64::consts::TAU);
    if !(theta >= T::zero()) || theta >= two_pi {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta.as_f64(),
            lo: 0.0,
            hi: std::f64::consts::TAU,
        });
    }
    Ok(())
}

/// (|000> + |111>)/sqrt(2).
pub fn ghz_state<T: Real>() -> StateVector<T> {
    let r = T::of(std::f64::consts::FRAC_1_SQRT_2);
    standard_form([r, T::zero(), T::zero(), T::zero(), r], T::zero())
        .expect("canonical amplitudes are normalized")
}

/// (|001> + |010> + |100>)/sqrt(3), which lies outside the standard form's
/// amplitude pattern and is built directly.
pub fn w_state<T: Real>() -> StateVector<T> {
    let r = Complex::new(T::one() / T::of(3.0).sqrt(), T::zero());
    let mut amplitudes = vec![Complex::zero(); 8];
    amplitudes[1] = r;
    amplitudes[2] = r;
    amplitudes[4] = r;
    StateVector::new(amplitudes).expect("canonical amplitudes are normalized")
}

/// (2|000> + |110> + 2|111>)/3, a GHZ-class state whose closest rotated GHZ
/// sits at a nontrivial angle.
pub fn gb_state<T: Real>() -> StateVector<T> {
    let two_thirds = T::of(2.0) / T::of(3.0);
    let third = T::one() / T::of(3.0);
    standard_form([two_thirds, T::zero(), T::zero(), third, two_thirds], T::zero())
        .expect("canonical amplitudes are normalized")
}

/// GHZ state with a rotation applied to the third qubit:
///
/// `R(theta)|0> = cos(theta/2)|0> - sin(theta/2)|1>`
/// `R(theta)|1> = sin(theta/2)|0> + cos(theta/2)|1>`
///
/// acting on the last qubit of (|000> + |111>)/sqrt(2), giving
/// `(c|000> - s|001> + s|110> + c|111>)/sqrt(2)`. `theta` must lie in
/// `[0, 2 pi)`.
pub fn rotated_ghz<T: Real>(theta: T) -> Result<StateVector<T>> {
    check_angle(theta)?;
    let half = theta * T::of(0.5);
    let c = half.cos();
    let s = half.sin();
    let r = T::of(std::f64::consts::FRAC_1_SQRT_2);
    let mut amplitudes = vec![Complex::zero(); 8];
    amplitudes[0] = Complex::new(c * r, T::zero());
    amplitudes[1] = Complex::new(-(s * r), T::zero());
    amplitudes[6] = Complex::new(s * r, T::zero());
    amplitudes[7] = Complex::new(c * r, T::zero());
    StateVector::new(amplitudes)
}

/// White-noise mixture `(1-q)/8 I + q |psi><psi|` of a three-qubit state.
pub fn noisy_mixture<T: Real>(psi: &StateVector<T>, q: T) -> Result<DensityMatrix<T>> {
    if psi.dim() != 8 {
        return Err(Error::DimensionMismatch {
            left: 8,
            right: psi.dim(),
        });
    }
    if !(q >= T::zero()) || q > T::one() {
        return Err(Error::OutOfRange {
            name: "q",
            value: q.as_f64(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let bg = (T::one() - q) / T::of(8.0);
    let mut m = ComplexMatrix::zeros(8)?;
    for i in 0..8 {
        for j in 0..8 {
            let pure = psi.amplitude(i) * psi.amplitude(j).conj();
            m[(i, j)] = pure.scale(q);
        }
        m[(i, i)] = m[(i, i)] + Complex::new(bg, T::zero());
    }
    validate_density(m)
}

/// The three state families whose noisy mixtures the decay curves cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ghz,
    W,
    Gb,
}

impl Family {
    pub fn state<T: Real>(self) -> StateVector<T> {
        match self {
            Family::Ghz => ghz_state(),
            Family::W => w_state(),
            Family::Gb => gb_state(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::Gb => "gb",
        }
    }

    pub const ALL: [Family; 3] = [Family::Ghz, Family::W, Family::Gb];
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A family label together with its mixing weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyFamily<T> {
    pub family: Family,
    pub q: T,
}

impl<T: Real> NoisyFamily<T> {
    pub fn density(&self) -> Result<DensityMatrix<T>> {
        noisy_mixture(&self.family.state(), self.q)
    }
}
