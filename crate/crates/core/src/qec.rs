//! Three-qubit phase-flip code: encoding, dephasing noise, stabilizer
//! measurement, recovery, and branch-by-branch bookkeeping.
//!
//! The logical state `alpha|0> + beta|1>` (real amplitudes, `beta =
//! sqrt(1 - alpha^2)`) is encoded by CNOT(1->2), CNOT(1->3) and a Hadamard
//! on every qubit, landing on `alpha|+++> + beta|--->`. Dephasing is
//! equivalent to random Z flips, which the stabilizers `X1 X2` and `X2 X3`
//! locate: each syndrome branch gets its corrective Z, the circuit is run
//! backwards, and the two ancilla qubits are traced out.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{cx, hadamard, ComplexMatrix, DensityMatrix};
use crate::measures;
use crate::scalar::Real;
use crate::states::StateVector;
use crate::witnesses::{self, WitnessLabel};

/// Where dephasing strikes: one chosen qubit, or all three at equal weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMode {
    SingleQubit(usize),
    AllQubits,
}

impl ErrorMode {
    pub fn name(self) -> &'static str {
        match self {
            ErrorMode::SingleQubit(_) => "single",
            ErrorMode::AllQubits => "all",
        }
    }
}

/// Joint outcome of measuring `X1 X2` then `X2 X3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Syndrome {
    PlusPlus,
    MinusPlus,
    MinusMinus,
    PlusMinus,
}

impl Syndrome {
    pub const ALL: [Syndrome; 4] = [
        Syndrome::PlusPlus,
        Syndrome::MinusPlus,
        Syndrome::MinusMinus,
        Syndrome::PlusMinus,
    ];

    fn signs(self) -> (f64, f64) {
        match self {
            Syndrome::PlusPlus => (1.0, 1.0),
            Syndrome::MinusPlus => (-1.0, 1.0),
            Syndrome::MinusMinus => (-1.0, -1.0),
            Syndrome::PlusMinus => (1.0, -1.0),
        }
    }

    /// Which qubit receives the recovery Z; `None` for the trivial syndrome.
    pub fn correction(self) -> Option<usize> {
        match self {
            Syndrome::PlusPlus => None,
            Syndrome::MinusPlus => Some(1),
            Syndrome::MinusMinus => Some(2),
            Syndrome::PlusMinus => Some(3),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Syndrome::PlusPlus => "(+,+)",
            Syndrome::MinusPlus => "(-,+)",
            Syndrome::MinusMinus => "(-,-)",
            Syndrome::PlusMinus => "(+,-)",
        }
    }
}

/// 8x8 CNOT between two of the three qubits (1-based labels, qubit 1 is
/// the most significant bit).
fn cnot_on<T: Real>(control: usize, target: usize) -> Result<ComplexMatrix<T>> {
    let cbit = 3 - control;
    let tbit = 3 - target;
    let mut m = ComplexMatrix::zeros(8)?;
    for col in 0..8usize {
        let row = if (col >> cbit) & 1 == 1 {
            col ^ (1 << tbit)
        } else {
            col
        };
        m[(row, col)] = cx(1.0, 0.0);
    }
    Ok(m)
}

fn h3<T: Real>() -> Result<ComplexMatrix<T>> {
    let h = hadamard::<T>();
    h.kron(&h)?.kron(&h)
}

fn z_on<T: Real>(qubit: usize) -> Result<ComplexMatrix<T>> {
    let bit = 3 - qubit;
    let mut m = ComplexMatrix::zeros(8)?;
    for i in 0..8usize {
        m[(i, i)] = if (i >> bit) & 1 == 1 {
            cx(-1.0, 0.0)
        } else {
            cx(1.0, 0.0)
        };
    }
    Ok(m)
}

/// X on two of the three qubits: the permutation flipping both bits.
fn x_pair<T: Real>(a: usize, b: usize) -> Result<ComplexMatrix<T>> {
    let mask = (1usize << (3 - a)) | (1usize << (3 - b));
    let mut m = ComplexMatrix::zeros(8)?;
    for col in 0..8usize {
        m[(col ^ mask, col)] = cx(1.0, 0.0);
    }
    Ok(m)
}

/// Encodes `alpha|0> + sqrt(1 - alpha^2)|1>` into `alpha|+++> + beta|--->`
/// by running the encoding circuit on `|psi, 0, 0>`.
pub fn encode<T: Real>(alpha: T) -> Result<StateVector<T>> {
    if !(alpha >= T::zero()) || alpha > T::one() {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha.as_f64(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let beta = (T::one() - alpha * alpha).sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 8];
    amps[0] = Complex::new(alpha, T::zero());
    amps[4] = Complex::new(beta, T::zero());
    let amps = cnot_on(1, 2)?.mul_vec(&amps);
    let amps = cnot_on(1, 3)?.mul_vec(&amps);
    let amps = h3()?.mul_vec(&amps);
    StateVector::new(amps)
}

/// Dephases the encoded state: the chosen qubit at weight `p`, or all
/// three.
pub fn apply_error<T: Real>(
    encoded: &StateVector<T>,
    p: T,
    mode: ErrorMode,
) -> Result<DensityMatrix<T>> {
    if encoded.dim() != 8 {
        return Err(Error::DimensionMismatch {
            left: 8,
            right: encoded.dim(),
        });
    }
    let zero = T::zero();
    let (p1, p2, p3) = match mode {
        ErrorMode::SingleQubit(1) => (p, zero, zero),
        ErrorMode::SingleQubit(2) => (zero, p, zero),
        ErrorMode::SingleQubit(3) => (zero, zero, p),
        ErrorMode::SingleQubit(k) => {
            return Err(Error::BadQubit { qubit: k, count: 3 });
        }
        ErrorMode::AllQubits => (p, p, p),
    };
    let channel = crate::channels::three_qubit_dephasing(p1, p2, p3)?;
    crate::channels::apply_channel(&encoded.projector()?, &channel)
}

/// One projective branch of the stabilizer measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct SyndromeBranch<T: Real> {
    pub syndrome: Syndrome,
    pub probability: T,
    /// Normalized post-measurement state; `None` when the branch carries
    /// (numerically) zero probability.
    pub state: Option<DensityMatrix<T>>,
}

/// Measures both stabilizers, returning the four branches in the fixed
/// order (+,+), (-,+), (-,-), (+,-). Probabilities sum to one.
pub fn syndrome_project<T: Real>(rho: &DensityMatrix<T>) -> Result<Vec<SyndromeBranch<T>>> {
    if rho.qubit_count() != 3 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let x12 = x_pair::<T>(1, 2)?;
    let x23 = x_pair::<T>(2, 3)?;
    let id = ComplexMatrix::identity(8)?;
    let half = T::of(0.5);
    let mut branches = Vec::with_capacity(4);
    for syndrome in Syndrome::ALL {
        let (s1, s2) = syndrome.signs();
        let pi1 = id.add(&x12.scale_re(T::of(s1))).scale_re(half);
        let pi2 = id.add(&x23.scale_re(T::of(s2))).scale_re(half);
        let proj = pi1.matmul(&pi2);
        let projected = proj.matmul(rho.matrix()).matmul(&proj);
        let raw = projected.trace().re;
        if raw <= T::EQ_TOL {
            branches.push(SyndromeBranch {
                syndrome,
                probability: raw.max(T::zero()),
                state: None,
            });
        } else {
            let state = DensityMatrix::new(projected.scale_re(T::one() / raw))?;
            branches.push(SyndromeBranch {
                syndrome,
                probability: raw,
                state: Some(state),
            });
        }
    }
    Ok(branches)
}

/// Applies the syndrome's recovery Z, runs the encoding circuit backwards,
/// and traces out the two redundancy qubits, leaving the recovered logical
/// qubit.
pub fn recover_and_decode<T: Real>(
    syndrome: Syndrome,
    state: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    if state.qubit_count() != 3 {
        return Err(Error::UnsupportedDimension(state.dim()));
    }
    let mut m = state.matrix().clone();
    if let Some(k) = syndrome.correction() {
        let z = z_on::<T>(k)?;
        m = z.matmul(&m).matmul(&z);
    }
    // every conjugator below is self-inverse and Hermitian
    let h = h3::<T>()?;
    m = h.matmul(&m).matmul(&h);
    let c12 = cnot_on::<T>(1, 2)?;
    m = c12.matmul(&m).matmul(&c12);
    let c13 = cnot_on::<T>(1, 3)?;
    m = c13.matmul(&m).matmul(&c13);
    let rho = DensityMatrix::new(m)?;
    let rho = crate::linalg::partial_trace(&rho, 3)?;
    crate::linalg::partial_trace(&rho, 2)
}

/// Decoded outcome of one syndrome branch.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchRecord<T: Real> {
    pub syndrome: Syndrome,
    pub probability: T,
    /// Recovered logical qubit; `None` for zero-probability branches.
    pub corrected: Option<DensityMatrix<T>>,
}

/// Probability-weighted summary of a set of branches. An empty set (total
/// probability zero) reports purity and fidelity one by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate<T> {
    pub probability: T,
    pub purity: T,
    pub fidelity: T,
}

/// Entanglement bookkeeping of the noisy encoded state, before any
/// measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodedStateMetrics<T> {
    /// Detection value `-Tr(W rho)` of the witness tuned to the encoded
    /// target; positive means detected.
    pub witness_wh: T,
    /// Negativity across the first-qubit bipartition.
    pub negativity: T,
    pub tri_negativity: T,
}

/// Full record of one code run.
#[derive(Debug, Clone, PartialEq)]
pub struct QecRun<T: Real> {
    pub alpha: T,
    pub p: T,
    pub mode: ErrorMode,
    pub branches: Vec<BranchRecord<T>>,
    pub no_error: Aggregate<T>,
    pub error: Aggregate<T>,
    pub encoded: EncodedStateMetrics<T>,
}

fn aggregate<T: Real>(records: &[&BranchRecord<T>], logical: &StateVector<T>) -> Result<Aggregate<T>> {
    let mut total = T::zero();
    for r in records {
        total = total + r.probability;
    }
    if total <= T::EQ_TOL {
        return Ok(Aggregate {
            probability: total.max(T::zero()),
            purity: T::one(),
            fidelity: T::one(),
        });
    }
    let mut pooled = ComplexMatrix::zeros(2)?;
    for r in records {
        if let Some(state) = &r.corrected {
            pooled = pooled.add(&state.matrix().scale_re(r.probability / total));
        }
    }
    let pooled = DensityMatrix::new(pooled)?;
    Ok(Aggregate {
        probability: total,
        purity: measures::purity(&pooled),
        fidelity: measures::fidelity_to_pure(&pooled, logical)?,
    })
}

/// Runs encode, dephasing, measurement and recovery, aggregating the
/// trivial-syndrome branch and the pooled error branches separately.
pub fn run<T: Real>(alpha: T, p: T, mode: ErrorMode) -> Result<QecRun<T>> {
    let psi = encode(alpha)?;
    let beta = (T::one() - alpha * alpha).sqrt();
    let logical = StateVector::new(vec![
        Complex::new(alpha, T::zero()),
        Complex::new(beta, T::zero()),
    ])?;
    let rho_e = apply_error(&psi, p, mode)?;
    let encoded = EncodedStateMetrics {
        witness_wh: -witnesses::expectation(&witnesses::build(WitnessLabel::Wh, None)?, &rho_e)?,
        negativity: measures::negativity(&rho_e, 1)?,
        tri_negativity: measures::tri_negativity(&rho_e)?,
    };
    let mut branches = Vec::with_capacity(4);
    for b in syndrome_project(&rho_e)? {
        let corrected = match &b.state {
            Some(state) => Some(recover_and_decode(b.syndrome, state)?),
            None => None,
        };
        branches.push(BranchRecord {
            syndrome: b.syndrome,
            probability: b.probability,
            corrected,
        });
    }
    let no_error = aggregate(&[&branches[0]], &logical)?;
    let error = aggregate(&[&branches[1], &branches[2], &branches[3]], &logical)?;
    Ok(QecRun {
        alpha,
        p,
        mode,
        branches,
        no_error,
        error,
        encoded,
    })
}
