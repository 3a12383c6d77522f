//! Phase-damping channels in Kraus form.
//!
//! A single qubit dephasing with flip weight `p` has Kraus pair
//! `K1 = diag(1, sqrt(1-p))`, `K2 = sqrt(p) |1><1|`. Acting independently on
//! each of three qubits, the channel scales the matrix element between basis
//! states `a` and `b` by `prod_k sqrt(1 - p_k)` over the qubits where `a`
//! and `b` differ, and leaves every diagonal element fixed.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{cx, validate_density, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;

/// A set of Kraus operators of one common dimension resolving the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet<T> {
    operators: Vec<ComplexMatrix<T>>,
}

impl<T: Real> KrausSet<T> {
    /// Wraps the operators after checking that dimensions agree and that
    /// the sum of `adjoint(K) K` is the identity within `EQ_TOL`.
    pub fn new(operators: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let dim = match operators.first() {
            Some(k) => k.dim(),
            None => return Err(Error::UnsupportedDimension(0)),
        };
        for k in &operators {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: k.dim(),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(dim)?;
        for k in &operators {
            sum = sum.add(&k.adjoint().matmul(k));
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim)?);
        if dev > T::EQ_TOL {
            return Err(Error::IncompleteKraus {
                deviation: dev.as_f64(),
            });
        }
        Ok(KrausSet { operators })
    }

    pub fn operators(&self) -> &[ComplexMatrix<T>] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    /// Largest entrywise deviation of `sum adjoint(K) K` from the identity.
    pub fn completeness_deviation(&self) -> T {
        let dim = self.dim();
        let mut sum = ComplexMatrix::zeros(dim).expect("stored dimension is valid");
        for k in &self.operators {
            sum = sum.add(&k.adjoint().matmul(k));
        }
        sum.max_abs_diff(&ComplexMatrix::identity(dim).expect("stored dimension is valid"))
    }
}

fn check_unit<T: Real>(name: &'static str, v: T) -> Result<()> {
    if !(v >= T::zero()) || v > T::one() {
        return Err(Error::OutOfRange {
            name,
            value: v.as_f64(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// Kraus pair for single-qubit phase damping with flip weight `p`.
pub fn dephasing_pair<T: Real>(p: T) -> Result<KrausSet<T>> {
    check_unit("p", p)?;
    let mut k1 = ComplexMatrix::zeros(2)?;
    k1[(0, 0)] = cx(1.0, 0.0);
    k1[(1, 1)] = Complex::new((T::one() - p).sqrt(), T::zero());
    let mut k2 = ComplexMatrix::zeros(2)?;
    k2[(1, 1)] = Complex::new(p.sqrt(), T::zero());
    KrausSet::new(vec![k1, k2])
}

/// Independent phase damping on each of three qubits, given per-qubit flip
/// weights; the eight operators are all Kronecker products of the
/// single-qubit pairs.
pub fn three_qubit_dephasing<T: Real>(p1: T, p2: T, p3: T) -> Result<KrausSet<T>> {
    let q1 = dephasing_pair(p1)?;
    let q2 = dephasing_pair(p2)?;
    let q3 = dephasing_pair(p3)?;
    let mut operators = Vec::with_capacity(8);
    for a in q1.operators() {
        for b in q2.operators() {
            for c in q3.operators() {
                operators.push(a.kron(b)?.kron(c)?);
            }
        }
    }
    KrausSet::new(operators)
}

/// Flip weight accumulated after dimensionless time `kappa_t`:
/// `p = 1 - e^{-kappa_t}`.
pub fn p_of_time<T: Real>(kappa_t: T) -> Result<T> {
    if !(kappa_t >= T::zero()) {
        return Err(Error::OutOfRange {
            name: "kappa_t",
            value: kappa_t.as_f64(),
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    Ok(T::one() - (-kappa_t).exp())
}

/// Applies `sum_k K rho adjoint(K)` and revalidates the result.
pub fn apply_channel<T: Real>(
    rho: &DensityMatrix<T>,
    kraus: &KrausSet<T>,
) -> Result<DensityMatrix<T>> {
    if rho.dim() != kraus.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: kraus.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim())?;
    for k in kraus.operators() {
        out = out.add(&k.matmul(rho.matrix()).matmul(&k.adjoint()));
    }
    validate_density(out)
}
