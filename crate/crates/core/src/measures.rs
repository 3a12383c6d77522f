//! Entanglement measures: Wootters concurrence of embedded pairs,
//! negativity per bipartition, tri-partite negativity, purity and fidelity.
//!
//! All measures clamp at zero: a raw value within `EQ_TOL` of zero is
//! reported as exactly zero, so separable states give clean zeros. The
//! unclamped signed precursors of concurrence and negativity stay available
//! inside the crate for the threshold solvers, which need sign changes.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, partial_trace, partial_transpose, pauli_y, sqrt_psd, DensityMatrix,
};
use crate::scalar::Real;
use crate::states::StateVector;

fn clamp_measure<T: Real>(raw: T) -> T {
    let v = raw.max(T::zero());
    if v < T::EQ_TOL {
        T::zero()
    } else {
        v
    }
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(clamp_measure(concurrence_lambda(rho)?))
}

/// Signed concurrence precursor `sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)`
/// over the descending eigenvalues of `sqrt(rho) rho~ sqrt(rho)`, before
/// clamping at zero. Threshold bisection runs on this.
pub(crate) fn concurrence_lambda<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    if rho.qubit_count() != 2 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let yy = pauli_y::<T>().kron(&pauli_y())?;
    let flipped = yy.matmul(&rho.matrix().conjugate()).matmul(&yy);
    let root = sqrt_psd(rho.matrix())?;
    let m = root.matmul(&flipped).matmul(&root);
    let vals = hermitian_eigenvalues(&m)?;
    // The square roots below amplify floating point noise around zero into
    // errors of order sqrt(eps). Eigenvalues that far below the top one are
    // indistinguishable from zero anyway, so flush them.
    let floor = vals[0].max(T::zero()) * T::of(1e-12);
    let mut acc = T::zero();
    for (k, &l) in vals.iter().enumerate() {
        if l < -T::EQ_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: l.as_f64(),
            });
        }
        let r = if l > floor { l.sqrt() } else { T::zero() };
        acc = if k == 0 { r } else { acc - r };
    }
    Ok(acc)
}

/// Concurrence between two of the three qubits after tracing out the third.
pub fn pair_concurrence<T: Real>(rho: &DensityMatrix<T>, a: usize, b: usize) -> Result<T> {
    Ok(clamp_measure(pair_concurrence_lambda(rho, a, b)?))
}

pub(crate) fn pair_concurrence_lambda<T: Real>(
    rho: &DensityMatrix<T>,
    a: usize,
    b: usize,
) -> Result<T> {
    if rho.qubit_count() != 3 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) {
        return Err(Error::BadPair { a, b });
    }
    let other = 6 - a - b;
    let reduced = partial_trace(rho, other)?;
    concurrence_lambda(&reduced)
}

/// Negativity across the bipartition separating `qubit` from the rest:
/// the absolute sum of negative partial-transpose eigenvalues.
pub fn negativity<T: Real>(rho: &DensityMatrix<T>, qubit: usize) -> Result<T> {
    let pt = partial_transpose(rho, qubit)?;
    let vals = hermitian_eigenvalues(&pt)?;
    let mut acc = T::zero();
    for &v in &vals {
        if v < T::zero() {
            acc = acc - v;
        }
    }
    Ok(clamp_measure(acc))
}

/// Negated smallest partial-transpose eigenvalue; positive exactly when the
/// bipartition is entangled. Threshold bisection runs on this.
pub(crate) fn negativity_detector<T: Real>(rho: &DensityMatrix<T>, qubit: usize) -> Result<T> {
    let pt = partial_transpose(rho, qubit)?;
    let vals = hermitian_eigenvalues(&pt)?;
    Ok(-*vals.last().expect("dimension is at least 2"))
}

/// Geometric mean of the three one-vs-rest negativities of a three-qubit
/// state; zero as soon as any bipartition goes positive-partial-transpose.
pub fn tri_negativity<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    if rho.qubit_count() != 3 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let n1 = negativity(rho, 1)?;
    let n2 = negativity(rho, 2)?;
    let n3 = negativity(rho, 3)?;
    if n1 == T::zero() || n2 == T::zero() || n3 == T::zero() {
        return Ok(T::zero());
    }
    Ok(clamp_measure((n1 * n2 * n3).cbrt()))
}

/// Tr(rho^2); 1 on pure states, 1/dim on the maximally mixed state.
pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    let f = rho.matrix().frobenius_norm();
    f * f
}

/// Overlap `<psi| rho |psi>` with a pure reference state.
pub fn fidelity_to_pure<T: Real>(rho: &DensityMatrix<T>, psi: &StateVector<T>) -> Result<T> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: psi.dim(),
        });
    }
    let v = rho.matrix().mul_vec(psi.amplitudes());
    let mut acc = Complex::zero();
    for (a, b) in psi.amplitudes().iter().zip(&v) {
        acc = acc + a.conj() * b;
    }
    Ok(acc.re)
}

/// Which measure a tabulated value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Concurrence,
    Negativity,
    TriNegativity,
    Purity,
}

/// Where on the system a measure was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureContext {
    Whole,
    Partition(usize),
    Pair(usize, usize),
}

/// One computed measure with its location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue<T> {
    pub kind: MeasureKind,
    pub context: MeasureContext,
    pub value: T,
}

/// Every pair concurrence, every bipartition negativity, the tri-partite
/// negativity and the purity of a three-qubit state, in a fixed order.
pub fn measure_table<T: Real>(rho: &DensityMatrix<T>) -> Result<Vec<MeasureValue<T>>> {
    if rho.qubit_count() != 3 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let mut out = Vec::with_capacity(8);
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        out.push(MeasureValue {
            kind: MeasureKind::Concurrence,
            context: MeasureContext::Pair(a, b),
            value: pair_concurrence(rho, a, b)?,
        });
    }
    for qubit in 1..=3 {
        out.push(MeasureValue {
            kind: MeasureKind::Negativity,
            context: MeasureContext::Partition(qubit),
            value: negativity(rho, qubit)?,
        });
    }
    out.push(MeasureValue {
        kind: MeasureKind::TriNegativity,
        context: MeasureContext::Whole,
        value: tri_negativity(rho)?,
    });
    out.push(MeasureValue {
        kind: MeasureKind::Purity,
        context: MeasureContext::Whole,
        value: purity(rho),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cx, validate_density, ComplexMatrix};
    use crate::states::{ghz_state, noisy_mixture, w_state, StateVector};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn bell() -> DensityMatrix<f64> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::new(vec![cx(r, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(r, 0.0)])
            .unwrap();
        psi.projector().unwrap()
    }

    #[test]
    fn bell_pair_has_unit_concurrence() {
        assert_close(concurrence(&bell()).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn product_state_has_zero_concurrence() {
        let psi =
            StateVector::new(vec![cx::<f64>(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)])
                .unwrap();
        assert_eq!(concurrence(&psi.projector().unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn w_state_pairs_have_concurrence_two_thirds() {
        let rho = w_state::<f64>().projector().unwrap();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert_close(pair_concurrence(&rho, a, b).unwrap(), 2.0 / 3.0, 1e-12);
        }
    }

    /// Independent oracle: for an X-shaped two-qubit state
    /// diag(a, b, c, d) with coherences z1 on (00,11) and z2 on (01,10),
    /// the concurrence is 2 max(0, |z1| - sqrt(bc), |z2| - sqrt(ad)).
    #[test]
    fn x_state_concurrence_matches_the_coherence_rule() {
        let weights: [[f64; 4]; 4] = [
            [0.4, 0.3, 0.2, 0.1],
            [0.25, 0.25, 0.25, 0.25],
            [0.55, 0.05, 0.1, 0.3],
            [0.05, 0.45, 0.45, 0.05],
        ];
        let fractions = [0.0, 0.35, 0.8, 1.0];
        let phases = [0.0, 1.1, 4.0];
        for w in weights {
            let [a, b, c, d] = w;
            for f1 in fractions {
                for f2 in fractions {
                    for ph in phases {
                        let z1 = Complex::from_polar(f1 * (a * d).sqrt(), ph);
                        let z2 = Complex::from_polar(f2 * (b * c).sqrt(), -0.5 * ph);
                        let mut m = ComplexMatrix::zeros(4).unwrap();
                        m[(0, 0)] = cx(a, 0.0);
                        m[(1, 1)] = cx(b, 0.0);
                        m[(2, 2)] = cx(c, 0.0);
                        m[(3, 3)] = cx(d, 0.0);
                        m[(0, 3)] = z1;
                        m[(3, 0)] = z1.conj();
                        m[(1, 2)] = z2;
                        m[(2, 1)] = z2.conj();
                        let rho = validate_density(m).unwrap();
                        let want = (z1.norm() - (b * c).sqrt())
                            .max(z2.norm() - (a * d).sqrt())
                            .max(0.0)
                            * 2.0;
                        let got = concurrence(&rho).unwrap();
                        assert_close(got, want, 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn concurrence_rejects_three_qubit_input() {
        let rho = noisy_mixture(&ghz_state::<f64>(), 0.5).unwrap();
        assert!(matches!(
            concurrence(&rho),
            Err(Error::UnsupportedDimension(8))
        ));
        assert!(matches!(
            pair_concurrence(&rho, 1, 1),
            Err(Error::BadPair { a: 1, b: 1 })
        ));
        assert!(matches!(
            pair_concurrence(&rho, 0, 2),
            Err(Error::BadPair { .. })
        ));
    }

    #[test]
    fn ghz_negativity_is_one_half_on_every_bipartition() {
        let rho = ghz_state::<f64>().projector().unwrap();
        for qubit in 1..=3 {
            assert_close(negativity(&rho, qubit).unwrap(), 0.5, 1e-12);
        }
        assert_close(tri_negativity(&rho).unwrap(), 0.5, 1e-12);
    }

    #[test]
    fn w_state_negativity_is_sqrt2_over_3() {
        let rho = w_state::<f64>().projector().unwrap();
        let want = std::f64::consts::SQRT_2 / 3.0;
        for qubit in 1..=3 {
            assert_close(negativity(&rho, qubit).unwrap(), want, 1e-12);
        }
        assert_close(tri_negativity(&rho).unwrap(), want, 1e-12);
    }

    #[test]
    fn weak_ghz_mixture_is_ppt_and_reports_exact_zero() {
        // below q = 1/5 every bipartition of the GHZ mixture stays PPT
        let rho = noisy_mixture(&ghz_state::<f64>(), 0.1).unwrap();
        for qubit in 1..=3 {
            assert_eq!(negativity(&rho, qubit).unwrap(), 0.0);
        }
        assert_eq!(tri_negativity(&rho).unwrap(), 0.0);
    }

    #[test]
    fn purity_spans_pure_to_maximally_mixed() {
        let pure = ghz_state::<f64>().projector().unwrap();
        assert_close(purity(&pure), 1.0, 1e-14);
        let mixed = noisy_mixture(&ghz_state::<f64>(), 0.0).unwrap();
        assert_close(purity(&mixed), 0.125, 1e-14);
    }

    #[test]
    fn fidelity_of_a_mixture_to_its_pure_state() {
        let q = 0.5;
        let rho = noisy_mixture(&ghz_state::<f64>(), q).unwrap();
        let got = fidelity_to_pure(&rho, &ghz_state()).unwrap();
        assert_close(got, (1.0 + 7.0 * q) / 8.0, 1e-14);
    }

    #[test]
    fn fidelity_requires_matching_dimensions() {
        let rho = bell();
        assert!(matches!(
            fidelity_to_pure(&rho, &ghz_state()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn measure_table_has_the_fixed_layout() {
        let rho = noisy_mixture(&w_state::<f64>(), 0.9).unwrap();
        let table = measure_table(&rho).unwrap();
        assert_eq!(table.len(), 8);
        assert_eq!(table[0].context, MeasureContext::Pair(1, 2));
        assert_eq!(table[3].context, MeasureContext::Partition(1));
        assert_eq!(table[6].kind, MeasureKind::TriNegativity);
        assert_eq!(table[7].kind, MeasureKind::Purity);
    }
}
