//! Dense complex matrices for one to three qubits and the decompositions
//! built on them: Kronecker products, a cyclic Jacobi eigensolver for
//! Hermitian matrices, partial trace, partial transpose, and density matrix
//! validation.
//!
//! Qubit 1 is the most significant bit of a basis index, so |q1 q2 q3> sits
//! at index 4*q1 + 2*q2 + q3. All matrices are square with dimension 2, 4
//! or 8; anything else is rejected at construction.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Real, Tolerances};

/// Builds a complex entry from `f64` literals.
pub(crate) fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

fn supported_dim(dim: usize) -> bool {
    matches!(dim, 2 | 4 | 8)
}

pub(crate) fn qubits_for_dim(dim: usize) -> usize {
    match dim {
        2 => 1,
        4 => 2,
        _ => 3,
    }
}

/// Square complex matrix, row-major, dimension 2, 4 or 8.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if !supported_dim(dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: data.len(),
            });
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex::zero(); dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = cx(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let data = self.data.iter().map(|a| a * k).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn scale_re(&self, k: T) -> Self {
        let data = self.data.iter().map(|a| a.scale(k)).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = ComplexMatrix {
            dim: self.dim,
            data: vec![Complex::zero(); self.data.len()],
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        let data = self.data.iter().map(|a| a.conj()).collect();
        ComplexMatrix { dim: self.dim, data }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let n = self.dim;
        let mut out = ComplexMatrix {
            dim: n,
            data: vec![Complex::zero(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.dim, v.len(), "vector length must match dimension");
        let n = self.dim;
        let mut out = vec![Complex::zero(); n];
        for i in 0..n {
            let mut acc = Complex::zero();
            for j in 0..n {
                acc = acc + self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        let mut acc = Complex::zero();
        for i in 0..self.dim {
            acc = acc + self[(i, i)];
        }
        acc
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for a in &self.data {
            acc = acc + a.norm_sqr();
        }
        acc.sqrt()
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let mut worst = T::zero();
        for (a, b) in self.data.iter().zip(&rhs.data) {
            let d = (a - b).norm();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// Largest entrywise distance from the adjoint; zero means Hermitian.
    pub fn hermiticity_deviation(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Kronecker product. The result must still be a supported dimension,
    /// so only 2x2 with 2x2 or 4x4, and 2x2 with 4x4 in either order, pass.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let dim = self.dim * rhs.dim;
        if !supported_dim(dim) {
            return Err(Error::KronTooLarge {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let mut out = ComplexMatrix {
            dim,
            data: vec![Complex::zero(); dim * dim],
        };
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self[(i1, j1)];
                for i2 in 0..rhs.dim {
                    for j2 in 0..rhs.dim {
                        out[(i1 * rhs.dim + i2, j1 * rhs.dim + j2)] = a * rhs[(i2, j2)];
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn pauli_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)])
        .expect("2x2 is supported")
}

pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, vec![cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)])
        .expect("2x2 is supported")
}

pub fn pauli_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0)])
        .expect("2x2 is supported")
}

pub fn hadamard<T: Real>() -> ComplexMatrix<T> {
    let h = T::of(std::f64::consts::FRAC_1_SQRT_2);
    let p = Complex::new(h, T::zero());
    let m = Complex::new(-h, T::zero());
    ComplexMatrix::new(2, vec![p, p, p, m]).expect("2x2 is supported")
}

/// CNOT with the first (most significant) qubit as control.
pub fn cnot<T: Real>() -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(4).expect("4x4 is supported");
    m[(0, 0)] = cx(1.0, 0.0);
    m[(1, 1)] = cx(1.0, 0.0);
    m[(2, 3)] = cx(1.0, 0.0);
    m[(3, 2)] = cx(1.0, 0.0);
    m
}

const MAX_JACOBI_SWEEPS: usize = 500;

fn off_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided rotation zeroing the (p, q) entry, accumulated into `v`.
fn jacobi_rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= T::min_positive_value() {
        a[(p, q)] = Complex::zero();
        a[(q, p)] = Complex::zero();
        return;
    }
    let phase = apq.unscale(mag);
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (mag + mag);
    // smaller-magnitude root of t^2 - 2 tau t - 1 = 0, for a stable rotation
    let root = (T::one() + tau * tau).sqrt();
    let t = if tau >= T::zero() {
        -(T::one() / (tau + root))
    } else {
        T::one() / (root - tau)
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let sp = phase.conj().scale(s); // s e^{-i phi}
    let sq = phase.scale(s); //        s e^{+i phi}
    let n = a.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp.scale(c) + akq * sp;
        let new_kq = akq.scale(c) - akp * sq;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    let cross = (c * s) * (mag + mag);
    a[(p, p)] = Complex::new(c * c * app + cross + s * s * aqq, T::zero());
    a[(q, q)] = Complex::new(s * s * app - cross + c * c * aqq, T::zero());
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp.scale(c) + vkq * sp;
        v[(k, q)] = vkq.scale(c) - vkp * sq;
    }
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(hermitian_eigen(m)?.0)
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in descending order and a unitary whose columns are
/// the matching eigenvectors, so `m = v * diag(values) * adjoint(v)`.
/// Cyclic Jacobi with complex rotations; stops when the off-diagonal norm
/// drops below `JACOBI_REL_TOL` times the matrix norm.
pub fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let dev = m.hermiticity_deviation();
    if dev > T::PSD_SLACK {
        return Err(Error::NotHermitian {
            deviation: dev.as_f64(),
        });
    }
    let n = m.dim();
    let mut a = m.clone();
    // fold in the adjoint so rounding noise on the input cannot bias the sweep
    for i in 0..n {
        a[(i, i)] = Complex::new(a[(i, i)].re, T::zero());
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()).scale(T::of(0.5));
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n)?;
    let norm = a.frobenius_norm();
    if norm <= T::min_positive_value() {
        return Ok((vec![T::zero(); n], v));
    }
    let target = T::JACOBI_REL_TOL * norm;
    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }
    let evs: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| evs[j].partial_cmp(&evs[i]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| evs[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (col, &old) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, old)];
        }
    }
    Ok((values, vectors))
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues within `EQ_TOL` below zero are clamped to zero; anything
/// lower is treated as a genuine positivity violation.
pub(crate) fn sqrt_psd<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (values, vectors) = hermitian_eigen(m)?;
    let mut roots = Vec::with_capacity(values.len());
    for &l in &values {
        if l < -T::EQ_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: l.as_f64(),
            });
        }
        roots.push(if l > T::zero() { l.sqrt() } else { T::zero() });
    }
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n)?;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::zero();
            for k in 0..n {
                acc = acc + vectors[(i, k)].scale(roots[k]) * vectors[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    qubit_count: usize,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates with the default tolerances for `T`.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        validate_density(matrix)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Checks Hermiticity, unit trace and positivity, then wraps the matrix.
pub fn validate_density<T: Real>(matrix: ComplexMatrix<T>) -> Result<DensityMatrix<T>> {
    validate_density_with(matrix, &Tolerances::default())
}

pub fn validate_density_with<T: Real>(
    matrix: ComplexMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<DensityMatrix<T>> {
    let dev = matrix.hermiticity_deviation();
    if dev > tol.equality {
        return Err(Error::NotHermitian {
            deviation: dev.as_f64(),
        });
    }
    let tr = matrix.trace();
    if (tr - cx(1.0, 0.0)).norm() > tol.equality {
        return Err(Error::TraceNotOne {
            trace: tr.re.as_f64(),
        });
    }
    let values = hermitian_eigenvalues(&matrix)?;
    let min = *values.last().expect("dimension is at least 2");
    if min < -tol.psd_slack {
        return Err(Error::NotPositive {
            min_eigenvalue: min.as_f64(),
        });
    }
    Ok(DensityMatrix {
        qubit_count: qubits_for_dim(matrix.dim()),
        matrix,
    })
}

/// Places bit value `b` at position `bit` of `x`, shifting higher bits up.
fn insert_bit(x: usize, bit: usize, b: usize) -> usize {
    let low = x & ((1 << bit) - 1);
    let high = x >> bit;
    (high << (bit + 1)) | (b << bit) | low
}

/// Traces out one qubit (1-based; qubit 1 is the most significant bit).
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, qubit: usize) -> Result<DensityMatrix<T>> {
    let n = rho.qubit_count();
    if qubit == 0 || qubit > n {
        return Err(Error::BadQubit { qubit, count: n });
    }
    if n == 1 {
        return Err(Error::UnsupportedDimension(1));
    }
    let bit = n - qubit;
    let half = rho.dim() / 2;
    let mut out = ComplexMatrix::zeros(half)?;
    for i in 0..half {
        for j in 0..half {
            let mut acc = Complex::zero();
            for b in 0..2 {
                acc = acc + rho.matrix()[(insert_bit(i, bit, b), insert_bit(j, bit, b))];
            }
            out[(i, j)] = acc;
        }
    }
    validate_density(out)
}

/// Transposes the indices of one qubit (1-based).
///
/// The result stays Hermitian with unit trace but may have negative
/// eigenvalues, so it comes back as a plain matrix.
pub fn partial_transpose<T: Real>(rho: &DensityMatrix<T>, qubit: usize) -> Result<ComplexMatrix<T>> {
    let n = rho.qubit_count();
    if qubit == 0 || qubit > n {
        return Err(Error::BadQubit { qubit, count: n });
    }
    let bit = n - qubit;
    let dim = rho.dim();
    let mut out = ComplexMatrix::zeros(dim)?;
    for i in 0..dim {
        for j in 0..dim {
            let bi = (i >> bit) & 1;
            let bj = (j >> bit) & 1;
            let i2 = (i & !(1 << bit)) | (bj << bit);
            let j2 = (j & !(1 << bit)) | (bi << bit);
            out[(i2, j2)] = rho.matrix()[(i, j)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn rejects_unsupported_dimensions() {
        assert!(matches!(
            ComplexMatrix::<f64>::zeros(3),
            Err(Error::UnsupportedDimension(3))
        ));
        assert!(matches!(
            ComplexMatrix::<f64>::new(2, vec![Complex::zero(); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_of_two_4x4_is_rejected() {
        let a = ComplexMatrix::<f64>::identity(4).unwrap();
        assert!(matches!(
            a.kron(&a),
            Err(Error::KronTooLarge { left: 4, right: 4 })
        ));
    }

    #[test]
    fn kron_pauli_y_pair_is_antidiagonal() {
        // sigma_y (x) sigma_y has real anti-diagonal (-1, 1, 1, -1), top to bottom
        let yy = pauli_y::<f64>().kron(&pauli_y()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 {
                    match i {
                        0 | 3 => cx(-1.0, 0.0),
                        _ => cx(1.0, 0.0),
                    }
                } else {
                    cx(0.0, 0.0)
                };
                assert!((yy[(i, j)] - want).norm() < 1e-15, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let c = cnot::<f64>();
        let v = c.mul_vec(&[cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)]);
        assert_eq!(v[3], cx(1.0, 0.0));
        assert_eq!(v[2], cx(0.0, 0.0));
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let h = hadamard::<f64>();
        let hh = h.matmul(&h);
        assert!(hh.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-15);
    }

    #[test]
    fn pauli_y_eigenvalues_are_plus_minus_one() {
        let (vals, vecs) = hermitian_eigen(&pauli_y::<f64>()).unwrap();
        assert_close(vals[0], 1.0, 1e-14);
        assert_close(vals[1], -1.0, 1e-14);
        // columns reconstruct the matrix
        let recon = reconstruct(&vals, &vecs);
        assert!(recon.max_abs_diff(&pauli_y()) < 1e-14);
    }

    fn reconstruct(vals: &[f64], vecs: &ComplexMatrix<f64>) -> ComplexMatrix<f64> {
        let n = vecs.dim();
        let mut lambda = ComplexMatrix::zeros(n).unwrap();
        for i in 0..n {
            lambda[(i, i)] = cx(vals[i], 0.0);
        }
        vecs.matmul(&lambda).matmul(&vecs.adjoint())
    }

    #[test]
    fn jacobi_reconstructs_a_fixed_complex_hermitian_4x4() {
        let m = ComplexMatrix::new(
            4,
            vec![
                cx(2.0, 0.0), cx(0.3, 0.4), cx(0.0, -0.7), cx(0.1, 0.0),
                cx(0.3, -0.4), cx(-1.0, 0.0), cx(0.2, 0.1), cx(0.0, 0.5),
                cx(0.0, 0.7), cx(0.2, -0.1), cx(0.5, 0.0), cx(-0.3, 0.2),
                cx(0.1, 0.0), cx(0.0, -0.5), cx(-0.3, -0.2), cx(1.5, 0.0),
            ],
        )
        .unwrap();
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert!(reconstruct(&vals, &vecs).max_abs_diff(&m) < 1e-13);
        // eigenvalue sum equals the trace
        let sum: f64 = vals.iter().sum();
        assert_close(sum, m.trace().re, 1e-10);
        // descending order
        for w in vals.windows(2) {
            assert!(w[0] >= w[1]);
        }
        // columns are orthonormal
        let vv = vecs.adjoint().matmul(&vecs);
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(4).unwrap()) < 1e-13);
    }

    #[test]
    fn eigensolver_rejects_non_hermitian_input() {
        let mut m = ComplexMatrix::<f64>::identity(2).unwrap();
        m[(0, 1)] = cx(1.0, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    /// Noisy GHZ mixture built by hand: (1-q)/8 I + q P_ghz.
    fn ghz_mixture(q: f64) -> ComplexMatrix<f64> {
        let mut m = ComplexMatrix::zeros(8).unwrap();
        let bg = (1.0 - q) / 8.0;
        for i in 0..8 {
            m[(i, i)] = cx(bg, 0.0);
        }
        let h = q / 2.0;
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            m[(i, j)] = m[(i, j)] + cx(h, 0.0);
        }
        m
    }

    #[test]
    fn mixture_spectrum_is_seven_fold_degenerate() {
        // eigenvalues of (1-q)/8 I + q P are (1+7q)/8 once and (1-q)/8 seven times
        let q = 0.4;
        let vals = hermitian_eigenvalues(&ghz_mixture(q)).unwrap();
        assert_close(vals[0], (1.0 + 7.0 * q) / 8.0, 1e-14);
        for &v in &vals[1..] {
            assert_close(v, (1.0 - q) / 8.0, 1e-14);
        }
    }

    #[test]
    fn validate_accepts_maximally_mixed_and_rejects_wrong_trace() {
        let ok = ComplexMatrix::<f64>::identity(8).unwrap().scale_re(1.0 / 8.0);
        assert!(validate_density(ok).is_ok());
        let bad = ComplexMatrix::<f64>::identity(8).unwrap().scale_re(0.25);
        match validate_density(bad) {
            Err(Error::TraceNotOne { trace }) => assert_close(trace, 2.0, 1e-14),
            other => panic!("expected trace violation, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_negative_eigenvalues() {
        let mut m = ComplexMatrix::<f64>::zeros(2).unwrap();
        m[(0, 0)] = cx(1.5, 0.0);
        m[(1, 1)] = cx(-0.5, 0.0);
        assert!(matches!(
            validate_density(m),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn validate_rejects_non_hermitian() {
        let mut m = ComplexMatrix::<f64>::identity(2).unwrap().scale_re(0.5);
        m[(0, 1)] = cx(0.1, 0.0);
        assert!(matches!(
            validate_density(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn partial_trace_of_ghz_projector_is_classical_pair_mixture() {
        let rho = validate_density(ghz_mixture(1.0)).unwrap();
        for qubit in 1..=3 {
            let red = partial_trace(&rho, qubit).unwrap();
            // (|00><00| + |11><11|)/2 regardless of which qubit is dropped
            let mut want = ComplexMatrix::zeros(4).unwrap();
            want[(0, 0)] = cx(0.5, 0.0);
            want[(3, 3)] = cx(0.5, 0.0);
            assert!(red.matrix().max_abs_diff(&want) < 1e-15, "qubit {qubit}");
        }
    }

    #[test]
    fn partial_trace_rejects_bad_qubit_index() {
        let rho = validate_density(ghz_mixture(0.5)).unwrap();
        assert!(matches!(
            partial_trace(&rho, 0),
            Err(Error::BadQubit { qubit: 0, count: 3 })
        ));
        assert!(matches!(
            partial_trace(&rho, 4),
            Err(Error::BadQubit { qubit: 4, count: 3 })
        ));
    }

    #[test]
    fn ghz_partial_transpose_has_single_negative_eigenvalue() {
        // transposing one qubit of the pure GHZ projector moves the coherence
        // to an off-diagonal block whose smallest eigenvalue is -1/2
        let rho = validate_density(ghz_mixture(1.0)).unwrap();
        let pt = partial_transpose(&rho, 1).unwrap();
        let vals = hermitian_eigenvalues(&pt).unwrap();
        assert_close(*vals.last().unwrap(), -0.5, 1e-14);
        let negatives = vals.iter().filter(|&&v| v < -1e-12).count();
        assert_eq!(negatives, 1);
    }

    #[test]
    fn mixture_partial_transpose_minimum_follows_the_block_formula() {
        // smallest eigenvalue of the transposed-first-qubit mixture is (1-5q)/8
        for q in [0.1, 0.2, 0.5, 0.9] {
            let rho = validate_density(ghz_mixture(q)).unwrap();
            let pt = partial_transpose(&rho, 1).unwrap();
            let vals = hermitian_eigenvalues(&pt).unwrap();
            assert_close(*vals.last().unwrap(), (1.0 - 5.0 * q) / 8.0, 1e-13);
        }
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let rho = validate_density(ghz_mixture(0.35)).unwrap();
        let pt = partial_transpose(&rho, 2).unwrap();
        let pt_rho = validate_density_with(
            pt,
            &Tolerances {
                equality: 1e-12,
                psd_slack: 1.0, // transposed matrix may be indefinite; positivity not under test
            },
        )
        .unwrap();
        let back = partial_transpose(&pt_rho, 2).unwrap();
        assert_eq!(&back, rho.matrix());
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let rho = ghz_mixture(0.6);
        let root = sqrt_psd(&rho).unwrap();
        assert!(root.matmul(&root).max_abs_diff(&rho) < 1e-13);
    }

    #[test]
    fn sqrt_psd_rejects_indefinite_input() {
        assert!(matches!(
            sqrt_psd(&pauli_z::<f64>()),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn works_in_single_precision() {
        let vals = hermitian_eigenvalues(&pauli_y::<f32>()).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-6);
        assert!((vals[1] + 1.0).abs() < 1e-6);
    }
}
