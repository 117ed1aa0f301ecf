//! Hermitian eigendecomposition (cyclic Jacobi) and the trace norm.
//!
//! A self-contained complex Jacobi solver is plenty for the matrix sizes
//! in scope: each sweep annihilates every off-diagonal pair with a 2×2
//! unitary, and convergence is quadratic once the off-diagonal mass is
//! small.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Eigenvalues in ascending order plus the matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigDecomposition<T: Scalar> {
    pub values: Vec<T>,
    /// Unitary matrix whose i-th column is the eigenvector of `values[i]`.
    pub vectors: ComplexMatrix<T>,
}

/// Sweep budget: the solver reports `NoConvergence` past `100·dim²` sweeps.
fn sweep_budget(dim: usize) -> usize {
    100 * dim * dim
}

fn off_diagonal_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// Returns `NotHermitian` if `max |M - M†|` exceeds the input tolerance,
/// and `NoConvergence` if the sweep budget runs out. Degenerate eigenvalues
/// carry no ordering guarantee among themselves.
pub fn hermitian_eig<T: Scalar>(m: &ComplexMatrix<T>) -> Result<EigDecomposition<T>> {
    let dev = m.hermitian_deviation();
    if dev > T::TOL_EIG_INPUT {
        return Err(Error::NotHermitian {
            deviation: dev.as_f64(),
            tolerance: T::TOL_EIG_INPUT.as_f64(),
        });
    }

    let n = m.dim();
    // Symmetrize so that sub-tolerance asymmetry cannot bias the sweep.
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    if scale == T::zero() || n < 2 {
        return Ok(sorted(values_from_diagonal(&a), v));
    }
    let target = scale * T::epsilon() * T::from_dim(n);

    let budget = sweep_budget(n);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps >= budget {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off.as_f64(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    Ok(sorted(values_from_diagonal(&a), v))
}

fn values_from_diagonal<T: Scalar>(a: &ComplexMatrix<T>) -> Vec<T> {
    (0..a.dim()).map(|i| a[(i, i)].re).collect()
}

fn sorted<T: Scalar>(values: Vec<T>, vectors: ComplexMatrix<T>) -> EigDecomposition<T> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .expect("finite eigenvalues")
    });
    let sorted_values: Vec<T> = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    EigDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
fn rotate<T: Scalar>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs_apq = apq.norm();
    if abs_apq == T::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase that makes the pivot real, then a real Jacobi angle.
    let u = apq.unscale(abs_apq);
    let tau = (aqq - app) / (abs_apq + abs_apq);
    let t = if tau == T::zero() {
        T::one()
    } else {
        let s = if tau >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        s / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    let uc = u.conj();
    // Column update: A ← A·J with J[p][p]=c, J[p][q]=s, J[q][p]=-s·ū, J[q][q]=c·ū.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp.scale(c) - (uc * akq).scale(s);
        a[(k, q)] = akp.scale(s) + (uc * akq).scale(c);
    }
    // Row update: A ← J†·A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk.scale(c) - (u * aqk).scale(s);
        a[(q, k)] = apk.scale(s) + (u * aqk).scale(c);
    }
    // The pivot is zero by construction; pin it and keep the diagonal real.
    a[(p, q)] = Complex::new(T::zero(), T::zero());
    a[(q, p)] = Complex::new(T::zero(), T::zero());
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp.scale(c) - (uc * vkq).scale(s);
        v[(k, q)] = vkp.scale(s) + (uc * vkq).scale(c);
    }
}

/// Trace norm `tr √(M†M)`.
///
/// Hermitian input reduces to the sum of absolute eigenvalues; anything else
/// goes through the (squared) singular values of `M†M`.
pub fn trace_norm<T: Scalar>(m: &ComplexMatrix<T>) -> Result<T> {
    if m.is_hermitian(T::TOL_EIG_INPUT) {
        let eig = hermitian_eig(m)?;
        Ok(eig.values.iter().map(|v| v.abs()).sum())
    } else {
        let h = m.adjoint().matmul(m);
        let eig = hermitian_eig(&h)?;
        Ok(eig.values.iter().map(|v| v.max(T::zero()).sqrt()).sum())
    }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Scalar>(m: &ComplexMatrix<T>) -> Result<T> {
    let eig = hermitian_eig(m)?;
    Ok(eig.values[0])
}

/// Frobenius-nearest positive semidefinite matrix (negative eigenvalues
/// clamped to zero).
pub fn psd_project<T: Scalar>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(m)?;
    if eig.values[0] >= T::zero() {
        return Ok(m.hermitian_part());
    }
    Ok(rebuild(&eig, |v| v.max(T::zero())))
}

/// Negative part `Q ⪰ 0` of a Hermitian matrix, so that `M = (M + Q) - Q`
/// with both parts positive semidefinite.
pub fn negative_part<T: Scalar>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(m)?;
    Ok(rebuild(&eig, |v| (-v).max(T::zero())))
}

fn rebuild<T: Scalar>(eig: &EigDecomposition<T>, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
    let n = eig.values.len();
    let mut out = ComplexMatrix::zeros(n);
    for (idx, &lambda) in eig.values.iter().enumerate() {
        let w = f(lambda);
        if w == T::zero() {
            continue;
        }
        for i in 0..n {
            let vi = eig.vectors[(i, idx)];
            if vi.norm_sqr() == T::zero() {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += (vi * eig.vectors[(j, idx)].conj()).scale(w);
            }
        }
    }
    out
}
