//! Bipartite density matrices and the index-reshuffling maps on them.
//!
//! A `BipartiteState` is a density matrix together with the factorization
//! `dim = d_a · d_b` of its Hilbert space. Product basis index convention:
//! `|α β⟩ ↦ α·d_b + β`.

use num_complex::Complex;

use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Density matrix of a bipartite system.
#[derive(Debug, Clone)]
pub struct BipartiteState<T: Scalar> {
    rho: ComplexMatrix<T>,
    d_a: usize,
    d_b: usize,
}

impl<T: Scalar> BipartiteState<T> {
    /// Validating constructor. Checks, in order: the dimension product,
    /// Hermiticity, unit trace and positive semidefiniteness, reporting the
    /// first violated invariant with its magnitude.
    pub fn new(rho: ComplexMatrix<T>, d_a: usize, d_b: usize) -> Result<Self> {
        if rho.dim() != d_a * d_b {
            return Err(Error::DimensionMismatch(format!(
                "density matrix dimension {} does not equal d_a·d_b = {}·{}",
                rho.dim(),
                d_a,
                d_b
            )));
        }
        let state = Self { rho, d_a, d_b };
        state.validate()?;
        Ok(state)
    }

    /// Wraps a matrix that is already known to satisfy the invariants
    /// (states produced by the constructors in this crate). No checks.
    pub fn new_unchecked(rho: ComplexMatrix<T>, d_a: usize, d_b: usize) -> Self {
        debug_assert_eq!(rho.dim(), d_a * d_b);
        Self { rho, d_a, d_b }
    }

    /// Re-checks every invariant of a valid state.
    pub fn validate(&self) -> Result<()> {
        let herm = self.rho.hermitian_deviation();
        if herm > T::TOL_HERMITIAN {
            return Err(Error::InvalidState {
                invariant: "rho is Hermitian",
                magnitude: herm.as_f64(),
                tolerance: T::TOL_HERMITIAN.as_f64(),
            });
        }
        let trace_dev = (self.rho.trace().re - T::one()).abs();
        if trace_dev > T::TOL_TRACE {
            return Err(Error::InvalidState {
                invariant: "trace(rho) equals 1",
                magnitude: trace_dev.as_f64(),
                tolerance: T::TOL_TRACE.as_f64(),
            });
        }
        let eig = hermitian_eig(&self.rho)?;
        if eig.values[0] < -T::TOL_PSD {
            return Err(Error::InvalidState {
                invariant: "rho is positive semidefinite",
                magnitude: (-eig.values[0]).as_f64(),
                tolerance: T::TOL_PSD.as_f64(),
            });
        }
        Ok(())
    }

    pub fn rho(&self) -> &ComplexMatrix<T> {
        &self.rho
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    /// Overlap `⟨ψ|ρ|ψ⟩` with a pure state given as an amplitude vector.
    pub fn fidelity_with_vector(&self, psi: &[Complex<T>]) -> T {
        assert_eq!(psi.len(), self.dim());
        let n = self.dim();
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            for j in 0..n {
                acc += psi[i].conj() * self.rho[(i, j)] * psi[j];
            }
        }
        acc.re
    }
}

/// Partial transpose with respect to party A.
///
/// `out(α·d_b + β, α'·d_b + β') = ρ(α'·d_b + β, α·d_b + β')`. The result is
/// Hermitian and has the same trace; applying the map twice restores the
/// input exactly.
pub fn partial_transpose<T: Scalar>(s: &BipartiteState<T>) -> ComplexMatrix<T> {
    partial_transpose_matrix(&s.rho, s.d_a, s.d_b).expect("state dimensions are consistent")
}

/// Partial transpose of a raw matrix on a `d_a × d_b` product space.
pub fn partial_transpose_matrix<T: Scalar>(
    m: &ComplexMatrix<T>,
    d_a: usize,
    d_b: usize,
) -> Result<ComplexMatrix<T>> {
    if m.dim() != d_a * d_b {
        return Err(Error::DimensionMismatch(format!(
            "matrix dimension {} does not equal d_a·d_b = {}·{}",
            m.dim(),
            d_a,
            d_b
        )));
    }
    let mut out = ComplexMatrix::zeros(d_a * d_b);
    for ai in 0..d_a {
        for ak in 0..d_a {
            for bj in 0..d_b {
                for bl in 0..d_b {
                    out[(ai * d_b + bj, ak * d_b + bl)] = m[(ak * d_b + bj, ai * d_b + bl)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced state of party A (party B traced out).
pub fn partial_trace_b<T: Scalar>(s: &BipartiteState<T>) -> ComplexMatrix<T> {
    let (da, db) = (s.d_a, s.d_b);
    ComplexMatrix::from_fn(da, |ai, ak| {
        (0..db).map(|b| s.rho[(ai * db + b, ak * db + b)]).sum()
    })
}

/// Reduced state of party B (party A traced out).
pub fn partial_trace_a<T: Scalar>(s: &BipartiteState<T>) -> ComplexMatrix<T> {
    let (da, db) = (s.d_a, s.d_b);
    ComplexMatrix::from_fn(db, |bj, bl| {
        (0..da).map(|a| s.rho[(a * db + bj, a * db + bl)]).sum()
    })
}
