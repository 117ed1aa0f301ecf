//! Schmidt-number witnesses `W = ((k−1)/d)·I − |Ψ_d⟩⟨Ψ_d|`.
//!
//! A state of Schmidt number below `k` has overlap at most `(k−1)/d` with
//! the maximally entangled state, so `tr(Wρ) < 0` certifies Schmidt number
//! at least `k`.

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::states::max_entangled;

/// Witness operator for Schmidt number `k` on a `d × d` system.
#[derive(Debug, Clone)]
pub struct Witness<T: Scalar> {
    k: usize,
    d: usize,
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> Witness<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }
}

/// Constructs `W = ((k−1)/d)·I_{d²} − |Ψ_d⟩⟨Ψ_d|` for `2 ≤ k ≤ d`.
pub fn schmidt_witness<T: Scalar>(d: usize, k: usize) -> Result<Witness<T>> {
    if k < 2 || k > d {
        return Err(Error::InvalidK { k, d });
    }
    let psi = max_entangled::<T>(d)?;
    let shift = T::from_dim(k - 1) / T::from_dim(d);
    let matrix = &ComplexMatrix::identity(d * d).scaled_real(shift) - psi.rho();
    Ok(Witness { k, d, matrix })
}

/// Expectation value `tr(Wρ) = (k−1)/d − ⟨Ψ_d|ρ|Ψ_d⟩`; a negative value
/// certifies Schmidt number ≥ k.
pub fn witness_value<T: Scalar>(w: &Witness<T>, s: &BipartiteState<T>) -> Result<T> {
    if s.d_a() != w.d || s.d_b() != w.d {
        return Err(Error::DimensionMismatch(format!(
            "witness acts on {0} x {0}, state is {1} x {2}",
            w.d,
            s.d_a(),
            s.d_b()
        )));
    }
    let n = s.dim();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc += (w.matrix[(i, j)] * s.rho()[(j, i)]).re;
        }
    }
    Ok(acc)
}
