//! Pure-state constructors: the maximally entangled state and states with a
//! prescribed Schmidt decomposition.

use num_complex::Complex;

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Amplitudes of `(1/√d) Σ_j |jj⟩` in the product basis of a `d_a × d_b`
/// system with `d ≤ min(d_a, d_b)`.
pub fn max_entangled_vector<T: Scalar>(d: usize, d_a: usize, d_b: usize) -> Vec<Complex<T>> {
    let amp = (T::one() / T::from_dim(d)).sqrt();
    let mut psi = vec![Complex::new(T::zero(), T::zero()); d_a * d_b];
    for j in 0..d {
        psi[j * d_b + j] = Complex::new(amp, T::zero());
    }
    psi
}

/// Density matrix of the maximally entangled state `(1/√d) Σ_j |jj⟩` on a
/// `d × d` system: `⟨jj|ρ|kk⟩ = 1/d`, every other entry zero.
pub fn max_entangled<T: Scalar>(d: usize) -> Result<BipartiteState<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "maximally entangled state needs d >= 2",
        });
    }
    let inv_d = T::one() / T::from_dim(d);
    let mut rho = ComplexMatrix::zeros(d * d);
    for j in 0..d {
        for k in 0..d {
            rho[(j * d + j, k * d + k)] = Complex::new(inv_d, T::zero());
        }
    }
    Ok(BipartiteState::new_unchecked(rho, d, d))
}

/// Normalized positive Schmidt coefficients.
#[derive(Debug, Clone)]
pub struct SchmidtVector<T: Scalar> {
    coefficients: Vec<T>,
}

impl<T: Scalar> SchmidtVector<T> {
    /// Requires every coefficient strictly positive and `Σ c_i² == 1`
    /// within tolerance.
    pub fn new(coefficients: Vec<T>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidSchmidtVector("empty coefficient list".into()));
        }
        if let Some(bad) = coefficients.iter().find(|&&v| v <= T::zero()) {
            return Err(Error::InvalidSchmidtVector(format!(
                "coefficients must be positive, found {bad}"
            )));
        }
        let norm_sq: T = coefficients.iter().map(|&v| v * v).sum();
        if (norm_sq - T::one()).abs() > T::TOL_TRACE {
            return Err(Error::InvalidSchmidtVector(format!(
                "squared coefficients sum to {norm_sq}, expected 1"
            )));
        }
        Ok(Self { coefficients })
    }

    /// `k` equal coefficients `1/√k`.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSchmidtVector("rank must be positive".into()));
        }
        let amp = (T::one() / T::from_dim(k)).sqrt();
        Ok(Self {
            coefficients: vec![amp; k],
        })
    }

    /// Normalizes an arbitrary positive weight list.
    pub fn from_weights(weights: &[T]) -> Result<Self> {
        let norm: T = weights.iter().map(|&w| w * w).sum::<T>().sqrt();
        if norm <= T::zero() {
            return Err(Error::InvalidSchmidtVector("weights sum to zero".into()));
        }
        Self::new(weights.iter().map(|&w| w / norm).collect())
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }
}

/// Amplitudes of `Σ_i c_i |ii⟩` embedded in a `d_a × d_b` system.
pub fn schmidt_vector_amplitudes<T: Scalar>(
    sv: &SchmidtVector<T>,
    d_a: usize,
    d_b: usize,
) -> Result<Vec<Complex<T>>> {
    let k = sv.rank();
    if k > d_a.min(d_b) {
        return Err(Error::RankTooLarge {
            k,
            max_rank: d_a.min(d_b),
        });
    }
    let mut psi = vec![Complex::new(T::zero(), T::zero()); d_a * d_b];
    for (i, &ci) in sv.coefficients().iter().enumerate() {
        psi[i * d_b + i] = Complex::new(ci, T::zero());
    }
    Ok(psi)
}

/// Pure state `Σ_i c_i |ii⟩` embedded in a `d_a × d_b` system. Its Schmidt
/// rank equals the number of coefficients.
pub fn pure_state_from_schmidt<T: Scalar>(
    sv: &SchmidtVector<T>,
    d_a: usize,
    d_b: usize,
) -> Result<BipartiteState<T>> {
    let psi = schmidt_vector_amplitudes(sv, d_a, d_b)?;
    Ok(pure_state(&psi, d_a, d_b))
}

/// Density matrix `|ψ⟩⟨ψ|` of a normalized amplitude vector.
pub fn pure_state<T: Scalar>(psi: &[Complex<T>], d_a: usize, d_b: usize) -> BipartiteState<T> {
    assert_eq!(psi.len(), d_a * d_b);
    let n = psi.len();
    let rho = ComplexMatrix::from_fn(n, |i, j| psi[i] * psi[j].conj());
    BipartiteState::new_unchecked(rho, d_a, d_b)
}
