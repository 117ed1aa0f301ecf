//! Seeded random states and unitaries for property tests and mixtures.
//!
//! Everything here takes an explicit RNG or seed; there is no global
//! generator, so a given seed reproduces the same state on every run.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::states::SchmidtVector;

/// Standard normal sample via Box-Muller, drawn in `f64` and converted, so
/// the stream is identical for every scalar type.
fn gaussian<T: Scalar, R: Rng>(rng: &mut R) -> T {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    T::real((-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos())
}

fn complex_gaussian<T: Scalar, R: Rng>(rng: &mut R) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

/// Haar-distributed `d × d` unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phases absorbed into Q.
pub fn haar_unitary<T: Scalar, R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix<T> {
    let g = ComplexMatrix::from_fn(d, |_, _| complex_gaussian::<T, R>(rng));
    // Modified Gram-Schmidt on the columns.
    let mut q = g;
    for j in 0..d {
        for prev in 0..j {
            let mut proj = Complex::new(T::zero(), T::zero());
            for i in 0..d {
                proj += q[(i, prev)].conj() * q[(i, j)];
            }
            for i in 0..d {
                let correction = proj * q[(i, prev)];
                q[(i, j)] -= correction;
            }
        }
        let mut norm_sq = T::zero();
        for i in 0..d {
            norm_sq += q[(i, j)].norm_sqr();
        }
        // Dividing by the real positive norm leaves the unique QR with a
        // positive-real R diagonal, whose Q factor is Haar-distributed.
        let inv = norm_sq.sqrt().recip();
        for i in 0..d {
            q[(i, j)] = q[(i, j)].scale(inv);
        }
    }
    q
}

/// Random contraction (`M†M ⪯ 1`): a combination of two Haar unitaries with
/// coefficient moduli summing below one. Suitable as a generalized-
/// measurement operator.
pub fn random_contraction<T: Scalar, R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix<T> {
    let u = haar_unitary::<T, R>(d, rng);
    let v = haar_unitary::<T, R>(d, rng);
    let s1 = T::real(0.25 + 0.4 * rng.random::<f64>());
    let s2 = T::real(0.05 + 0.25 * rng.random::<f64>());
    let p1 = T::real(rng.random::<f64>() * std::f64::consts::TAU);
    let p2 = T::real(rng.random::<f64>() * std::f64::consts::TAU);
    &u.scaled(Complex::from_polar(s1, p1)) + &v.scaled(Complex::from_polar(s2, p2))
}

/// Full-rank random density matrix `G G† / tr(G G†)` of the given dimension.
pub fn random_density<T: Scalar>(dim: usize, seed: u64) -> ComplexMatrix<T> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_density_with(dim, &mut rng)
}

pub fn random_density_with<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let g = ComplexMatrix::from_fn(dim, |_, _| complex_gaussian::<T, R>(rng));
    let h = g.matmul(&g.adjoint());
    let tr = h.trace().re;
    h.scaled_real(tr.recip())
}

/// Convex mixture of `n_terms` locally rotated random pure states of Schmidt
/// rank `k` on a `d × d` system. Deterministic for a given seed.
pub fn random_schmidt_rank_k_mixture<T: Scalar>(
    d: usize,
    k: usize,
    n_terms: usize,
    seed: u64,
) -> Result<BipartiteState<T>> {
    if k > d {
        return Err(Error::RankTooLarge { k, max_rank: d });
    }
    if n_terms == 0 {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "mixture needs at least one term",
        });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut weights: Vec<T> = (0..n_terms)
        .map(|_| T::real(rng.random::<f64>() + 0.05))
        .collect();
    let total: T = weights.iter().copied().sum();
    for w in &mut weights {
        *w /= total;
    }

    let mut rho = ComplexMatrix::zeros(d * d);
    for &w in &weights {
        let coeffs: Vec<T> = (0..k).map(|_| T::real(rng.random::<f64>() + 0.1)).collect();
        let sv = SchmidtVector::from_weights(&coeffs)?;
        let ua = haar_unitary::<T, _>(d, &mut rng);
        let ub = haar_unitary::<T, _>(d, &mut rng);
        // ψ = (U_A ⊗ U_B) Σ_i c_i |ii⟩, assembled column-wise.
        let mut psi = vec![Complex::new(T::zero(), T::zero()); d * d];
        for (i, &ci) in sv.coefficients().iter().enumerate() {
            for alpha in 0..d {
                for beta in 0..d {
                    let amp = (ua[(alpha, i)] * ub[(beta, i)]).scale(ci);
                    psi[alpha * d + beta] += amp;
                }
            }
        }
        for r in 0..d * d {
            for c in 0..d * d {
                rho[(r, c)] += (psi[r] * psi[c].conj()).scale(w);
            }
        }
    }
    Ok(BipartiteState::new_unchecked(rho, d, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for d in [2usize, 3, 5] {
            let u = haar_unitary::<f64, _>(d, &mut rng);
            let gram = u.adjoint().matmul(&u);
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-12);
        }
    }

    #[test]
    fn mixtures_are_valid_states() {
        for seed in 0..5u64 {
            let s = random_schmidt_rank_k_mixture::<f64>(3, 2, 4, seed).unwrap();
            s.validate().unwrap();
        }
    }

    #[test]
    fn mixtures_are_deterministic_in_the_seed() {
        let a = random_schmidt_rank_k_mixture::<f64>(3, 3, 5, 77).unwrap();
        let b = random_schmidt_rank_k_mixture::<f64>(3, 3, 5, 77).unwrap();
        assert_eq!(a.rho(), b.rho());
    }

    #[test]
    fn rank_bound_is_checked() {
        assert!(matches!(
            random_schmidt_rank_k_mixture::<f64>(3, 4, 2, 0),
            Err(Error::RankTooLarge { .. })
        ));
    }
}
