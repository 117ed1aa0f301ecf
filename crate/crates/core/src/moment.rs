//! Moment matrices of bipartite measurement scenarios.
//!
//! For local operator lists `A_i`, `B_j` (index 0 pinned to the identity)
//! the moment matrix has entries
//!
//! ```text
//! χ_{(i,j),(k,l)}[ρ] = tr[ρ (A_k†A_i ⊗ B_l†B_j)]
//! ```
//!
//! with composite row index `(i, j) ↦ i·(m_b+1) + j`. χ is Hermitian, PSD
//! whenever ρ is, and its index-swap partial transpose is PSD whenever
//! `ρ^{T_A}` is — the two facts the device-independent bound rests on.

use num_complex::Complex;

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Local measurement operators; index 0 of each list is the identity.
///
/// For the device-independent bound the operators are understood to be
/// Kraus operators of generalized measurements, i.e. contractions
/// (`A_i†A_i ⪯ 1`); [`moment_matrix`] itself works for arbitrary operators.
#[derive(Debug, Clone)]
pub struct MeasurementSet<T: Scalar> {
    ops_a: Vec<ComplexMatrix<T>>,
    ops_b: Vec<ComplexMatrix<T>>,
}

impl<T: Scalar> MeasurementSet<T> {
    /// Lists of operators beyond the identity; the identity slots are
    /// prepended automatically.
    pub fn new(
        d_a: usize,
        d_b: usize,
        extra_a: Vec<ComplexMatrix<T>>,
        extra_b: Vec<ComplexMatrix<T>>,
    ) -> Result<Self> {
        for (side, d, ops) in [("A", d_a, &extra_a), ("B", d_b, &extra_b)] {
            if let Some(bad) = ops.iter().find(|m| m.dim() != d) {
                return Err(Error::DimensionMismatch(format!(
                    "operator on side {side} has dimension {}, expected {d}",
                    bad.dim()
                )));
            }
        }
        let mut ops_a = vec![ComplexMatrix::identity(d_a)];
        ops_a.extend(extra_a);
        let mut ops_b = vec![ComplexMatrix::identity(d_b)];
        ops_b.extend(extra_b);
        Ok(Self { ops_a, ops_b })
    }

    pub fn m_a(&self) -> usize {
        self.ops_a.len() - 1
    }

    pub fn m_b(&self) -> usize {
        self.ops_b.len() - 1
    }

    pub fn ops_a(&self) -> &[ComplexMatrix<T>] {
        &self.ops_a
    }

    pub fn ops_b(&self) -> &[ComplexMatrix<T>] {
        &self.ops_b
    }
}

/// The χ matrix, with its measurement-count shape retained.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix<T: Scalar> {
    m_a: usize,
    m_b: usize,
    entries: ComplexMatrix<T>,
}

impl<T: Scalar> MomentMatrix<T> {
    pub fn new(m_a: usize, m_b: usize, entries: ComplexMatrix<T>) -> Self {
        assert_eq!(entries.dim(), (m_a + 1) * (m_b + 1));
        Self { m_a, m_b, entries }
    }

    pub fn zeros(m_a: usize, m_b: usize) -> Self {
        Self::new(m_a, m_b, ComplexMatrix::zeros((m_a + 1) * (m_b + 1)))
    }

    pub fn m_a(&self) -> usize {
        self.m_a
    }

    pub fn m_b(&self) -> usize {
        self.m_b
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.entries
    }

    pub fn matrix_mut(&mut self) -> &mut ComplexMatrix<T> {
        &mut self.entries
    }

    /// Flattens a composite `(i, j)` index.
    pub fn flat(&self, i: usize, j: usize) -> usize {
        i * (self.m_b + 1) + j
    }

    pub fn get(&self, row: (usize, usize), col: (usize, usize)) -> Complex<T> {
        self.entries[(self.flat(row.0, row.1), self.flat(col.0, col.1))]
    }
}

/// `tr[ρ (M ⊗ N)]` without materializing the Kronecker product.
fn trace_against_product<T: Scalar>(
    s: &BipartiteState<T>,
    m: &ComplexMatrix<T>,
    n: &ComplexMatrix<T>,
) -> Complex<T> {
    let (da, db) = (s.d_a(), s.d_b());
    let rho = s.rho();
    let mut acc = Complex::new(T::zero(), T::zero());
    for alpha in 0..da {
        for alpha2 in 0..da {
            let m_entry = m[(alpha2, alpha)];
            if m_entry.norm_sqr() == T::zero() {
                continue;
            }
            let mut inner = Complex::new(T::zero(), T::zero());
            for beta in 0..db {
                for beta2 in 0..db {
                    inner += rho[(alpha * db + beta, alpha2 * db + beta2)] * n[(beta2, beta)];
                }
            }
            acc += m_entry * inner;
        }
    }
    acc
}

/// Evaluates the moment matrix of `ρ` for a measurement set.
#[allow(clippy::needless_range_loop)]
pub fn moment_matrix<T: Scalar>(
    s: &BipartiteState<T>,
    meas: &MeasurementSet<T>,
) -> Result<MomentMatrix<T>> {
    if meas.ops_a()[0].dim() != s.d_a() || meas.ops_b()[0].dim() != s.d_b() {
        return Err(Error::DimensionMismatch(format!(
            "measurement set acts on {} x {}, state is {} x {}",
            meas.ops_a()[0].dim(),
            meas.ops_b()[0].dim(),
            s.d_a(),
            s.d_b()
        )));
    }
    let (ma, mb) = (meas.m_a(), meas.m_b());
    let mut out = MomentMatrix::zeros(ma, mb);
    // Precompute A_k†A_i and B_l†B_j.
    let prod_a: Vec<Vec<ComplexMatrix<T>>> = (0..=ma)
        .map(|k| {
            let adj = meas.ops_a()[k].adjoint();
            (0..=ma).map(|i| adj.matmul(&meas.ops_a()[i])).collect()
        })
        .collect();
    let prod_b: Vec<Vec<ComplexMatrix<T>>> = (0..=mb)
        .map(|l| {
            let adj = meas.ops_b()[l].adjoint();
            (0..=mb).map(|j| adj.matmul(&meas.ops_b()[j])).collect()
        })
        .collect();
    for i in 0..=ma {
        for j in 0..=mb {
            let row = out.flat(i, j);
            for k in 0..=ma {
                for l in 0..=mb {
                    let col = out.flat(k, l);
                    let v = trace_against_product(s, &prod_a[k][i], &prod_b[l][j]);
                    out.entries[(row, col)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// Partial transpose on the moment matrix: swaps the A indices between row
/// and column, `out_{(i,j),(k,l)} = in_{(k,j),(i,l)}`. An involution that
/// preserves Hermiticity.
pub fn moment_partial_transpose<T: Scalar>(chi: &MomentMatrix<T>) -> MomentMatrix<T> {
    let (ma, mb) = (chi.m_a(), chi.m_b());
    let mut out = MomentMatrix::zeros(ma, mb);
    for i in 0..=ma {
        for j in 0..=mb {
            for k in 0..=ma {
                for l in 0..=mb {
                    let (row, col) = (out.flat(i, j), out.flat(k, l));
                    out.entries[(row, col)] = chi.entries[(chi.flat(k, j), chi.flat(i, l))];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::partial_transpose;
    use crate::eig::min_eigenvalue;
    use crate::random::{haar_unitary, random_density, random_schmidt_rank_k_mixture};
    use crate::states::max_entangled;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_ops(d: usize, count: usize, rng: &mut ChaCha12Rng) -> Vec<ComplexMatrix<f64>> {
        // Generic non-Hermitian operators: scaled unitaries plus a shift.
        (0..count)
            .map(|_| {
                let u = haar_unitary::<f64, _>(d, rng);
                let v = haar_unitary::<f64, _>(d, rng);
                &u.scaled(c(0.8, 0.1)) + &v.scaled(c(0.0, -0.4))
            })
            .collect()
    }

    fn pauli_ops() -> Vec<ComplexMatrix<f64>> {
        let x = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let y = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let z = ComplexMatrix::from_entries(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        vec![x, y, z]
    }

    #[test]
    fn identity_only_scenario_is_the_normalization() {
        let s = crate::BipartiteState::new(random_density::<f64>(6, 1), 2, 3).unwrap();
        let meas = MeasurementSet::new(2, 3, vec![], vec![]).unwrap();
        let chi = moment_matrix(&s, &meas).unwrap();
        assert_eq!(chi.dim(), 1);
        assert!((chi.get((0, 0), (0, 0)) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn moment_matrix_is_hermitian_and_psd() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for trial in 0..10u64 {
            let s =
                crate::BipartiteState::new(random_density::<f64>(9, 100 + trial), 3, 3).unwrap();
            let meas =
                MeasurementSet::new(3, 3, random_ops(3, 2, &mut rng), random_ops(3, 2, &mut rng))
                    .unwrap();
            let chi = moment_matrix(&s, &meas).unwrap();
            assert!(chi.matrix().hermitian_deviation() < 1e-10);
            assert!(min_eigenvalue(chi.matrix()).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn moment_matrix_is_linear_in_the_state() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let meas =
            MeasurementSet::new(2, 2, random_ops(2, 2, &mut rng), random_ops(2, 1, &mut rng))
                .unwrap();
        let r1 = random_density::<f64>(4, 41);
        let r2 = random_density::<f64>(4, 42);
        let alpha = 0.3;
        let mix = &r1.scaled_real(alpha) + &r2.scaled_real(1.0 - alpha);
        let s1 = crate::BipartiteState::new(r1, 2, 2).unwrap();
        let s2 = crate::BipartiteState::new(r2, 2, 2).unwrap();
        let sm = crate::BipartiteState::new(mix, 2, 2).unwrap();
        let c1 = moment_matrix(&s1, &meas).unwrap();
        let c2 = moment_matrix(&s2, &meas).unwrap();
        let cm = moment_matrix(&sm, &meas).unwrap();
        let combo = &c1.matrix().scaled_real(alpha) + &c2.matrix().scaled_real(1.0 - alpha);
        assert!(cm.matrix().max_abs_diff(&combo) < 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let s = crate::BipartiteState::new(random_density::<f64>(4, 50), 2, 2).unwrap();
        let meas =
            MeasurementSet::new(2, 2, random_ops(2, 2, &mut rng), random_ops(2, 2, &mut rng))
                .unwrap();
        let chi = moment_matrix(&s, &meas).unwrap();
        let twice = moment_partial_transpose(&moment_partial_transpose(&chi));
        assert_eq!(twice.matrix(), chi.matrix());
    }

    #[test]
    fn ppt_states_have_psd_transposed_moments() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for trial in 0..10u64 {
            // Separable mixtures are PPT.
            let s = random_schmidt_rank_k_mixture::<f64>(3, 1, 4, 600 + trial).unwrap();
            assert!(min_eigenvalue(&partial_transpose(&s)).unwrap() >= -1e-10);
            let meas =
                MeasurementSet::new(3, 3, random_ops(3, 2, &mut rng), random_ops(3, 2, &mut rng))
                    .unwrap();
            let chi = moment_matrix(&s, &meas).unwrap();
            let chi_pt = moment_partial_transpose(&chi);
            assert!(min_eigenvalue(chi_pt.matrix()).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn bell_state_with_complete_paulis_has_negative_transposed_moment() {
        let s = max_entangled::<f64>(2).unwrap();
        let meas = MeasurementSet::new(2, 2, pauli_ops(), pauli_ops()).unwrap();
        let chi = moment_matrix(&s, &meas).unwrap();
        let chi_pt = moment_partial_transpose(&chi);
        assert!(chi_pt.matrix().hermitian_deviation() < 1e-12);
        let min = min_eigenvalue(chi_pt.matrix()).unwrap();
        assert!(
            min < -1e-3,
            "expected a clearly negative eigenvalue, got {min}"
        );
    }
}
