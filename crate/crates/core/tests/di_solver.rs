//! Solver-level checks for the device-independent bound: desk cases with
//! known answers, soundness fuzzing against states the scenario was
//! generated from, information monotonicity and certificate validity.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

use entdim_core::di::scenario_from_state;
use entdim_core::eig::min_eigenvalue;
use entdim_core::matrix::ComplexMatrix;
use entdim_core::moment::{moment_matrix, moment_partial_transpose, MeasurementSet};
use entdim_core::random::{random_contraction, random_density, random_schmidt_rank_k_mixture};
use entdim_core::states::max_entangled;
use entdim_core::{
    certified_dimensions, di_lower_bound, negativity, BipartiteState, DiScenario, SolverOptions,
    SolverStatus,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli_ops() -> Vec<ComplexMatrix<f64>> {
    let x = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
    let y = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let z = ComplexMatrix::from_entries(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
    vec![x, y, z]
}

fn random_ops(d: usize, count: usize, rng: &mut ChaCha12Rng) -> Vec<ComplexMatrix<f64>> {
    (0..count)
        .map(|_| random_contraction::<f64, _>(d, rng))
        .collect()
}

#[test]
fn complete_bell_scenario_is_tight() {
    let bell = max_entangled::<f64>(2).unwrap();
    let meas = MeasurementSet::new(2, 2, pauli_ops(), pauli_ops()).unwrap();
    let sc = scenario_from_state(&bell, &meas).unwrap();
    let out = di_lower_bound(&sc, &SolverOptions::default()).unwrap();
    println!(
        "bell complete: bound={} width={} status={:?} iters={}",
        out.bound, out.width, out.status, out.iterations
    );
    assert!(out.bound >= 0.45, "bound too loose: {}", out.bound);
    assert!(out.bound <= 0.5 + 1e-6, "bound unsound: {}", out.bound);
    assert_eq!(certified_dimensions(out.bound), 2);
}

#[test]
fn separable_data_certifies_one_dimension() {
    let mut rng = ChaCha12Rng::seed_from_u64(40);
    let sep = random_schmidt_rank_k_mixture::<f64>(2, 1, 4, 11).unwrap();
    let meas =
        MeasurementSet::new(2, 2, random_ops(2, 2, &mut rng), random_ops(2, 2, &mut rng)).unwrap();
    let sc = scenario_from_state(&sep, &meas).unwrap();
    let out = di_lower_bound(&sc, &SolverOptions::default()).unwrap();
    println!(
        "separable: bound={} status={:?} iters={}",
        out.bound, out.status, out.iterations
    );
    assert!(out.bound <= 1e-6);
    assert_eq!(certified_dimensions(out.bound), 1);
}

#[test]
fn soundness_fuzz_bound_never_exceeds_true_negativity() {
    let mut rng = ChaCha12Rng::seed_from_u64(4242);
    let opts = SolverOptions::default();
    let mut checked = 0usize;
    for trial in 0..30u64 {
        let d = if trial % 3 == 0 { 3 } else { 2 };
        let rho = if trial % 2 == 0 {
            BipartiteState::new(random_density::<f64>(d * d, 500 + trial), d, d).unwrap()
        } else {
            random_schmidt_rank_k_mixture::<f64>(d, 1 + (trial as usize % d), 3, 700 + trial)
                .unwrap()
        };
        let n_true = negativity(&rho).unwrap();
        let m_count = 1 + (trial as usize % 2);
        let meas = MeasurementSet::new(
            d,
            d,
            random_ops(d, m_count, &mut rng),
            random_ops(d, m_count, &mut rng),
        )
        .unwrap();
        let chi = moment_matrix(&rho, &meas).unwrap();
        // Random subset of entries, always including the normalization.
        let n = chi.dim();
        let mut picks = Vec::new();
        for r in 0..n {
            for col in r..n {
                if rng.random::<f64>() < 0.6 {
                    picks.push((r, col));
                }
            }
        }
        let sc = DiScenario::from_entries(&chi, &picks).unwrap();
        let out = di_lower_bound(&sc, &opts).unwrap();
        assert!(
            out.bound <= n_true + 1e-6,
            "trial {trial}: bound {} exceeds true negativity {}",
            out.bound,
            n_true
        );
        checked += 1;
    }
    assert_eq!(checked, 30);
}

#[test]
fn more_information_does_not_weaken_the_bound() {
    let bell = max_entangled::<f64>(2).unwrap();
    let meas = MeasurementSet::new(2, 2, pauli_ops(), pauli_ops()).unwrap();
    let chi = moment_matrix(&bell, &meas).unwrap();
    let n = chi.dim();
    let few: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let many: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
    let opts = SolverOptions::default();
    let bound_none = di_lower_bound(&DiScenario::from_entries(&chi, &[]).unwrap(), &opts)
        .unwrap()
        .bound;
    let bound_few = di_lower_bound(&DiScenario::from_entries(&chi, &few).unwrap(), &opts)
        .unwrap()
        .bound;
    let bound_many = di_lower_bound(&DiScenario::from_entries(&chi, &many).unwrap(), &opts)
        .unwrap()
        .bound;
    println!("monotonicity: none={bound_none} few={bound_few} many={bound_many}");
    assert!(bound_none <= bound_few + 1e-6);
    assert!(bound_few <= bound_many + 1e-6);
}

#[test]
fn certificates_pass_independent_checks() {
    let bell = max_entangled::<f64>(2).unwrap();
    let meas = MeasurementSet::new(2, 2, pauli_ops(), pauli_ops()).unwrap();
    let sc = scenario_from_state(&bell, &meas).unwrap();
    let out = di_lower_bound(&sc, &SolverOptions::default()).unwrap();
    let (chi, chi_sigma) = &out.certificate;
    // PSD checks.
    assert!(min_eigenvalue(&chi.matrix().hermitian_part()).unwrap() >= -1e-8);
    let s_pt = moment_partial_transpose(chi_sigma);
    assert!(min_eigenvalue(&s_pt.matrix().hermitian_part()).unwrap() >= -1e-8);
    let sum = chi.matrix() + chi_sigma.matrix();
    let sum_m = entdim_core::moment::MomentMatrix::new(chi.m_a(), chi.m_b(), sum);
    let sum_pt = moment_partial_transpose(&sum_m);
    assert!(min_eigenvalue(&sum_pt.matrix().hermitian_part()).unwrap() >= -1e-8);
    // Data match.
    for cst in sc.constraints() {
        let v = chi.get(cst.row, cst.col);
        assert!((v - cst.value).norm() <= 1e-8);
    }
    assert_eq!(out.status, SolverStatus::Converged);
}

#[test]
fn near_complete_pure_state_data_does_not_false_alarm() {
    // Rank-deficient moment matrices make the PSD completion thin: the
    // projections can plateau above tolerance on perfectly consistent
    // data. That must surface as a (sound) stalled bound, never as an
    // Infeasible error.
    let mut rng = ChaCha12Rng::seed_from_u64(5959);
    let psi = max_entangled::<f64>(3).unwrap();
    let n_true = negativity(&psi).unwrap();
    for round in 0..3u64 {
        let meas = MeasurementSet::new(
            3,
            3,
            random_ops(3, 3, &mut rng),
            random_ops(3, 3, &mut rng),
        )
        .unwrap();
        let chi = moment_matrix(&psi, &meas).unwrap();
        let n = chi.dim();
        let mut picks = Vec::new();
        for r in 0..n {
            for c in r..n {
                if rng.random::<f64>() < 0.85 {
                    picks.push((r, c));
                }
            }
        }
        let sc = DiScenario::from_entries(&chi, &picks).unwrap();
        let out = di_lower_bound(&sc, &SolverOptions::default())
            .unwrap_or_else(|e| panic!("round {round}: expected a bound, got {e}"));
        assert!(out.bound >= 0.0);
        assert!(
            out.bound <= n_true + 1e-6,
            "round {round}: bound {} vs negativity {n_true}",
            out.bound
        );
    }
}

#[test]
fn infeasible_constraints_are_rejected() {
    // Normalization plus a diagonal entry far beyond any PSD completion:
    // χ₀₀ = 1 with an off-diagonal of modulus 10 forces a negative block.
    let sc = DiScenario::<f64>::new(
        1,
        1,
        vec![
            ((0, 0), (0, 0), c(1.0, 0.0)),
            ((0, 0), (1, 1), c(10.0, 0.0)),
            ((1, 1), (1, 1), c(1.0, 0.0)),
        ],
    )
    .unwrap();
    let err = di_lower_bound(&sc, &SolverOptions::default()).unwrap_err();
    assert!(matches!(err, entdim_core::Error::Infeasible { .. }));
}
