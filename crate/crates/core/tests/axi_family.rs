//! Family-level properties of the axisymmetric states: the isometric
//! (x, y) chart, the triangle geometry, invariance under the full symmetry
//! group, the exact spectrum, and the analytic twirl against a Monte-Carlo
//! group average.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

use entdim_core::axi::{
    self, axi_state, axi_twirl, coupled_phase_rotation, simultaneous_permutation, swap_operator,
    torus_phase_operator, AxiParams,
};
use entdim_core::eig::hermitian_eig;
use entdim_core::matrix::ComplexMatrix;
use entdim_core::random::random_density;
use entdim_core::states::max_entangled;
use entdim_core::BipartiteState;

fn sample_point(d: usize, rng: &mut ChaCha12Rng) -> AxiParams<f64> {
    loop {
        let x = axi::x_min::<f64>(d)
            + (axi::x_max::<f64>(d) - axi::x_min::<f64>(d)) * rng.random::<f64>();
        let y = axi::y_min::<f64>(d)
            + (axi::y_max::<f64>(d) - axi::y_min::<f64>(d)) * rng.random::<f64>();
        if let Ok(p) = AxiParams::new(d, x, y) {
            return p;
        }
    }
}

#[test]
fn chart_is_a_hilbert_schmidt_isometry() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for d in [2usize, 3, 4, 5] {
        for _ in 0..200 {
            let p1 = sample_point(d, &mut rng);
            let p2 = sample_point(d, &mut rng);
            let s1 = axi_state(&p1);
            let s2 = axi_state(&p2);
            let hs = (s1.rho() - s2.rho()).frobenius_norm();
            let euclid = ((p1.x() - p2.x()).powi(2) + (p1.y() - p2.y()).powi(2)).sqrt();
            assert!(
                (hs - euclid).abs() < 1e-10,
                "d={d}: HS {hs} vs Euclid {euclid}"
            );
        }
    }
}

#[test]
fn triangle_vertices_are_the_named_states() {
    for d in [2usize, 3, 4] {
        // Upper right corner: maximally entangled.
        let corner =
            axi_state(&AxiParams::new(d, axi::x_max::<f64>(d), axi::y_max::<f64>(d)).unwrap());
        let psi = max_entangled::<f64>(d).unwrap();
        assert!(corner.rho().max_abs_diff(psi.rho()) < 1e-14);

        // Mirror corner: same y, most negative x allowed at that height.
        let mirror =
            AxiParams::new(d, axi::x_min::<f64>(d), axi::y_max::<f64>(d)).expect("mirror corner");
        axi_state(&mirror).validate().unwrap();

        // Apex at (0, y_min): no off-diagonal weight survives.
        let apex = axi_state(&AxiParams::new(d, 0.0, axi::y_min::<f64>(d)).unwrap());
        apex.validate().unwrap();
        for j in 0..d {
            let idx = j * d + j;
            assert!(apex.rho()[(idx, idx)].norm() < 1e-15);
        }

        // Origin: maximally mixed.
        let origin = axi_state(&AxiParams::new(d, 0.0, 0.0).unwrap());
        let mixed = ComplexMatrix::<f64>::identity(d * d).scaled_real(1.0 / (d * d) as f64);
        assert!(origin.rho().max_abs_diff(&mixed) < 1e-15);
    }
}

#[test]
fn family_is_invariant_under_all_three_symmetries() {
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for d in [2usize, 3, 4] {
        for _ in 0..5 {
            let p = sample_point(d, &mut rng);
            let rho = axi_state(&p);

            let swapped = rho.rho().conjugate_by(&swap_operator::<f64>(d));
            assert!(swapped.max_abs_diff(rho.rho()) < 1e-10, "swap, d={d}");

            let mut perm: Vec<usize> = (0..d).collect();
            perm.shuffle(&mut rng);
            let permuted = rho
                .rho()
                .conjugate_by(&simultaneous_permutation::<f64>(&perm));
            assert!(
                permuted.max_abs_diff(rho.rho()) < 1e-10,
                "permutation, d={d}"
            );

            let angles: Vec<f64> = (0..d - 1)
                .map(|_| rng.random::<f64>() * 6.0 - 3.0)
                .collect();
            let u = coupled_phase_rotation::<f64>(d, &angles).unwrap();
            let rotated = rho.rho().conjugate_by(&u);
            assert!(rotated.max_abs_diff(rho.rho()) < 1e-10, "phases, d={d}");
        }
    }
}

#[test]
fn axi_spectrum_matches_the_closed_form() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for d in [2usize, 3, 5] {
        for _ in 0..6 {
            let p = sample_point(d, &mut rng);
            let s = axi_state(&p);
            let (a, b) = (p.a(), p.b());
            let dd = d as f64;
            // {1/d²+a+(d−1)b ×1, 1/d²+a−b ×(d−1), 1/d²−a/(d−1) ×d(d−1)}
            let mut expected = vec![1.0 / (dd * dd) + a + (dd - 1.0) * b];
            expected.extend(std::iter::repeat_n(1.0 / (dd * dd) + a - b, d - 1));
            expected.extend(std::iter::repeat_n(
                1.0 / (dd * dd) - a / (dd - 1.0),
                d * (d - 1),
            ));
            expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let got = hermitian_eig(s.rho()).unwrap().values;
            for (g, e) in got.iter().zip(&expected) {
                assert!((g - e).abs() < 1e-10, "d={d}: spectrum {g} vs {e}");
            }
        }
    }
}

#[test]
fn analytic_twirl_matches_monte_carlo_group_average() {
    let d = 3;
    let n = d * d;
    let mut rng = ChaCha12Rng::seed_from_u64(4711);
    let rho = BipartiteState::new(random_density::<f64>(n, 31), d, d).unwrap();
    let analytic = axi_twirl(&rho).unwrap();

    let mut acc = ComplexMatrix::<f64>::zeros(n);
    let samples = 10_000;
    for _ in 0..samples {
        // Random group element: torus phases, simultaneous permutation,
        // optional swap.
        let theta: Vec<f64> = (0..d)
            .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
            .collect();
        let mut g = torus_phase_operator::<f64>(&theta);
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(&mut rng);
        g = simultaneous_permutation::<f64>(&perm).matmul(&g);
        if rng.random::<bool>() {
            g = swap_operator::<f64>(d).matmul(&g);
        }
        let rotated = rho.rho().conjugate_by(&g);
        acc = &acc + &rotated;
    }
    let mc = acc.scaled_real(1.0 / samples as f64);
    let dev = mc.max_abs_diff(analytic.rho());
    assert!(dev < 1e-3, "Monte-Carlo twirl deviates by {dev}");
}

#[test]
fn twirl_of_random_states_lands_inside_the_triangle() {
    for seed in 0..10u64 {
        let d = 2 + (seed % 3) as usize;
        let rho = BipartiteState::new(random_density::<f64>(d * d, seed), d, d).unwrap();
        let t = axi_twirl(&rho).unwrap();
        t.validate().unwrap();
        let p = entdim_core::axi_coords(&t).unwrap();
        assert_eq!(p.d(), d);
        // Round trip through the chart reproduces the twirled state.
        let back = axi_state(&p);
        assert!(back.rho().max_abs_diff(t.rho()) < 1e-10);
    }
}

#[test]
fn coords_reject_permutation_asymmetric_states() {
    // Unequal |jj⟩⟨jj| weights break the simultaneous-permutation symmetry.
    let mut rho = ComplexMatrix::<f64>::zeros(4);
    rho[(0, 0)] = Complex64::new(0.7, 0.0);
    rho[(3, 3)] = Complex64::new(0.3, 0.0);
    let s = BipartiteState::new(rho, 2, 2).unwrap();
    assert!(entdim_core::axi_coords(&s).is_err());
}
