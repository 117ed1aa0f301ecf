//! Negativity, the dimension counter `N_dim`, and the exact closed forms on
//! the axisymmetric family.
//!
//! `N_dim = ‖ρ^{T_A}‖₁ = 2N + 1` rounds up to a lower bound on the Schmidt
//! number — the number of entangled dimensions — and the bound is exact on
//! the axisymmetric triangle.

use crate::axi::AxiParams;
use crate::bipartite::{partial_transpose, BipartiteState};
use crate::eig::trace_norm;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::tol;

/// Schmidt-number classification of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchmidtClass {
    /// The certified Schmidt number (or its lower bound).
    pub k: usize,
    /// True when `k` is only a lower bound rather than the exact class.
    pub certified_lower: bool,
}

/// Negativity `N(ρ) = ½(‖ρ^{T_A}‖₁ − 1)`.
///
/// Values below the round-off clamp are reported as exactly zero, so PPT
/// states give 0.
pub fn negativity<T: Scalar>(s: &BipartiteState<T>) -> Result<T> {
    let tn = trace_norm(&partial_transpose(s))?;
    let value = (tn - T::one()) * T::real(0.5);
    if value < T::real(tol::NEGATIVITY_CLAMP) {
        Ok(T::zero())
    } else {
        Ok(value)
    }
}

/// Dimension counter `N_dim(ρ) = 2N(ρ) + 1 = ‖ρ^{T_A}‖₁ ≥ 1`.
pub fn ndim<T: Scalar>(s: &BipartiteState<T>) -> Result<T> {
    Ok(T::real(2.0) * negativity(s)? + T::one())
}

/// Ceiling with a slack that keeps floating-point overshoot from inflating
/// the certified class; exact integers map to themselves.
pub(crate) fn ceil_with_slack<T: Scalar>(v: T) -> usize {
    let shifted = v - T::real(tol::CEILING);
    let k = shifted.ceil().as_f64() as isize;
    k.max(1) as usize
}

/// Certified lower bound `⌈N_dim⌉` on the Schmidt number of an arbitrary
/// state. Not tight in general (PPT entangled states report 1).
pub fn schmidt_number_lower_bound<T: Scalar>(s: &BipartiteState<T>) -> Result<SchmidtClass> {
    let v = ndim(s)?;
    Ok(SchmidtClass {
        k: ceil_with_slack(v),
        certified_lower: true,
    })
}

/// Exact negativity of the axisymmetric state at `p`:
/// `max{0, ½(√(d(d−1))·|x| + √(d−1)·y − (d−1)/d)}`.
///
/// Clamped below the round-off threshold like [`negativity`], so points on
/// the separability line report exactly zero.
pub fn axi_negativity<T: Scalar>(p: &AxiParams<T>) -> T {
    let d = p.d();
    let df = T::from_dim(d);
    let raw = ((df * (df - T::one())).sqrt() * p.x().abs() + (df - T::one()).sqrt() * p.y()
        - (df - T::one()) / df)
        * T::real(0.5);
    if raw < T::real(tol::NEGATIVITY_CLAMP) {
        T::zero()
    } else {
        raw
    }
}

/// Exact `N_dim` of the axisymmetric state at `p`. On the entangled region
/// this is the affine form `√(d(d−1))·|x| + √(d−1)·y + 1/d`; separable
/// points return 1, which the affine form also takes on the border.
pub fn axi_ndim<T: Scalar>(p: &AxiParams<T>) -> T {
    if axi_negativity(p) == T::zero() {
        return T::one();
    }
    let d = p.d();
    let df = T::from_dim(d);
    (df * (df - T::one())).sqrt() * p.x().abs() + (df - T::one()).sqrt() * p.y() + df.recip()
}

/// Exact SLOCC class `k = ⌈N_dim(x, y)⌉` of the axisymmetric state at `p`.
/// Borders belong to the smaller class, which is closed.
pub fn axi_schmidt_class<T: Scalar>(p: &AxiParams<T>) -> SchmidtClass {
    SchmidtClass {
        k: ceil_with_slack(axi_ndim(p)),
        certified_lower: false,
    }
}

/// Overlap `⟨Ψ_d|ρ|Ψ_d⟩` of an axisymmetric state with the maximally
/// entangled state, straight from the matrix elements.
pub fn axi_max_entangled_fidelity<T: Scalar>(p: &AxiParams<T>) -> T {
    let df = T::from_dim(p.d());
    (df * df).recip() + p.a() + (df - T::one()) * p.b()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axi::{axi_state, x_max, y_max};
    use crate::matrix::ComplexMatrix;
    use crate::states::{max_entangled, pure_state_from_schmidt, SchmidtVector};
    use num_complex::Complex64;

    #[test]
    fn maximally_mixed_is_ppt_with_zero_negativity() {
        let rho = ComplexMatrix::<f64>::identity(9).scaled_real(1.0 / 9.0);
        let s = BipartiteState::new(rho, 3, 3).unwrap();
        assert_eq!(negativity(&s).unwrap(), 0.0);
        assert_eq!(ndim(&s).unwrap(), 1.0);
        assert_eq!(schmidt_number_lower_bound(&s).unwrap().k, 1);
    }

    #[test]
    fn bell_state_negativity_is_half() {
        let s = max_entangled::<f64>(2).unwrap();
        assert!((negativity(&s).unwrap() - 0.5).abs() < 1e-12);
        let class = schmidt_number_lower_bound(&s).unwrap();
        assert_eq!(class.k, 2);
        assert!(class.certified_lower);
    }

    #[test]
    fn isotropic_two_thirds_point() {
        // ⅔|Ψ₂⟩⟨Ψ₂| + ⅓·I/4, built directly.
        let bell = max_entangled::<f64>(2).unwrap();
        let mixed = ComplexMatrix::identity(4).scaled_real(0.25);
        let rho = &bell.rho().scaled_real(2.0 / 3.0) + &mixed.scaled_real(1.0 / 3.0);
        let s = BipartiteState::new(rho, 2, 2).unwrap();
        assert!((negativity(&s).unwrap() - 0.25).abs() < 1e-12);

        // Same point through the closed forms.
        let p =
            AxiParams::new(2, 2.0 / 3.0 * x_max::<f64>(2), 2.0 / 3.0 * y_max::<f64>(2)).unwrap();
        assert!((axi_negativity(&p) - 0.25).abs() < 1e-14);
        assert!((axi_ndim(&p) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn uniform_pure_states_count_their_rank() {
        let d = 6;
        for k in 1..=d {
            let sv = SchmidtVector::<f64>::uniform(k).unwrap();
            let s = pure_state_from_schmidt(&sv, d, d).unwrap();
            let v = ndim(&s).unwrap();
            assert!(
                (v - k as f64).abs() < 1e-9,
                "ndim of uniform rank-{k} state was {v}"
            );
        }
    }

    #[test]
    fn nonuniform_pure_state_matches_sum_of_coefficients_squared() {
        let sv = SchmidtVector::<f64>::from_weights(&[0.7, 0.5, 0.2]).unwrap();
        let s = pure_state_from_schmidt(&sv, 4, 4).unwrap();
        let expected: f64 = sv.coefficients().iter().sum::<f64>().powi(2);
        assert!((ndim(&s).unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn separable_product_state_counts_one() {
        let sv = SchmidtVector::<f64>::new(vec![1.0]).unwrap();
        let s = pure_state_from_schmidt(&sv, 3, 4).unwrap();
        assert_eq!(negativity(&s).unwrap(), 0.0);
        assert!((ndim(&s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_at_named_points() {
        // Origin: separable.
        let p = AxiParams::new(4, 0.0f64, 0.0).unwrap();
        assert_eq!(axi_negativity(&p), 0.0);
        assert_eq!(axi_ndim(&p), 1.0);
        assert_eq!(axi_schmidt_class(&p).k, 1);

        // Maximally entangled corner of d = 4: N = 1.5, N_dim = 4.
        let p = AxiParams::new(4, x_max::<f64>(4), y_max::<f64>(4)).unwrap();
        assert!((axi_negativity(&p) - 1.5).abs() < 1e-14);
        assert!((axi_ndim(&p) - 4.0).abs() < 1e-14);
        assert_eq!(axi_schmidt_class(&p).k, 4);

        // d = 3 corner.
        let p = AxiParams::new(3, x_max::<f64>(3), y_max::<f64>(3)).unwrap();
        assert!((axi_ndim(&p) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn separability_line_of_d2_has_unit_ndim() {
        // √2|x| + y = 1/2 is the zero set of the d=2 negativity.
        for t in [0.0, 0.3, 0.7, 1.0] {
            let y = 0.5 - 0.5 * t;
            let x = (0.5 - y) / 2.0f64.sqrt();
            let p = AxiParams::new(2, x, y).unwrap();
            assert!(axi_negativity(&p) < 1e-15);
            assert!((axi_ndim(&p) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn interior_point_matches_eigensolver() {
        let p = AxiParams::new(4, 0.4f64, 0.2).unwrap();
        let expected = 12.0f64.sqrt() * 0.4 + 3.0f64.sqrt() * 0.2 + 0.25;
        assert!((axi_ndim(&p) - expected).abs() < 1e-14);
        let spectral = ndim(&axi_state(&p)).unwrap();
        assert!((spectral - expected).abs() < 1e-10);
    }

    #[test]
    fn ceiling_tie_rule() {
        assert_eq!(ceil_with_slack(1.0f64), 1);
        assert_eq!(ceil_with_slack(1.0f64 + 5e-10), 1);
        assert_eq!(ceil_with_slack(1.0f64 + 5e-9), 2);
        assert_eq!(ceil_with_slack(1.2f64), 2);
        assert_eq!(ceil_with_slack(0.0f64), 1);
    }

    #[test]
    fn axi_fidelity_formula_matches_operator_overlap() {
        let d = 3;
        let p = AxiParams::new(d, 0.15f64, -0.05).unwrap();
        let s = axi_state(&p);
        let psi = crate::states::max_entangled_vector::<f64>(d, d, d);
        let psi: Vec<Complex64> = psi;
        let direct = s.fidelity_with_vector(&psi);
        assert!((axi_max_entangled_fidelity(&p) - direct).abs() < 1e-13);
    }
}
