//! The axisymmetric two-qudit family: the states invariant under qudit
//! swap, simultaneous basis permutations and coupled phase rotations.
//!
//! The family is a triangle in a real `(x, y)` plane whose Euclidean metric
//! matches the Hilbert-Schmidt metric on density matrices. `y` scales the
//! asymmetry `a` between the two kinds of diagonal elements, `x` scales the
//! off-diagonal element `b`:
//!
//! ```text
//! ρ_{jj,jj} = 1/d² + a        ρ_{jk,jk} = 1/d² − a/(d−1)   (j ≠ k)
//! ρ_{jj,kk} = b  (j ≠ k)      a = (√(d−1)/d)·y,  b = x/√(d(d−1))
//! ```

use num_complex::Complex;

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Coordinates of an axisymmetric state inside the triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiParams<T: Scalar> {
    d: usize,
    x: T,
    y: T,
}

/// Largest `x` coordinate, `√((d−1)/d)`; the maximally entangled corner.
pub fn x_max<T: Scalar>(d: usize) -> T {
    ((T::from_dim(d) - T::one()) / T::from_dim(d)).sqrt()
}

/// Smallest `x` coordinate, `−1/√(d(d−1))`.
pub fn x_min<T: Scalar>(d: usize) -> T {
    let df = T::from_dim(d);
    -(df * (df - T::one())).sqrt().recip()
}

/// Largest `y` coordinate, `√(d−1)/d`.
pub fn y_max<T: Scalar>(d: usize) -> T {
    let df = T::from_dim(d);
    (df - T::one()).sqrt() / df
}

/// Smallest `y` coordinate, `−1/(d√(d−1))`.
pub fn y_min<T: Scalar>(d: usize) -> T {
    let df = T::from_dim(d);
    -(df * (df - T::one()).sqrt()).recip()
}

/// Scale factor `α = √(d−1)/d` relating `a = α·y`.
pub fn alpha<T: Scalar>(d: usize) -> T {
    y_max::<T>(d)
}

/// Scale factor `β = 1/√(d(d−1))` relating `b = β·x`.
pub fn beta<T: Scalar>(d: usize) -> T {
    let df = T::from_dim(d);
    (df * (df - T::one())).sqrt().recip()
}

impl<T: Scalar> AxiParams<T> {
    /// Validates the coordinates against the triangle, with a small slack so
    /// edge states are accepted. The first violated bound is reported.
    pub fn new(d: usize, x: T, y: T) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension {
                dim: d,
                reason: "axisymmetric family needs d >= 2",
            });
        }
        let slack = T::TOL_BOUNDARY;
        let err = |bound: &'static str, value: T, limit: T| Error::OutOfTriangle {
            d,
            x: x.as_f64(),
            y: y.as_f64(),
            bound,
            value: value.as_f64(),
            limit: limit.as_f64(),
        };
        if y < y_min::<T>(d) - slack {
            return Err(err("y >= -1/(d*sqrt(d-1))", y, y_min::<T>(d)));
        }
        if y > y_max::<T>(d) + slack {
            return Err(err("y <= sqrt(d-1)/d", y, y_max::<T>(d)));
        }
        if x < x_min::<T>(d) - slack {
            return Err(err("x >= -1/sqrt(d(d-1))", x, x_min::<T>(d)));
        }
        if x > x_max::<T>(d) + slack {
            return Err(err("x <= sqrt((d-1)/d)", x, x_max::<T>(d)));
        }
        // Triangle sides: -(1/(d-1))(1/d² + a) <= b <= 1/d² + a.
        let df = T::from_dim(d);
        let a = alpha::<T>(d) * y;
        let b = beta::<T>(d) * x;
        let apex = T::one() / (df * df) + a;
        if b > apex + slack {
            return Err(err("b <= 1/d^2 + a", b, apex));
        }
        if b < -apex / (df - T::one()) - slack {
            return Err(err("b >= -(1/d^2 + a)/(d-1)", b, -apex / (df - T::one())));
        }
        Ok(Self { d, x, y })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    /// Diagonal asymmetry `a = α·y`.
    pub fn a(&self) -> T {
        alpha::<T>(self.d) * self.y
    }

    /// Off-diagonal element `b = β·x`.
    pub fn b(&self) -> T {
        beta::<T>(self.d) * self.x
    }
}

/// Builds the density matrix of the axisymmetric state at `p`.
pub fn axi_state<T: Scalar>(p: &AxiParams<T>) -> BipartiteState<T> {
    let d = p.d();
    let df = T::from_dim(d);
    let inv_d2 = (df * df).recip();
    let a = p.a();
    let b = p.b();
    let diag_equal = inv_d2 + a;
    let diag_mixed = inv_d2 - a / (df - T::one());

    let mut rho = ComplexMatrix::zeros(d * d);
    for j in 0..d {
        for k in 0..d {
            let idx = j * d + k;
            let val = if j == k { diag_equal } else { diag_mixed };
            rho[(idx, idx)] = Complex::new(val, T::zero());
        }
    }
    for j in 0..d {
        for k in 0..d {
            if j != k {
                rho[(j * d + j, k * d + k)] = Complex::new(b, T::zero());
            }
        }
    }
    BipartiteState::new_unchecked(rho, d, d)
}

/// Projects a `d × d` state onto the axisymmetric family.
///
/// The projection averages the three element classes the symmetry group
/// leaves free and zeroes everything else; it preserves the Hilbert-Schmidt
/// inner product with every member of the family and is idempotent.
pub fn axi_twirl<T: Scalar>(s: &BipartiteState<T>) -> Result<BipartiteState<T>> {
    if s.d_a() != s.d_b() {
        return Err(Error::DimensionMismatch(format!(
            "twirl needs d_a == d_b, got {} x {}",
            s.d_a(),
            s.d_b()
        )));
    }
    let d = s.d_a();
    let df = T::from_dim(d);
    let rho = s.rho();

    let mut diag_equal = T::zero();
    let mut diag_mixed = T::zero();
    let mut off = T::zero();
    for j in 0..d {
        for k in 0..d {
            let idx = j * d + k;
            if j == k {
                diag_equal += rho[(idx, idx)].re;
            } else {
                diag_mixed += rho[(idx, idx)].re;
                // ⟨jj|ρ|kk⟩; Hermiticity makes the ordered average real.
                off += rho[(j * d + j, k * d + k)].re;
            }
        }
    }
    diag_equal /= df;
    let pairs = df * (df - T::one());
    diag_mixed /= pairs;
    off /= pairs;

    let mut out = ComplexMatrix::zeros(d * d);
    for j in 0..d {
        for k in 0..d {
            let idx = j * d + k;
            let val = if j == k { diag_equal } else { diag_mixed };
            out[(idx, idx)] = Complex::new(val, T::zero());
            if j != k {
                out[(j * d + j, k * d + k)] = Complex::new(off, T::zero());
            }
        }
    }
    Ok(BipartiteState::new_unchecked(out, d, d))
}

/// Reads the `(x, y)` coordinates of an axisymmetric state.
///
/// Fails with `NotAxisymmetric` when the state is not a fixed point of the
/// twirl (max element deviation above the membership tolerance).
pub fn axi_coords<T: Scalar>(s: &BipartiteState<T>) -> Result<AxiParams<T>> {
    let twirled = axi_twirl(s)?;
    let dev = twirled.rho().max_abs_diff(s.rho());
    if dev > T::TOL_MEMBERSHIP {
        return Err(Error::NotAxisymmetric {
            deviation: dev.as_f64(),
        });
    }
    let d = s.d_a();
    let df = T::from_dim(d);
    let inv_d2 = (df * df).recip();
    let a = twirled.rho()[(0, 0)].re - inv_d2;
    let b = if d >= 2 {
        twirled.rho()[(0, d + 1)].re
    } else {
        T::zero()
    };
    AxiParams::new(d, b / beta::<T>(d), a / alpha::<T>(d))
}

/// Diagonal generators of SU(d) in the generalized Gell-Mann convention,
/// `g_l = √(2/(l(l+1))) · diag(1, …, 1, −l, 0, …, 0)`, normalized so that
/// `tr(g_j g_k) = 2δ_jk`.
pub fn gell_mann_diagonal<T: Scalar>(d: usize, l: usize) -> Vec<T> {
    assert!(l >= 1 && l < d);
    let lf = T::from_dim(l);
    let norm = (T::real(2.0) / (lf * (lf + T::one()))).sqrt();
    let mut g = vec![T::zero(); d];
    for entry in g.iter_mut().take(l) {
        *entry = norm;
    }
    g[l] = -lf * norm;
    g
}

/// The coupled phase rotation `U = exp(iΣφ_j g_j) ⊗ exp(−iΣφ_k g_k)` on a
/// `d × d` system; one angle per diagonal SU(d) generator.
pub fn coupled_phase_rotation<T: Scalar>(d: usize, angles: &[T]) -> Result<ComplexMatrix<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "phase rotations need d >= 2",
        });
    }
    if angles.len() != d - 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected {} angles for d = {}, got {}",
            d - 1,
            d,
            angles.len()
        )));
    }
    let mut theta = vec![T::zero(); d];
    for (l, &phi) in angles.iter().enumerate() {
        let g = gell_mann_diagonal::<T>(d, l + 1);
        for m in 0..d {
            theta[m] += phi * g[m];
        }
    }
    Ok(torus_phase_operator(&theta))
}

/// `diag(e^{iθ_m}) ⊗ diag(e^{−iθ_m})` for an arbitrary phase vector; the
/// closure of the coupled phase rotations.
pub fn torus_phase_operator<T: Scalar>(theta: &[T]) -> ComplexMatrix<T> {
    let d = theta.len();
    let mut u = ComplexMatrix::zeros(d * d);
    for m in 0..d {
        for n in 0..d {
            let phase = theta[m] - theta[n];
            u[(m * d + n, m * d + n)] = Complex::new(phase.cos(), phase.sin());
        }
    }
    u
}

/// The swap unitary `|αβ⟩ ↦ |βα⟩` on a `d × d` system.
pub fn swap_operator<T: Scalar>(d: usize) -> ComplexMatrix<T> {
    let mut s = ComplexMatrix::zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            s[(b * d + a, a * d + b)] = Complex::new(T::one(), T::zero());
        }
    }
    s
}

/// `P_π ⊗ P_π` for a basis permutation applied to both qudits.
pub fn simultaneous_permutation<T: Scalar>(perm: &[usize]) -> ComplexMatrix<T> {
    let d = perm.len();
    let mut u = ComplexMatrix::zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            u[(perm[a] * d + perm[b], a * d + b)] = Complex::new(T::one(), T::zero());
        }
    }
    u
}
